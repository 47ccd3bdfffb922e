#pragma once

#include <memory>
#include <string>

#include "tmlab/tm.hpp"

namespace tmlab::detail {

// Shared single-version, per-t-object TM family: sequence-lock version
// cell, value cell and per-process announcement cells per t-object; no
// global metadata. `reader_presence_check` adds the commit-window
// announcement rescan of the visible-read variant.
std::unique_ptr<TmInterface> make_per_object_tm(std::string name, TmClaims claims,
                                                bool reader_presence_check,
                                                int object_count, int process_count);

}  // namespace tmlab::detail
