#pragma once

#include <string>
#include <vector>

#include "tmlab/execution.hpp"

namespace tmlab {

// The poised (next enabled) event of a transaction after a given prefix,
// discovered by snapshot-probing: clone the configuration, advance one step,
// record, discard. A step about to complete the t-operation has no base
// access and is recorded as a response entry.
struct PoisedEntry {
  std::size_t prefix = 0;  // number of events already executed
  TxnId txn = kNoTxn;
  bool is_response = false;
  RmwEvent event;  // valid when !is_response

  bool operator==(const PoisedEntry&) const = default;
};

struct FragmentLabel {
  std::size_t from = 0;  // [from, to) event span
  std::size_t to = 0;
  std::string label;

  bool operator==(const FragmentLabel&) const = default;
};

struct AnnotatedRun {
  Execution execution;
  std::vector<PoisedEntry> poised;
  std::vector<FragmentLabel> fragments;
  bool poised_annotated = false;

  // POISED/FRAG sidecar lines.
  std::string annotation_text() const;
};

}  // namespace tmlab
