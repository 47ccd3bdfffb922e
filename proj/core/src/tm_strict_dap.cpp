#include "per_object_tm.hpp"
#include "tmlab/tm.hpp"

namespace tmlab {

// The strict-DAP candidate: identical per-t-object layout, but commits do
// not rescan announcement cells. Doomed to give up one of strict
// serializability, read-only wait-freedom or strict DAP; the adversary
// schedule exposes which.
std::unique_ptr<TmInterface> make_strict_dap_attempt_tm(int object_count,
                                                        int process_count) {
  return detail::make_per_object_tm(
      "strict-dap-attempt",
      {.invisible_reads = false, .weak_dap = true, .strict_dap = true},
      /*reader_presence_check=*/false, object_count, process_count);
}

std::unique_ptr<TmInterface> make_tm(const std::string& name, int object_count,
                                     int process_count) {
  if (name == "mv-invisible") return make_mv_invisible_tm(object_count, process_count);
  if (name == "visible-read") return make_visible_read_tm(object_count, process_count);
  if (name == "strict-dap-attempt")
    return make_strict_dap_attempt_tm(object_count, process_count);
  throw std::invalid_argument("unknown TM: " + name);
}

}  // namespace tmlab
