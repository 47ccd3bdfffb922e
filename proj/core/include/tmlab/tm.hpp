#pragma once

#include <memory>
#include <optional>
#include <string>

#include "tmlab/configuration.hpp"
#include "tmlab/event.hpp"
#include "tmlab/ids.hpp"

namespace tmlab {

// What a reference TM is designed to satisfy; scenarios assert the matching
// checks and merely report the rest.
struct TmClaims {
  bool invisible_reads = false;
  bool weak_dap = false;
  bool strict_dap = false;
};

// One step of a pending t-operation: either an RMW event (already applied
// to the configuration) or the operation's response.
struct StepResult {
  std::optional<RmwEvent> rmw;
  std::optional<TOpResponse> response;

  static StepResult emitted(RmwEvent ev) { return {std::move(ev), std::nullopt}; }
  static StepResult done(TOpResponse r) { return {std::nullopt, r}; }
};

struct TmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A TM implementation drives each t-operation as a resumable step machine:
// the scheduler invokes an operation and then steps it until it responds.
// The next base-object access is a deterministic function of the
// configuration, so cloned instances replay identically.
class TmInterface {
 public:
  virtual ~TmInterface() = default;

  virtual std::string name() const = 0;
  virtual TmClaims claims() const = 0;
  virtual std::unique_ptr<TmInterface> clone() const = 0;

  virtual void begin(TxnId k, ProcessId p) = 0;
  virtual void invoke(TxnId k, const TOp& op) = 0;
  virtual bool has_pending(TxnId k) const = 0;
  virtual StepResult step(TxnId k, Configuration& mem) = 0;

  // Opaque rendering of the TM-private transaction state, for snapshots.
  virtual std::string private_state(TxnId k) const = 0;

  // Introspection for the multi-version store; others return nullopt.
  virtual std::optional<std::int64_t> version_count(TObjectId /*x*/,
                                                    const Configuration& /*mem*/) const {
    return std::nullopt;
  }
};

// Reference implementations. `object_count` fixes the t-object universe
// X_1..X_L, `process_count` the processes 1..n (per-process cells are laid
// out for exactly n processes).
std::unique_ptr<TmInterface> make_mv_invisible_tm(int object_count, int process_count);
std::unique_ptr<TmInterface> make_visible_read_tm(int object_count, int process_count);
std::unique_ptr<TmInterface> make_strict_dap_attempt_tm(int object_count, int process_count);

// By CLI name: mv-invisible | visible-read | strict-dap-attempt.
std::unique_ptr<TmInterface> make_tm(const std::string& name, int object_count,
                                     int process_count);

}  // namespace tmlab
