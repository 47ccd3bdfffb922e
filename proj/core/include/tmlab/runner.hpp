#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tmlab/annotated_run.hpp"
#include "tmlab/configuration.hpp"
#include "tmlab/execution.hpp"
#include "tmlab/tm.hpp"

namespace tmlab {

struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepOutcome {
  std::optional<RmwEvent> rmw;
  std::optional<TOpResponse> response;
};

// Deterministic step-granular scheduler around one TM instance. Copyable:
// a copy clones the TM and the base-object store, which is how probes and
// labeled snapshots are realized without perturbing the main run.
class Runner {
 public:
  struct Options {
    int object_count = 2;    // t-objects X_1..X_L
    int process_count = 4;   // processes 1..n
    int step_budget = 10000; // max steps per t-operation
    bool annotate_poised = false;
  };

  Runner(std::unique_ptr<TmInterface> tm, Options opts);
  Runner(const Runner& other);
  Runner& operator=(const Runner& other);
  Runner(Runner&&) = default;
  Runner& operator=(Runner&&) = default;

  const Options& options() const { return opts_; }
  const TmInterface& tm() const { return *tm_; }

  void begin(TxnId id, ProcessId process);
  void invoke(TxnId id, const TOp& op);
  StepOutcome step(TxnId id);
  TOpResponse finish_op(TxnId id);
  TOpResponse run_op(TxnId id, const TOp& op);

  // Steps the pending operation while its next event is trivial (or the
  // response); stops just before the first nontrivial base-object event.
  // Returns the number of steps taken.
  int step_while_trivial(TxnId id);

  bool begun(TxnId id) const { return txns_.count(id) != 0; }
  bool op_pending(TxnId id) const;
  bool t_complete(TxnId id) const;
  // Next enabled event of a pending transaction, found on a throwaway clone.
  std::optional<PoisedEntry> poised(TxnId id) const;

  std::size_t mark() const { return events_.size(); }
  void label(const std::string& name, std::size_t from, std::size_t to);

  const std::vector<Event>& events() const { return events_; }
  Execution execution() const;
  AnnotatedRun annotated_run() const;
  Configuration configuration() const;  // bases plus TM-private states
  Value base(BaseObjectId b) const { return store_.base(b); }
  std::optional<std::int64_t> version_count(TObjectId x) const;

 private:
  struct TxnInfo {
    ProcessId process = 0;
    bool pending = false;
    TOp pending_op;
    bool t_complete = false;
  };

  void append(Event ev);
  void record_poised();
  TxnInfo& info(TxnId id);
  const TxnInfo& info(TxnId id) const;

  std::unique_ptr<TmInterface> tm_;
  Options opts_;
  Configuration store_;
  std::vector<Event> events_;
  std::map<TxnId, TxnInfo> txns_;
  std::vector<PoisedEntry> poised_;
  std::vector<FragmentLabel> fragments_;
};

// Scripted schedules: the declarative command list the scenarios are built
// from. Dynamic constructions (prefix searches, branch discovery) drive the
// Runner directly between schedule segments.
struct Schedule {
  struct Start {
    TxnId txn;
    ProcessId process;
  };
  struct Invoke {
    TxnId txn;
    TOp op;
  };
  struct Step {
    TxnId txn;
    int count;  // -1: run the pending operation to completion
  };
  struct RunSolo {
    TxnId txn;
    ProcessId process;
    std::vector<TOp> ops;
  };
  struct Probe {
    TxnId txn;
    ProcessId process;
    std::vector<TOp> ops;
    std::string label;
  };
  struct SnapshotLabel {
    std::string label;
  };
  struct ExpectLast {
    TOpResponse expect;
    std::string note;
  };
  using Command =
      std::variant<Start, Invoke, Step, RunSolo, Probe, SnapshotLabel, ExpectLast>;

  std::vector<Command> commands;

  Schedule& start(TxnId txn, ProcessId process);
  Schedule& invoke(TxnId txn, TOp op);
  Schedule& step(TxnId txn, int count = 1);
  Schedule& finish(TxnId txn);
  Schedule& run_solo(TxnId txn, ProcessId process, std::vector<TOp> ops);
  Schedule& probe(TxnId txn, ProcessId process, std::vector<TOp> ops, std::string label);
  Schedule& snapshot(std::string label);
  Schedule& expect_last(TOpResponse expect, std::string note);
};

struct ProbeOutcome {
  std::string label;
  std::vector<TOpResponse> responses;
};

struct ScheduleResult {
  std::vector<ProbeOutcome> probes;
  std::map<std::string, std::shared_ptr<Runner>> snapshots;
  std::vector<std::string> failures;  // failed expectations, with notes
  std::optional<TOpResponse> last_response;

  bool ok() const { return failures.empty(); }
};

// Executes commands in order. Probe transactions run on clones and are
// discarded; snapshot labels capture full Runner copies.
ScheduleResult run_schedule(Runner& r, const Schedule& s);

// Replays `writer_script` from a copy of `base`, stopping once `prefix_len`
// events of the writer have been emitted.
Runner replay_writer_prefix(const Runner& base, TxnId writer, ProcessId process,
                            const std::vector<TOp>& script, std::size_t prefix_len);

struct ProbeSpec {
  TObjectId object;
  Value target;
};

struct PrefixSearch {
  bool ok = false;
  std::size_t prefix_len = 0;  // the longest unobservable prefix
  std::size_t pi_len = 0;      // length of the writer's solo execution
  std::string error;
};

// Largest l such that after replaying the first l events of the writer's
// solo execution, no probe (run step contention-free to completion on a
// clone) observes its target value. Reports a read-only probe abort as a
// progress violation and a missing qualifying prefix as a premise failure.
PrefixSearch longest_unobservable_prefix(const Runner& base, TxnId writer,
                                         ProcessId writer_process,
                                         const std::vector<TOp>& writer_script,
                                         const std::vector<ProbeSpec>& probes,
                                         TxnId probe_txn_seed,
                                         ProcessId probe_process);

struct DistinctProbeResult {
  std::vector<TOpResponse> responses;  // probe read responses, in probe order
  std::size_t distinct = 0;
  std::vector<std::string> errors;  // probe aborts: wait-free violations
};

// Runs one fresh solo read-only probe of `x` per probe point (each point is
// a Runner frozen at a prefix of the run) and counts distinct responses.
DistinctProbeResult distinct_values_probe(const std::vector<std::shared_ptr<Runner>>& points,
                                          TObjectId x, TxnId probe_txn_seed,
                                          ProcessId probe_process);

}  // namespace tmlab
