#include "tmlab/runner.hpp"

#include <algorithm>
#include <set>

namespace tmlab {

Runner::Runner(std::unique_ptr<TmInterface> tm, Options opts)
    : tm_(std::move(tm)), opts_(opts), store_(Configuration::Universe::open) {
  if (opts_.object_count < 1 || opts_.process_count < 1)
    throw ScheduleError("invalid runner options");
}

Runner::Runner(const Runner& other)
    : tm_(other.tm_->clone()),
      opts_(other.opts_),
      store_(other.store_),
      events_(other.events_),
      txns_(other.txns_),
      poised_(other.poised_),
      fragments_(other.fragments_) {}

Runner& Runner::operator=(const Runner& other) {
  if (this == &other) return *this;
  tm_ = other.tm_->clone();
  opts_ = other.opts_;
  store_ = other.store_;
  events_ = other.events_;
  txns_ = other.txns_;
  poised_ = other.poised_;
  fragments_ = other.fragments_;
  return *this;
}

Runner::TxnInfo& Runner::info(TxnId id) {
  auto it = txns_.find(id);
  if (it == txns_.end())
    throw ScheduleError("transaction " + std::to_string(id) + " not started");
  return it->second;
}

const Runner::TxnInfo& Runner::info(TxnId id) const {
  auto it = txns_.find(id);
  if (it == txns_.end())
    throw ScheduleError("transaction " + std::to_string(id) + " not started");
  return it->second;
}

void Runner::begin(TxnId id, ProcessId process) {
  if (txns_.count(id) != 0)
    throw ScheduleError("transaction id " + std::to_string(id) + " already used");
  if (process < 1 || process > opts_.process_count)
    throw ScheduleError("process " + std::to_string(process) + " out of range");
  for (const auto& [k, t] : txns_)
    if (t.process == process && !t.t_complete)
      throw ScheduleError("process " + std::to_string(process) +
                          " still runs transaction " + std::to_string(k));
  tm_->begin(id, process);
  txns_[id].process = process;
}

void Runner::invoke(TxnId id, const TOp& op) {
  TxnInfo& t = info(id);
  if (t.pending) throw ScheduleError("operation already pending");
  if (t.t_complete) throw ScheduleError("transaction already t-complete");
  tm_->invoke(id, op);
  t.pending = true;
  t.pending_op = op;
  append(Event{TOpEvent::inv(id, op)});
}

StepOutcome Runner::step(TxnId id) {
  TxnInfo& t = info(id);
  if (!t.pending) throw ScheduleError("no pending operation to step");
  StepResult r = tm_->step(id, store_);
  if (r.rmw) {
    append(Event{*r.rmw});
    return {r.rmw, std::nullopt};
  }
  t.pending = false;
  if (r.response->is_abort() || r.response->is_commit()) t.t_complete = true;
  append(Event{TOpEvent::res(id, t.pending_op, *r.response)});
  return {std::nullopt, r.response};
}

TOpResponse Runner::finish_op(TxnId id) {
  int steps = 0;
  while (op_pending(id)) {
    if (++steps > opts_.step_budget)
      throw StepBudgetError("step budget exceeded for transaction " +
                            std::to_string(id));
    StepOutcome out = step(id);
    if (out.response) return *out.response;
  }
  throw ScheduleError("no pending operation to finish");
}

TOpResponse Runner::run_op(TxnId id, const TOp& op) {
  invoke(id, op);
  return finish_op(id);
}

int Runner::step_while_trivial(TxnId id) {
  int taken = 0;
  while (op_pending(id)) {
    std::optional<PoisedEntry> p = poised(id);
    if (!p->is_response && !is_trivial(p->event.prim)) break;
    step(id);
    if (++taken > opts_.step_budget)
      throw StepBudgetError("step budget exceeded for transaction " +
                            std::to_string(id));
  }
  return taken;
}

bool Runner::op_pending(TxnId id) const {
  auto it = txns_.find(id);
  return it != txns_.end() && it->second.pending;
}

bool Runner::t_complete(TxnId id) const { return info(id).t_complete; }

std::optional<PoisedEntry> Runner::poised(TxnId id) const {
  if (!op_pending(id)) return std::nullopt;
  std::unique_ptr<TmInterface> tm2 = tm_->clone();
  Configuration mem2 = store_;
  StepResult r = tm2->step(id, mem2);
  PoisedEntry e;
  e.prefix = events_.size();
  e.txn = id;
  e.is_response = !r.rmw.has_value();
  if (r.rmw) e.event = *r.rmw;
  return e;
}

void Runner::append(Event ev) {
  events_.push_back(std::move(ev));
  record_poised();
}

void Runner::record_poised() {
  if (!opts_.annotate_poised) return;
  for (const auto& [k, t] : txns_) {
    if (!t.pending) continue;
    if (std::optional<PoisedEntry> p = poised(k)) poised_.push_back(*p);
  }
}

void Runner::label(const std::string& name, std::size_t from, std::size_t to) {
  fragments_.push_back({from, to, name});
}

Execution Runner::execution() const {
  return Execution::from_events(events_);
}

AnnotatedRun Runner::annotated_run() const {
  AnnotatedRun run;
  run.execution = execution();
  run.poised = poised_;
  run.fragments = fragments_;
  run.poised_annotated = opts_.annotate_poised;
  return run;
}

Configuration Runner::configuration() const {
  Configuration snap = store_;
  for (const auto& [k, t] : txns_) snap.set_private_state(k, tm_->private_state(k));
  return snap;
}

std::optional<std::int64_t> Runner::version_count(TObjectId x) const {
  return tm_->version_count(x, store_);
}

Schedule& Schedule::start(TxnId txn, ProcessId process) {
  commands.push_back(Start{txn, process});
  return *this;
}
Schedule& Schedule::invoke(TxnId txn, TOp op) {
  commands.push_back(Invoke{txn, op});
  return *this;
}
Schedule& Schedule::step(TxnId txn, int count) {
  commands.push_back(Step{txn, count});
  return *this;
}
Schedule& Schedule::finish(TxnId txn) {
  commands.push_back(Step{txn, -1});
  return *this;
}
Schedule& Schedule::run_solo(TxnId txn, ProcessId process, std::vector<TOp> ops) {
  commands.push_back(RunSolo{txn, process, std::move(ops)});
  return *this;
}
Schedule& Schedule::probe(TxnId txn, ProcessId process, std::vector<TOp> ops,
                          std::string label) {
  commands.push_back(Probe{txn, process, std::move(ops), std::move(label)});
  return *this;
}
Schedule& Schedule::snapshot(std::string label) {
  commands.push_back(SnapshotLabel{std::move(label)});
  return *this;
}
Schedule& Schedule::expect_last(TOpResponse expect, std::string note) {
  commands.push_back(ExpectLast{expect, std::move(note)});
  return *this;
}

ScheduleResult run_schedule(Runner& r, const Schedule& s) {
  ScheduleResult result;
  for (const Schedule::Command& cmd : s.commands) {
    if (const auto* c = std::get_if<Schedule::Start>(&cmd)) {
      r.begin(c->txn, c->process);
    } else if (const auto* c = std::get_if<Schedule::Invoke>(&cmd)) {
      r.invoke(c->txn, c->op);
    } else if (const auto* c = std::get_if<Schedule::Step>(&cmd)) {
      if (c->count < 0) {
        result.last_response = r.finish_op(c->txn);
      } else {
        for (int i = 0; i < c->count; ++i) {
          StepOutcome out = r.step(c->txn);
          if (out.response) result.last_response = *out.response;
        }
      }
    } else if (const auto* c = std::get_if<Schedule::RunSolo>(&cmd)) {
      r.begin(c->txn, c->process);
      for (const TOp& op : c->ops) result.last_response = r.run_op(c->txn, op);
    } else if (const auto* c = std::get_if<Schedule::Probe>(&cmd)) {
      Runner clone = r;
      clone.begin(c->txn, c->process);
      ProbeOutcome probe;
      probe.label = c->label;
      for (const TOp& op : c->ops) probe.responses.push_back(clone.run_op(c->txn, op));
      result.probes.push_back(std::move(probe));
    } else if (const auto* c = std::get_if<Schedule::SnapshotLabel>(&cmd)) {
      result.snapshots[c->label] = std::make_shared<Runner>(r);
    } else if (const auto* c = std::get_if<Schedule::ExpectLast>(&cmd)) {
      if (!result.last_response || !(*result.last_response == c->expect))
        result.failures.push_back(c->note);
    }
  }
  return result;
}

Runner replay_writer_prefix(const Runner& base, TxnId writer, ProcessId process,
                            const std::vector<TOp>& script, std::size_t prefix_len) {
  Runner sim = base;
  sim.begin(writer, process);
  std::size_t start = sim.mark();
  for (const TOp& op : script) {
    if (sim.mark() - start >= prefix_len) break;
    sim.invoke(writer, op);
    while (sim.mark() - start < prefix_len && sim.op_pending(writer))
      sim.step(writer);
    if (sim.mark() - start >= prefix_len) break;
  }
  return sim;
}

namespace {

// Runs a fresh read-only transaction on a clone; reports the read response.
struct SoloProbe {
  TOpResponse read_response;
  bool aborted = false;
};

SoloProbe run_solo_probe(const Runner& at, TObjectId x, TxnId txn, ProcessId process) {
  Runner clone = at;
  clone.begin(txn, process);
  SoloProbe probe;
  probe.read_response = clone.run_op(txn, TOp::read(x));
  if (probe.read_response.is_abort()) {
    probe.aborted = true;
    return probe;
  }
  TOpResponse commit = clone.run_op(txn, TOp::try_commit());
  probe.aborted = commit.is_abort();
  return probe;
}

}  // namespace

PrefixSearch longest_unobservable_prefix(const Runner& base, TxnId writer,
                                         ProcessId writer_process,
                                         const std::vector<TOp>& writer_script,
                                         const std::vector<ProbeSpec>& probes,
                                         TxnId probe_txn_seed,
                                         ProcessId probe_process) {
  PrefixSearch out;
  if (writer_script.empty()) {
    out.ok = true;
    return out;
  }
  Runner full = base;
  full.begin(writer, writer_process);
  std::size_t start = full.mark();
  TOpResponse last;
  for (const TOp& op : writer_script) last = full.run_op(writer, op);
  if (!last.is_commit()) {
    out.error = "writer did not commit when run solo";
    return out;
  }
  out.pi_len = full.mark() - start;

  TxnId next_probe = probe_txn_seed;
  for (std::size_t len = out.pi_len; len-- > 0;) {
    Runner sim = replay_writer_prefix(base, writer, writer_process, writer_script, len);
    bool observable = false;
    for (const ProbeSpec& spec : probes) {
      SoloProbe probe = run_solo_probe(sim, spec.object, next_probe++, probe_process);
      if (probe.aborted) {
        out.error = "read-only probe aborted (wait-free progress violation)";
        return out;
      }
      if (probe.read_response.is_value() && probe.read_response.val == spec.target) {
        observable = true;
        break;
      }
    }
    if (!observable) {
      out.ok = true;
      out.prefix_len = len;
      return out;
    }
  }
  out.error = "no qualifying prefix: a probe observes its target immediately";
  return out;
}

DistinctProbeResult distinct_values_probe(
    const std::vector<std::shared_ptr<Runner>>& points, TObjectId x,
    TxnId probe_txn_seed, ProcessId probe_process) {
  DistinctProbeResult out;
  std::set<TOpResponse> seen;
  TxnId next = probe_txn_seed;
  for (const auto& point : points) {
    SoloProbe probe = run_solo_probe(*point, x, next++, probe_process);
    if (probe.aborted) {
      out.errors.push_back("probe transaction aborted at point " +
                           std::to_string(out.responses.size()) +
                           " (wait-free read-only progress violated)");
      continue;
    }
    out.responses.push_back(probe.read_response);
    seen.insert(probe.read_response);
  }
  out.distinct = seen.size();
  return out;
}

}  // namespace tmlab
