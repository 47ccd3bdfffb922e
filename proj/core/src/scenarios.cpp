#include "tmlab/scenarios.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "tmlab/analysis.hpp"
#include "tmlab/trace_io.hpp"

namespace tmlab {

namespace {

constexpr Value kNv = 1;  // the "new value" written over initial 0

struct Report {
  std::string text;
  bool ok = true;

  void line(const std::string& s) { text += s + "\n"; }
  void check(bool cond, const std::string& what) {
    line(std::string(cond ? "ASSERT ok " : "ASSERT FAIL ") + what);
    if (!cond) ok = false;
  }
  void append_block(const std::string& block) { text += block; }
};

std::string op_line(TxnId k, const TOp& op, const TOpResponse& r) {
  return "OP " + std::to_string(k) + " " + format_top(op) + " -> " + to_string(r);
}

TOpResponse drive(Report& rep, Runner& r, TxnId k, const TOp& op) {
  TOpResponse resp = r.run_op(k, op);
  rep.line(op_line(k, op, resp));
  return resp;
}

TOpResponse drive_expect(Report& rep, Runner& r, TxnId k, const TOp& op,
                         const TOpResponse& expect, const std::string& what) {
  TOpResponse resp = r.run_op(k, op);
  rep.line(op_line(k, op, resp));
  rep.check(resp == expect, what + " (got " + to_string(resp) + ", want " +
                                to_string(expect) + ")");
  return resp;
}

void report_verdict(Report& rep, const SerializationVerdict& v) {
  rep.append_block(v.report());
}

// Scan blocks shared by the scenarios: invisible reads, strict DAP and weak
// DAP, asserted only against what the TM claims and reported otherwise.
void claims_scans(Report& rep, const TmInterface& tm, const AnnotatedRun& run) {
  auto invis = invisible_reads_violations(run.execution);
  for (const auto& [k, i] : invis)
    rep.line("INVIS-VIOLATION " + std::to_string(k) + " " + std::to_string(i));
  rep.line("INVIS-TOTAL " + std::to_string(invis.size()));
  if (tm.claims().invisible_reads)
    rep.check(invis.empty(), "invisible-reads scan empty");

  auto sdap = check_strict_dap(run.execution);
  for (const DapViolation& v : sdap) rep.line(v.render());
  rep.line("SDAP-TOTAL " + std::to_string(sdap.size()));
  if (tm.claims().strict_dap)
    rep.check(sdap.empty(), "strict-DAP scan empty");

  if (run.poised_annotated) {
    auto wdap = check_weak_dap(run);
    for (const DapViolation& v : wdap) rep.line(v.render());
    rep.line("WDAP-TOTAL " + std::to_string(wdap.size()));
    if (tm.claims().weak_dap)
      rep.check(wdap.empty(), "weak-DAP scan empty");
  }
}

Runner::Options runner_options(const ScenarioOptions& opts, int objects, int processes) {
  Runner::Options ro;
  ro.object_count = objects;
  ro.process_count = processes;
  ro.annotate_poised = opts.annotate_poised;
  return ro;
}

}  // namespace

ScenarioResult scenario_intro(const ScenarioOptions& opts) {
  ScenarioResult result;
  result.name = "intro";
  Report rep;
  rep.line("SCENARIO intro tm=" + opts.tm_name);

  Runner r(make_tm(opts.tm_name, 2, 4), runner_options(opts, 2, 4));
  const TObjectId X = 1, Y = 2;
  const TxnId t1 = 1, t2 = 2;

  r.begin(t1, 1);
  std::size_t f0 = r.mark();
  drive_expect(rep, r, t1, TOp::read(X), TOpResponse::of(0), "read_1(X) returns initial");
  r.label("t1-read", f0, r.mark());

  std::size_t f1 = r.mark();
  r.begin(t2, 2);
  drive_expect(rep, r, t2, TOp::read(Y), TOpResponse::of(0), "read_2(Y) returns initial");
  drive_expect(rep, r, t2, TOp::write(X, kNv), TOpResponse::ok(), "write_2(X) ok");
  TOpResponse t2_fate = drive(rep, r, t2, TOp::try_commit());
  r.label("t2-full", f1, r.mark());

  std::size_t f2 = r.mark();
  drive_expect(rep, r, t1, TOp::write(Y, kNv), TOpResponse::ok(), "write_1(Y) ok");
  TOpResponse t1_fate = drive(rep, r, t1, TOp::try_commit());
  r.label("t1-finish", f2, r.mark());

  rep.line(std::string("FATE T1 ") + (t1_fate.is_commit() ? "committed" : "aborted"));
  rep.line(std::string("FATE T2 ") + (t2_fate.is_commit() ? "committed" : "aborted"));

  AnnotatedRun run = r.annotated_run();
  SerializationVerdict verdict =
      check_strict_serializability(run.execution.export_history(), opts.bounds);
  report_verdict(rep, verdict);
  // Committing both transactions here is exactly the inconsistency the
  // example rules out; a correct TM aborts T1 (or T2) and stays serializable.
  rep.check(verdict.serializable(), "history strictly serializable");
  if (t1_fate.is_commit() && t2_fate.is_commit())
    rep.check(false, "T1 and T2 both committed: inconsistent by construction");

  claims_scans(rep, r.tm(), run);

  rep.line(std::string("RESULT ") + (rep.ok ? "ok" : "fail"));
  result.ok = rep.ok;
  result.report = rep.text;
  result.runs.push_back({"main", std::move(run)});
  return result;
}

ScenarioResult scenario_theorem1(const ScenarioOptions& opts) {
  ScenarioResult result;
  result.name = "theorem1";
  Report rep;
  const int c = opts.phases;
  const int L = opts.objects;
  rep.line("SCENARIO theorem1 tm=" + opts.tm_name + " phases=" + std::to_string(c) +
           " objects=" + std::to_string(L));

  // Readers of all phases stay live until the extension stage, so each
  // needs its own process; writers run sequentially on process 1.
  const int n = c + 1;
  Runner r(make_tm(opts.tm_name, L, n), runner_options(opts, L, n));
  auto reader_id = [](int i) { return static_cast<TxnId>(2 * i); };
  auto writer_id = [](int i) { return static_cast<TxnId>(2 * i - 1); };
  auto phase_value = [](int i) { return static_cast<Value>(i); };

  std::vector<std::shared_ptr<Runner>> probe_points;

  for (int i = 0; i < c; ++i) {
    if (i > 0) {
      std::size_t f = r.mark();
      TxnId w = writer_id(i);
      r.begin(w, 1);
      for (TObjectId x = 1; x <= L; ++x)
        drive_expect(rep, r, w, TOp::write(x, phase_value(i)), TOpResponse::ok(),
                     "write of phase " + std::to_string(i));
      drive_expect(rep, r, w, TOp::try_commit(), TOpResponse::committed(),
                   "phase writer " + std::to_string(i) + " commits");
      r.label("rho_" + std::to_string(i), f, r.mark());
    }
    std::size_t f = r.mark();
    TxnId rd = reader_id(i);
    r.begin(rd, static_cast<ProcessId>(2 + i));
    drive_expect(rep, r, rd, TOp::read(1), TOpResponse::of(phase_value(i)),
                 "read_" + std::to_string(rd) + "(X1) returns phase value");
    r.label("alpha_" + std::to_string(i), f, r.mark());
    probe_points.push_back(std::make_shared<Runner>(r));
  }

  // Extension stage: every read-only transaction re-reads the remaining
  // t-objects and must still observe its own phase's values.
  for (int i = 0; i < c; ++i) {
    std::size_t f = r.mark();
    TxnId rd = reader_id(i);
    for (TObjectId x = 2; x <= L; ++x)
      drive_expect(rep, r, rd, TOp::read(x), TOpResponse::of(phase_value(i)),
                   "extended read_" + std::to_string(rd) + "(X" + std::to_string(x) +
                       ") returns phase value");
    drive_expect(rep, r, rd, TOp::try_commit(), TOpResponse::committed(),
                 "read-only transaction " + std::to_string(rd) + " commits");
    r.label("ext_" + std::to_string(i), f, r.mark());
  }

  // Coda: two concurrent updaters with disjoint data sets, both brought to
  // the brink of their commit procedure. Designs with global commit
  // metadata become visible to the weak-DAP scan exactly here.
  if (L >= 2) {
    std::size_t f = r.mark();
    TxnId u1 = static_cast<TxnId>(2 * c), u2 = static_cast<TxnId>(2 * c + 1);
    r.begin(u1, 1);
    r.begin(u2, 2);
    drive_expect(rep, r, u1, TOp::write(1, phase_value(c)), TOpResponse::ok(),
                 "coda writer 1 buffers");
    drive_expect(rep, r, u2, TOp::write(2, phase_value(c)), TOpResponse::ok(),
                 "coda writer 2 buffers");
    r.invoke(u1, TOp::try_commit());
    r.invoke(u2, TOp::try_commit());
    TOpResponse c1 = r.finish_op(u1);
    rep.line(op_line(u1, TOp::try_commit(), c1));
    TOpResponse c2 = r.finish_op(u2);
    rep.line(op_line(u2, TOp::try_commit(), c2));
    rep.check(c1.is_commit(), "coda writer 1 commits");
    rep.check(c2.is_commit(), "coda writer 2 commits");
    r.label("dap-coda", f, r.mark());
  }

  AnnotatedRun run = r.annotated_run();

  // Distinct-value probes: one fresh solo read-only probe per phase point.
  for (TObjectId x = 1; x <= L; ++x) {
    DistinctProbeResult probe = distinct_values_probe(probe_points, x, 9000, 1);
    for (const std::string& err : probe.errors) {
      rep.line("PROBE-ERROR " + err);
      rep.check(false, "probe wait-free progress");
    }
    rep.line("DISTINCT " + std::to_string(x) + " " + std::to_string(probe.distinct));
    if (r.tm().claims().invisible_reads)
      rep.check(probe.distinct == static_cast<std::size_t>(c),
                "X" + std::to_string(x) + " maintains exactly " + std::to_string(c) +
                    " distinct values");
    std::optional<std::int64_t> versions = r.version_count(x);
    if (versions) {
      rep.line("VERSIONS " + std::to_string(x) + " " + std::to_string(*versions));
      rep.check(*versions >= c, "version list of X" + std::to_string(x) +
                                    " has length >= " + std::to_string(c));
    }
  }

  // Serializability: whole history when it fits the bound, else per-phase
  // windows of at most four transactions.
  History history = run.execution.export_history();
  if (history.txns().size() <= opts.bounds.max_txns) {
    SerializationVerdict verdict = check_strict_serializability(history, opts.bounds);
    report_verdict(rep, verdict);
    rep.check(verdict.serializable(), "full history strictly serializable");
  } else {
    for (int i = 0; i < c; ++i) {
      std::set<TxnId> window;
      if (i > 0) window.insert(writer_id(i));
      window.insert(reader_id(i));
      if (i + 1 < c) {
        window.insert(writer_id(i + 1));
        window.insert(reader_id(i + 1));
      }
      std::vector<TOpEvent> sub;
      for (const TOpEvent& ev : history.events())
        if (window.count(ev.txn) != 0) sub.push_back(ev);
      SerializationVerdict verdict =
          check_strict_serializability(History(std::move(sub)), opts.bounds);
      rep.line("WINDOW " + std::to_string(i) + " " +
               (verdict.serializable() ? "serializable" : "NOT-serializable"));
      rep.check(verdict.serializable(),
                "phase window " + std::to_string(i) + " strictly serializable");
    }
    if (L >= 2) {
      std::set<TxnId> window{static_cast<TxnId>(2 * c), static_cast<TxnId>(2 * c + 1)};
      std::vector<TOpEvent> sub;
      for (const TOpEvent& ev : history.events())
        if (window.count(ev.txn) != 0) sub.push_back(ev);
      SerializationVerdict verdict =
          check_strict_serializability(History(std::move(sub)), opts.bounds);
      rep.line(std::string("WINDOW coda ") +
               (verdict.serializable() ? "serializable" : "NOT-serializable"));
      rep.check(verdict.serializable(), "coda window strictly serializable");
    }
  }

  claims_scans(rep, r.tm(), run);

  rep.line(std::string("RESULT ") + (rep.ok ? "ok" : "fail"));
  result.ok = rep.ok;
  result.report = rep.text;
  result.runs.push_back({"main", std::move(run)});
  return result;
}

ScenarioResult scenario_theorem2(const ScenarioOptions& opts) {
  ScenarioResult result;
  result.name = "theorem2";
  Report rep;
  rep.line("SCENARIO theorem2 tm=" + opts.tm_name);

  const TObjectId X1 = 1, X2 = 2, X3 = 3;
  const TxnId t0 = 0, t1 = 1, t2 = 2, t3 = 3;
  Runner base(make_tm(opts.tm_name, 3, 4), runner_options(opts, 3, 4));

  std::vector<TOp> writer_script{TOp::write(X1, kNv), TOp::write(X3, kNv),
                                 TOp::try_commit()};
  PrefixSearch search = longest_unobservable_prefix(
      base, t1, 1, writer_script, {{X1, kNv}, {X3, kNv}}, 9000, 4);
  if (!search.ok) {
    rep.line("PREFIX-SEARCH error: " + search.error);
    rep.check(false, "longest unobservable prefix exists");
    rep.line("RESULT fail");
    result.ok = false;
    result.report = rep.text;
    return result;
  }
  rep.line("PI-LEN " + std::to_string(search.pi_len));
  rep.line("PI-PRIME " + std::to_string(search.prefix_len));

  Runner r = replay_writer_prefix(base, t1, 1, writer_script, search.prefix_len);
  r.label("pi-prime", 0, r.mark());

  // Resolve the branch: after pi' . e, which t-object's fresh value becomes
  // observable decides which object T3 reads; T0 starts on the other one.
  auto apply_next_writer_event = [&](Runner& sim) {
    if (sim.op_pending(t1)) {
      sim.step(t1);
    } else {
      std::size_t invocations = 0;
      for (const Event& ev : sim.events())
        if (const TOpEvent* t = as_top(ev))
          if (t->txn == t1 && t->is_invocation()) ++invocations;
      sim.invoke(t1, writer_script.at(invocations));
    }
  };
  TObjectId beta_obj = 0, alpha1_obj = 0;
  {
    Runner peek = r;
    apply_next_writer_event(peek);
    auto observes = [&](TObjectId x) {
      Runner probe = peek;
      probe.begin(9100, 4);
      TOpResponse resp = probe.run_op(9100, TOp::read(x));
      return resp.is_value() && resp.val == kNv;
    };
    if (observes(X3)) {
      beta_obj = X3;
      alpha1_obj = X1;
    } else if (observes(X1)) {
      beta_obj = X1;
      alpha1_obj = X3;
    }
  }
  if (beta_obj == 0) {
    rep.line("BRANCH none: pi'.e enables neither probe");
    rep.check(false, "pi'.e enables a fresh-value probe");
    rep.line("RESULT fail");
    result.ok = false;
    result.report = rep.text;
    return result;
  }
  rep.line("BRANCH beta=X" + std::to_string(beta_obj) + " alpha1=X" +
           std::to_string(alpha1_obj));

  bool read_only_abort = false;

  std::size_t f = r.mark();
  r.begin(t0, 2);
  TOpResponse a1 = drive(rep, r, t0, TOp::read(alpha1_obj));
  read_only_abort |= a1.is_abort();
  rep.check(a1 == TOpResponse::of(0), "read_0 before e returns the initial value");
  r.label("alpha_1", f, r.mark());

  f = r.mark();
  apply_next_writer_event(r);
  r.label("e", f, r.mark());

  f = r.mark();
  r.begin(t3, 3);
  TOpResponse b = drive(rep, r, t3, TOp::read(beta_obj));
  read_only_abort |= b.is_abort();
  rep.check(b == TOpResponse::of(kNv), "read_3 after e returns the new value");
  TOpResponse c3 = drive(rep, r, t3, TOp::try_commit());
  read_only_abort |= c3.is_abort();
  r.label("beta", f, r.mark());

  f = r.mark();
  r.begin(t2, 4);
  drive(rep, r, t2, TOp::write(X2, kNv));
  TOpResponse gamma_fate = drive(rep, r, t2, TOp::try_commit());
  rep.line(std::string("FATE T2 ") + (gamma_fate.is_commit() ? "committed" : "aborted"));
  r.label("gamma", f, r.mark());

  f = r.mark();
  TOpResponse a2 = drive(rep, r, t0, TOp::read(X2));
  read_only_abort |= a2.is_abort();
  TOpResponse c0 = drive(rep, r, t0, TOp::try_commit());
  read_only_abort |= c0.is_abort();
  r.label("alpha_2", f, r.mark());

  AnnotatedRun run = r.annotated_run();
  auto sdap = check_strict_dap(run.execution);
  for (const DapViolation& v : sdap) rep.line(v.render());
  SerializationVerdict verdict =
      check_strict_serializability(run.execution.export_history(), opts.bounds);
  report_verdict(rep, verdict);
  rep.check(verdict.outcome != SerializationVerdict::Outcome::bound_exceeded,
            "verdict within search bounds");

  int fired = 0;
  if (read_only_abort) {
    rep.line("FIRED read-only-abort");
    ++fired;
  }
  if (!sdap.empty()) {
    rep.line("FIRED cross-dset-contention");
    ++fired;
  }
  if (verdict.outcome == SerializationVerdict::Outcome::not_serializable) {
    rep.line("FIRED not-serializable");
    ++fired;
  }
  rep.line("FIRED-TOTAL " + std::to_string(fired));
  rep.check(fired == 1, "exactly one impossibility disjunct fires");

  // The invisible/weak-DAP scans stay informative here; strict DAP is the
  // disjunct above, so it is not re-asserted against the claim.
  auto invis = invisible_reads_violations(run.execution);
  rep.line("INVIS-TOTAL " + std::to_string(invis.size()));
  if (run.poised_annotated) {
    auto wdap = check_weak_dap(run);
    for (const DapViolation& v : wdap) rep.line(v.render());
    rep.line("WDAP-TOTAL " + std::to_string(wdap.size()));
    if (r.tm().claims().weak_dap) rep.check(wdap.empty(), "weak-DAP scan empty");
  }

  rep.line(std::string("RESULT ") + (rep.ok ? "ok" : "fail"));
  result.ok = rep.ok;
  result.report = rep.text;
  result.runs.push_back({"main", std::move(run)});
  return result;
}

namespace {

void theorem3_one_run(Report& rep, ScenarioResult& result, const ScenarioOptions& opts,
                      int m, int j, bool delta_m_first) {
  const std::string label =
      "j" + std::to_string(j) + (delta_m_first ? "-b" : "-c");
  rep.line("RUN " + label);

  Runner r(make_tm(opts.tm_name, m, 4), runner_options(opts, m, 4));
  const TxnId t0 = 0;
  const TxnId tj = static_cast<TxnId>(j);
  const TxnId tl = static_cast<TxnId>(m);

  auto run_delta_m = [&] {
    std::size_t f = r.mark();
    r.begin(tl, 3);
    drive_expect(rep, r, tl, TOp::write(m, kNv), TOpResponse::ok(), "delta_m buffers");
    drive_expect(rep, r, tl, TOp::try_commit(), TOpResponse::committed(),
                 "delta_m commits");
    r.label("delta_m", f, r.mark());
  };

  if (delta_m_first) run_delta_m();

  r.begin(t0, 1);
  std::size_t f = r.mark();
  for (int i = 1; i < j; ++i)
    drive_expect(rep, r, t0, TOp::read(i), TOpResponse::of(0),
                 "read_0(X" + std::to_string(i) + ") returns the initial value");
  r.label("alpha-prefix", f, r.mark());

  // Split read j at its first base-object write event.
  f = r.mark();
  r.invoke(t0, TOp::read(j));
  r.step_while_trivial(t0);
  r.label("alpha_j_1", f, r.mark());
  bool split_open = r.op_pending(t0);

  f = r.mark();
  r.begin(tj, 2);
  drive_expect(rep, r, tj, TOp::write(j, kNv), TOpResponse::ok(), "delta_j buffers");
  drive_expect(rep, r, tj, TOp::try_commit(), TOpResponse::committed(),
               "delta_j commits inside the split read");
  r.label("delta_j", f, r.mark());

  Value swept_value = 0;
  f = r.mark();
  if (split_open) {
    TOpResponse resp = r.finish_op(t0);
    rep.line(op_line(t0, TOp::read(j), resp));
    rep.check(resp.is_value(), "split read returns a value");
    if (resp.is_value()) swept_value = resp.val;
  } else {
    // The whole read was trivial: its response is already recorded.
    const TOpEvent* done = as_top(r.events()[r.mark() - 1]);
    swept_value = done->result.val;
    rep.line(op_line(t0, TOp::read(j), done->result));
  }
  r.label("alpha_j_2", f, r.mark());
  rep.line("SWEPT-READ j=" + std::to_string(j) + " -> " + std::to_string(swept_value));

  if (!delta_m_first) run_delta_m();

  for (int i = j + 1; i <= m; ++i) {
    TOpResponse resp = drive(rep, r, t0, TOp::read(i));
    if (i == m && delta_m_first)
      rep.check(resp == TOpResponse::of(kNv), "read_0(Xm) returns the new value");
  }
  drive_expect(rep, r, t0, TOp::try_commit(), TOpResponse::committed(),
               "read-only transaction commits");

  AnnotatedRun run = r.annotated_run();
  PatternReport patterns = pattern_report(run.execution);
  rep.append_block(patterns.render());
  std::size_t total = patterns.total(t0);
  std::size_t swept = patterns.within_op(t0, j - 1);
  rep.line("PATTERNS 0 total=" + std::to_string(total) +
           " swept=" + std::to_string(swept));
  if (r.tm().claims().weak_dap) {
    rep.check(total >= static_cast<std::size_t>(m - 1),
              "T0 performs at least m-1 RAW/AWAR patterns");
    rep.check(swept >= 1, "the swept read contains a RAW or AWAR");
  }

  SerializationVerdict verdict =
      check_strict_serializability(run.execution.export_history(), opts.bounds);
  report_verdict(rep, verdict);
  rep.check(verdict.serializable(), "per-sweep history strictly serializable");

  claims_scans(rep, r.tm(), run);
  result.runs.push_back({label, std::move(run)});
}

}  // namespace

ScenarioResult scenario_theorem3(const ScenarioOptions& opts) {
  ScenarioResult result;
  result.name = "theorem3";
  Report rep;
  const int m = opts.reads;
  rep.line("SCENARIO theorem3 tm=" + opts.tm_name + " reads=" + std::to_string(m) +
           (opts.split > 0 ? " split=" + std::to_string(opts.split) : " sweep"));

  std::vector<int> js;
  if (opts.split > 0)
    js.push_back(opts.split);
  else
    for (int j = 1; j < m; ++j) js.push_back(j);

  for (int j : js) {
    theorem3_one_run(rep, result, opts, m, j, /*delta_m_first=*/true);
    theorem3_one_run(rep, result, opts, m, j, /*delta_m_first=*/false);
  }

  rep.line(std::string("RESULT ") + (rep.ok ? "ok" : "fail"));
  result.ok = rep.ok;
  result.report = rep.text;
  return result;
}

ScenarioResult scenario_lemma1(const ScenarioOptions& opts) {
  ScenarioResult result;
  result.name = "lemma1";
  Report rep;
  rep.line("SCENARIO lemma1 tm=" + opts.tm_name);

  Runner r(make_tm(opts.tm_name, 4, 4), runner_options(opts, 4, 4));
  const TxnId bg = 10, t1 = 1, t2 = 2;

  std::size_t f = r.mark();
  r.begin(bg, 1);
  drive_expect(rep, r, bg, TOp::write(3, 5), TOpResponse::ok(), "alpha writer buffers");
  drive_expect(rep, r, bg, TOp::write(4, 6), TOpResponse::ok(), "alpha writer buffers");
  drive_expect(rep, r, bg, TOp::try_commit(), TOpResponse::committed(),
               "alpha writer commits");
  r.label("alpha", f, r.mark());

  f = r.mark();
  r.begin(t1, 2);
  drive(rep, r, t1, TOp::read(1));
  drive(rep, r, t1, TOp::write(1, 7));
  drive(rep, r, t1, TOp::try_commit());
  std::size_t rho1_end = r.mark();
  r.label("rho_1", f, rho1_end);

  r.begin(t2, 3);
  drive(rep, r, t2, TOp::read(2));
  drive(rep, r, t2, TOp::write(2, 8));
  drive(rep, r, t2, TOp::try_commit());
  r.label("rho_2", rho1_end, r.mark());

  AnnotatedRun run = r.annotated_run();
  bool disjoint = disjoint_access(run.execution, t1, t2);
  rep.line(std::string("DISJOINT-ACCESS ") + (disjoint ? "yes" : "no"));
  rep.check(disjoint, "fragments are disjoint-access");

  std::size_t cross = 0;
  for (const ContentionPair& p : contentions(run.execution)) {
    TxnId a = txn_of(run.execution.events()[p.i]);
    TxnId b = txn_of(run.execution.events()[p.j]);
    if ((a == t1 && b == t2) || (a == t2 && b == t1)) {
      rep.line("CONTENTION " + std::to_string(p.i) + " " + std::to_string(p.j) + " " +
               std::to_string(p.base));
      ++cross;
    }
  }
  rep.line("CROSS-CONTENTION " + std::to_string(cross));
  if (r.tm().claims().weak_dap)
    rep.check(cross == 0, "disjoint-access fragments do not contend");

  SerializationVerdict verdict =
      check_strict_serializability(run.execution.export_history(), opts.bounds);
  report_verdict(rep, verdict);
  rep.check(verdict.serializable(), "history strictly serializable");

  rep.line(std::string("RESULT ") + (rep.ok ? "ok" : "fail"));
  result.ok = rep.ok;
  result.report = rep.text;
  result.runs.push_back({"main", std::move(run)});
  return result;
}

ScenarioResult run_scenario(const std::string& name, const ScenarioOptions& opts) {
  if (name == "intro") return scenario_intro(opts);
  if (name == "theorem1") return scenario_theorem1(opts);
  if (name == "theorem2") return scenario_theorem2(opts);
  if (name == "theorem3") return scenario_theorem3(opts);
  if (name == "lemma1") return scenario_lemma1(opts);
  throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<std::string> scenario_names() {
  return {"intro", "theorem1", "theorem2", "theorem3", "lemma1"};
}

}  // namespace tmlab
