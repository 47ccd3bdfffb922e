#include "tmlab/analysis.hpp"

#include <algorithm>

namespace tmlab {

namespace {

struct KEvent {
  const RmwEvent* rmw;  // null for t-operation events
  int op;               // enclosing t-operation ordinal, -1 if unknown
};

// E|k with per-event t-operation attribution. Indices into the returned
// vector are the pattern indices.
std::vector<KEvent> restrict_to(std::span<const Event> pi, TxnId k) {
  std::vector<KEvent> out;
  int op = -1;
  int seen = 0;
  for (const Event& ev : pi) {
    if (txn_of(ev) != k) continue;
    if (const TOpEvent* t = as_top(ev)) {
      if (t->is_invocation()) op = seen++;
      out.push_back({nullptr, op});
    } else {
      out.push_back({as_rmw(ev), op});
    }
  }
  return out;
}

bool writes_base(const KEvent& e) { return e.rmw != nullptr && !is_trivial(e.rmw->prim); }
bool reads_base(const KEvent& e) { return e.rmw != nullptr && reads_state(e.rmw->prim); }

}  // namespace

std::vector<RawPattern> find_raw(std::span<const Event> pi, TxnId k) {
  std::vector<KEvent> evs = restrict_to(pi, k);
  std::vector<RawPattern> out;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    if (!writes_base(evs[i])) continue;
    BaseObjectId b = evs[i].rmw->base;
    for (std::size_t j = i + 1; j < evs.size(); ++j) {
      if (!reads_base(evs[j])) continue;
      BaseObjectId bp = evs[j].rmw->base;
      if (bp == b) continue;
      bool blocked = false;
      for (std::size_t q = i + 1; q < j; ++q)
        if (writes_base(evs[q]) && evs[q].rmw->base == bp) {
          blocked = true;
          break;
        }
      if (!blocked)
        out.push_back({i, j, b, bp, evs[i].op, evs[j].op});
    }
  }
  return out;
}

std::vector<AwarPattern> find_awar(std::span<const Event> pi, TxnId k) {
  std::vector<KEvent> evs = restrict_to(pi, k);
  std::vector<AwarPattern> out;
  for (std::size_t i = 0; i < evs.size(); ++i)
    if (evs[i].rmw != nullptr && is_awar_shaped(evs[i].rmw->prim))
      out.push_back({i, evs[i].rmw->base, evs[i].op});
  return out;
}

std::size_t PatternReport::raw_count(TxnId k) const {
  auto it = raws.find(k);
  return it == raws.end() ? 0 : it->second.size();
}

std::size_t PatternReport::awar_count(TxnId k) const {
  auto it = awars.find(k);
  return it == awars.end() ? 0 : it->second.size();
}

std::size_t PatternReport::within_op(TxnId k, int op) const {
  std::size_t n = 0;
  if (auto it = raws.find(k); it != raws.end())
    for (const RawPattern& r : it->second)
      if (r.op_i == op && r.op_j == op) ++n;
  if (auto it = awars.find(k); it != awars.end())
    for (const AwarPattern& a : it->second)
      if (a.op == op) ++n;
  return n;
}

namespace {

std::string op_tag(int op) { return op < 0 ? "-" : "op" + std::to_string(op); }

}  // namespace

std::string PatternReport::render() const {
  std::string out;
  for (const auto& [k, rs] : raws)
    for (const RawPattern& r : rs)
      out += "RAW " + std::to_string(k) + " " + op_tag(r.op_j) + " " +
             std::to_string(r.i) + " " + std::to_string(r.j) + " " +
             std::to_string(r.write_base) + " " + std::to_string(r.read_base) + "\n";
  for (const auto& [k, as] : awars)
    for (const AwarPattern& a : as)
      out += "AWAR " + std::to_string(k) + " " + op_tag(a.op) + " " +
             std::to_string(a.i) + " " + std::to_string(a.base) + "\n";
  return out;
}

PatternReport pattern_report(const Execution& e) {
  PatternReport rep;
  std::span<const Event> all(e.events());
  for (const auto& [k, rec] : e.txns()) {
    auto raws = find_raw(all, k);
    auto awars = find_awar(all, k);
    if (!raws.empty()) rep.raws[k] = std::move(raws);
    if (!awars.empty()) rep.awars[k] = std::move(awars);
  }
  return rep;
}

std::vector<std::pair<TxnId, std::size_t>> invisible_reads_violations(const Execution& e) {
  std::vector<std::pair<TxnId, std::size_t>> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Event& ev = e.events()[i];
    if (!is_nontrivial_rmw(ev)) continue;
    if (e.record(txn_of(ev)).read_only()) out.push_back({txn_of(ev), i});
  }
  return out;
}

std::vector<ContentionPair> contentions(const Execution& e) {
  std::map<BaseObjectId, std::vector<std::size_t>> by_base;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (const RmwEvent* r = as_rmw(e.events()[i])) by_base[r->base].push_back(i);
  std::vector<ContentionPair> out;
  for (const auto& [base, idxs] : by_base) {
    for (std::size_t a = 0; a < idxs.size(); ++a) {
      const RmwEvent* ea = as_rmw(e.events()[idxs[a]]);
      for (std::size_t b = a + 1; b < idxs.size(); ++b) {
        const RmwEvent* eb = as_rmw(e.events()[idxs[b]]);
        if (ea->txn == eb->txn) continue;
        if (is_trivial(ea->prim) && is_trivial(eb->prim)) continue;
        out.push_back({idxs[a], idxs[b], base});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ContentionPair& x, const ContentionPair& y) {
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  return out;
}

std::string DapViolation::render() const {
  if (kind == Kind::strict)
    return "SDAP-VIOLATION " + std::to_string(t1) + " " + std::to_string(t2) +
           " " + std::to_string(base) + " " + std::to_string(i) + " " +
           std::to_string(j);
  return "WDAP-VIOLATION " + std::to_string(prefix_len) + " " +
         std::to_string(t1) + " " + std::to_string(t2) + " " + std::to_string(base);
}

std::vector<DapViolation> check_strict_dap(const Execution& e) {
  std::vector<DapViolation> out;
  for (const ContentionPair& c : contentions(e)) {
    TxnId t1 = txn_of(e.events()[c.i]);
    TxnId t2 = txn_of(e.events()[c.j]);
    const auto& d1 = e.record(t1);
    const auto& d2 = e.record(t2);
    std::set<TObjectId> ds1 = d1.dset();
    bool overlap = false;
    for (TObjectId x : d2.dset())
      if (ds1.count(x) != 0) {
        overlap = true;
        break;
      }
    if (!overlap)
      out.push_back({DapViolation::Kind::strict, t1, t2, c.base, c.i, c.j, 0});
  }
  return out;
}

bool ConflictGraph::has_path(const std::set<TObjectId>& from,
                             const std::set<TObjectId>& to) const {
  for (TObjectId x : from)
    if (to.count(x) != 0) return true;  // zero-length path
  std::set<TObjectId> seen(from.begin(), from.end());
  std::vector<TObjectId> work(from.begin(), from.end());
  while (!work.empty()) {
    TObjectId x = work.back();
    work.pop_back();
    for (const auto& [a, b] : edges) {
      if (a != x && b != x) continue;
      TObjectId next = a == x ? b : a;
      if (!seen.insert(next).second) continue;
      if (to.count(next) != 0) return true;
      work.push_back(next);
    }
  }
  return false;
}

ConflictGraph conflict_graph(const Execution& e, TxnId t1, TxnId t2) {
  e.record(t1);  // throws for unknown transactions
  e.record(t2);
  ConflictGraph g;
  g.tau.insert(t1);
  g.tau.insert(t2);
  for (const auto& [k, rec] : e.txns()) {
    if (k == t1 || k == t2) continue;
    if (concurrent(e, k, t1) || concurrent(e, k, t2)) g.tau.insert(k);
  }
  for (TxnId k : g.tau) {
    std::set<TObjectId> d = e.record(k).dset();
    g.vertices.insert(d.begin(), d.end());
    for (auto a = d.begin(); a != d.end(); ++a)
      for (auto b = std::next(a); b != d.end(); ++b)
        g.edges.insert({*a, *b});
  }
  return g;
}

bool disjoint_access(const Execution& e, TxnId t1, TxnId t2) {
  ConflictGraph g = conflict_graph(e, t1, t2);
  return !g.has_path(e.record(t1).dset(), e.record(t2).dset());
}

std::vector<DapViolation> check_weak_dap(const AnnotatedRun& run) {
  if (!run.poised_annotated)
    throw std::invalid_argument("check_weak_dap: run lacks poised annotations");
  std::vector<DapViolation> out;
  // Group poised entries per prefix; prefixes with a single pending
  // transaction cannot produce concurrent contention.
  std::map<std::size_t, std::vector<const PoisedEntry*>> per_prefix;
  for (const PoisedEntry& p : run.poised)
    if (!p.is_response) per_prefix[p.prefix].push_back(&p);
  for (const auto& [prefix, entries] : per_prefix) {
    for (std::size_t a = 0; a < entries.size(); ++a) {
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        const PoisedEntry& pa = *entries[a];
        const PoisedEntry& pb = *entries[b];
        if (pa.txn == pb.txn || pa.event.base != pb.event.base) continue;
        if (is_trivial(pa.event.prim) && is_trivial(pb.event.prim)) continue;
        // Concurrently contending: check disjoint access over the prefix.
        std::vector<Event> slice(run.execution.events().begin(),
                                 run.execution.events().begin() +
                                     static_cast<std::ptrdiff_t>(prefix));
        Execution ep = Execution::from_events(std::move(slice),
                                              run.execution.initial_config());
        if (!ep.participates(pa.txn) || !ep.participates(pb.txn)) continue;
        if (disjoint_access(ep, pa.txn, pb.txn))
          out.push_back({DapViolation::Kind::weak, std::min(pa.txn, pb.txn),
                         std::max(pa.txn, pb.txn), pa.event.base, 0, 0, prefix});
      }
    }
  }
  return out;
}

std::string AnnotatedRun::annotation_text() const {
  std::string out;
  for (const PoisedEntry& p : poised) {
    if (p.is_response) continue;
    out += "POISED " + std::to_string(p.prefix) + " " + std::to_string(p.txn) +
           " " + std::to_string(p.event.base) + " " + format(p.event.prim) + "\n";
  }
  for (const FragmentLabel& f : fragments)
    out += "FRAG " + std::to_string(f.from) + " " + std::to_string(f.to) + " " +
           f.label + "\n";
  return out;
}

}  // namespace tmlab
