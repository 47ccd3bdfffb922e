#include "tmlab/execution.hpp"

#include <algorithm>

namespace tmlab {

namespace {

struct PendingOp {
  bool open = false;
  TOp op;
};

// Folds one t-operation event into a transaction record, enforcing the
// well-formedness rules: E|k sequential, nothing after A_k/C_k, responses
// match their invocations.
void fold_top_event(const TOpEvent& ev, std::size_t pos, TxnRecord& rec,
                    PendingOp& pending, bool fresh) {
  if (fresh) rec.first_event = pos;
  rec.last_event = pos;
  if (rec.t_complete)
    throw MalformedError("transaction " + std::to_string(ev.txn) +
                         " has events after A/C", pos);
  if (ev.is_invocation()) {
    if (pending.open)
      throw MalformedError("transaction " + std::to_string(ev.txn) +
                           " invoked an operation while one is pending", pos);
    pending.open = true;
    pending.op = ev.op;
    rec.op_count++;
    if (ev.op.kind == TOpKind::read) rec.rset.insert(ev.op.object);
    if (ev.op.kind == TOpKind::write) rec.wset.insert(ev.op.object);
    rec.complete = false;
    return;
  }
  if (!pending.open || !(pending.op == ev.op))
    throw MalformedError("response without matching invocation", pos);
  switch (ev.op.kind) {
    case TOpKind::read:
      if (!ev.result.is_value() && !ev.result.is_abort())
        throw MalformedError("read must return a value or A", pos);
      break;
    case TOpKind::write:
      if (ev.result.kind != TOpResponse::Kind::ok && !ev.result.is_abort())
        throw MalformedError("write must return ok or A", pos);
      break;
    case TOpKind::try_commit:
      if (!ev.result.is_commit() && !ev.result.is_abort())
        throw MalformedError("tryC must return C or A", pos);
      break;
  }
  pending.open = false;
  rec.complete = true;
  if (ev.result.is_abort()) {
    rec.status = TxnStatus::aborted;
    rec.t_complete = true;
  } else if (ev.result.is_commit()) {
    rec.status = TxnStatus::committed;
    rec.t_complete = true;
  }
}

}  // namespace

std::set<TObjectId> TxnRecord::dset() const {
  std::set<TObjectId> d = rset;
  d.insert(wset.begin(), wset.end());
  return d;
}

TxnClass TxnRecord::classification() const {
  if (wset.empty()) return TxnClass::read_only;
  if (rset.empty()) return TxnClass::write_only;
  return TxnClass::updating;
}

History::History(std::vector<TOpEvent> events) : events_(std::move(events)) {
  std::map<TxnId, PendingOp> pending;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const TOpEvent& ev = events_[i];
    bool fresh = records_.count(ev.txn) == 0;
    TxnRecord& rec = records_[ev.txn];
    rec.id = ev.txn;
    fold_top_event(ev, i, rec, pending[ev.txn], fresh);
  }
}

const TxnRecord& History::record(TxnId k) const {
  auto it = records_.find(k);
  if (it == records_.end())
    throw std::out_of_range("unknown transaction " + std::to_string(k));
  return it->second;
}

std::vector<TOpEvent> History::project(TxnId k) const {
  std::vector<TOpEvent> out;
  for (const TOpEvent& ev : events_)
    if (ev.txn == k) out.push_back(ev);
  return out;
}

void History::validate() const {
  History recheck(events_);
  (void)recheck;
}

const std::vector<std::size_t> Execution::kEmptyIndex{};

Execution Execution::from_events(std::vector<Event> events,
                                 const Configuration& initial) {
  Execution e;
  e.initial_config_ = Configuration(Configuration::Universe::open);
  for (const auto& [b, v] : initial.bases()) e.initial_config_.declare_base(b, v);
  e.final_config_ = e.initial_config_;
  e.events_ = std::move(events);

  std::map<TxnId, PendingOp> pending;
  for (std::size_t i = 0; i < e.events_.size(); ++i) {
    const Event& ev = e.events_[i];
    TxnId k = txn_of(ev);
    bool fresh = e.records_.count(k) == 0;
    TxnRecord& rec = e.records_[k];
    rec.id = k;
    e.proj_[k].push_back(i);
    if (const RmwEvent* r = as_rmw(ev)) {
      if (fresh || !pending[k].open)
        throw MalformedError("RMW event outside any t-operation", i);
      if (rec.t_complete)
        throw MalformedError("RMW event after A/C", i);
      Value state = e.final_config_.base(r->base);
      Value expect = response_of(r->prim, state);
      if (expect != r->response)
        throw MalformedError("RMW response " + std::to_string(r->response) +
                             " does not match replayed state (expected " +
                             std::to_string(expect) + ")", i);
      e.final_config_.set_base(r->base, update_of(r->prim, state));
      rec.last_event = i;
      rec.complete = false;
    } else {
      fold_top_event(*as_top(ev), i, rec, pending[k], fresh);
    }
  }
  return e;
}

const TxnRecord& Execution::record(TxnId k) const {
  auto it = records_.find(k);
  if (it == records_.end())
    throw std::out_of_range("unknown transaction " + std::to_string(k));
  return it->second;
}

std::vector<Event> Execution::project(TxnId k) const {
  std::vector<Event> out;
  auto it = proj_.find(k);
  if (it == proj_.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(events_[i]);
  return out;
}

const std::vector<std::size_t>& Execution::projection_index(TxnId k) const {
  auto it = proj_.find(k);
  return it == proj_.end() ? kEmptyIndex : it->second;
}

History Execution::export_history() const {
  std::vector<TOpEvent> tops;
  for (const Event& ev : events_)
    if (const TOpEvent* t = as_top(ev)) tops.push_back(*t);
  return History(std::move(tops));
}

namespace {

template <typename Seq>
bool rt_precedes(const Seq& s, TxnId a, TxnId b) {
  const TxnRecord& ra = s.record(a);
  const TxnRecord& rb = s.record(b);
  return ra.t_complete && ra.last_event < rb.first_event;
}

}  // namespace

bool real_time_precedes(const History& h, TxnId a, TxnId b) {
  return rt_precedes(h, a, b);
}
bool concurrent(const History& h, TxnId a, TxnId b) {
  return !rt_precedes(h, a, b) && !rt_precedes(h, b, a);
}
bool real_time_precedes(const Execution& e, TxnId a, TxnId b) {
  return rt_precedes(e, a, b);
}
bool concurrent(const Execution& e, TxnId a, TxnId b) {
  return !rt_precedes(e, a, b) && !rt_precedes(e, b, a);
}

bool is_step_contention_free(const Execution& e, TxnId k) {
  const auto& idx = e.projection_index(k);
  if (idx.empty()) return true;
  return idx.back() - idx.front() + 1 == idx.size();
}

bool is_step_contention_free(const Execution& e) {
  for (const auto& [k, rec] : e.txns())
    if (!is_step_contention_free(e, k)) return false;
  return true;
}

bool is_step_contention_free_op(const Execution& e, TxnId k,
                                std::size_t op_ordinal) {
  // Events of the op: its invocation, the txn's RMW events up to the
  // matching response, and the response itself.
  std::vector<std::size_t> span;
  std::size_t seen_ops = 0;
  bool inside = false;
  for (std::size_t i : e.projection_index(k)) {
    const Event& ev = e.events()[i];
    if (const TOpEvent* t = as_top(ev)) {
      if (t->is_invocation()) {
        if (seen_ops == op_ordinal + 1) break;
        ++seen_ops;
        inside = seen_ops == op_ordinal + 1;
        if (inside) span.push_back(i);
      } else if (inside) {
        span.push_back(i);
        inside = false;
      }
    } else if (inside) {
      span.push_back(i);
    }
  }
  if (span.empty())
    throw std::out_of_range("transaction " + std::to_string(k) +
                            " has no t-operation #" + std::to_string(op_ordinal));
  return span.back() - span.front() + 1 == span.size();
}

namespace {

template <typename Seq>
ContentionFlags flags_of(const Seq& s, const History& h) {
  ContentionFlags f;
  f.is_complete = true;
  f.is_t_complete = true;
  for (const auto& [k, rec] : s.txns()) {
    if (!rec.complete) f.is_complete = false;
    if (!rec.t_complete) f.is_t_complete = false;
  }
  f.is_quiescent = f.is_complete;
  f.is_t_quiescent = f.is_t_complete;

  f.is_sequential = true;
  const auto& tops = h.events();
  for (std::size_t i = 0; i < tops.size(); ++i) {
    if (!tops[i].is_invocation()) continue;
    if (i + 1 == tops.size()) continue;  // last event in the history
    const TOpEvent& nxt = tops[i + 1];
    if (!(nxt.is_response() && nxt.txn == tops[i].txn && nxt.op == tops[i].op)) {
      f.is_sequential = false;
      break;
    }
  }

  f.is_t_sequential = true;
  std::vector<TxnId> ids;
  for (const auto& [k, rec] : s.txns()) ids.push_back(k);
  for (std::size_t i = 0; i < ids.size() && f.is_t_sequential; ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (concurrent(s, ids[i], ids[j])) {
        f.is_t_sequential = false;
        break;
      }
  return f;
}

}  // namespace

ContentionFlags contention_predicates(const Execution& e) {
  return flags_of(e, e.export_history());
}

ContentionFlags contention_predicates(const History& h) {
  return flags_of(h, h);
}

bool equivalent(const History& a, const History& b) {
  if (a.txns().size() != b.txns().size()) return false;
  for (const auto& [k, rec] : a.txns()) {
    if (!b.participates(k)) return false;
    if (a.project(k) != b.project(k)) return false;
  }
  return true;
}

}  // namespace tmlab
