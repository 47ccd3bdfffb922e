#include "tmlab/serializability.hpp"

#include <algorithm>

namespace tmlab {

namespace {

// The last t-operation of a transaction that is complete-but-not-t-complete
// is a responded read/write; a t-incomplete one may instead have a pending
// invocation. Classifies what the completion procedure has to do.
struct PendingShape {
  std::vector<TxnId> pending_ops;   // pending read/write invocation
  std::vector<TxnId> pending_tryc;  // pending tryCommit invocation
  std::vector<TxnId> need_tryc;     // complete but not t-complete
};

PendingShape classify(const History& h) {
  PendingShape shape;
  for (const auto& [k, rec] : h.txns()) {
    if (rec.t_complete) continue;
    if (rec.complete) {
      shape.need_tryc.push_back(k);
      continue;
    }
    // The pending invocation is necessarily k's last event.
    const TOpEvent& last = h.events()[rec.last_event];
    if (last.op.kind == TOpKind::try_commit)
      shape.pending_tryc.push_back(k);
    else
      shape.pending_ops.push_back(k);
  }
  return shape;
}

}  // namespace

std::vector<Completion> enumerate_completions(const History& h) {
  PendingShape shape = classify(h);
  std::vector<Completion> out;
  std::size_t branches = std::size_t{1} << shape.pending_tryc.size();
  out.reserve(branches);
  for (std::size_t mask = 0; mask < branches; ++mask) {
    Completion c;
    std::vector<TOpEvent> events = h.events();
    // Insertions go to the end of the history, ascending by transaction id;
    // per-transaction projections are insensitive to the position.
    std::map<TxnId, std::vector<TOpEvent>> tail;
    for (TxnId k : shape.pending_ops) {
      const TOpEvent& inv = h.events()[h.record(k).last_event];
      tail[k].push_back(TOpEvent::res(k, inv.op, TOpResponse::aborted()));
      c.pending_ops_aborted.push_back(k);
    }
    for (std::size_t i = 0; i < shape.pending_tryc.size(); ++i) {
      TxnId k = shape.pending_tryc[i];
      bool commit = (mask & (std::size_t{1} << i)) == 0;  // all-commit first
      tail[k].push_back(TOpEvent::res(
          k, TOp::try_commit(),
          commit ? TOpResponse::committed() : TOpResponse::aborted()));
      c.trycommit_committed[k] = commit;
    }
    for (TxnId k : shape.need_tryc) {
      tail[k].push_back(TOpEvent::inv(k, TOp::try_commit()));
      tail[k].push_back(TOpEvent::res(k, TOp::try_commit(), TOpResponse::aborted()));
      c.trycommit_appended.push_back(k);
    }
    for (auto& [k, evs] : tail)
      events.insert(events.end(), evs.begin(), evs.end());
    c.history = History(std::move(events));
    out.push_back(std::move(c));
  }
  return out;
}

History committed_projection(const History& hbar) {
  for (const auto& [k, rec] : hbar.txns())
    if (!rec.t_complete)
      throw std::invalid_argument("committed_projection: input not t-complete");
  std::vector<TOpEvent> events;
  for (const TOpEvent& ev : hbar.events())
    if (hbar.record(ev.txn).status == TxnStatus::committed) events.push_back(ev);
  return History(std::move(events));
}

Value latest_written_value(const History& s, std::size_t read_index, Value initial) {
  const TOpEvent& rd = s.events().at(read_index);
  if (rd.op.kind != TOpKind::read)
    throw std::invalid_argument("latest_written_value: not a read");
  TxnId k = rd.txn;
  TObjectId x = rd.op.object;

  // Case (1): the latest write to X by T_k itself before the read.
  for (std::size_t i = read_index; i-- > 0;) {
    const TOpEvent& ev = s.events()[i];
    if (ev.txn != k || !ev.is_invocation()) continue;
    if (ev.op.kind == TOpKind::write && ev.op.object == x) return ev.op.value;
  }

  // Case (2): the latest write to X by a committed transaction that
  // precedes T_k; the initial transaction wrote `initial` before everything.
  std::size_t k_first = s.record(k).first_event;
  Value latest = initial;
  for (std::size_t i = 0; i < k_first; ++i) {
    const TOpEvent& ev = s.events()[i];
    if (!ev.is_invocation() || ev.op.kind != TOpKind::write || ev.op.object != x)
      continue;
    const TxnRecord& writer = s.record(ev.txn);
    if (writer.status != TxnStatus::committed) continue;
    if (!real_time_precedes(s, ev.txn, k)) continue;
    latest = ev.op.value;
  }
  return latest;
}

bool is_legal_tsequential(const History& s) {
  std::vector<TxnId> ids;
  for (const auto& [k, rec] : s.txns()) ids.push_back(k);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (concurrent(s, ids[i], ids[j]))
        throw std::invalid_argument("is_legal_tsequential: input not t-sequential");

  for (std::size_t i = 0; i < s.size(); ++i) {
    const TOpEvent& ev = s.events()[i];
    if (!ev.is_response() || ev.op.kind != TOpKind::read) continue;
    if (ev.result.is_abort()) continue;
    if (ev.result.val != latest_written_value(s, i)) return false;
  }
  return true;
}

History lay_out_serialization(const Completion& c, const std::vector<TxnId>& order) {
  std::vector<TOpEvent> events;
  for (TxnId k : order) {
    auto proj = c.history.project(k);
    events.insert(events.end(), proj.begin(), proj.end());
  }
  return History(std::move(events));
}

namespace {

// Per-transaction digest used by the fast legality check inside the order
// search: reads as (object, value) in order with the values the transaction
// observed, writes as (object, value) in order.
struct TxnOps {
  struct Op {
    bool is_read;
    TObjectId object;
    Value value;  // read: observed response; write: written value
  };
  std::vector<Op> ops;
};

std::map<TxnId, TxnOps> digest_committed(const Completion& c,
                                         const std::vector<TxnId>& committed) {
  std::map<TxnId, TxnOps> out;
  for (TxnId k : committed) out[k] = {};
  for (std::size_t i = 0; i < c.history.size(); ++i) {
    const TOpEvent& ev = c.history.events()[i];
    auto it = out.find(ev.txn);
    if (it == out.end()) continue;
    if (ev.is_invocation() && ev.op.kind == TOpKind::write)
      it->second.ops.push_back({false, ev.op.object, ev.op.value});
    if (ev.is_response() && ev.op.kind == TOpKind::read)
      it->second.ops.push_back({true, ev.op.object, ev.result.val});
  }
  return out;
}

// Would placing this transaction next in the serialization keep every one of
// its reads returning the latest written value?
bool txn_legal_at(const TxnOps& ops, const std::map<TObjectId, Value>& committed_state) {
  std::map<TObjectId, Value> own;
  for (const TxnOps::Op& op : ops.ops) {
    if (op.is_read) {
      auto mine = own.find(op.object);
      Value expect;
      if (mine != own.end()) {
        expect = mine->second;
      } else {
        auto it = committed_state.find(op.object);
        expect = it == committed_state.end() ? 0 : it->second;
      }
      if (op.value != expect) return false;
    } else {
      own[op.object] = op.value;
    }
  }
  return true;
}

void commit_into(const TxnOps& ops, std::map<TObjectId, Value>& committed_state) {
  for (const TxnOps::Op& op : ops.ops)
    if (!op.is_read) committed_state[op.object] = op.value;
}

struct OrderSearch {
  const std::map<TxnId, TxnOps>& digests;
  const std::map<TxnId, std::vector<TxnId>>& preds;  // real-time predecessors
  std::vector<TxnId> committed;                      // ascending
  std::uint64_t max_orders;
  std::uint64_t orders_examined = 0;
  bool capped = false;
  std::vector<TxnId> current;
  std::map<TxnId, bool> placed;
  std::optional<std::vector<TxnId>> found;

  // Exhaustive over complete orders: legality is only evaluated at the
  // leaves so the search counts exactly the total orders extending the
  // real-time partial order, in lexicographic transaction-id order.
  void dfs() {
    if (capped || found) return;
    if (current.size() == committed.size()) {
      if (orders_examined == max_orders) {
        capped = true;
        return;
      }
      ++orders_examined;
      std::map<TObjectId, Value> replay;
      bool legal = true;
      for (TxnId k : current) {
        if (!txn_legal_at(digests.at(k), replay)) {
          legal = false;
          break;
        }
        commit_into(digests.at(k), replay);
      }
      if (legal) found = current;
      return;
    }
    for (TxnId k : committed) {
      if (placed[k]) continue;
      bool ready = true;
      auto it = preds.find(k);
      if (it != preds.end())
        for (TxnId p : it->second)
          if (!placed[p]) {
            ready = false;
            break;
          }
      if (!ready) continue;
      placed[k] = true;
      current.push_back(k);
      dfs();
      current.pop_back();
      placed[k] = false;
      if (capped || found) return;
    }
  }
};

}  // namespace

std::string SerializationVerdict::report() const {
  std::string out;
  switch (outcome) {
    case Outcome::serializable: {
      out = "VERDICT serializable\nWITNESS";
      for (TxnId k : witness->order) out += " " + std::to_string(k);
      out += "\n";
      return out;
    }
    case Outcome::not_serializable:
      out = "VERDICT not-serializable\n";
      break;
    case Outcome::bound_exceeded:
      out = "VERDICT bound-exceeded\n";
      break;
  }
  out += "EXHAUSTED completions=" + std::to_string(exhaustion.completions_examined) +
         " orders=" + std::to_string(exhaustion.orders_examined) + "\n";
  return out;
}

SerializationVerdict check_strict_serializability(const History& h,
                                                  const CheckBounds& bounds) {
  SerializationVerdict verdict;
  if (h.txns().size() > bounds.max_txns) {
    verdict.outcome = SerializationVerdict::Outcome::bound_exceeded;
    return verdict;
  }

  std::uint64_t orders_total = 0;
  std::uint64_t completions_done = 0;
  for (Completion& c : enumerate_completions(h)) {
    ++completions_done;
    std::vector<TxnId> committed;
    for (const auto& [k, rec] : c.history.txns())
      if (rec.status == TxnStatus::committed) committed.push_back(k);
    std::sort(committed.begin(), committed.end());

    // Real-time constraints come from the original history H.
    std::map<TxnId, std::vector<TxnId>> preds;
    for (TxnId a : committed)
      for (TxnId b : committed)
        if (a != b && real_time_precedes(h, a, b)) preds[b].push_back(a);

    auto digests = digest_committed(c, committed);
    std::uint64_t remaining = bounds.max_orders - orders_total;
    OrderSearch search{digests, preds, committed, remaining};
    search.dfs();
    orders_total += search.orders_examined;
    if (search.found) {
      verdict.outcome = SerializationVerdict::Outcome::serializable;
      SerializationWitness w;
      w.order = *search.found;
      w.serialization = lay_out_serialization(c, w.order);
      w.completion = std::move(c);
      verdict.witness = std::move(w);
      verdict.exhaustion = {completions_done, orders_total};
      return verdict;
    }
    if (search.capped) {
      verdict.outcome = SerializationVerdict::Outcome::bound_exceeded;
      verdict.exhaustion = {completions_done, orders_total};
      return verdict;
    }
  }
  verdict.outcome = SerializationVerdict::Outcome::not_serializable;
  verdict.exhaustion = {completions_done, orders_total};
  return verdict;
}

}  // namespace tmlab
