#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "tmlab/tm.hpp"

namespace tmlab {

namespace {

// Multi-version TM with invisible reads: one global version clock, one
// global writer lock, and per t-object append-only version lists. Readers
// snapshot the clock on their first read and then pick, per object, the
// newest version with timestamp <= snapshot using trivial reads only.
// Updaters buffer writes, lock, validate their read timestamps and append
// fresh version cells at clock+1. Read-only transactions commit with no
// events; version lists never shrink.
class MvInvisibleTm final : public TmInterface {
 public:
  MvInvisibleTm(int object_count, int process_count)
      : objects_(object_count), processes_(process_count) {}

  std::string name() const override { return "mv-invisible"; }

  TmClaims claims() const override {
    return {.invisible_reads = true, .weak_dap = false, .strict_dap = false};
  }

  std::unique_ptr<TmInterface> clone() const override {
    return std::make_unique<MvInvisibleTm>(*this);
  }

  void begin(TxnId k, ProcessId p) override {
    if (txns_.count(k) != 0) throw TmError("transaction id already used");
    txns_[k].process = p;
  }

  void invoke(TxnId k, const TOp& op) override {
    TxnState& t = state(k);
    if (t.pending.open) throw TmError("operation already pending");
    if (t.finished) throw TmError("transaction already t-complete");
    t.pending = Pending{};
    t.pending.open = true;
    t.pending.op = op;
    switch (op.kind) {
      case TOpKind::read:
        if (t.wbuf.count(op.object) != 0)
          t.pending.pc = Pc::respond_own;
        else if (!t.has_snapshot)
          t.pending.pc = Pc::read_clock;
        else
          t.pending.pc = Pc::read_len;
        break;
      case TOpKind::write:
        t.pending.pc = Pc::write_respond;
        break;
      case TOpKind::try_commit:
        if (t.wbuf.empty()) {
          t.pending.pc = Pc::commit_ro;
        } else {
          for (const auto& [x, v] : t.wbuf) t.pending.wlist.push_back(x);
          t.pending.rlist.assign(t.validate_set.begin(), t.validate_set.end());
          t.pending.pc = Pc::lock;
        }
        break;
    }
  }

  bool has_pending(TxnId k) const override {
    auto it = txns_.find(k);
    return it != txns_.end() && it->second.pending.open;
  }

  StepResult step(TxnId k, Configuration& mem) override {
    TxnState& t = state(k);
    if (!t.pending.open) throw TmError("no pending operation");
    Pending& p = t.pending;
    TObjectId x = p.op.object;
    switch (p.pc) {
      case Pc::respond_own:
        return respond(t, TOpResponse::of(t.wbuf.at(x)));
      case Pc::read_clock: {
        RmwEvent ev = apply_primitive(mem, kClock, Primitive::read(), k);
        t.snapshot = ev.response;
        t.has_snapshot = true;
        p.pc = Pc::read_len;
        return StepResult::emitted(ev);
      }
      case Pc::read_len: {
        RmwEvent ev = apply_primitive(mem, len_cell(x), Primitive::read(), k);
        p.list_len = ev.response;
        p.scan_i = 0;
        p.best_slot = 0;
        p.best_ts = -1;
        p.pc = Pc::scan_ts;
        return StepResult::emitted(ev);
      }
      case Pc::scan_ts: {
        RmwEvent ev =
            apply_primitive(mem, cell(x, p.scan_i, Field::ts), Primitive::read(), k);
        if (ev.response <= t.snapshot && ev.response > p.best_ts) {
          p.best_ts = ev.response;
          p.best_slot = p.scan_i;
        }
        ++p.scan_i;
        if (p.scan_i > p.list_len) p.pc = Pc::read_val;
        return StepResult::emitted(ev);
      }
      case Pc::read_val: {
        RmwEvent ev =
            apply_primitive(mem, cell(x, p.best_slot, Field::val), Primitive::read(), k);
        p.result = ev.response;
        p.pc = Pc::respond_value;
        return StepResult::emitted(ev);
      }
      case Pc::respond_value:
        t.validate_set.insert(x);
        return respond(t, TOpResponse::of(p.result));
      case Pc::write_respond:
        t.wbuf[x] = p.op.value;
        return respond(t, TOpResponse::ok());
      case Pc::commit_ro:
        return respond(t, TOpResponse::committed());
      case Pc::lock: {
        RmwEvent ev = apply_primitive(mem, kWlock, Primitive::cas(0, k), k);
        p.pc = ev.response == 1 ? Pc::clock_read : Pc::respond_abort;
        return StepResult::emitted(ev);
      }
      case Pc::clock_read: {
        RmwEvent ev = apply_primitive(mem, kClock, Primitive::read(), k);
        p.clock_now = ev.response;
        p.idx = 0;
        p.pc = p.rlist.empty() ? Pc::inst_len : Pc::val_len;
        return StepResult::emitted(ev);
      }
      case Pc::val_len: {
        RmwEvent ev =
            apply_primitive(mem, len_cell(p.rlist[p.idx]), Primitive::read(), k);
        p.cur_len = ev.response;
        p.pc = Pc::val_ts;
        return StepResult::emitted(ev);
      }
      case Pc::val_ts: {
        RmwEvent ev = apply_primitive(mem, cell(p.rlist[p.idx], p.cur_len, Field::ts),
                                      Primitive::read(), k);
        if (ev.response > t.snapshot) {
          p.pc = Pc::unlock_abort;
        } else {
          ++p.idx;
          if (p.idx < p.rlist.size()) {
            p.pc = Pc::val_len;
          } else {
            p.idx = 0;
            p.pc = Pc::inst_len;
          }
        }
        return StepResult::emitted(ev);
      }
      case Pc::inst_len: {
        RmwEvent ev =
            apply_primitive(mem, len_cell(p.wlist[p.idx]), Primitive::read(), k);
        p.new_slot = ev.response + 1;
        p.pc = Pc::inst_val;
        return StepResult::emitted(ev);
      }
      case Pc::inst_val: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev = apply_primitive(mem, cell(w, p.new_slot, Field::val),
                                      Primitive::write(t.wbuf.at(w)), k);
        p.pc = Pc::inst_writer;
        return StepResult::emitted(ev);
      }
      case Pc::inst_writer: {
        RmwEvent ev = apply_primitive(mem, cell(p.wlist[p.idx], p.new_slot, Field::writer),
                                      Primitive::write(k), k);
        p.pc = Pc::inst_ts;
        return StepResult::emitted(ev);
      }
      case Pc::inst_ts: {
        RmwEvent ev = apply_primitive(mem, cell(p.wlist[p.idx], p.new_slot, Field::ts),
                                      Primitive::write(p.clock_now + 1), k);
        p.pc = Pc::inst_bump_len;
        return StepResult::emitted(ev);
      }
      case Pc::inst_bump_len: {
        RmwEvent ev = apply_primitive(mem, len_cell(p.wlist[p.idx]),
                                      Primitive::write(p.new_slot), k);
        ++p.idx;
        p.pc = p.idx < p.wlist.size() ? Pc::inst_len : Pc::bump_clock;
        return StepResult::emitted(ev);
      }
      case Pc::bump_clock: {
        RmwEvent ev =
            apply_primitive(mem, kClock, Primitive::write(p.clock_now + 1), k);
        p.pc = Pc::unlock_commit;
        return StepResult::emitted(ev);
      }
      case Pc::unlock_commit: {
        RmwEvent ev = apply_primitive(mem, kWlock, Primitive::write(0), k);
        p.pc = Pc::respond_commit;
        return StepResult::emitted(ev);
      }
      case Pc::unlock_abort: {
        RmwEvent ev = apply_primitive(mem, kWlock, Primitive::write(0), k);
        p.pc = Pc::respond_abort;
        return StepResult::emitted(ev);
      }
      case Pc::respond_commit:
        return respond(t, TOpResponse::committed());
      case Pc::respond_abort:
        return respond(t, TOpResponse::aborted());
    }
    throw TmError("corrupt step machine state");
  }

  std::string private_state(TxnId k) const override {
    auto it = txns_.find(k);
    if (it == txns_.end()) return "";
    const TxnState& t = it->second;
    std::ostringstream out;
    out << "p=" << t.process << " fin=" << t.finished << " snap=";
    if (t.has_snapshot)
      out << t.snapshot;
    else
      out << "-";
    out << " wbuf={";
    for (const auto& [x, v] : t.wbuf) out << x << ":" << v << ",";
    out << "} rset={";
    for (TObjectId x : t.validate_set) out << x << ",";
    out << "} pending=" << (t.pending.open ? static_cast<int>(t.pending.pc) : -1);
    return out.str();
  }

  std::optional<std::int64_t> version_count(TObjectId x,
                                            const Configuration& mem) const override {
    if (x < 1 || x > objects_) return std::nullopt;
    return mem.base(len_cell(x)) + 1;
  }

 private:
  enum class Pc : int {
    respond_own,
    read_clock,
    read_len,
    scan_ts,
    read_val,
    respond_value,
    write_respond,
    commit_ro,
    lock,
    clock_read,
    val_len,
    val_ts,
    inst_len,
    inst_val,
    inst_writer,
    inst_ts,
    inst_bump_len,
    bump_clock,
    unlock_commit,
    unlock_abort,
    respond_commit,
    respond_abort,
  };

  struct Pending {
    bool open = false;
    TOp op;
    Pc pc = Pc::respond_own;
    Value result = 0;
    Value list_len = 0;
    Value scan_i = 0;
    Value best_slot = 0;
    Value best_ts = -1;
    Value cur_len = 0;
    Value new_slot = 0;
    Value clock_now = 0;
    std::size_t idx = 0;
    std::vector<TObjectId> wlist;
    std::vector<TObjectId> rlist;
  };

  struct TxnState {
    ProcessId process = 0;
    bool finished = false;
    bool has_snapshot = false;
    Value snapshot = 0;
    std::map<TObjectId, Value> wbuf;
    std::set<TObjectId> validate_set;
    Pending pending;
  };

  static constexpr BaseObjectId kClock = 0;
  static constexpr BaseObjectId kWlock = 1;

  enum class Field : int { val = 0, writer = 1, ts = 2 };

  BaseObjectId len_cell(TObjectId x) const { return 1 + x; }

  BaseObjectId cell(TObjectId x, Value slot, Field f) const {
    return 2 + objects_ + (slot * objects_ + (x - 1)) * 3 + static_cast<int>(f);
  }

  TxnState& state(TxnId k) {
    auto it = txns_.find(k);
    if (it == txns_.end()) throw TmError("unknown transaction");
    return it->second;
  }

  StepResult respond(TxnState& t, TOpResponse r) {
    t.pending.open = false;
    if (r.is_abort() || r.is_commit()) t.finished = true;
    return StepResult::done(r);
  }

  int objects_;
  int processes_;
  std::map<TxnId, TxnState> txns_;
};

}  // namespace

std::unique_ptr<TmInterface> make_mv_invisible_tm(int object_count, int process_count) {
  return std::make_unique<MvInvisibleTm>(object_count, process_count);
}

}  // namespace tmlab
