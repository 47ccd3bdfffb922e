#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "per_object_tm.hpp"
#include "tmlab/tm.hpp"

namespace tmlab {

namespace {

// Per t-object metadata only: a version counter doubling as a sequence
// lock (odd = locked), the value cell, and one announcement counter per
// process. A read announces itself with a fetch-add (an AWAR), then reads
// the version and value cells (completing a RAW) and returns whatever it
// saw; it never aborts. Writers buffer, then lock-validate-install in
// ascending t-object order, aborting on observed writer presence (lock held
// or a read version moved) and, in the visible-read variant, on reader
// announcements landing inside the commit window.
class PerObjectTm final : public TmInterface {
 public:
  PerObjectTm(std::string name, TmClaims claims, bool reader_presence_check,
              int object_count, int process_count)
      : name_(std::move(name)),
        claims_(claims),
        reader_check_(reader_presence_check),
        objects_(object_count),
        processes_(process_count) {}

  std::string name() const override { return name_; }
  TmClaims claims() const override { return claims_; }

  std::unique_ptr<TmInterface> clone() const override {
    return std::make_unique<PerObjectTm>(*this);
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
        t.pending.pc = t.wbuf.count(op.object) != 0 ? Pc::respond_own : Pc::announce;
        break;
      case TOpKind::write:
        t.pending.pc = Pc::write_respond;
        break;
      case TOpKind::try_commit:
        if (t.wbuf.empty()) {
          t.pending.pc = Pc::commit_ro;
        } else {
          for (const auto& [x, v] : t.wbuf) t.pending.wlist.push_back(x);
          for (const auto& [x, v] : t.rvers)
            if (t.wbuf.count(x) == 0) t.pending.rlist.push_back(x);
          t.pending.pc = Pc::lock_read;
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
      case Pc::announce: {
        RmwEvent ev =
            apply_primitive(mem, ann_cell(x, t.process), Primitive::fetch_add(1), k);
        p.pc = Pc::read_ver;
        return StepResult::emitted(ev);
      }
      case Pc::read_ver: {
        RmwEvent ev = apply_primitive(mem, ver_cell(x), Primitive::read(), k);
        p.observed_ver = ev.response;
        p.pc = Pc::read_val;
        return StepResult::emitted(ev);
      }
      case Pc::read_val: {
        RmwEvent ev = apply_primitive(mem, val_cell(x), Primitive::read(), k);
        p.result = ev.response;
        p.pc = Pc::respond_value;
        return StepResult::emitted(ev);
      }
      case Pc::respond_value:
        if (t.rvers.count(x) == 0) t.rvers[x] = p.observed_ver;
        return respond(t, TOpResponse::of(p.result));
      case Pc::write_respond:
        t.wbuf[x] = p.op.value;
        return respond(t, TOpResponse::ok());
      case Pc::commit_ro:
        return respond(t, TOpResponse::committed());

      case Pc::lock_read: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev = apply_primitive(mem, ver_cell(w), Primitive::read(), k);
        if (ev.response % 2 != 0) {
          start_release(p);
        } else {
          p.lock_expect = ev.response;
          p.pc = Pc::lock_cas;
        }
        return StepResult::emitted(ev);
      }
      case Pc::lock_cas: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev = apply_primitive(
            mem, ver_cell(w), Primitive::cas(p.lock_expect, p.lock_expect + 1), k);
        if (ev.response != 1) {
          start_release(p);
          return StepResult::emitted(ev);
        }
        p.lock_seen[w] = p.lock_expect;
        // A locked object we also read validates against the version cell
        // we just observed, with no extra shared access.
        auto rv = t.rvers.find(w);
        if (rv != t.rvers.end() && rv->second != p.lock_expect) {
          ++p.locked;
          start_release(p);
          return StepResult::emitted(ev);
        }
        ++p.locked;
        ++p.idx;
        if (p.idx < p.wlist.size()) {
          p.pc = Pc::lock_read;
        } else {
          p.idx = 0;
          p.scan = 0;
          p.pc = reader_check_ ? Pc::ann_scan_first : next_after_ann_first(p);
        }
        return StepResult::emitted(ev);
      }
      case Pc::ann_scan_first: {
        RmwEvent ev = apply_primitive(mem, scan_cell(p), Primitive::read(), k);
        p.ann_before.push_back(ev.response);
        ++p.scan;
        if (p.scan == p.wlist.size() * static_cast<std::size_t>(processes_)) {
          p.idx = 0;
          p.scan = 0;
          p.pc = next_after_ann_first(p);
        }
        return StepResult::emitted(ev);
      }
      case Pc::validate: {
        TObjectId r = p.rlist[p.idx];
        RmwEvent ev = apply_primitive(mem, ver_cell(r), Primitive::read(), k);
        if (ev.response != t.rvers.at(r)) {
          start_release(p);
        } else {
          ++p.idx;
          if (p.idx == p.rlist.size()) {
            p.scan = 0;
            p.pc = reader_check_ ? Pc::ann_scan_second : Pc::install_val;
            p.idx = 0;
          }
        }
        return StepResult::emitted(ev);
      }
      case Pc::ann_scan_second: {
        RmwEvent ev = apply_primitive(mem, scan_cell(p), Primitive::read(), k);
        bool changed = ev.response != p.ann_before[p.scan];
        ++p.scan;
        if (changed) {
          start_release(p);
        } else if (p.scan == p.wlist.size() * static_cast<std::size_t>(processes_)) {
          p.idx = 0;
          p.pc = Pc::install_val;
        }
        return StepResult::emitted(ev);
      }
      case Pc::install_val: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev =
            apply_primitive(mem, val_cell(w), Primitive::write(t.wbuf.at(w)), k);
        p.pc = Pc::install_ver;
        return StepResult::emitted(ev);
      }
      case Pc::install_ver: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev = apply_primitive(mem, ver_cell(w),
                                      Primitive::write(p.lock_seen.at(w) + 2), k);
        ++p.idx;
        p.pc = p.idx < p.wlist.size() ? Pc::install_val : Pc::respond_commit;
        return StepResult::emitted(ev);
      }
      case Pc::release: {
        TObjectId w = p.wlist[p.idx];
        RmwEvent ev = apply_primitive(mem, ver_cell(w),
                                      Primitive::write(p.lock_seen.at(w)), k);
        ++p.idx;
        p.pc = p.idx < p.locked ? Pc::release : Pc::respond_abort;
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
    out << "p=" << t.process << " fin=" << t.finished << " wbuf={";
    for (const auto& [x, v] : t.wbuf) out << x << ":" << v << ",";
    out << "} rvers={";
    for (const auto& [x, v] : t.rvers) out << x << ":" << v << ",";
    out << "} pending=" << (t.pending.open ? static_cast<int>(t.pending.pc) : -1);
    return out.str();
  }

 private:
  enum class Pc : int {
    respond_own,
    announce,
    read_ver,
    read_val,
    respond_value,
    write_respond,
    commit_ro,
    lock_read,
    lock_cas,
    ann_scan_first,
    validate,
    ann_scan_second,
    install_val,
    install_ver,
    release,
    respond_commit,
    respond_abort,
  };

  struct Pending {
    bool open = false;
    TOp op;
    Pc pc = Pc::respond_own;
    Value result = 0;
    Value observed_ver = 0;
    Value lock_expect = 0;
    std::size_t idx = 0;
    std::size_t scan = 0;
    std::size_t locked = 0;
    std::vector<TObjectId> wlist;
    std::vector<TObjectId> rlist;
    std::map<TObjectId, Value> lock_seen;
    std::vector<Value> ann_before;
  };

  struct TxnState {
    ProcessId process = 0;
    bool finished = false;
    std::map<TObjectId, Value> wbuf;
    std::map<TObjectId, Value> rvers;  // version observed at first read
    Pending pending;
  };

  BaseObjectId block(TObjectId x) const {
    return static_cast<BaseObjectId>(x - 1) * (2 + processes_);
  }
  BaseObjectId ver_cell(TObjectId x) const { return block(x); }
  BaseObjectId val_cell(TObjectId x) const { return block(x) + 1; }
  BaseObjectId ann_cell(TObjectId x, ProcessId p) const { return block(x) + 1 + p; }

  BaseObjectId scan_cell(const Pending& p) const {
    std::size_t per = static_cast<std::size_t>(processes_);
    TObjectId w = p.wlist[p.scan / per];
    ProcessId proc = static_cast<ProcessId>(p.scan % per) + 1;
    return ann_cell(w, proc);
  }

  Pc next_after_ann_first(const Pending& p) const {
    return p.rlist.empty() ? (reader_check_ ? Pc::ann_scan_second : Pc::install_val)
                           : Pc::validate;
  }

  void start_release(Pending& p) {
    if (p.locked == 0) {
      p.pc = Pc::respond_abort;
    } else {
      p.idx = 0;
      p.pc = Pc::release;
    }
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

  std::string name_;
  TmClaims claims_;
  bool reader_check_;
  int objects_;
  int processes_;
  std::map<TxnId, TxnState> txns_;
};

}  // namespace

namespace detail {

std::unique_ptr<TmInterface> make_per_object_tm(std::string name, TmClaims claims,
                                                bool reader_presence_check,
                                                int object_count, int process_count) {
  return std::make_unique<PerObjectTm>(std::move(name), claims,
                                       reader_presence_check, object_count,
                                       process_count);
}

}  // namespace detail

std::unique_ptr<TmInterface> make_visible_read_tm(int object_count, int process_count) {
  return detail::make_per_object_tm(
      "visible-read",
      {.invisible_reads = false, .weak_dap = true, .strict_dap = false},
      /*reader_presence_check=*/true, object_count, process_count);
}

}  // namespace tmlab
