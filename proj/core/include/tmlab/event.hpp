#pragma once

#include <optional>
#include <string>
#include <variant>

#include "tmlab/ids.hpp"
#include "tmlab/primitive.hpp"
#include "tmlab/value.hpp"

namespace tmlab {

enum class TOpKind : std::uint8_t { read, write, try_commit };

// A t-operation as invoked: read(X), write(X,v) or tryCommit.
struct TOp {
  TOpKind kind = TOpKind::read;
  TObjectId object = 0;  // read/write
  Value value = 0;       // write

  static TOp read(TObjectId x) { return {TOpKind::read, x, 0}; }
  static TOp write(TObjectId x, Value v) { return {TOpKind::write, x, v}; }
  static TOp try_commit() { return {TOpKind::try_commit, 0, 0}; }

  bool operator==(const TOp&) const = default;
};

// Application of an RMW primitive to a base object, with the response it
// produced. Sequence position is the event's index in its execution.
struct RmwEvent {
  TxnId txn = kNoTxn;
  BaseObjectId base = 0;
  Primitive prim;
  Value response = 0;

  bool operator==(const RmwEvent&) const = default;
};

struct TOpEvent {
  enum class Phase : std::uint8_t { invocation, response };

  TxnId txn = kNoTxn;
  Phase phase = Phase::invocation;
  TOp op;
  TOpResponse result;  // responses only

  bool is_invocation() const { return phase == Phase::invocation; }
  bool is_response() const { return phase == Phase::response; }

  static TOpEvent inv(TxnId k, TOp op) { return {k, Phase::invocation, op, {}}; }
  static TOpEvent res(TxnId k, TOp op, TOpResponse r) {
    return {k, Phase::response, op, r};
  }

  bool operator==(const TOpEvent&) const = default;
};

using Event = std::variant<RmwEvent, TOpEvent>;

inline TxnId txn_of(const Event& e) {
  return std::visit([](const auto& v) { return v.txn; }, e);
}

inline bool is_rmw(const Event& e) { return std::holds_alternative<RmwEvent>(e); }
inline bool is_top(const Event& e) { return std::holds_alternative<TOpEvent>(e); }

inline const RmwEvent* as_rmw(const Event& e) { return std::get_if<RmwEvent>(&e); }
inline const TOpEvent* as_top(const Event& e) { return std::get_if<TOpEvent>(&e); }

// Event-level triviality: an RMW event is trivial iff its primitive is;
// t-operation invocations/responses are not base-object events at all.
inline bool is_nontrivial_rmw(const Event& e) {
  const RmwEvent* r = as_rmw(e);
  return r != nullptr && !is_trivial(r->prim);
}

std::string op_name(TOpKind k);
// "read(1)", "write(2,7)", "tryC()"
std::string format_top(const TOp& op);

}  // namespace tmlab
