#pragma once

#include <stdexcept>
#include <string>

#include "tmlab/value.hpp"

namespace tmlab {

// Catalog of RMW primitives <g,h>. g maps the old base-object state to the
// new one, h maps the old state to the response handed back to the process.
enum class PrimOp : std::uint8_t { read, write, cas, fetch_inc, fetch_add };

struct Primitive {
  PrimOp op = PrimOp::read;
  Value arg0 = 0;  // write: v, cas: expected, fetch_add: delta
  Value arg1 = 0;  // cas: replacement

  static Primitive read() { return {PrimOp::read, 0, 0}; }
  static Primitive write(Value v) { return {PrimOp::write, v, 0}; }
  static Primitive cas(Value expect, Value repl) { return {PrimOp::cas, expect, repl}; }
  static Primitive fetch_inc() { return {PrimOp::fetch_inc, 0, 0}; }
  static Primitive fetch_add(Value d) { return {PrimOp::fetch_add, d, 0}; }

  bool operator==(const Primitive&) const = default;
};

// g: state after applying the primitive.
Value update_of(const Primitive& p, Value state);
// h: response returned to the caller.
Value response_of(const Primitive& p, Value state);

// True iff g(s) == s for every state s. Closed form per catalog entry;
// tests cross-check against an exhaustive sweep of a finite state domain.
bool is_trivial(const Primitive& p);

// True iff h depends on the pre-state (the primitive "reads" its object).
bool reads_state(const Primitive& p);

// AWAR-shaped: nontrivial and the response reads the same object it writes.
bool is_awar_shaped(const Primitive& p);

std::string prim_name(PrimOp op);
// Renders "cas(0,1)", "read()", "faa(2)", ... for traces.
std::string format(const Primitive& p);
// Parses the trace rendering back. Throws std::invalid_argument.
Primitive parse_primitive(const std::string& text);

struct UnknownPrimitiveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace tmlab
