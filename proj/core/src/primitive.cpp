#include "tmlab/primitive.hpp"

#include <charconv>
#include <vector>

namespace tmlab {

Value update_of(const Primitive& p, Value state) {
  switch (p.op) {
    case PrimOp::read:
      return state;
    case PrimOp::write:
      return p.arg0;
    case PrimOp::cas:
      return state == p.arg0 ? p.arg1 : state;
    case PrimOp::fetch_inc:
      return state + 1;
    case PrimOp::fetch_add:
      return state + p.arg0;
  }
  throw UnknownPrimitiveError("unknown primitive");
}

Value response_of(const Primitive& p, Value state) {
  switch (p.op) {
    case PrimOp::read:
      return state;
    case PrimOp::write:
      return 0;  // blind write: response carries no information
    case PrimOp::cas:
      return state == p.arg0 ? 1 : 0;
    case PrimOp::fetch_inc:
    case PrimOp::fetch_add:
      return state;
  }
  throw UnknownPrimitiveError("unknown primitive");
}

bool is_trivial(const Primitive& p) {
  switch (p.op) {
    case PrimOp::read:
      return true;
    case PrimOp::write:
      return false;  // g(s)=v differs from s for any s != v
    case PrimOp::cas:
      return p.arg0 == p.arg1;
    case PrimOp::fetch_inc:
      return false;
    case PrimOp::fetch_add:
      return p.arg0 == 0;
  }
  throw UnknownPrimitiveError("unknown primitive");
}

bool reads_state(const Primitive& p) {
  switch (p.op) {
    case PrimOp::read:
    case PrimOp::cas:
    case PrimOp::fetch_inc:
    case PrimOp::fetch_add:
      return true;
    case PrimOp::write:
      return false;
  }
  throw UnknownPrimitiveError("unknown primitive");
}

bool is_awar_shaped(const Primitive& p) {
  return !is_trivial(p) && reads_state(p);
}

std::string prim_name(PrimOp op) {
  switch (op) {
    case PrimOp::read:
      return "read";
    case PrimOp::write:
      return "write";
    case PrimOp::cas:
      return "cas";
    case PrimOp::fetch_inc:
      return "fai";
    case PrimOp::fetch_add:
      return "faa";
  }
  return "?";
}

std::string format(const Primitive& p) {
  switch (p.op) {
    case PrimOp::read:
      return "read()";
    case PrimOp::write:
      return "write(" + std::to_string(p.arg0) + ")";
    case PrimOp::cas:
      return "cas(" + std::to_string(p.arg0) + "," + std::to_string(p.arg1) + ")";
    case PrimOp::fetch_inc:
      return "fai()";
    case PrimOp::fetch_add:
      return "faa(" + std::to_string(p.arg0) + ")";
  }
  return "?";
}

namespace {

std::vector<Value> parse_args(const std::string& text, std::size_t open) {
  if (text.back() != ')') throw UnknownPrimitiveError("missing ')': " + text);
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<Value> out;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    std::string tok = inner.substr(pos, comma == std::string::npos ? comma : comma - pos);
    Value v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw UnknownPrimitiveError("bad primitive argument: " + tok);
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Primitive parse_primitive(const std::string& text) {
  std::size_t open = text.find('(');
  if (open == std::string::npos) throw UnknownPrimitiveError("missing '(': " + text);
  std::string name = text.substr(0, open);
  std::vector<Value> args = parse_args(text, open);
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw UnknownPrimitiveError("wrong arity for " + name + ": " + text);
  };
  if (name == "read") {
    want(0);
    return Primitive::read();
  }
  if (name == "write") {
    want(1);
    return Primitive::write(args[0]);
  }
  if (name == "cas") {
    want(2);
    return Primitive::cas(args[0], args[1]);
  }
  if (name == "fai") {
    want(0);
    return Primitive::fetch_inc();
  }
  if (name == "faa") {
    want(1);
    return Primitive::fetch_add(args[0]);
  }
  throw UnknownPrimitiveError("unknown primitive: " + name);
}

}  // namespace tmlab
