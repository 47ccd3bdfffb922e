#include "tmlab/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace tmlab {

std::string format_event(const Event& e) {
  if (const RmwEvent* r = as_rmw(e)) {
    return "RMW " + std::to_string(r->txn) + " " + std::to_string(r->base) +
           " " + format(r->prim) + " -> " + std::to_string(r->response);
  }
  const TOpEvent& t = *as_top(e);
  if (t.is_invocation())
    return "INV " + std::to_string(t.txn) + " " + format_top(t.op);
  return "RES " + std::to_string(t.txn) + " " + op_name(t.op.kind) + " -> " +
         to_string(t.result);
}

std::string format_trace(const Execution& e) {
  std::string out;
  for (const Event& ev : e.events()) {
    out += format_event(ev);
    out += '\n';
  }
  return out;
}

std::string format_history(const History& h) {
  std::string out;
  for (const TOpEvent& ev : h.events()) {
    out += format_event(Event{ev});
    out += '\n';
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& line;
  std::size_t pos = 0;
  std::size_t line_no;

  void skip_ws() {
    while (pos < line.size() && line[pos] == ' ') ++pos;
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ') ++pos;
    if (start == pos) throw ParseError(line_no, "unexpected end of line");
    return line.substr(start, pos - start);
  }
  bool done() {
    skip_ws();
    return pos == line.size();
  }
};

long long parse_int(Cursor& c, const std::string& what) {
  std::string tok = c.token();
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(c.line_no, "bad " + what + ": " + tok);
  return v;
}

TOp parse_top(Cursor& c) {
  std::string tok = c.token();
  std::size_t open = tok.find('(');
  if (open == std::string::npos || tok.back() != ')')
    throw ParseError(c.line_no, "bad t-operation: " + tok);
  std::string name = tok.substr(0, open);
  std::string inner = tok.substr(open + 1, tok.size() - open - 2);
  std::vector<long long> args;
  std::size_t pos = 0;
  while (pos < inner.size()) {
    std::size_t comma = inner.find(',', pos);
    std::string a = inner.substr(pos, comma == std::string::npos ? comma : comma - pos);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
    if (ec != std::errc{} || ptr != a.data() + a.size())
      throw ParseError(c.line_no, "bad t-operation argument: " + a);
    args.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (name == "read" && args.size() == 1)
    return TOp::read(static_cast<TObjectId>(args[0]));
  if (name == "write" && args.size() == 2)
    return TOp::write(static_cast<TObjectId>(args[0]), args[1]);
  if (name == "tryC" && args.empty()) return TOp::try_commit();
  throw ParseError(c.line_no, "unknown t-operation: " + tok);
}

TOpKind parse_op_kind(Cursor& c) {
  std::string tok = c.token();
  if (tok == "read") return TOpKind::read;
  if (tok == "write") return TOpKind::write;
  if (tok == "tryC") return TOpKind::try_commit;
  throw ParseError(c.line_no, "unknown t-operation kind: " + tok);
}

void expect_arrow(Cursor& c) {
  if (c.token() != "->") throw ParseError(c.line_no, "expected '->'");
}

TOpResponse parse_response(Cursor& c) {
  std::string tok = c.token();
  if (tok == "ok") return TOpResponse::ok();
  if (tok == "A") return TOpResponse::aborted();
  if (tok == "C") return TOpResponse::committed();
  Value v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(c.line_no, "bad response: " + tok);
  return TOpResponse::of(v);
}

// Parses one line into an event; returns nullopt for blank/comment lines.
std::optional<Event> parse_line(const std::string& line, std::size_t line_no,
                                bool allow_rmw) {
  Cursor c{line, 0, line_no};
  c.skip_ws();
  if (c.done() || line[c.pos] == '#') return std::nullopt;
  std::string kind = c.token();
  if (kind == "RMW") {
    if (!allow_rmw) throw ParseError(line_no, "RMW line in a history file");
    TxnId txn = static_cast<TxnId>(parse_int(c, "transaction id"));
    BaseObjectId base = parse_int(c, "base object id");
    std::string prim_tok = c.token();
    Primitive prim;
    try {
      prim = parse_primitive(prim_tok);
    } catch (const UnknownPrimitiveError& ex) {
      throw ParseError(line_no, ex.what());
    }
    expect_arrow(c);
    Value resp = parse_int(c, "RMW response");
    if (!c.done()) throw ParseError(line_no, "trailing characters");
    return Event{RmwEvent{txn, base, prim, resp}};
  }
  if (kind == "INV") {
    TxnId txn = static_cast<TxnId>(parse_int(c, "transaction id"));
    TOp op = parse_top(c);
    if (!c.done()) throw ParseError(line_no, "trailing characters");
    return Event{TOpEvent::inv(txn, op)};
  }
  if (kind == "RES") {
    TxnId txn = static_cast<TxnId>(parse_int(c, "transaction id"));
    TOpKind opk = parse_op_kind(c);
    expect_arrow(c);
    TOpResponse r = parse_response(c);
    if (!c.done()) throw ParseError(line_no, "trailing characters");
    TOp op;
    op.kind = opk;
    return Event{TOpEvent::res(txn, op, r)};
  }
  throw ParseError(line_no, "unknown line kind: " + kind);
}

struct ParsedLines {
  std::vector<Event> events;
  std::vector<std::size_t> line_of;  // source line per event
};

ParsedLines parse_lines(const std::string& text, bool allow_rmw) {
  ParsedLines out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto ev = parse_line(line, line_no, allow_rmw)) {
      out.events.push_back(*ev);
      out.line_of.push_back(line_no);
    }
  }
  return out;
}

[[noreturn]] void rethrow_with_line(const MalformedError& ex,
                                    const std::vector<std::size_t>& line_of) {
  std::size_t line = ex.event_index < line_of.size() ? line_of[ex.event_index] : 0;
  throw ParseError(line, ex.what());
}

// Matches responses back to their invocations: RES lines carry only the op
// kind, so the op payload comes from the pending invocation.
void resolve_responses(std::vector<Event>& events) {
  std::map<TxnId, TOp> pending;
  for (Event& ev : events) {
    TOpEvent* t = std::get_if<TOpEvent>(&ev);
    if (t == nullptr) continue;
    if (t->is_invocation()) {
      pending[t->txn] = t->op;
    } else {
      auto it = pending.find(t->txn);
      if (it != pending.end() && it->second.kind == t->op.kind) t->op = it->second;
    }
  }
}

}  // namespace

Execution parse_trace(const std::string& text) {
  ParsedLines parsed = parse_lines(text, /*allow_rmw=*/true);
  resolve_responses(parsed.events);
  try {
    return Execution::from_events(std::move(parsed.events));
  } catch (const MalformedError& ex) {
    rethrow_with_line(ex, parsed.line_of);
  }
}

History parse_history(const std::string& text) {
  ParsedLines parsed = parse_lines(text, /*allow_rmw=*/false);
  resolve_responses(parsed.events);
  std::vector<TOpEvent> tops;
  tops.reserve(parsed.events.size());
  for (const Event& ev : parsed.events) tops.push_back(*as_top(ev));
  try {
    return History(std::move(tops));
  } catch (const MalformedError& ex) {
    rethrow_with_line(ex, parsed.line_of);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace tmlab
