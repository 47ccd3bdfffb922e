#pragma once

#include <stdexcept>
#include <string>

#include "tmlab/execution.hpp"

namespace tmlab {

// Line-oriented ASCII trace format, one event per line, sequence implicit:
//   RMW <txn> <base> <prim>(<args>) -> <resp>
//   INV <txn> <op>(<args>)
//   RES <txn> <op> -> <resp>        resp: integer | ok | A | C
// History files carry only INV/RES lines.

struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
  std::size_t line;
};

std::string format_event(const Event& e);
std::string format_trace(const Execution& e);
std::string format_history(const History& h);

// Parses and validates (replays RMW responses from the all-zero initial
// configuration). Throws ParseError with the offending line.
Execution parse_trace(const std::string& text);

// Throws ParseError; rejects RMW lines and malformed histories.
History parse_history(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tmlab
