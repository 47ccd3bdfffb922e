#pragma once

#include <cstdint>
#include <string>

namespace tmlab {

// Domain values are plain integers. Commit/abort/ok markers live out of band
// in TOpResponse::Kind so they can never collide with a stored value.
using Value = std::int64_t;

struct TOpResponse {
  enum class Kind : std::uint8_t { value, ok, aborted, committed };

  Kind kind = Kind::ok;
  Value val = 0;  // meaningful only when kind == value

  static TOpResponse of(Value v) { return {Kind::value, v}; }
  static TOpResponse ok() { return {Kind::ok, 0}; }
  static TOpResponse aborted() { return {Kind::aborted, 0}; }
  static TOpResponse committed() { return {Kind::committed, 0}; }

  bool is_value() const { return kind == Kind::value; }
  bool is_abort() const { return kind == Kind::aborted; }
  bool is_commit() const { return kind == Kind::committed; }

  bool operator==(const TOpResponse&) const = default;
  auto operator<=>(const TOpResponse&) const = default;
};

std::string to_string(const TOpResponse& r);

}  // namespace tmlab
