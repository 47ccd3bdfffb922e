#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "tmlab/event.hpp"
#include "tmlab/ids.hpp"
#include "tmlab/primitive.hpp"

namespace tmlab {

struct UnknownBaseError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Values of all base objects plus the TM-private per-transaction states
// (kept opaque: the TM renders them, nothing here interprets them).
//
// Universe policy: an `open` configuration treats every base object as
// existing with initial value 0 (TM layouts allocate cells on the fly, e.g.
// growing version lists); a `strict` one only knows explicitly declared
// objects and throws UnknownBaseError otherwise.
class Configuration {
 public:
  enum class Universe : std::uint8_t { open, strict };

  explicit Configuration(Universe u = Universe::open) : universe_(u) {}

  void declare_base(BaseObjectId b, Value initial);
  bool has_base(BaseObjectId b) const;
  Value base(BaseObjectId b) const;
  void set_base(BaseObjectId b, Value v);

  void set_private_state(TxnId k, std::string blob);
  const std::map<TxnId, std::string>& private_states() const { return privates_; }

  Universe universe() const { return universe_; }
  const std::map<BaseObjectId, Value>& bases() const { return values_; }

  bool operator==(const Configuration&) const = default;

 private:
  Universe universe_;
  std::map<BaseObjectId, Value> values_;
  std::map<TxnId, std::string> privates_;
};

// Applies one RMW primitive: the base object moves to g(state), the returned
// event carries h(state). The event's sequence position is wherever the
// caller appends it.
RmwEvent apply_primitive(Configuration& config, BaseObjectId base,
                         const Primitive& prim, TxnId txn);

struct StaleTokenError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

using SnapshotToken = std::uint64_t;

// Byte-equivalent snapshot/restore of configurations.
class SnapshotStore {
 public:
  SnapshotToken snapshot(const Configuration& c);
  Configuration restore(SnapshotToken t) const;
  void drop(SnapshotToken t);

 private:
  SnapshotToken next_ = 1;
  std::map<SnapshotToken, Configuration> snaps_;
};

}  // namespace tmlab
