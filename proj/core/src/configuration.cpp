#include "tmlab/configuration.hpp"

namespace tmlab {

void Configuration::declare_base(BaseObjectId b, Value initial) {
  values_[b] = initial;
}

bool Configuration::has_base(BaseObjectId b) const {
  return values_.count(b) != 0;
}

Value Configuration::base(BaseObjectId b) const {
  auto it = values_.find(b);
  if (it != values_.end()) return it->second;
  if (universe_ == Universe::strict)
    throw UnknownBaseError("unknown base object " + std::to_string(b));
  return 0;
}

void Configuration::set_base(BaseObjectId b, Value v) {
  if (universe_ == Universe::strict && values_.count(b) == 0)
    throw UnknownBaseError("unknown base object " + std::to_string(b));
  values_[b] = v;
}

void Configuration::set_private_state(TxnId k, std::string blob) {
  privates_[k] = std::move(blob);
}

RmwEvent apply_primitive(Configuration& config, BaseObjectId base,
                         const Primitive& prim, TxnId txn) {
  Value old = config.base(base);
  config.set_base(base, update_of(prim, old));
  return RmwEvent{txn, base, prim, response_of(prim, old)};
}

SnapshotToken SnapshotStore::snapshot(const Configuration& c) {
  SnapshotToken t = next_++;
  snaps_.emplace(t, c);
  return t;
}

Configuration SnapshotStore::restore(SnapshotToken t) const {
  auto it = snaps_.find(t);
  if (it == snaps_.end())
    throw StaleTokenError("stale snapshot token " + std::to_string(t));
  return it->second;
}

void SnapshotStore::drop(SnapshotToken t) {
  if (snaps_.erase(t) == 0)
    throw StaleTokenError("stale snapshot token " + std::to_string(t));
}

}  // namespace tmlab
