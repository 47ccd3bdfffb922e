#pragma once

#include <vector>

#include "tmlab/execution.hpp"

namespace tmlab::testutil {

inline TOpEvent inv_read(TxnId k, TObjectId x) { return TOpEvent::inv(k, TOp::read(x)); }
inline TOpEvent res_read(TxnId k, TObjectId x, Value v) {
  return TOpEvent::res(k, TOp::read(x), TOpResponse::of(v));
}
inline TOpEvent res_read_abort(TxnId k, TObjectId x) {
  return TOpEvent::res(k, TOp::read(x), TOpResponse::aborted());
}
inline TOpEvent inv_write(TxnId k, TObjectId x, Value v) {
  return TOpEvent::inv(k, TOp::write(x, v));
}
inline TOpEvent res_write(TxnId k, TObjectId x, Value v) {
  return TOpEvent::res(k, TOp::write(x, v), TOpResponse::ok());
}
inline TOpEvent inv_tryc(TxnId k) { return TOpEvent::inv(k, TOp::try_commit()); }
inline TOpEvent res_commit(TxnId k) {
  return TOpEvent::res(k, TOp::try_commit(), TOpResponse::committed());
}
inline TOpEvent res_abort(TxnId k) {
  return TOpEvent::res(k, TOp::try_commit(), TOpResponse::aborted());
}

// read(x)->v as a complete invocation/response pair
inline void add_read(std::vector<TOpEvent>& h, TxnId k, TObjectId x, Value v) {
  h.push_back(inv_read(k, x));
  h.push_back(res_read(k, x, v));
}
inline void add_write(std::vector<TOpEvent>& h, TxnId k, TObjectId x, Value v) {
  h.push_back(inv_write(k, x, v));
  h.push_back(res_write(k, x, v));
}
inline void add_commit(std::vector<TOpEvent>& h, TxnId k) {
  h.push_back(inv_tryc(k));
  h.push_back(res_commit(k));
}
inline void add_abort(std::vector<TOpEvent>& h, TxnId k) {
  h.push_back(inv_tryc(k));
  h.push_back(res_abort(k));
}

}  // namespace tmlab::testutil
