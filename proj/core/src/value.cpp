#include "tmlab/value.hpp"

namespace tmlab {

std::string to_string(const TOpResponse& r) {
  switch (r.kind) {
    case TOpResponse::Kind::value:
      return std::to_string(r.val);
    case TOpResponse::Kind::ok:
      return "ok";
    case TOpResponse::Kind::aborted:
      return "A";
    case TOpResponse::Kind::committed:
      return "C";
  }
  return "?";
}

}  // namespace tmlab
