#include "tmlab/event.hpp"

namespace tmlab {

std::string op_name(TOpKind k) {
  switch (k) {
    case TOpKind::read:
      return "read";
    case TOpKind::write:
      return "write";
    case TOpKind::try_commit:
      return "tryC";
  }
  return "?";
}

std::string format_top(const TOp& op) {
  switch (op.kind) {
    case TOpKind::read:
      return "read(" + std::to_string(op.object) + ")";
    case TOpKind::write:
      return "write(" + std::to_string(op.object) + "," + std::to_string(op.value) + ")";
    case TOpKind::try_commit:
      return "tryC()";
  }
  return "?";
}

}  // namespace tmlab
