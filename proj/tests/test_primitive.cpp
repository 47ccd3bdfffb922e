#include <vector>

#include "doctest.h"
#include "tmlab/primitive.hpp"

using namespace tmlab;

namespace {

// Independent triviality oracle: exhaustive g(s)==s sweep over a finite
// state domain. The declared flag must agree on every catalog member.
bool trivial_by_sweep(const Primitive& p) {
  for (Value s = -8; s <= 8; ++s)
    if (update_of(p, s) != s) return false;
  return true;
}

std::vector<Primitive> catalog_samples() {
  std::vector<Primitive> out{Primitive::read(), Primitive::fetch_inc()};
  for (Value a = -2; a <= 2; ++a) {
    out.push_back(Primitive::write(a));
    out.push_back(Primitive::fetch_add(a));
    for (Value b = -2; b <= 2; ++b) out.push_back(Primitive::cas(a, b));
  }
  return out;
}

}  // namespace

TEST_CASE("primitive semantics") {
  // state(b)=0, cas(0,1): succeeds, response true
  Primitive cas01 = Primitive::cas(0, 1);
  CHECK(update_of(cas01, 0) == 1);
  CHECK(response_of(cas01, 0) == 1);
  // failed cas leaves the state alone
  CHECK(update_of(cas01, 5) == 5);
  CHECK(response_of(cas01, 5) == 0);

  // state(b)=5, read(): state unchanged, response 5
  CHECK(update_of(Primitive::read(), 5) == 5);
  CHECK(response_of(Primitive::read(), 5) == 5);

  // state(b)=7, fetch-and-increment: state 8, response 7
  CHECK(update_of(Primitive::fetch_inc(), 7) == 8);
  CHECK(response_of(Primitive::fetch_inc(), 7) == 7);

  CHECK(update_of(Primitive::fetch_add(3), 4) == 7);
  CHECK(response_of(Primitive::fetch_add(3), 4) == 4);

  CHECK(update_of(Primitive::write(9), 2) == 9);
  CHECK(response_of(Primitive::write(9), 2) == 0);
}

TEST_CASE("triviality flags") {
  CHECK(is_trivial(Primitive::read()));
  CHECK_FALSE(is_trivial(Primitive::write(0)));
  CHECK_FALSE(is_trivial(Primitive::cas(0, 1)));  // exists s=0 with g(s)=1
  CHECK(is_trivial(Primitive::cas(3, 3)));
  CHECK_FALSE(is_trivial(Primitive::fetch_inc()));
  CHECK(is_trivial(Primitive::fetch_add(0)));
  CHECK_FALSE(is_trivial(Primitive::fetch_add(-1)));
}

TEST_CASE("declared triviality agrees with the exhaustive sweep") {
  for (const Primitive& p : catalog_samples())
    CHECK(is_trivial(p) == trivial_by_sweep(p));
}

TEST_CASE("AWAR shapes are catalog driven") {
  CHECK(is_awar_shaped(Primitive::cas(0, 1)));
  CHECK(is_awar_shaped(Primitive::fetch_inc()));
  CHECK(is_awar_shaped(Primitive::fetch_add(2)));
  CHECK_FALSE(is_awar_shaped(Primitive::write(1)));  // blind write
  CHECK_FALSE(is_awar_shaped(Primitive::read()));    // trivial
  CHECK_FALSE(is_awar_shaped(Primitive::fetch_add(0)));
}

TEST_CASE("primitive format round trip") {
  for (const Primitive& p : catalog_samples()) {
    CHECK(parse_primitive(format(p)) == p);
  }
  CHECK_THROWS_AS(parse_primitive("bogus(1)"), UnknownPrimitiveError);
  CHECK_THROWS_AS(parse_primitive("cas(1)"), UnknownPrimitiveError);
  CHECK_THROWS_AS(parse_primitive("read"), UnknownPrimitiveError);
}
