#include "doctest.h"
#include "tmlab/configuration.hpp"

using namespace tmlab;

TEST_CASE("apply_primitive updates state and reports h(old)") {
  Configuration c(Configuration::Universe::strict);
  c.declare_base(7, 0);
  RmwEvent ev = apply_primitive(c, 7, Primitive::cas(0, 1), 3);
  CHECK(c.base(7) == 1);
  CHECK(ev.response == 1);
  CHECK(ev.txn == 3);

  c.declare_base(8, 5);
  ev = apply_primitive(c, 8, Primitive::read(), 3);
  CHECK(c.base(8) == 5);
  CHECK(ev.response == 5);

  c.declare_base(9, 7);
  ev = apply_primitive(c, 9, Primitive::fetch_inc(), 3);
  CHECK(c.base(9) == 8);
  CHECK(ev.response == 7);
}

TEST_CASE("strict universe rejects unknown base objects") {
  Configuration c(Configuration::Universe::strict);
  CHECK_THROWS_AS(apply_primitive(c, 42, Primitive::read(), 1), UnknownBaseError);
  Configuration open;
  CHECK(apply_primitive(open, 42, Primitive::read(), 1).response == 0);
}

TEST_CASE("snapshot and restore round trip") {
  Configuration c;
  c.declare_base(0, 11);
  c.set_private_state(4, "pc=2");
  SnapshotStore store;
  SnapshotToken t = store.snapshot(c);
  CHECK(store.restore(t) == c);

  // mutate, restore: the original state comes back
  c.set_base(0, 99);
  CHECK(store.restore(t).base(0) == 11);

  // distinct configurations restore distinctly
  SnapshotToken t2 = store.snapshot(c);
  CHECK_FALSE(store.restore(t) == store.restore(t2));

  store.drop(t);
  CHECK_THROWS_AS(store.restore(t), StaleTokenError);
  CHECK_THROWS_AS(store.drop(t), StaleTokenError);
}
