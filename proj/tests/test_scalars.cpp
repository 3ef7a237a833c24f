#include <doctest.h>

#include "optuple/scalars.hpp"

using namespace optuple;

namespace {

std::vector<ExtScalar> law_set() {
  return {ExtScalar::integer(0),     ExtScalar::integer(1),
          ExtScalar::integer(2),     ExtScalar::rational(1, 2),
          ExtScalar::aleph(0),       ExtScalar::aleph(1),
          ExtScalar::aleph(2)};
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  CHECK(ExtScalar::integer(2) + ExtScalar::integer(3) == ExtScalar::integer(5));
  CHECK(ExtScalar::rational(2, 3) * ExtScalar::rational(3, 2) == ExtScalar::one());
  CHECK(ExtScalar::rational(1, 2) + ExtScalar::rational(1, 3) ==
        ExtScalar::rational(5, 6));
  CHECK(ExtScalar::rational(4, 8) == ExtScalar::rational(1, 2));
}

TEST_CASE("absorption into infinite cardinals") {
  CHECK(ExtScalar::rational(7, 2) + ExtScalar::aleph(0) == ExtScalar::aleph(0));
  CHECK(ExtScalar::aleph(0) + ExtScalar::aleph(2) == ExtScalar::aleph(2));
  CHECK(ExtScalar::zero() * ExtScalar::aleph(1) == ExtScalar::zero());
  CHECK(ExtScalar::integer(3) * ExtScalar::aleph(0) == ExtScalar::aleph(0));
  CHECK(ExtScalar::aleph(1) * ExtScalar::aleph(0) == ExtScalar::aleph(1));
}

TEST_CASE("total order") {
  auto set = law_set();
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j) {
      int relations = (set[i] < set[j]) + (set[j] < set[i]) + (set[i] == set[j]);
      CHECK(relations == 1);
    }
  CHECK(ExtScalar::integer(1000000) < ExtScalar::aleph(0));
  CHECK(ExtScalar::aleph(0) < ExtScalar::aleph(1));
  CHECK(ExtScalar::rational(1, 3) < ExtScalar::rational(1, 2));
}

TEST_CASE("semiring laws hold exhaustively on the test set") {
  auto set = law_set();
  for (const auto& a : set)
    for (const auto& b : set) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (const auto& c : set) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (a <= b) CHECK(a + c <= b + c);
      }
    }
}

TEST_CASE("sub_delta") {
  CHECK(ExtScalar::sub_delta(ExtScalar::integer(3), ExtScalar::integer(1)) ==
        ExtScalar::integer(2));
  CHECK(ExtScalar::sub_delta(ExtScalar::aleph(1), ExtScalar::aleph(0)) ==
        ExtScalar::aleph(1));
  CHECK(ExtScalar::sub_delta(ExtScalar::aleph(0), ExtScalar::aleph(0)) ==
        ExtScalar::zero());
  CHECK(ExtScalar::sub_delta(ExtScalar::aleph(0), ExtScalar::integer(2)) ==
        ExtScalar::aleph(0));
  CHECK_THROWS_AS(ExtScalar::sub_delta(ExtScalar::one(), ExtScalar::integer(2)),
                  PreconditionError);
}

TEST_CASE("sub_delta is the least solution of a + x = b") {
  auto set = law_set();
  for (const auto& a : set)
    for (const auto& b : set) {
      if (!(a <= b)) continue;
      ExtScalar delta = ExtScalar::sub_delta(b, a);
      CHECK(a + delta == b);
      for (const auto& x : set)
        if (a + x == b) CHECK(delta <= x);
    }
}

TEST_CASE("aleph tower bounds") {
  CHECK_THROWS_AS(ExtScalar::aleph(aleph_tower_height() + 1), InputError);
  CHECK_THROWS_AS(ExtScalar::aleph(-1), InputError);
  CHECK_THROWS_AS(ExtScalar::rational(-1, 2), InputError);
  CHECK_THROWS_AS(ExtScalar::rational(1, 0), InputError);
}

TEST_CASE("parsing") {
  CHECK(parse_ext_scalar("3") == ExtScalar::integer(3));
  CHECK(parse_ext_scalar("7/2") == ExtScalar::rational(7, 2));
  CHECK(parse_ext_scalar("aleph2") == ExtScalar::aleph(2));
  CHECK_THROWS_AS(parse_ext_scalar("alephx"), InputError);
  CHECK_THROWS_AS(parse_ext_scalar("x"), InputError);
}
