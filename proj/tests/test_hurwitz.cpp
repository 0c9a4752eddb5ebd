#include <doctest.h>

#include "altrace/errors.hpp"
#include "altrace/hurwitz.hpp"
#include "altrace/oracles.hpp"

using namespace altrace;

TEST_CASE("pinned values") {
  const HurwitzTable table(100);
  CHECK(hurwitz(0, table) == to_rational(-1, 12));
  CHECK(hurwitz(-5, table) == 0);
  CHECK(hurwitz(5, table) == 0);
  CHECK(hurwitz(3, table) == to_rational(1, 3));
  CHECK(hurwitz(4, table) == to_rational(1, 2));
  CHECK(hurwitz(11, table) == 1);
  CHECK(hurwitz(16, table) == to_rational(3, 2));
  CHECK(hurwitz(19, table) == 1);
  CHECK(hurwitz(20, table) == 2);
  CHECK(hurwitz(23, table) == 3);
  CHECK(hurwitz(12, table) == to_rational(4, 3));
  CHECK(hurwitz(24, table) == 2);
  CHECK(hurwitz(44, table) == 4);
}

TEST_CASE("vanishing pattern") {
  const HurwitzTable table(10000);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    const bool zero = table.twelve_h(n) == 0;
    REQUIRE(zero == (n % 4 == 1 || n % 4 == 2));
  }
}

TEST_CASE("bulk table, single evaluation and enumeration agree") {
  const HurwitzTable table(3000);
  CHECK(table.high_water() == 3000);
  for (std::int64_t n = 0; n <= 3000; n += 7) {
    REQUIRE(table.twelve_h(n) == hurwitz_twelve_single(n));
    REQUIRE(table.value(n) == oracles::hurwitz_enumerate(n));
  }
}

TEST_CASE("values beyond the table are computed on demand") {
  HurwitzTable table(10);
  CHECK(table.twelve_h(4000003) == hurwitz_twelve_single(4000003));
  CHECK(table.high_water() == 10);
  table.ensure(5);
  CHECK(table.high_water() == 10);
  table.ensure(50);
  CHECK(table.high_water() == 50);
  CHECK_THROWS_AS(table.ensure(-1), DomainError);
}

TEST_CASE("override_entry injects a fault") {
  HurwitzTable table(30);
  table.override_entry(20, 12);
  CHECK(table.value(20) == 1);
  CHECK(table.value(19) == 1);
}
