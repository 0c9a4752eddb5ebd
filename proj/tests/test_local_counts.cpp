#include <doctest.h>

#include <numeric>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"
#include "altrace/local_counts.hpp"

using namespace altrace;

TEST_CASE("count_S") {
  for (std::int64_t t = -5; t <= 5; ++t) {
    for (std::int64_t n = -5; n <= 5; ++n) CHECK(count_S(1, 1, t, n) == 1);
  }
  CHECK(count_S(5, 1, 0, 1) == 2);
  CHECK(count_S(4, 2, 0, 1) == 0);
  CHECK_THROWS_AS(count_S(6, 4, 0, 1), DomainError);
  // Off the u^2 | t^2 - 4n locus the 1/u normalisation is not integral.
  CHECK_THROWS_AS(count_S(2, 2, -3, -2), ConsistencyError);
}

TEST_CASE("count_S is multiplicative in (N, u)") {
  int checked = 0;
  for (std::int64_t N1 = 1; N1 <= 20; ++N1) {
    for (std::int64_t N2 = 1; N1 * N2 <= 400; ++N2) {
      if (std::gcd(N1, N2) != 1) continue;
      for (std::int64_t u1 : divisors(N1)) {
        for (std::int64_t u2 : divisors(N2)) {
          if (u1 * u2 > 6) continue;
          for (std::int64_t t : {-3, 0, 1, 4}) {
            for (std::int64_t n : {-2, 1, 3, 9}) {
              if ((t * t - 4 * n) % (u1 * u1 * u2 * u2) != 0) continue;
              REQUIRE(count_S(N1 * N2, u1 * u2, t, n) ==
                      count_S(N1, u1, t, n) * count_S(N2, u2, t, n));
              ++checked;
            }
          }
        }
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("CRT assembly of |S_N(t,n)|") {
  for (std::int64_t N = 1; N <= 300; ++N) {
    for (std::int64_t t = -6; t <= 6; t += 3) {
      for (std::int64_t n = -4; n <= 8; n += 4) REQUIRE(count_S_crt(N, t, n) == count_S(N, 1, t, n));
    }
  }
}

TEST_CASE("B and direct C") {
  for (std::int64_t t = -4; t <= 4; ++t) {
    CHECK(count_B(1, 1, t, 3) == 1);
    CHECK(count_C_direct(1, 1, t, 3) == 1);
    CHECK(count_B(12, 1, t, 5) == count_S(12, 1, t, 5));
    CHECK(count_C_direct(12, 1, t, 5) == count_B(12, 1, t, 5));
  }
  CHECK(count_B(9, 3, 0, 0) == psi_index(9) / psi_index(3) * count_S(9, 3, 0, 0));
  CHECK(count_C_direct(9, 3, 0, 0) == count_B(9, 3, 0, 0) - count_B(9, 1, 0, 0));
  CHECK_THROWS_AS(count_C_direct(9, 3, 1, 1), DomainError);
}

TEST_CASE("closed form local factors") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int a = 1; a <= 4; ++a) {
      for (std::int64_t D : {-15, -7, -4, 0, 1, 5, 12}) CHECK(closed_form_local(p, a, 0, D) == 1);
    }
  }
  // b = 2a with D / 2^b = -1 mod 4: -2^{ceil(a/2) - 1} |S_N|.
  for (int a = 1; a <= 4; ++a) {
    const std::int64_t N = ipow(2, a);
    for (std::int64_t t = -40; t <= 40; ++t) {
      for (std::int64_t n = -40; n <= 40; ++n) {
        const std::int64_t D = t * t - 4 * n;
        if (D == 0 || valuation(D, 2) != 2 * a) continue;
        const std::int64_t odd = D / ipow(2, 2 * a);
        if (((odd % 4) + 4) % 4 != 3) continue;
        const std::int64_t expected = -ipow(2, (a + 1) / 2 - 1) * count_S(N, 1, t, n);
        REQUIRE(count_C_closed(N, N, t, n) == expected);
        REQUIRE(count_C_direct(N, N, t, n) == expected);
      }
    }
  }
}

TEST_CASE("closed form matches the direct count on mixed levels") {
  for (std::int64_t N : {6, 12, 18, 20, 36, 60, 72, 100}) {
    for (std::int64_t u : divisors(N)) {
      for (std::int64_t t = -12; t <= 12; ++t) {
        for (std::int64_t n = -12; n <= 12; ++n) {
          if ((t * t - 4 * n) % (u * u) != 0) continue;
          REQUIRE(count_C_closed(N, u, t, n) == count_C_direct(N, u, t, n));
        }
      }
    }
  }
}

TEST_CASE("phi_NQ") {
  for (std::int64_t a = 1; a <= 6; ++a) {
    for (std::int64_t d = 1; d <= 6; ++d) {
      CHECK(phi_NQ(1, 1, a, d) == 1);
      for (std::int64_t N : {5, 12, 30}) CHECK(phi_NQ(N, N, a, d) == to_rational(euler_phi(N), N));
    }
  }
  CHECK(phi_NQ(2, 1, 1, 1) == 2);
  CHECK_THROWS_AS(phi_NQ(12, 2, 1, 1), DomainError);
}

TEST_CASE("kronecker_prime") {
  CHECK(kronecker_prime(1, 2) == 1);
  CHECK(kronecker_prime(7, 2) == 1);
  CHECK(kronecker_prime(3, 2) == -1);
  CHECK(kronecker_prime(5, 2) == -1);
  CHECK(kronecker_prime(2, 7) == 1);
  CHECK(kronecker_prime(3, 7) == -1);
  CHECK(kronecker_prime(14, 7) == 0);
}
