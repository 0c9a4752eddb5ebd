#include <doctest.h>

#include <numeric>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"

using namespace altrace;

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  const auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0].prime == 2);
  CHECK(f12.factors[0].exponent == 2);
  CHECK(f12.factors[1].prime == 3);
  CHECK(f12.factors[1].exponent == 1);
  const auto f = factorize(9991);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 97);
  CHECK(f.factors[1].prime == 103);
  CHECK(factorize(1000003).factors.size() == 1);
  for (std::int64_t n = 1; n <= 3000; ++n) CHECK(factorize(n).value() == n);
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(-4), DomainError);
}

TEST_CASE("divisors") {
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  std::vector<std::int64_t> scan;
  for (std::int64_t d = 1; d <= 60; ++d) {
    if (60 % d == 0) scan.push_back(d);
  }
  CHECK(divisors(60) == scan);
  CHECK(divisors(60).size() == 12);
}

TEST_CASE("mobius, phi, psi") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(euler_phi(10) == 4);
  CHECK(euler_phi(1) == 1);
  CHECK(psi_index(1) == 1);
  CHECK(psi_index(12) == 24);
  CHECK(psi_index(11) == 12);
}

TEST_CASE("coprime divisor sums") {
  CHECK(sigma0_coprime(4, 5) == 3);
  CHECK(sigma0_coprime(4, 2) == 1);
  CHECK(sigma0_coprime(36, 5) == 9);
  CHECK(sigma1_coprime(1, 7) == 1);
  CHECK(sigma1_coprime(4, 6) == 4);
  CHECK(sigma1_coprime(12, 5) == 28);
  CHECK(coprime_split(6, 2) == std::pair<std::int64_t, std::int64_t>{2, 3});
  CHECK(coprime_split(5, 1) == std::pair<std::int64_t, std::int64_t>{1, 5});
  CHECK(coprime_split(12, 8) == std::pair<std::int64_t, std::int64_t>{4, 3});
}

TEST_CASE("is_square and isqrt") {
  std::int64_t r = -1;
  CHECK(is_square(0, &r));
  CHECK(r == 0);
  CHECK(is_square(49, &r));
  CHECK(r == 7);
  CHECK_FALSE(is_square(48));
  CHECK_FALSE(is_square(-4));
  CHECK(isqrt(999999999999LL) == 999999);
  const std::int64_t big = 3037000499LL;
  CHECK(is_square(big * big));
  CHECK_FALSE(is_square(big * big - 1));
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_mul(1LL << 31, 1LL << 31) == (1LL << 62));
  CHECK_THROWS_AS(checked_mul(1LL << 32, 1LL << 32), DomainError);
  CHECK(ipow(3, 4) == 81);
  CHECK(is_exact_divisor(4, 12));
  CHECK_FALSE(is_exact_divisor(2, 12));
  CHECK_FALSE(is_exact_divisor(5, 12));
}

TEST_CASE("alpha_Qn prime power cases") {
  const PrimeSet none;
  const PrimeSet three = PrimeSet::of(3);
  CHECK(alpha_Qn(1, none, 1) == 1);
  CHECK(alpha_Qn(9, none, 1) == 1);
  CHECK(alpha_Qn(3, none, 1) == -2);
  CHECK(alpha_Qn(27, none, 1) == 0);
  CHECK(alpha_Qn(27, three, 3) == 0);
  CHECK(alpha_Qn(3, three, 1) == 0);
  CHECK(alpha_Qn(9, three, 1) == -1);
  CHECK(alpha_Qn(3, none, 3) == -1);
  CHECK(alpha_Qn(9, none, 3) == 0);
  CHECK(alpha_Qn(3, three, 3) == 0);
}

// alpha_Qn is the Dirichlet inverse of
//   H(N) = sigma_{0,n}(N / Q(N)) if (Q(N), n) = 1 and Q(N) is a square, else 0
// where Q(N) is the part of N supported on the prime set.
TEST_CASE("alpha_Qn inverts H_{Q,n}") {
  auto H = [](std::int64_t N, const PrimeSet& s, std::int64_t n) -> std::int64_t {
    const std::int64_t q = s.part_of(N);
    if (std::gcd(q, n) != 1 || !is_square(q)) return 0;
    return sigma0_coprime(N / q, n);
  };
  const std::vector<std::pair<std::int64_t, std::int64_t>> choices = {
      {1, 1}, {2, 1}, {6, 1}, {1, 2}, {3, 2}, {5, 5}, {30, 7}, {10, 3}};
  for (const auto& [q, n] : choices) {
    const PrimeSet s = PrimeSet::of(q);
    for (std::int64_t m = 1; m <= 5000; ++m) {
      std::int64_t acc = 0;
      for (std::int64_t d : divisors(m)) acc += alpha_Qn(d, s, n) * H(m / d, s, n);
      if (acc != (m == 1 ? 1 : 0)) {
        FAIL("Q=" << q << " n=" << n << " m=" << m << " gives " << acc);
      }
    }
  }
}

TEST_CASE("sz_alpha") {
  CHECK(sz_alpha(1) == 1);
  CHECK(sz_alpha(2) == -1);
  CHECK(sz_alpha(4) == -1);
  CHECK(sz_alpha(8) == 1);
  CHECK(sz_alpha(16) == 0);
  CHECK(sz_alpha(12) == 1);
}

TEST_CASE("multiplicative functions") {
  const PrimeSet s = PrimeSet::of(6);
  for (std::int64_t a = 1; a <= 200; ++a) {
    for (std::int64_t b = 1; b <= 200; ++b) {
      if (std::gcd(a, b) != 1) continue;
      REQUIRE(mobius(a * b) == mobius(a) * mobius(b));
      REQUIRE(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
      REQUIRE(psi_index(a * b) == psi_index(a) * psi_index(b));
      REQUIRE(alpha_Qn(a * b, s, 5) == alpha_Qn(a, s, 5) * alpha_Qn(b, s, 5));
      REQUIRE(sz_alpha(a * b) == sz_alpha(a) * sz_alpha(b));
    }
  }
}

TEST_CASE("p_k") {
  for (std::int64_t t = -5; t <= 5; ++t) CHECK(pk(2, t, 7) == 1);
  CHECK(pk(4, 3, 5) == 4);
  CHECK(pk(6, 2, 1) == 5);
  CHECK_THROWS_AS(pk(3, 1, 1), DomainError);
  CHECK_THROWS_AS(pk(0, 1, 1), DomainError);
  // Even index steps of the recurrence: p_{k+4} = (t^2 - 2N) p_{k+2} - N^2 p_k.
  for (int k = 2; k <= 30; k += 2) {
    for (std::int64_t t = -9; t <= 9; ++t) {
      for (std::int64_t N = -4; N <= 12; ++N) {
        const Integer lhs = pk(k + 4, t, N);
        const Integer rhs = (t * t - 2 * N) * pk(k + 2, t, N) - Integer(N * N) * pk(k, t, N);
        REQUIRE(lhs == rhs);
        // Even k: p_k is even in t.
        REQUIRE(pk(k, t, N) == pk(k, -t, N));
      }
    }
  }
  // Large weight stays exact.
  CHECK(pk(200, 3, 7).get_str().size() > 40);
}

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-3/6") == to_rational(-1, 2));
  CHECK(parse_rational("17") == 17);
  CHECK(to_string(to_rational(4, -6)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK_THROWS_AS(require_integer(to_rational(1, 2), "half"), ConsistencyError);
}
