#include "altrace/local_counts.hpp"

#include <climits>
#include <numeric>
#include <string>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"

namespace altrace {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require_divides(std::int64_t u, std::int64_t N, const char* op) {
  if (N <= 0 || u <= 0 || N % u != 0) {
    throw DomainError(std::string(op) + ": need u | N with N, u > 0 (N=" + std::to_string(N) +
                      ", u=" + std::to_string(u) + ")");
  }
}

void require_square_divides(std::int64_t u, std::int64_t t, std::int64_t n, const char* op) {
  const std::int64_t D = t * t - 4 * n;
  if (D % checked_mul(u, u) != 0) {
    throw DomainError(std::string(op) + ": need u^2 | t^2 - 4n (u=" + std::to_string(u) +
                      ", D=" + std::to_string(D) + ")");
  }
}

constexpr int kInfiniteValuation = INT_MAX / 4;

}  // namespace

int kronecker_prime(std::int64_t x, std::int64_t p) {
  if (p == 2) {
    const std::int64_t r = mod(x, 8);
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::int64_t r = mod(x, p);
  if (r == 0) return 0;
  // Euler's criterion.
  __int128 acc = 1;
  __int128 base = r;
  std::int64_t e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

std::int64_t count_S(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n) {
  require_divides(u, N, "count_S");
  const std::int64_t M = checked_mul(N, u);
  const std::int64_t tm = mod(t, M);
  const std::int64_t nm = mod(n, M);
  std::int64_t raw = 0;
  for (std::int64_t alpha = 0; alpha < M; ++alpha) {
    if (std::gcd(alpha, N) != 1) continue;
    const __int128 v = static_cast<__int128>(alpha) * (alpha - tm + M) + nm;
    if (v % M == 0) ++raw;
  }
  if (raw % u != 0) {
    throw ConsistencyError("count_S: raw count " + std::to_string(raw) + " not divisible by u=" +
                           std::to_string(u) + " (N=" + std::to_string(N) + ", t=" +
                           std::to_string(t) + ", n=" + std::to_string(n) + ")");
  }
  return raw / u;
}

std::int64_t count_S_crt(std::int64_t N, std::int64_t t, std::int64_t n) {
  if (N <= 0) throw DomainError("count_S_crt: N must be positive");
  std::int64_t total = 1;
  for (const auto& [p, e] : factorize(N).factors) {
    total *= count_S(ipow(p, e), 1, t, n);
    if (total == 0) return 0;
  }
  return total;
}

std::int64_t count_B(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n) {
  require_divides(u, N, "count_B");
  const std::int64_t ratio = psi_index(N) / psi_index(N / u);
  return ratio * count_S(N, u, t, n);
}

std::int64_t count_C_direct(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n) {
  require_divides(u, N, "count_C_direct");
  require_square_divides(u, t, n, "count_C_direct");
  std::int64_t total = 0;
  for (std::int64_t d : divisors(u)) {
    const int m = mobius(d);
    if (m != 0) total += m * count_B(N, u / d, t, n);
  }
  return total;
}

std::int64_t closed_form_local(std::int64_t p, int a, int i, std::int64_t D) {
  if (i == 0) return 1;
  const auto ceil_half = [](int x) { return (x + 1) / 2; };
  int b = kInfiniteValuation;
  std::int64_t D0 = 0;
  if (D != 0) {
    b = valuation(D, p);
    D0 = D / ipow(p, b);
  }
  const bool same_parity = (i - a) % 2 == 0;

  if (p != 2) {
    if (i == a) return ipow(p, ceil_half(a));
    if (1 <= i && i <= b - a && same_parity) return ipow(p, ceil_half(i)) - ipow(p, ceil_half(i) - 1);
    if (i == b - a + 1 && same_parity) return -ipow(p, ceil_half(i) - 1);
    if (i == b - a + 1 && !same_parity) return ipow(p, i / 2) * kronecker_prime(D0, p);
    return 0;
  }

  const std::int64_t d0_mod4 = D != 0 ? mod(D0, 4) : 1;
  if (i == a) {
    if (b >= 2 * a + 2 || (b == 2 * a && d0_mod4 == 1)) return ipow(2, ceil_half(a));
    if (b == 2 * a + 1 || (b == 2 * a && d0_mod4 == 3)) return -ipow(2, ceil_half(a) - 1);
    throw DomainError("closed_form_local: u^2 does not divide D");
  }
  if (1 <= i && i <= b - a - 2 && same_parity) return ipow(2, ceil_half(i) - 1);
  if (i == b - a - 1 && same_parity) return -ipow(2, ceil_half(i) - 1);
  if (i == b - a && same_parity) {
    const std::int64_t eps4 = d0_mod4 == 1 ? 1 : -1;
    return ipow(2, ceil_half(i) - 1) * eps4;
  }
  if (i == b - a + 1 && !same_parity && d0_mod4 == 1) return ipow(2, i / 2) * kronecker_prime(D0, 2);
  return 0;
}

std::int64_t count_C_closed(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n) {
  require_divides(u, N, "count_C_closed");
  require_square_divides(u, t, n, "count_C_closed");
  const std::int64_t s = count_S_crt(N, t, n);
  if (s == 0) return 0;
  const std::int64_t D = t * t - 4 * n;
  std::int64_t prod = s;
  for (const auto& [p, a] : factorize(N).factors) {
    const int i = valuation(u, p);
    prod *= closed_form_local(p, a, i, D);
    if (prod == 0) return 0;
  }
  return prod;
}

Rational phi_NQ(std::int64_t N, std::int64_t Q, std::int64_t a, std::int64_t d) {
  if (!is_exact_divisor(Q, N)) {
    throw DomainError("phi_NQ: Q=" + std::to_string(Q) + " is not an exact divisor of N=" +
                      std::to_string(N));
  }
  const std::int64_t M = N / Q;
  const std::int64_t diff = a - d;
  std::int64_t sum = 0;
  for (std::int64_t r : divisors(M)) {
    const std::int64_t s = M / r;
    const std::int64_t g = std::gcd(r, s);
    if (diff % g != 0) continue;
    if (std::gcd(r, a) != 1 || std::gcd(s, d) != 1) continue;
    sum += euler_phi(g);
  }
  return to_rational(euler_phi(Q) * sum, Q);
}

}  // namespace altrace
