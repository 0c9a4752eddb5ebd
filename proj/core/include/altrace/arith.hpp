#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "altrace/rational.hpp"

namespace altrace {

struct PrimePower {
  std::int64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with primes strictly increasing. The empty list is
/// the factorization of 1.
struct Factorization {
  std::vector<PrimePower> factors;

  std::int64_t value() const;
  /// Exponent of p (0 when p does not divide).
  int valuation(std::int64_t p) const;
  std::vector<std::int64_t> primes() const;
};

// Trial division by 2, 3 and a mod-6 wheel. Intended for arguments up to
// ~1e12; levels and Hecke indices used in practice stay below 1e7.
Factorization factorize(std::int64_t n);

bool is_prime(std::int64_t n);

/// All positive divisors of n in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> divisors(const Factorization& f);

int valuation(std::int64_t n, std::int64_t p);

int mobius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
/// Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p).
std::int64_t psi_index(std::int64_t n);

/// Number of divisors of m prime to n.
std::int64_t sigma0_coprime(std::int64_t m, std::int64_t n);
/// sum_{d | n, (N, d) = 1} n/d.
Integer sigma1_coprime(std::int64_t n, std::int64_t N);

/// (gcd(d, Q), d / gcd(d, Q)).
std::pair<std::int64_t, std::int64_t> coprime_split(std::int64_t d, std::int64_t Q);

/// Floor square root for n >= 0.
std::int64_t isqrt(std::int64_t n);
/// True iff n >= 0 is a perfect square; writes the root to *root when given.
bool is_square(std::int64_t n, std::int64_t* root = nullptr);

/// True iff Q | N and gcd(Q, N/Q) = 1.
bool is_exact_divisor(std::int64_t Q, std::int64_t N);

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t ipow(std::int64_t base, int exp);

/// A finite set of primes, sorted and deduplicated.
class PrimeSet {
 public:
  PrimeSet() = default;
  explicit PrimeSet(std::vector<std::int64_t> primes);

  /// The primes dividing q.
  static PrimeSet of(std::int64_t q);

  bool contains(std::int64_t p) const;
  std::span<const std::int64_t> primes() const { return primes_; }

  /// Largest divisor of N supported on this set; always an exact divisor.
  std::int64_t part_of(std::int64_t N) const;

 private:
  std::vector<std::int64_t> primes_;
};

/// Multiplicative Dirichlet inverse of H_{Q,n}; values on p^e:
///   p !| n, p not in Q : e=1 -> -2, e=2 -> 1
///   p !| n, p in Q     : e=2 -> -1
///   p  | n, p not in Q : e=1 -> -1
/// and 0 otherwise.
std::int64_t alpha_Qn(std::int64_t m, const PrimeSet& primeset, std::int64_t n);

/// Multiplicative with alpha(p) = alpha(p^2) = -1, alpha(p^3) = 1, 0 beyond.
std::int64_t sz_alpha(std::int64_t m);

/// Coefficient of x^{k-2} in (1 - t x + N x^2)^{-1}.
Integer pk(int k, const Integer& t, const Integer& N);
Integer pk(int k, std::int64_t t, std::int64_t N);

}  // namespace altrace
