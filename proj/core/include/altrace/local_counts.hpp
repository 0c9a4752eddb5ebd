#pragma once

#include <cstdint>

#include "altrace/rational.hpp"

namespace altrace {

/// Arguments of the local solution counts. Valid keys have u | N; the C
/// functions additionally need u^2 | t^2 - 4n.
struct LocalCountKey {
  std::int64_t N;
  std::int64_t u;
  std::int64_t t;
  std::int64_t n;
};

/// (1/u) * #{alpha mod N*u : gcd(alpha, N) = 1, alpha^2 - t*alpha + n = 0 mod N*u}.
///
/// S_N(u,t,n) is read as a set of residues mod N*u (coprimality to N and to
/// N*u agree since u | N); the factor 1/u turns it back into a count of
/// classes mod N. Throws ConsistencyError if u does not divide the raw count.
std::int64_t count_S(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n);

/// |S_N(t, n)| assembled prime by prime (CRT); equal to count_S(N, 1, t, n).
std::int64_t count_S_crt(std::int64_t N, std::int64_t t, std::int64_t n);

/// psi(N)/psi(N/u) * count_S(N, u, t, n).
std::int64_t count_B(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n);

/// sum_{d | u} mu(d) B(N, u/d, t, n), straight from the definition.
std::int64_t count_C_direct(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n);

/// Local factor C_{p^a}(p^i, D) of the multiplicative closed form. D = 0 is
/// treated as having infinite p-adic valuation.
std::int64_t closed_form_local(std::int64_t p, int a, int i, std::int64_t D);

/// |S_N(t,n)| * prod_{p | N} C_{p^a}(p^i, t^2 - 4n), with the p = 2 cases in
/// their corrected form.
std::int64_t count_C_closed(std::int64_t N, std::int64_t u, std::int64_t t, std::int64_t n);

/// Phi_{N,Q}(a, d) = phi(Q)/Q * sum over N/Q = r*s with (r,s) | a-d,
/// (r,a) = 1, (s,d) = 1 of phi((r,s)). Requires Q || N.
Rational phi_NQ(std::int64_t N, std::int64_t Q, std::int64_t a, std::int64_t d);

/// Kronecker symbol (x/p) for odd x when p = 2, Legendre symbol otherwise.
int kronecker_prime(std::int64_t x, std::int64_t p);

}  // namespace altrace
