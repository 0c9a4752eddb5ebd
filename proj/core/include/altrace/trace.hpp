#pragma once

#include <cstdint>

#include "altrace/hurwitz.hpp"
#include "altrace/rational.hpp"

namespace altrace {

/// Request for Tr(T_n o W_Q | S_k(N)).
struct TraceQuery {
  int k = 2;
  std::int64_t N = 1;
  std::int64_t Q = 1;
  std::int64_t n = 1;

  /// Throws DomainError unless k is even >= 2, N, n >= 1 and Q || N.
  void validate() const;

  friend bool operator==(const TraceQuery&, const TraceQuery&) = default;
};

/// The three pieces of the trace formula for T_n o W_Q:
///
///   trace = -1/2 * elliptic_sum - 1/2 * hyperbolic_sum + correction
///
/// elliptic_sum  = sum_{Q | t, t^2 <= 4Qn} p_k(t,Qn)/Q^{k/2-1}
///                   * sum_{u | Q, u' | N/Q} H((4Qn-t^2)/(uu')^2) C_{N/Q}(u',t,Qn) mu(u)
/// hyperbolic_sum = sum_{Qn = ad, Q | a+d} min(a,d)^{k-1}/Q^{k/2-1} * Phi_{N,Q}(a,d)
/// correction    = sigma_{1,N}(n) when k = 2, else 0
///
/// Terms whose Hurwitz argument is not an integer are dropped.
struct TraceTerms {
  Rational elliptic_sum;
  Rational hyperbolic_sum;
  Rational correction;

  Rational total() const;
};

TraceTerms trace_full_terms(const TraceQuery& q, const HurwitzTable& table);

/// Tr(T_n o W_Q | S_k(N)), exact.
Rational trace_full(const TraceQuery& q, const HurwitzTable& table);

/// Tr(T_n | S_k(SL_2(Z))) from the classical level-one formula; k >= 4.
Rational trace_level1(int k, std::int64_t n, const HurwitzTable& table);

/// Tr(W_N | S_k(N)) through trace_full with Q = N, n = 1.
Rational trace_AL(int k, std::int64_t N, const HurwitzTable& table);

/// Tr(W_N | S_k(N)) from the specialised n = 1, Q = N expression (elliptic
/// sum over u | N, hyperbolic term weighted by phi(N)/2N).
Rational trace_AL_corollary(int k, std::int64_t N, const HurwitzTable& table);

/// ((-1)^{k/2}/2) sum_{u | N} H(4N/u^2) mu(u) + [k = 2]; only for N > 4.
Rational trace_AL_simplified(int k, std::int64_t N, const HurwitzTable& table);

}  // namespace altrace
