#include "altrace/trace.hpp"

#include <algorithm>
#include <string>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"
#include "altrace/local_counts.hpp"

namespace altrace {

namespace {

void require_weight(int k, int min_k, const char* op) {
  if (k < min_k || k % 2 != 0) {
    throw DomainError(std::string(op) + ": weight must be even and >= " + std::to_string(min_k) +
                      ", got " + std::to_string(k));
  }
}

Integer power(std::int64_t base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

}  // namespace

void TraceQuery::validate() const {
  require_weight(k, 2, "TraceQuery");
  if (N < 1 || n < 1) {
    throw DomainError("TraceQuery: N and n must be positive (N=" + std::to_string(N) +
                      ", n=" + std::to_string(n) + ")");
  }
  if (!is_exact_divisor(Q, N)) {
    throw DomainError("TraceQuery: Q=" + std::to_string(Q) + " is not an exact divisor of N=" +
                      std::to_string(N));
  }
}

Rational TraceTerms::total() const {
  return Rational(-1, 2) * elliptic_sum - Rational(1, 2) * hyperbolic_sum + correction;
}

TraceTerms trace_full_terms(const TraceQuery& q, const HurwitzTable& table) {
  q.validate();
  const int k = q.k;
  const std::int64_t Q = q.Q;
  const std::int64_t M = q.N / Q;
  const std::int64_t Qn = checked_mul(Q, q.n);
  const std::int64_t bound = checked_mul(4, Qn);
  const Integer q_scale = power(Q, static_cast<unsigned long>(k / 2 - 1));

  const auto q_divs = divisors(Q);
  const auto m_divs = divisors(M);

  // C_{N/Q}(u', t, Qn) and p_k(t, Qn) are even in t, so t and -t pair up.
  Integer elliptic12 = 0;
  for (std::int64_t t = 0; t * t <= bound; t += Q) {
    const std::int64_t D4 = bound - t * t;
    Integer inner = 0;
    for (std::int64_t u : q_divs) {
      const int mu = mobius(u);
      if (mu == 0) continue;
      for (std::int64_t up : m_divs) {
        const std::int64_t uu = checked_mul(u, up);
        const std::int64_t sq = checked_mul(uu, uu);
        if (sq > D4 && D4 != 0) break;
        if (D4 % sq != 0) continue;
        const std::int64_t h12 = table.twelve_h(D4 / sq);
        if (h12 == 0) continue;
        const std::int64_t c = count_C_closed(M, up, t, Qn);
        if (c == 0) continue;
        inner += to_integer(h12) * to_integer(c) * mu;
      }
    }
    if (inner == 0) continue;
    Integer term = pk(k, to_integer(t), to_integer(Qn)) * inner;
    if (t != 0) term *= 2;
    elliptic12 += term;
  }

  Rational hyper = 0;
  for (std::int64_t a : divisors(Qn)) {
    const std::int64_t d = Qn / a;
    if ((a + d) % Q != 0) continue;
    const Rational phi = phi_NQ(q.N, Q, a, d);
    if (phi == 0) continue;
    hyper += Rational(power(std::min(a, d), static_cast<unsigned long>(k - 1))) * phi;
  }

  TraceTerms terms;
  terms.elliptic_sum = Rational(elliptic12, 12 * q_scale);
  terms.elliptic_sum.canonicalize();
  terms.hyperbolic_sum = hyper / q_scale;
  terms.correction = k == 2 ? Rational(sigma1_coprime(q.n, q.N)) : Rational(0);
  return terms;
}

Rational trace_full(const TraceQuery& q, const HurwitzTable& table) {
  return trace_full_terms(q, table).total();
}

Rational trace_level1(int k, std::int64_t n, const HurwitzTable& table) {
  require_weight(k, 4, "trace_level1");
  if (n < 1) throw DomainError("trace_level1: n must be positive");
  const std::int64_t bound = checked_mul(4, n);
  Integer ell12 = 0;
  for (std::int64_t t = -isqrt(bound); t * t <= bound; ++t) {
    const std::int64_t h12 = table.twelve_h(bound - t * t);
    if (h12 != 0) ell12 += pk(k, t, n) * to_integer(h12);
  }
  Integer div_sum = 0;
  for (std::int64_t d : divisors(n)) {
    div_sum += power(std::min(d, n / d), static_cast<unsigned long>(k - 1));
  }
  Rational total = Rational(ell12, 12) + Rational(div_sum);
  total.canonicalize();
  return Rational(-1, 2) * total;
}

Rational trace_AL(int k, std::int64_t N, const HurwitzTable& table) {
  return trace_full(TraceQuery{k, N, N, 1}, table);
}

Rational trace_AL_corollary(int k, std::int64_t N, const HurwitzTable& table) {
  require_weight(k, 2, "trace_AL_corollary");
  if (N < 1) throw DomainError("trace_AL_corollary: N must be positive");
  const Integer scale = power(N, static_cast<unsigned long>(k / 2 - 1));
  const std::int64_t bound = checked_mul(4, N);
  const auto n_divs = divisors(N);

  Integer ell12 = 0;
  for (std::int64_t t = -(isqrt(bound) / N) * N; t * t <= bound; t += N) {
    const std::int64_t D4 = bound - t * t;
    Integer inner = 0;
    for (std::int64_t u : n_divs) {
      const int mu = mobius(u);
      if (mu == 0 || D4 % (u * u) != 0) continue;
      inner += to_integer(table.twelve_h(D4 / (u * u))) * mu;
    }
    ell12 += pk(k, t, N) * inner;
  }

  Integer hyp = 0;
  for (std::int64_t a : n_divs) {
    const std::int64_t d = N / a;
    if ((a + d) % N == 0) hyp += power(std::min(a, d), static_cast<unsigned long>(k - 1));
  }

  Rational ell(ell12, 12 * scale);
  ell.canonicalize();
  Rational hyper(to_integer(euler_phi(N)) * hyp, 2 * to_integer(N) * scale);
  hyper.canonicalize();
  Rational result = Rational(-1, 2) * ell - hyper;
  if (k == 2) result += 1;
  return result;
}

Rational trace_AL_simplified(int k, std::int64_t N, const HurwitzTable& table) {
  require_weight(k, 2, "trace_AL_simplified");
  if (N <= 4) throw DomainError("trace_AL_simplified: requires N > 4, got " + std::to_string(N));
  const std::int64_t four_n = checked_mul(4, N);
  Integer sum12 = 0;
  for (std::int64_t u : divisors(N)) {
    const int mu = mobius(u);
    if (mu == 0 || four_n % (u * u) != 0) continue;
    sum12 += to_integer(table.twelve_h(four_n / (u * u))) * mu;
  }
  const int sign = (k / 2) % 2 == 0 ? 1 : -1;
  Rational result(sum12 * sign, 24);
  result.canonicalize();
  if (k == 2) result += 1;
  return result;
}

}  // namespace altrace
