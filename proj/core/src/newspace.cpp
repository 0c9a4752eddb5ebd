#include "altrace/newspace.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"

namespace altrace {

std::size_t NewTraceKeyHash::operator()(const NewTraceKey& key) const noexcept {
  std::size_t h = std::hash<std::int64_t>{}(key.N);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::int64_t>{}(key.Q));
  mix(std::hash<std::int64_t>{}(key.n));
  mix(std::hash<int>{}(key.k));
  return h;
}

std::optional<Rational> TraceCache::find(const Map& map, const NewTraceKey& key) const {
  std::shared_lock lock(mutex_);
  const auto it = map.find(key);
  if (it == map.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

std::optional<Rational> TraceCache::find_full(const NewTraceKey& key) const { return find(full_, key); }
std::optional<Rational> TraceCache::find_new(const NewTraceKey& key) const { return find(new_, key); }

void TraceCache::insert_full(const NewTraceKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  full_.emplace(key, value);
}

void TraceCache::insert_new(const NewTraceKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  new_.emplace(key, value);
}

std::vector<std::pair<NewTraceKey, Rational>> TraceCache::new_entries() const {
  std::vector<std::pair<NewTraceKey, Rational>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(new_.begin(), new_.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::size_t TraceCache::size() const {
  std::shared_lock lock(mutex_);
  return full_.size() + new_.size();
}

NewspaceContext::NewspaceContext(const HurwitzTable& table, std::shared_ptr<TraceCache> cache)
    : table_(&table), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<TraceCache>();
}

Rational NewspaceContext::full(int k, std::int64_t N, std::int64_t Q, std::int64_t n) const {
  const NewTraceKey key{k, N, Q, n};
  if (auto hit = cache_->find_full(key)) return *hit;
  Rational value = trace_full(TraceQuery{k, N, Q, n}, *table_);
  cache_->insert_full(key, value);
  return value;
}

namespace {

void require_positive(std::int64_t v, const char* what) {
  if (v <= 0) throw DomainError(std::string(what) + " must be positive, got " + std::to_string(v));
}

void require_chain(std::int64_t d, std::int64_t nprime, std::int64_t n) {
  require_positive(d, "d");
  require_positive(nprime, "n'");
  require_positive(n, "n");
  if (nprime % d != 0 || n % nprime != 0) {
    throw DomainError("need d | n' | n (d=" + std::to_string(d) + ", n'=" + std::to_string(nprime) +
                      ", n=" + std::to_string(n) + ")");
  }
}

void require_exact(std::int64_t Q, std::int64_t N) {
  if (!is_exact_divisor(Q, N)) {
    throw DomainError("Q=" + std::to_string(Q) + " is not an exact divisor of N=" + std::to_string(N));
  }
}

Integer power(std::int64_t base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

}  // namespace

std::vector<std::int64_t> set_N_d(std::int64_t N, std::int64_t d) {
  require_positive(N, "N");
  require_positive(d, "d");
  std::vector<std::int64_t> out;
  for (std::int64_t Np : divisors(N)) {
    if ((N / Np) % d == 0 && std::gcd(d, Np) == 1) out.push_back(Np);
  }
  return out;
}

std::vector<std::int64_t> set_N_dn(std::int64_t N, std::int64_t n, std::int64_t d,
                                   std::int64_t nprime) {
  require_positive(N, "N");
  require_chain(d, nprime, n);
  std::vector<std::int64_t> out;
  const std::int64_t dn = checked_mul(d, n);
  for (std::int64_t Np : set_N_d(N, d)) {
    const std::int64_t cofactor = N / Np;
    if (cofactor % nprime != 0 || !is_square(cofactor / nprime)) continue;
    if (std::gcd(cofactor, dn) != nprime) continue;
    out.push_back(Np);
  }
  return out;
}

std::vector<std::int64_t> set_N_QNn(std::int64_t Q, std::int64_t N, std::int64_t n,
                                    std::int64_t d, std::int64_t nprime) {
  require_exact(Q, N);
  require_chain(d, nprime, n);
  const std::int64_t n_Q = std::gcd(n, Q);
  const std::int64_t nprime_Q = std::gcd(nprime, Q);
  const auto [d_Q, d_rest] = coprime_split(d, Q);
  const auto q_part = set_N_dn(Q, n_Q, d_Q, nprime_Q);
  if (q_part.empty()) return {};
  const auto m_part = set_N_d(N / Q, d_rest);
  std::vector<std::int64_t> out;
  out.reserve(q_part.size() * m_part.size());
  for (std::int64_t a : q_part) {
    for (std::int64_t b : m_part) out.push_back(a * b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational t_less(const NewspaceContext& ctx, int k, std::int64_t Q, std::int64_t N, std::int64_t n) {
  require_exact(Q, N);
  require_positive(n, "n");
  Rational total = 0;
  const std::int64_t M = N / Q;
  for (std::int64_t nprime : divisors(n)) {
    if (nprime == 1) continue;
    const std::int64_t nprime_rest = nprime / std::gcd(nprime, Q);
    const Integer weight = power(nprime, static_cast<unsigned long>(k / 2));
    for (std::int64_t d : divisors(nprime)) {
      const int mu = mobius(d);
      if (mu == 0) continue;
      const std::int64_t d_rest = d / std::gcd(d, Q);
      if (nprime_rest != checked_mul(d_rest, d_rest)) continue;
      Rational inner = 0;
      for (std::int64_t Np : set_N_QNn(Q, N, n, d, nprime)) {
        const std::int64_t Qp = std::gcd(Q, Np);
        const std::int64_t sigma = sigma0_coprime(M / (Np / Qp), n);
        inner += sigma * trace_new(ctx, k, Np, Qp, n / nprime);
      }
      if (inner == 0) continue;
      total += Rational(weight * mu, to_integer(d)) * inner;
    }
  }
  total.canonicalize();
  return total;
}

Rational trace_new(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t Q,
                   std::int64_t n) {
  TraceQuery{k, N, Q, n}.validate();
  const NewTraceKey key{k, N, Q, n};
  if (auto hit = ctx.cache().find_new(key)) return *hit;

  const PrimeSet primes = PrimeSet::of(Q);
  Rational total = 0;
  for (std::int64_t Np : divisors(N)) {
    const std::int64_t alpha = alpha_Qn(N / Np, primes, n);
    if (alpha == 0) continue;
    const std::int64_t Qp = std::gcd(Q, Np);
    Rational f = ctx.full(k, Np, Qp, n);
    if (n > 1) f -= t_less(ctx, k, Qp, Np, n);
    total += alpha * f;
  }
  ctx.cache().insert_new(key, total);
  return total;
}

Rational trace_new_AL(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t Q) {
  TraceQuery{k, N, Q, 1}.validate();
  const PrimeSet primes = PrimeSet::of(Q);
  Rational total = 0;
  for (std::int64_t Np : divisors(N)) {
    const std::int64_t alpha = alpha_Qn(N / Np, primes, 1);
    if (alpha == 0) continue;
    total += alpha * ctx.full(k, Np, std::gcd(Q, Np), 1);
  }
  return total;
}

Rational trace_new_AL_sqrt(int k, std::int64_t N, const HurwitzTable& table) {
  if (k <= 2 || k % 2 != 0) throw DomainError("trace_new_AL_sqrt: weight must be even and > 2");
  require_positive(N, "N");
  for (std::int64_t d = 1; d < 4; ++d) {
    if (N % d == 0 && is_square(N / d)) {
      throw DomainError("trace_new_AL_sqrt: N/" + std::to_string(d) + " is a square for N=" +
                        std::to_string(N));
    }
  }
  Integer sum12 = 0;
  for (std::int64_t Np : divisors(N)) {
    std::int64_t root = 0;
    if (!is_square(N / Np, &root)) continue;
    const int outer = mobius(root);
    if (outer == 0) continue;
    const std::int64_t four_n = 4 * Np;
    Integer inner = 0;
    for (std::int64_t u : divisors(Np)) {
      const int mu = mobius(u);
      if (mu == 0 || four_n % (u * u) != 0) continue;
      inner += to_integer(table.twelve_h(four_n / (u * u))) * mu;
    }
    sum12 += inner * outer;
  }
  const int sign = (k / 2) % 2 == 0 ? 1 : -1;
  Rational result(sum12 * sign, 24);
  result.canonicalize();
  return result;
}

Rational trace_new_TpWN(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t p) {
  if (!is_prime(p)) throw DomainError("trace_new_TpWN: p=" + std::to_string(p) + " is not prime");
  TraceQuery{k, N, N, p}.validate();

  Rational total = 0;
  for (std::int64_t Np : divisors(N)) {
    const std::int64_t cofactor = N / Np;
    std::int64_t root = 0;
    if (cofactor % p == 0 || !is_square(cofactor, &root)) continue;
    const int mu = mobius(root);
    if (mu == 0) continue;
    total += mu * ctx.full(k, Np, Np, p);
  }

  if (N % p == 0) {
    const int v = valuation(N, p);
    auto w = [&](std::int64_t M) { return trace_new_AL(ctx, k, M, M); };
    if (v == 1) {
      total += Rational(power(p, static_cast<unsigned long>(k / 2 - 1))) * w(N / p);
    }
    Rational odd_sum = 0;
    std::int64_t pp = p;
    for (int i = 0; i <= (v - 1) / 2; ++i) {
      odd_sum += w(N / pp);
      pp *= p * p;
    }
    total -= Rational(power(p, static_cast<unsigned long>(k / 2))) * odd_sum;
  }
  return total;
}

SignedDims dims_signed(const NewspaceContext& ctx, int k, std::int64_t N) {
  const Integer dim_new = require_integer(trace_new(ctx, k, N, 1, 1), "dim S_k(N)^new");
  const Integer w = require_integer(trace_new_AL(ctx, k, N, N), "Tr(W_N | S_k(N)^new)");
  const Integer two_plus = dim_new + w;
  const Integer two_minus = dim_new - w;
  if (two_plus % 2 != 0 || two_plus < 0 || two_minus < 0) {
    throw ConsistencyError("dims_signed: invalid split for k=" + std::to_string(k) +
                           ", N=" + std::to_string(N) + " (dim=" + to_string(dim_new) +
                           ", trace W_N=" + to_string(w) + ")");
  }
  return {static_cast<std::int64_t>(Integer(two_plus / 2).get_si()),
          static_cast<std::int64_t>(Integer(two_minus / 2).get_si())};
}

SignedTraces trace_new_signed(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t p) {
  if (!is_prime(p)) throw DomainError("trace_new_signed: p=" + std::to_string(p) + " is not prime");
  const Integer tp = require_integer(trace_new(ctx, k, N, 1, p), "Tr(T_p | S_k(N)^new)");
  const Integer tpw = require_integer(trace_new_TpWN(ctx, k, N, p), "Tr(T_p W_N | S_k(N)^new)");
  const Integer sum = tp + tpw;
  if (sum % 2 != 0) {
    throw ConsistencyError("trace_new_signed: odd sum for k=" + std::to_string(k) + ", N=" +
                           std::to_string(N) + ", p=" + std::to_string(p));
  }
  SignedTraces out;
  out.plus = sum / 2;
  out.minus = tp - out.plus;
  return out;
}

Rational sz_combination(int weight, std::int64_t m, std::int64_t n, std::int64_t l,
                        const SValues& s_values) {
  (void)weight;
  require_positive(m, "m");
  require_positive(l, "l");
  require_exact(n, m);
  if (std::gcd(l, m) != 1) throw DomainError("sz_combination: need (l, m) = 1");
  Rational total = 0;
  for (std::int64_t mp : divisors(m)) {
    if (mobius(m / mp) == 0) continue;
    const std::int64_t g = std::gcd(n, mp);
    const int sign = mobius(n / g);
    if (sign == 0) continue;
    const auto it = s_values.find({mp, g});
    if (it == s_values.end()) {
      throw InputError("sz_combination: missing s-value for (m'=" + std::to_string(mp) +
                       ", n'=" + std::to_string(g) + ")");
    }
    total += sign * it->second;
  }
  return total;
}

}  // namespace altrace
