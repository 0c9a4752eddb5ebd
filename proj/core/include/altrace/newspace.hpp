#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "altrace/hurwitz.hpp"
#include "altrace/rational.hpp"
#include "altrace/trace.hpp"

namespace altrace {

/// Memo key for Tr(T_n o W_Q | S_k(N)) and its newspace counterpart.
struct NewTraceKey {
  int k;
  std::int64_t N;
  std::int64_t Q;
  std::int64_t n;

  friend bool operator==(const NewTraceKey&, const NewTraceKey&) = default;
  friend auto operator<=>(const NewTraceKey&, const NewTraceKey&) = default;
};

struct NewTraceKeyHash {
  std::size_t operator()(const NewTraceKey& key) const noexcept;
};

/// Memo of full-space and newspace traces shared across the divisor lattice.
/// Concurrent lookups take a shared lock; insertions are serialized.
class TraceCache {
 public:
  std::optional<Rational> find_full(const NewTraceKey& key) const;
  std::optional<Rational> find_new(const NewTraceKey& key) const;
  void insert_full(const NewTraceKey& key, const Rational& value);
  void insert_new(const NewTraceKey& key, const Rational& value);

  /// Newspace entries in key order (for persisting).
  std::vector<std::pair<NewTraceKey, Rational>> new_entries() const;

  std::uint64_t hits() const { return hits_.load(std::memory_order_relaxed); }
  std::uint64_t misses() const { return misses_.load(std::memory_order_relaxed); }
  std::size_t size() const;

 private:
  using Map = std::unordered_map<NewTraceKey, Rational, NewTraceKeyHash>;
  std::optional<Rational> find(const Map& map, const NewTraceKey& key) const;

  mutable std::shared_mutex mutex_;
  Map full_;
  Map new_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

/// Everything the newspace recursion needs: a precomputed Hurwitz table
/// (read only) and a trace memo. Cheap to copy; copies share the cache.
class NewspaceContext {
 public:
  explicit NewspaceContext(const HurwitzTable& table,
                           std::shared_ptr<TraceCache> cache = std::make_shared<TraceCache>());

  const HurwitzTable& table() const { return *table_; }
  TraceCache& cache() const { return *cache_; }
  const std::shared_ptr<TraceCache>& shared_cache() const { return cache_; }

  /// Memoized trace_full.
  Rational full(int k, std::int64_t N, std::int64_t Q, std::int64_t n) const;

 private:
  const HurwitzTable* table_;
  std::shared_ptr<TraceCache> cache_;
};

// Divisor sets of the level-raising decomposition. All returned sorted.

/// { N' | N : d | N/N', (d, N') = 1 }
std::vector<std::int64_t> set_N_d(std::int64_t N, std::int64_t d);

/// { N' in set_N_d(N, d) : N/(N' n') is a square, (N/N', d n) = n' }
std::vector<std::int64_t> set_N_dn(std::int64_t N, std::int64_t n, std::int64_t d,
                                   std::int64_t nprime);

/// set_N_dn(Q, n_Q, d_Q, n'_Q) * set_N_d(N/Q, d_{N/Q}), where x_Q = (x, Q) and
/// x_{N/Q} = x / x_Q.
std::vector<std::int64_t> set_N_QNn(std::int64_t Q, std::int64_t N, std::int64_t n,
                                    std::int64_t d, std::int64_t nprime);

/// Contribution of newforms seen through T_{n/n'} with n' > 1:
///
///   sum_{d | n' | n, n'_{N/Q} = d_{N/Q}^2, n' > 1} n'^{k/2} mu(d)/d
///     sum_{N' in set_N_QNn(Q,N,n,d,n')} sigma_{0,n}((N/Q)/(N'/Q')) Tr(T_{n/n'} o W_{Q'} | S_k(N')^new)
///
/// Recursive calls use a strictly smaller Hecke index.
Rational t_less(const NewspaceContext& ctx, int k, std::int64_t Q, std::int64_t N, std::int64_t n);

/// Tr(T_n o W_Q | S_k(N)^new) =
///   sum_{N' | N} alpha_{Q,n}(N/N') (Tr(T_n o W_{Q'} | S_k(N')) - t_less(Q', N'))
/// with Q' = (Q, N'). Memoized.
Rational trace_new(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t Q,
                   std::int64_t n);

/// Tr(W_Q | S_k(N)^new) = sum_{N' | N} alpha_{Q,1}(N/N') Tr(W_{Q'} | S_k(N')).
Rational trace_new_AL(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t Q);

/// Tr(W_N | S_k(N)^new) from Hurwitz numbers alone. Needs k > 2 and N/d not
/// a square for every d < 4 dividing N.
Rational trace_new_AL_sqrt(int k, std::int64_t N, const HurwitzTable& table);

/// Tr(T_p o W_N | S_k(N)^new) without the general set recursion:
///   sum_{N' | N, p !| N/N' = square} mu(sqrt(N/N')) Tr(T_p o W_{N'} | S_k(N')) + W_{<N,p}
/// where, for p | N and w(M) = Tr(W_M | S_k(M)^new),
///   W_{<N,p} = [p^2 !| N] p^{k/2-1} w(N/p) - p^{k/2} sum_{0 <= i <= (v_p(N)-1)/2} w(N/p^{2i+1}).
Rational trace_new_TpWN(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t p);

struct SignedDims {
  std::int64_t plus;
  std::int64_t minus;

  friend bool operator==(const SignedDims&, const SignedDims&) = default;
};

/// Dimensions of the +1 / -1 eigenspaces of W_N on S_k(N)^new.
SignedDims dims_signed(const NewspaceContext& ctx, int k, std::int64_t N);

struct SignedTraces {
  Integer plus;
  Integer minus;
};

/// Traces of T_p on the W_N = +1 / -1 parts of the newspace.
SignedTraces trace_new_signed(const NewspaceContext& ctx, int k, std::int64_t N, std::int64_t p);

/// Externally supplied values s(m', n') keyed by (m', n').
using SValues = std::map<std::pair<std::int64_t, std::int64_t>, Rational>;

/// sum_{m' | m, m/m' squarefree} mu(n/(n,m')) s(m', (n,m')).
/// Requires (l, m) = 1 and n || m; throws InputError for a missing s-value.
/// `weight` and `l` only label the s-values; they do not enter the sum.
Rational sz_combination(int weight, std::int64_t m, std::int64_t n, std::int64_t l,
                        const SValues& s_values);

}  // namespace altrace
