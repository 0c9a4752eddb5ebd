#pragma once

#include <cstdint>
#include <vector>

#include "altrace/rational.hpp"

namespace altrace {

/// Memo of 12*H(n) for 0 <= n <= high_water(), where H is the Hurwitz class
/// number extended by H(0) = -1/12 and H(n) = 0 for n < 0.
///
/// Reads are const and safe from any number of threads. Extending the
/// precomputed range (`ensure`) is not; call it before a parallel scan.
class HurwitzTable {
 public:
  HurwitzTable() = default;
  explicit HurwitzTable(std::int64_t n_max) { ensure(n_max); }

  /// Precompute 0..n_max in one pass over reduced forms. No-op if already
  /// covered.
  void ensure(std::int64_t n_max);

  std::int64_t high_water() const { return static_cast<std::int64_t>(twelve_h_.size()) - 1; }

  /// 12*H(n). Values beyond the precomputed range are computed on the fly
  /// (O(n)) without being stored.
  std::int64_t twelve_h(std::int64_t n) const;

  Rational value(std::int64_t n) const { return to_rational(twelve_h(n), 12); }

  /// Overwrites one stored entry. Used to inject faults into selftest runs.
  void override_entry(std::int64_t n, std::int64_t twelve_h_value);

 private:
  std::vector<std::int64_t> twelve_h_;
};

/// 12*H(n) for a single n by enumerating reduced forms of discriminant -n.
std::int64_t hurwitz_twelve_single(std::int64_t n);

/// H(n) exactly; consults `table` when n is in range.
Rational hurwitz(std::int64_t n, const HurwitzTable& table);

}  // namespace altrace
