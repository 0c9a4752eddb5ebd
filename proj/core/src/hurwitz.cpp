#include "altrace/hurwitz.hpp"

#include "altrace/errors.hpp"

namespace altrace {

// A positive definite form ax^2 + bxy + cy^2 is reduced when |b| <= a <= c,
// with b >= 0 whenever |b| = a or a = c. Each reduced form of 4ac - b^2 = n
// contributes 12 / (|Stab|/2): 4 for a = b = c, 6 for a = c with b = 0,
// 12 otherwise.

std::int64_t hurwitz_twelve_single(std::int64_t n) {
  if (n < 0) return 0;
  if (n == 0) return -1;
  const int r = static_cast<int>(n % 4);
  if (r == 1 || r == 2) return 0;
  std::int64_t total = 0;
  // b has the parity of n; a <= sqrt(n/3).
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = (n % 2); b <= a; b += 2) {
      const std::int64_t num = n + b * b;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b == 0) {
        total += (a == c) ? 6 : 12;
      } else if (b == a) {
        total += (a == c) ? 4 : 12;
      } else {
        total += (a == c) ? 12 : 24;
      }
    }
  }
  return total;
}

void HurwitzTable::ensure(std::int64_t n_max) {
  if (n_max < 0) throw DomainError("HurwitzTable::ensure: negative bound");
  if (n_max <= high_water()) return;
  std::vector<std::int64_t> t(static_cast<std::size_t>(n_max) + 1, 0);
  t[0] = -1;
  for (std::int64_t a = 1; 3 * a * a <= n_max; ++a) {
    for (std::int64_t b = 0; b <= a; ++b) {
      // smallest discriminant for this (a, b) has c = a
      for (std::int64_t c = a;; ++c) {
        const std::int64_t n = 4 * a * c - b * b;
        if (n > n_max) break;
        std::int64_t w;
        if (b == 0) {
          w = (a == c) ? 6 : 12;
        } else if (b == a) {
          w = (a == c) ? 4 : 12;
        } else {
          w = (a == c) ? 12 : 24;
        }
        t[static_cast<std::size_t>(n)] += w;
      }
    }
  }
  twelve_h_ = std::move(t);
}

std::int64_t HurwitzTable::twelve_h(std::int64_t n) const {
  if (n < 0) return 0;
  if (n <= high_water()) return twelve_h_[static_cast<std::size_t>(n)];
  return hurwitz_twelve_single(n);
}

void HurwitzTable::override_entry(std::int64_t n, std::int64_t twelve_h_value) {
  ensure(n);
  twelve_h_[static_cast<std::size_t>(n)] = twelve_h_value;
}

Rational hurwitz(std::int64_t n, const HurwitzTable& table) { return table.value(n); }

}  // namespace altrace
