#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "altrace/rational.hpp"

// Slow, simple reference computations used to validate the trace formulas.
// Nothing here calls into the formula code.

namespace altrace::oracles {

/// Truncated power series sum_{i < precision} c_i q^i with exact integer
/// coefficients. Products truncate to the smaller precision; reading past
/// the precision throws.
class QSeries {
 public:
  explicit QSeries(std::size_t precision);
  QSeries(std::vector<Integer> coefficients, std::size_t precision);

  std::size_t precision() const { return precision_; }
  const Integer& operator[](std::size_t i) const;
  Integer& operator[](std::size_t i);

  /// Naive O(P^2) product.
  QSeries operator*(const QSeries& other) const;

  /// prod_{m >= 1} (1 - q^{step*m})^{power}, truncated.
  static QSeries eta_like(std::size_t precision, int step, int power);
  /// q^shift * this, truncated.
  QSeries shifted(std::size_t shift) const;

 private:
  std::vector<Integer> coeffs_;
  std::size_t precision_;
};

/// dim S_k(Gamma_0(N)) from genus, elliptic points and cusps.
std::int64_t dim_cusp(int k, std::int64_t N);

/// dim S_k(N)^new = sum_{N' | N} beta(N/N') dim_cusp(k, N'), beta the
/// Dirichlet inverse of sigma_0.
std::int64_t dim_new_oracle(int k, std::int64_t N);

/// Delta = q prod (1 - q^m)^24 through q^max_n; coefficient n is tau(n).
QSeries delta_coeffs(std::size_t max_n);

/// q prod (1 - q^m)^2 (1 - q^{11m})^2 through q^max_n; the newform of level 11.
QSeries eta_product_11(std::size_t max_n);

/// H(n) as sum over f^2 | n of primitive reduced form counts of
/// discriminant -n/f^2, weighted by 2/|units|.
Rational hurwitz_enumerate(std::int64_t n);

}  // namespace altrace::oracles
