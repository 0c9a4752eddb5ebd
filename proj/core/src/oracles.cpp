#include "altrace/oracles.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "altrace/errors.hpp"

namespace altrace::oracles {

namespace {

// Local helpers; kept separate from arith.cpp on purpose.

std::vector<std::int64_t> all_divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t totient(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t i = 1; i <= n; ++i) count += std::gcd(i, n) == 1;
  return count;
}

int exponent_of(std::int64_t n, std::int64_t p) {
  int e = 0;
  for (; n % p == 0; n /= p) ++e;
  return e;
}

}  // namespace

QSeries::QSeries(std::size_t precision) : coeffs_(precision), precision_(precision) {}

QSeries::QSeries(std::vector<Integer> coefficients, std::size_t precision)
    : coeffs_(std::move(coefficients)), precision_(precision) {
  coeffs_.resize(precision_);
}

const Integer& QSeries::operator[](std::size_t i) const {
  if (i >= precision_) {
    throw std::out_of_range("QSeries: coefficient " + std::to_string(i) + " beyond precision " +
                            std::to_string(precision_));
  }
  return coeffs_[i];
}

Integer& QSeries::operator[](std::size_t i) {
  if (i >= precision_) {
    throw std::out_of_range("QSeries: coefficient " + std::to_string(i) + " beyond precision " +
                            std::to_string(precision_));
  }
  return coeffs_[i];
}

QSeries QSeries::operator*(const QSeries& other) const {
  const std::size_t prec = std::min(precision_, other.precision_);
  QSeries out(prec);
  for (std::size_t i = 0; i < prec; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < prec; ++j) out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return out;
}

QSeries QSeries::eta_like(std::size_t precision, int step, int power) {
  QSeries acc(precision);
  if (precision > 0) acc[0] = 1;
  for (std::size_t m = static_cast<std::size_t>(step); m < precision; m += static_cast<std::size_t>(step)) {
    QSeries factor(precision);
    factor[0] = 1;
    factor[m] = -1;
    for (int r = 0; r < power; ++r) acc = acc * factor;
  }
  return acc;
}

QSeries QSeries::shifted(std::size_t shift) const {
  QSeries out(precision_);
  for (std::size_t i = 0; i + shift < precision_; ++i) out.coeffs_[i + shift] = coeffs_[i];
  return out;
}

std::int64_t dim_cusp(int k, std::int64_t N) {
  if (k < 2 || k % 2 != 0) throw DomainError("dim_cusp: weight must be even and >= 2");
  if (N < 1) throw DomainError("dim_cusp: level must be positive");
  const auto primes = prime_divisors(N);

  std::int64_t index = N;
  for (std::int64_t p : primes) index = index / p * (p + 1);

  std::int64_t nu2 = 0;
  if (N % 4 != 0) {
    nu2 = 1;
    for (std::int64_t p : primes) {
      if (p == 2) continue;
      nu2 *= (p % 4 == 1) ? 2 : 0;
    }
  }
  std::int64_t nu3 = 0;
  if (N % 9 != 0) {
    nu3 = 1;
    for (std::int64_t p : primes) {
      if (p == 3) continue;
      nu3 *= (p % 3 == 1) ? 2 : 0;
    }
  }
  std::int64_t cusps = 0;
  for (std::int64_t d : all_divisors(N)) cusps += totient(std::gcd(d, N / d));

  // 12 (g - 1) = index - 3 nu2 - 4 nu3 - 6 cusps
  const std::int64_t twelve_g_minus_1 = index - 3 * nu2 - 4 * nu3 - 6 * cusps;
  if (twelve_g_minus_1 % 12 != 0) throw std::logic_error("dim_cusp: non-integral genus");
  const std::int64_t g_minus_1 = twelve_g_minus_1 / 12;
  if (k == 2) return g_minus_1 + 1;
  return (k - 1) * g_minus_1 + (k / 2 - 1) * cusps + nu2 * (k / 4) + nu3 * (k / 3);
}

std::int64_t dim_new_oracle(int k, std::int64_t N) {
  std::int64_t total = 0;
  for (std::int64_t Np : all_divisors(N)) {
    const std::int64_t m = N / Np;
    std::int64_t beta = 1;
    for (std::int64_t p : prime_divisors(m)) {
      const int e = exponent_of(m, p);
      beta *= e == 1 ? -2 : (e == 2 ? 1 : 0);
    }
    if (beta != 0) total += beta * dim_cusp(k, Np);
  }
  return total;
}

QSeries delta_coeffs(std::size_t max_n) {
  if (max_n < 1) throw DomainError("delta_coeffs: max_n must be >= 1");
  return QSeries::eta_like(max_n + 1, 1, 24).shifted(1);
}

QSeries eta_product_11(std::size_t max_n) {
  if (max_n < 1) throw DomainError("eta_product_11: max_n must be >= 1");
  const std::size_t prec = max_n + 1;
  return (QSeries::eta_like(prec, 1, 2) * QSeries::eta_like(prec, 11, 2)).shifted(1);
}

namespace {

// Primitive reduced forms of discriminant -m, each weighted by 2/|Aut|,
// returned as a multiple of 1/6 (so 6 * h_w).
std::int64_t six_times_class_number(std::int64_t m) {
  std::int64_t six_h = 0;
  for (std::int64_t a = 1; 3 * a * a <= m; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = m + b * b;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      six_h += 6;
    }
  }
  if (m == 3) return six_h / 3;  // one form, 6 units
  if (m == 4) return six_h / 2;  // one form, 4 units
  return six_h;
}

}  // namespace

Rational hurwitz_enumerate(std::int64_t n) {
  if (n < 0) throw DomainError("hurwitz_enumerate: n must be >= 0");
  if (n == 0) return Rational(-1, 12);
  std::int64_t six_h = 0;
  for (std::int64_t f = 1; f * f <= n; ++f) {
    if (n % (f * f) != 0) continue;
    const std::int64_t m = n / (f * f);
    if (m % 4 == 0 || m % 4 == 3) six_h += six_times_class_number(m);
  }
  Rational h(six_h, 6);
  h.canonicalize();
  return h;
}

}  // namespace altrace::oracles
