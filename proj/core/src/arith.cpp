#include "altrace/arith.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "altrace/errors.hpp"

namespace altrace {

Integer require_integer(const Rational& q, std::string_view what) {
  if (q.get_den() != 1) {
    throw ConsistencyError(std::string(what) + " is not integral: " + to_string(q));
  }
  return q.get_num();
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    Integer z;
    if (part.empty() || z.set_str(part, 10) != 0) {
      throw InputError("malformed rational: '" + s + "'");
    }
    return z;
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer num = parse_int(s.substr(0, slash));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator: '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

void require_positive(std::int64_t n, const char* op) {
  if (n <= 0) {
    throw DomainError(std::string(op) + ": argument must be positive, got " + std::to_string(n));
  }
}

}  // namespace

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw DomainError("int64 overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::int64_t Factorization::value() const {
  std::int64_t v = 1;
  for (const auto& [p, e] : factors) v = checked_mul(v, ipow(p, e));
  return v;
}

int Factorization::valuation(std::int64_t p) const {
  for (const auto& f : factors) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

std::vector<std::int64_t> Factorization::primes() const {
  std::vector<std::int64_t> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

Factorization factorize(std::int64_t n) {
  require_positive(n, "factorize");
  Factorization f;
  auto pull = [&](std::int64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  };
  pull(2);
  pull(3);
  // 6k - 1, 6k + 1
  for (std::int64_t p = 5; p <= n / p; p += 6) {
    pull(p);
    pull(p + 2);
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

std::vector<std::int64_t> divisors(const Factorization& f) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    std::int64_t pp = 1;
    for (int i = 1; i <= e; ++i) {
      pp *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pp);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  require_positive(n, "divisors");
  return divisors(factorize(n));
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw DomainError("valuation of 0");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int mobius(std::int64_t n) {
  require_positive(n, "mobius");
  int m = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::int64_t euler_phi(std::int64_t n) {
  require_positive(n, "euler_phi");
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n).factors) r = r / p * (p - 1);
  return r;
}

std::int64_t psi_index(std::int64_t n) {
  require_positive(n, "psi_index");
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n).factors) r = checked_mul(r / p, p + 1);
  return r;
}

std::int64_t sigma0_coprime(std::int64_t m, std::int64_t n) {
  require_positive(m, "sigma0_coprime");
  require_positive(n, "sigma0_coprime");
  std::int64_t count = 1;
  for (const auto& [p, e] : factorize(m).factors) {
    if (n % p != 0) count *= e + 1;
  }
  return count;
}

Integer sigma1_coprime(std::int64_t n, std::int64_t N) {
  require_positive(n, "sigma1_coprime");
  require_positive(N, "sigma1_coprime");
  Integer s = 0;
  for (std::int64_t d : divisors(n)) {
    if (std::gcd(d, N) == 1) s += to_integer(n / d);
  }
  return s;
}

std::pair<std::int64_t, std::int64_t> coprime_split(std::int64_t d, std::int64_t Q) {
  require_positive(d, "coprime_split");
  require_positive(Q, "coprime_split");
  const std::int64_t g = std::gcd(d, Q);
  return {g, d / g};
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative");
  auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

bool is_square(std::int64_t n, std::int64_t* root) {
  if (n < 0) return false;
  const std::int64_t r = isqrt(n);
  if (r * r != n) return false;
  if (root != nullptr) *root = r;
  return true;
}

bool is_exact_divisor(std::int64_t Q, std::int64_t N) {
  if (Q <= 0 || N <= 0 || N % Q != 0) return false;
  return std::gcd(Q, N / Q) == 1;
}

PrimeSet::PrimeSet(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeSet PrimeSet::of(std::int64_t q) { return PrimeSet(factorize(q).primes()); }

bool PrimeSet::contains(std::int64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::int64_t PrimeSet::part_of(std::int64_t N) const {
  require_positive(N, "PrimeSet::part_of");
  std::int64_t q = 1;
  for (std::int64_t p : primes_) {
    while (N % p == 0) {
      N /= p;
      q *= p;
    }
  }
  return q;
}

std::int64_t alpha_Qn(std::int64_t m, const PrimeSet& primeset, std::int64_t n) {
  require_positive(m, "alpha_Qn");
  require_positive(n, "alpha_Qn");
  std::int64_t r = 1;
  for (const auto& [p, e] : factorize(m).factors) {
    const bool divides_n = n % p == 0;
    const bool in_set = primeset.contains(p);
    std::int64_t v = 0;
    if (!divides_n && !in_set) {
      v = e == 1 ? -2 : (e == 2 ? 1 : 0);
    } else if (!divides_n && in_set) {
      v = e == 2 ? -1 : 0;
    } else if (divides_n && !in_set) {
      v = e == 1 ? -1 : 0;
    }
    if (v == 0) return 0;
    r *= v;
  }
  return r;
}

std::int64_t sz_alpha(std::int64_t m) {
  require_positive(m, "sz_alpha");
  std::int64_t r = 1;
  for (const auto& [p, e] : factorize(m).factors) {
    if (e >= 4) return 0;
    r *= e == 3 ? 1 : -1;
  }
  return r;
}

Integer pk(int k, const Integer& t, const Integer& N) {
  if (k < 2 || k % 2 != 0) {
    throw DomainError("p_k: weight must be even and >= 2, got " + std::to_string(k));
  }
  Integer prev = 1;  // c_0
  if (k == 2) return prev;
  Integer cur = t;  // c_1
  for (int m = 2; m <= k - 2; ++m) {
    Integer next = t * cur - N * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Integer pk(int k, std::int64_t t, std::int64_t N) { return pk(k, to_integer(t), to_integer(N)); }

}  // namespace altrace
