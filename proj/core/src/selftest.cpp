#include "altrace/selftest.hpp"

#include <chrono>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"
#include "altrace/local_counts.hpp"
#include "altrace/murmur.hpp"
#include "altrace/newspace.hpp"
#include "altrace/oracles.hpp"
#include "altrace/trace.hpp"

namespace altrace {

SelftestLevel parse_selftest_level(const std::string& text) {
  if (text == "quick") return SelftestLevel::quick;
  if (text == "full") return SelftestLevel::full;
  throw DomainError("unknown selftest level '" + text + "' (expected quick|full)");
}

std::string to_string(SelftestLevel level) {
  return level == SelftestLevel::quick ? "quick" : "full";
}

bool SelftestReport::ok() const {
  for (const auto& e : entries) {
    if (!e.passed) return false;
  }
  return true;
}

std::string SelftestReport::text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& e : entries) {
    out << (e.passed ? "PASS " : "FAIL ") << e.suite << '/' << e.name;
    if (!e.detail.empty()) out << " [" << e.detail << ']';
    if (e.counterexample) out << ": " << *e.counterexample;
    out << '\n';
    if (!e.passed) ++failed;
  }
  out << entries.size() - failed << '/' << entries.size() << " checks passed (" << to_string(level)
      << ")\n";
  return out.str();
}

std::string SelftestReport::json() const {
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json r;
    r["suite"] = e.suite;
    r["case"] = e.name;
    r["status"] = e.passed ? "pass" : "fail";
    if (e.counterexample) r["counterexample"] = *e.counterexample;
    if (!e.detail.empty()) r["detail"] = e.detail;
    results.push_back(std::move(r));
  }
  nlohmann::ordered_json doc;
  doc["level"] = to_string(level);
  doc["passed"] = ok();
  doc["results"] = std::move(results);
  return doc.dump(1);
}

namespace {

using Failure = std::optional<std::string>;

// Grid sizes: quick keeps every suite well under a second.
struct Scale {
  bool full;
  std::int64_t pick(std::int64_t quick, std::int64_t full_value) const {
    return full ? full_value : quick;
  }
};

std::string str(const Rational& q) { return to_string(q); }

class Runner {
 public:
  Runner(SelftestLevel level, const TableTamper& tamper)
      : scale_{level == SelftestLevel::full}, table_(10000), ctx_(table_) {
    report_.level = level;
    if (tamper) tamper(table_);
  }

  void run(const std::string& suite);
  SelftestReport take() { return std::move(report_); }

 private:
  // fn returns a counterexample or nothing; it may set detail_.
  template <class Fn>
  void check(const std::string& suite, const std::string& name, Fn&& fn) {
    SelftestEntry entry{suite, name, false, std::nullopt, {}, 0.0};
    detail_.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
      entry.counterexample = fn();
      entry.passed = !entry.counterexample;
    } catch (const std::exception& e) {
      entry.counterexample = std::string("exception: ") + e.what();
    }
    entry.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    entry.detail = std::move(detail_);
    report_.entries.push_back(std::move(entry));
  }

  void worked_example();
  void hurwitz_suite();
  void zero_spaces();
  void dimensions();
  void tau();
  void local_counts();
  void newspace();
  void fast_path();
  void al_simplified();
  void sz_alpha_suite();
  void sign_splits();
  void pipeline();

  Scale scale_;
  HurwitzTable table_;
  NewspaceContext ctx_;
  SelftestReport report_;
  std::string detail_;
};

void Runner::worked_example() {
  check("worked_example", "k=4 n=5 level 1 worked example", [&]() -> Failure {
    const TraceTerms t = trace_full_terms(TraceQuery{4, 1, 1, 5}, table_);
    if (t.elliptic_sum != -2 || t.hyperbolic_sum != 2 || t.total() != 0) {
      return "k=4 n=5: elliptic " + str(t.elliptic_sum) + ", divisor term " +
             str(t.hyperbolic_sum) + ", total " + str(t.total()) + " (expected -2, 2, 0)";
    }
    return std::nullopt;
  });
}

void Runner::hurwitz_suite() {
  check("hurwitz", "pinned values", [&]() -> Failure {
    const std::vector<std::pair<std::int64_t, Rational>> pins = {
        {0, to_rational(-1, 12)}, {3, to_rational(1, 3)}, {4, to_rational(1, 2)},
        {11, Rational(1)},        {16, to_rational(3, 2)}, {19, Rational(1)},
        {20, Rational(2)},        {12, to_rational(4, 3)}, {44, Rational(4)}};
    for (const auto& [n, want] : pins) {
      const Rational got = hurwitz(n, table_);
      if (got != want) return "H(" + std::to_string(n) + ") = " + str(got) + ", want " + str(want);
    }
    return std::nullopt;
  });
  check("hurwitz", "table matches enumeration", [&]() -> Failure {
    const std::int64_t n_max = scale_.pick(500, 5000);
    for (std::int64_t n = 0; n <= n_max; ++n) {
      const Rational a = hurwitz(n, table_);
      const Rational b = oracles::hurwitz_enumerate(n);
      if (a != b) return "n=" + std::to_string(n) + ": table " + str(a) + ", enumeration " + str(b);
    }
    return std::nullopt;
  });
}

void Runner::zero_spaces() {
  check("zero_spaces", "Tr(T_n | S_k(1)) = 0 for k in {4,6,8,10,14}", [&]() -> Failure {
    const std::int64_t n_max = scale_.pick(50, 200);
    for (int k : {4, 6, 8, 10, 14}) {
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const Rational v = trace_full(TraceQuery{k, 1, 1, n}, table_);
        if (v != 0) return "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " + str(v);
      }
    }
    return std::nullopt;
  });
}

void Runner::dimensions() {
  const std::int64_t N_max = scale_.pick(60, 300);
  check("dimensions", "trace of identity = dim_cusp", [&]() -> Failure {
    for (int k = 2; k <= 12; k += 2) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        const Rational v = trace_full(TraceQuery{k, N, 1, 1}, table_);
        const std::int64_t d = oracles::dim_cusp(k, N);
        if (v != d) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": trace " + str(v) +
                 ", dim " + std::to_string(d);
        }
      }
    }
    return std::nullopt;
  });
  check("dimensions", "newspace trace of identity = dim_new", [&]() -> Failure {
    for (int k = 2; k <= 12; k += 2) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        const Rational v = trace_new(ctx_, k, N, 1, 1);
        const std::int64_t d = oracles::dim_new_oracle(k, N);
        if (v != d) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": trace " + str(v) +
                 ", dim_new " + std::to_string(d);
        }
      }
    }
    return std::nullopt;
  });
}

void Runner::tau() {
  check("tau", "Tr(T_n | S_12(1)) = tau(n)", [&]() -> Failure {
    const std::int64_t n_max = scale_.pick(20, 50);
    const auto delta = oracles::delta_coeffs(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const Rational v = trace_full(TraceQuery{12, 1, 1, n}, table_);
      if (v != delta[static_cast<std::size_t>(n)]) {
        return "n=" + std::to_string(n) + ": trace " + str(v) + ", tau " +
               to_string(delta[static_cast<std::size_t>(n)]);
      }
    }
    return std::nullopt;
  });
  check("tau", "level-one formula agrees", [&]() -> Failure {
    const std::int64_t n_max = scale_.pick(20, 50);
    for (int k = 4; k <= 24; k += 2) {
      for (std::int64_t n = 1; n <= n_max; ++n) {
        const Rational a = trace_full(TraceQuery{k, 1, 1, n}, table_);
        const Rational b = trace_level1(k, n, table_);
        if (a != b) {
          return "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " + str(a) + " vs " +
                 str(b);
        }
      }
    }
    return std::nullopt;
  });
}

void Runner::local_counts() {
  check("local_counts", "closed form = direct count on prime powers", [&]() -> Failure {
    const std::int64_t bound = scale_.pick(64, 625);
    const std::int64_t tn = scale_.pick(15, 40);
    std::int64_t corrected_hits = 0;
    for (std::int64_t p : {2, 3, 5}) {
      int a = 1;
      for (std::int64_t N = p; N <= bound; N *= p, ++a) {
        for (std::int64_t u : divisors(N)) {
          for (std::int64_t t = -tn; t <= tn; ++t) {
            for (std::int64_t n = -tn; n <= tn; ++n) {
              const std::int64_t D = t * t - 4 * n;
              if (D % (u * u) != 0) continue;
              const std::int64_t direct = count_C_direct(N, u, t, n);
              const std::int64_t closed = count_C_closed(N, u, t, n);
              if (direct != closed) {
                return "N=" + std::to_string(N) + " u=" + std::to_string(u) + " t=" +
                       std::to_string(t) + " n=" + std::to_string(n) + ": direct " +
                       std::to_string(direct) + ", closed " + std::to_string(closed);
              }
              if (p == 2 && u == N && D != 0) {
                const int v = valuation(D, 2);
                if (v >= 2 * a && v <= 2 * a + 2) ++corrected_hits;
              }
            }
          }
        }
      }
    }
    detail_ = std::to_string(corrected_hits) + " cases on the p=2 branches with u = N";
    if (scale_.full && corrected_hits < 100) {
      return "only " + std::to_string(corrected_hits) + " cases reached the p=2 branches";
    }
    return std::nullopt;
  });
}

void Runner::newspace() {
  check("newspace", "decomposition into newspaces", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(60, 300);
    for (int k = 2; k <= 12; k += 2) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        Rational sum = 0;
        for (std::int64_t Np : divisors(N)) {
          sum += sigma0_coprime(N / Np, 1) * trace_new(ctx_, k, Np, 1, 1);
        }
        const Rational full = ctx_.full(k, N, 1, 1);
        if (sum != full) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": full " + str(full) +
                 ", sum " + str(sum);
        }
      }
    }
    return std::nullopt;
  });
  // Tr(T_l W_{n1} | S_k(n1 n2)) as a sum of newspace traces at levels a1 a2.
  check("newspace", "full traces from newspace traces with W", [&]() -> Failure {
    const std::int64_t m_max = scale_.pick(40, 120);
    for (int k : {2, 4}) {
      for (std::int64_t m = 1; m <= m_max; ++m) {
        for (std::int64_t n1 : divisors(m)) {
          const std::int64_t n2 = m / n1;
          if (!is_exact_divisor(n1, m)) continue;
          for (std::int64_t l : {1, 2, 3, 5}) {
            if (std::gcd(l, m) != 1) continue;
            Rational sum = 0;
            for (std::int64_t a1 : divisors(n1)) {
              if (!is_square(n1 / a1)) continue;
              for (std::int64_t a2 : divisors(n2)) {
                sum += sigma0_coprime(n2 / a2, 1) * trace_new(ctx_, k, a1 * a2, a1, l);
              }
            }
            const Rational full = ctx_.full(k, m, n1, l);
            if (sum != full) {
              return "k=" + std::to_string(k) + " n1=" + std::to_string(n1) + " n2=" +
                     std::to_string(n2) + " l=" + std::to_string(l) + ": full " + str(full) +
                     ", sum " + str(sum);
            }
          }
        }
      }
    }
    return std::nullopt;
  });
  check("newspace", "combination of s-values recovered from newspace traces", [&]() -> Failure {
    const std::int64_t m_max = scale_.pick(30, 60);
    // Dirichlet inverse of sz_alpha, to solve for s given newspace traces.
    std::map<std::int64_t, std::int64_t> inverse{{1, 1}};
    for (std::int64_t m = 2; m <= m_max; ++m) {
      std::int64_t acc = 0;
      for (std::int64_t d : divisors(m)) {
        if (d < m) acc += inverse[d] * sz_alpha(m / d);
      }
      inverse[m] = -acc;
    }
    for (int k : {2, 4}) {
      for (std::int64_t m = 1; m <= m_max; ++m) {
        for (std::int64_t n : divisors(m)) {
          if (!is_exact_divisor(n, m)) continue;
          for (std::int64_t l : {1, 2, 3, 5}) {
            if (std::gcd(l, m) != 1) continue;
            SValues s;
            for (std::int64_t mp : divisors(m)) {
              const std::int64_t g = std::gcd(n, mp);
              Rational v = 0;
              for (std::int64_t mpp : divisors(mp)) {
                v += inverse[mp / mpp] * trace_new(ctx_, k, mpp, std::gcd(g, mpp), l);
              }
              s[{mp, g}] = v;
            }
            const Rational combined = sz_combination(k, m, n, l, s);
            const Rational full = ctx_.full(k, m, n, l);
            if (combined != full) {
              return "k=" + std::to_string(k) + " m=" + std::to_string(m) + " n=" +
                     std::to_string(n) + " l=" + std::to_string(l) + ": full " + str(full) +
                     ", combination " + str(combined);
            }
          }
        }
      }
    }
    return std::nullopt;
  });
  check("newspace", "level 11 weight 2 against the eta product", [&]() -> Failure {
    const std::int64_t n_max = scale_.pick(20, 60);
    const auto f = oracles::eta_product_11(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const Integer& a = f[static_cast<std::size_t>(n)];
      const Rational tn = trace_new(ctx_, 2, 11, 1, n);
      const Rational tw = trace_new(ctx_, 2, 11, 11, n);
      if (tn != a || tw != -a) {
        return "n=" + std::to_string(n) + ": T_n " + str(tn) + ", T_n W_11 " + str(tw) +
               ", a_n " + to_string(a);
      }
    }
    return std::nullopt;
  });
}

void Runner::fast_path() {
  check("fast_path", "T_p W_N shortcut = general recursion", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(40, 200);
    for (int k : {2, 4, 6}) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        for (std::int64_t p : {2, 3, 5, 7, 11}) {
          const Rational fast = trace_new_TpWN(ctx_, k, N, p);
          const Rational slow = trace_new(ctx_, k, N, N, p);
          if (fast != slow) {
            return "k=" + std::to_string(k) + " N=" + std::to_string(N) + " p=" +
                   std::to_string(p) + ": fast " + str(fast) + ", general " + str(slow);
          }
        }
      }
    }
    return std::nullopt;
  });
}

void Runner::al_simplified() {
  check("al_simplified", "Hurwitz-only W_N trace = full formula", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(200, 2000);
    for (int k = 2; k <= 12; k += 2) {
      for (std::int64_t N = 5; N <= N_max; ++N) {
        const Rational a = trace_AL_simplified(k, N, table_);
        const Rational b = trace_AL(k, N, table_);
        if (a != b) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": simplified " + str(a) +
                 ", full " + str(b);
        }
      }
    }
    return std::nullopt;
  });
  check("al_simplified", "n = 1, Q = N specialisation", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(100, 500);
    for (int k = 2; k <= 12; k += 2) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        const Rational a = trace_AL_corollary(k, N, table_);
        const Rational b = trace_AL(k, N, table_);
        if (a != b) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": corollary " + str(a) +
                 ", full " + str(b);
        }
      }
    }
    return std::nullopt;
  });
}

void Runner::sz_alpha_suite() {
  const std::int64_t n_max = scale_.pick(1000, 10000);
  check("sz_alpha", "sum over square cofactors = mobius", [&]() -> Failure {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      std::int64_t sum = 0;
      for (std::int64_t d : divisors(n)) {
        if (is_square(n / d)) sum += sz_alpha(d);
      }
      if (sum != mobius(n)) {
        return "n=" + std::to_string(n) + ": sum " + std::to_string(sum) + ", mu " +
               std::to_string(mobius(n));
      }
    }
    return std::nullopt;
  });
  check("sz_alpha", "convolution with sigma_0 = squarefree indicator", [&]() -> Failure {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      std::int64_t sum = 0;
      for (std::int64_t d : divisors(n)) sum += sz_alpha(d) * sigma0_coprime(n / d, 1);
      const std::int64_t want = mobius(n) != 0 ? 1 : 0;
      if (sum != want) {
        return "n=" + std::to_string(n) + ": sum " + std::to_string(sum) + ", want " +
               std::to_string(want);
      }
    }
    return std::nullopt;
  });
}

void Runner::sign_splits() {
  check("sign_splits", "W_N eigenspace dimensions", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(60, 300);
    for (int k : {2, 4}) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        const SignedDims d = dims_signed(ctx_, k, N);
        if (d.plus < 0 || d.minus < 0 || d.plus + d.minus != oracles::dim_new_oracle(k, N)) {
          return "k=" + std::to_string(k) + " N=" + std::to_string(N) + ": plus " +
                 std::to_string(d.plus) + ", minus " + std::to_string(d.minus);
        }
      }
    }
    return std::nullopt;
  });
  check("sign_splits", "row identities on a scan", [&]() -> Failure {
    const std::int64_t N_max = scale_.pick(60, 300);
    const auto primes = primes_up_to(scale_.pick(20, 50));
    for (int k : {2, 4}) {
      for (std::int64_t N = 1; N <= N_max; ++N) {
        for (const auto& row : murmur_rows_for_level(ctx_, k, N, primes)) {
          if (!row.consistent()) {
            return "k=" + std::to_string(k) + " N=" + std::to_string(N) + " p=" +
                   std::to_string(row.p);
          }
        }
      }
    }
    return std::nullopt;
  });
}

void Runner::pipeline() {
  RunConfig config;
  config.k = 2;
  config.level_lo = 1;
  config.level_hi = scale_.pick(60, 300);
  config.prime_bound = 50;
  auto csv = [](const MurmurResult& r) {
    std::ostringstream out;
    write_csv(r, out);
    return out.str();
  };
  check("pipeline", "worker count does not change output", [&]() -> Failure {
    config.workers = 1;
    const std::string one = csv(murmur_scan(config));
    config.workers = 4;
    const std::string four = csv(murmur_scan(config));
    if (one != four) return std::string("1-worker and 4-worker CSV differ");
    return std::nullopt;
  });
  check("pipeline", "warm cache does not change output", [&]() -> Failure {
    config.workers = 1;
    auto cache = std::make_shared<TraceCache>();
    const std::string cold = csv(murmur_scan(config, cache));
    const std::string warm = csv(murmur_scan(config, cache));
    if (cold != warm) return std::string("cold-cache and warm-cache CSV differ");
    return std::nullopt;
  });
}

void Runner::run(const std::string& suite) {
  if (suite == "worked_example") return worked_example();
  if (suite == "hurwitz") return hurwitz_suite();
  if (suite == "zero_spaces") return zero_spaces();
  if (suite == "dimensions") return dimensions();
  if (suite == "tau") return tau();
  if (suite == "local_counts") return local_counts();
  if (suite == "newspace") return newspace();
  if (suite == "fast_path") return fast_path();
  if (suite == "al_simplified") return al_simplified();
  if (suite == "sz_alpha") return sz_alpha_suite();
  if (suite == "sign_splits") return sign_splits();
  if (suite == "pipeline") return pipeline();
  throw DomainError("unknown selftest suite '" + suite + "'");
}

}  // namespace

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names = {
      "worked_example", "hurwitz",  "zero_spaces",   "dimensions", "tau",         "local_counts",
      "newspace",      "fast_path", "al_simplified", "sz_alpha",   "sign_splits", "pipeline"};
  return names;
}

SelftestReport run_suite(const std::string& suite, SelftestLevel level, const TableTamper& tamper) {
  Runner runner(level, tamper);
  runner.run(suite);
  return runner.take();
}

SelftestReport run_selftest(SelftestLevel level, const TableTamper& tamper) {
  Runner runner(level, tamper);
  for (const auto& suite : selftest_suites()) runner.run(suite);
  return runner.take();
}

}  // namespace altrace
