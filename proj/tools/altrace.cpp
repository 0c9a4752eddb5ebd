// altrace: exact traces of Hecke and Atkin-Lehner operators, and the bulk
// murmuration scan.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"
#include "altrace/hurwitz.hpp"
#include "altrace/murmur.hpp"
#include "altrace/newspace.hpp"
#include "altrace/selftest.hpp"
#include "altrace/trace.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_consistency = 3;
constexpr int exit_io = 4;

constexpr const char* cache_env = "ALTRACE_CACHE";

struct QueryArgs {
  int k = 2;
  std::int64_t N = 1;
  std::int64_t Q = 1;
  std::int64_t n = 1;
};

void add_query_options(CLI::App* cmd, QueryArgs& q, bool with_hecke) {
  cmd->add_option("-k,--weight", q.k, "even weight >= 2")->required();
  cmd->add_option("-N,--level", q.N, "level >= 1")->required();
  if (with_hecke) {
    cmd->add_option("-Q", q.Q, "exact divisor of N for W_Q")->capture_default_str();
    cmd->add_option("-n", q.n, "Hecke index")->capture_default_str();
  }
}

// Table large enough for every discriminant 4Qn - t^2 the query touches.
altrace::HurwitzTable table_for(std::int64_t Q, std::int64_t n) {
  return altrace::HurwitzTable(altrace::checked_mul(4, altrace::checked_mul(Q, n)));
}

void parse_levels(const std::string& text, altrace::RunConfig& config) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      config.level_lo = config.level_hi = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return;
    }
    const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
    config.level_lo = std::stoll(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    config.level_hi = std::stoll(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw altrace::DomainError("--levels expects A:B or A, got '" + text + "'");
  }
}

int cmd_trace(const QueryArgs& q, bool newspace) {
  const altrace::TraceQuery query{q.k, q.N, q.Q, q.n};
  query.validate();
  const auto table = table_for(q.Q, q.n);
  altrace::Rational value;
  if (newspace) {
    const altrace::NewspaceContext ctx(table);
    value = altrace::trace_new(ctx, q.k, q.N, q.Q, q.n);
  } else {
    value = altrace::trace_full(query, table);
  }
  std::cout << altrace::to_string(altrace::require_integer(value, "trace")) << '\n';
  return exit_ok;
}

int cmd_dims(const QueryArgs& q) {
  altrace::TraceQuery{q.k, q.N, 1, 1}.validate();
  const auto table = table_for(q.N, 1);
  const altrace::NewspaceContext ctx(table);
  const auto dim = altrace::require_integer(ctx.full(q.k, q.N, 1, 1), "dim");
  const auto dim_new = altrace::require_integer(altrace::trace_new(ctx, q.k, q.N, 1, 1), "dim_new");
  const auto s = altrace::dims_signed(ctx, q.k, q.N);
  std::cout << "dim,dim_new,dim_plus,dim_minus\n"
            << altrace::to_string(dim) << ',' << altrace::to_string(dim_new) << ',' << s.plus << ','
            << s.minus << '\n';
  return exit_ok;
}

int cmd_murmur(altrace::RunConfig config, const std::string& levels, const std::string& filter,
               const std::string& format, bool no_cache) {
  parse_levels(levels, config);
  config.filter = altrace::parse_level_filter(filter);
  config.format = altrace::parse_output_format(format);
  if (config.cache_path.empty() && !no_cache) {
    if (const char* env = std::getenv(cache_env)) config.cache_path = env;
  }
  if (no_cache) config.cache_path.clear();
  config.validate();

  auto cache = std::make_shared<altrace::TraceCache>();
  std::size_t loaded = 0;
  if (!config.cache_path.empty()) loaded = altrace::load_cache_file(config.cache_path, *cache);

  const auto result = altrace::murmur_scan(config, cache);

  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) throw altrace::IoError("cannot open " + config.output_path + " for writing");
  }
  std::ostream& out = config.output_path.empty() ? std::cout : file;
  if (config.format == altrace::OutputFormat::csv) {
    altrace::write_csv(result, out);
  } else {
    altrace::write_json(result, config, out);
  }
  out.flush();
  if (!out) throw altrace::IoError("failed writing murmur output");

  if (!config.cache_path.empty()) altrace::save_cache_file(config.cache_path, *cache);
  std::cerr << "murmur: " << result.rows.size() << " rows; cache " << loaded << " loaded, "
            << cache->hits() << " hits, " << cache->misses() << " misses\n";
  return exit_ok;
}

int cmd_hurwitz(std::int64_t n_max) {
  if (n_max < 0) throw altrace::DomainError("--max must be >= 0");
  const altrace::HurwitzTable table(n_max);
  std::cout << "n,12H\n";
  for (std::int64_t n = 0; n <= n_max; ++n) std::cout << n << ',' << table.twelve_h(n) << '\n';
  std::cout.flush();
  if (!std::cout) throw altrace::IoError("failed writing Hurwitz table");
  return exit_ok;
}

int cmd_selftest(const std::string& level, const std::string& json_path,
                 const std::vector<std::string>& overrides) {
  altrace::TableTamper tamper;
  if (!overrides.empty()) {
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
    for (const auto& text : overrides) {
      const auto eq = text.find('=');
      try {
        if (eq == std::string::npos) throw std::invalid_argument(text);
        entries.emplace_back(std::stoll(text.substr(0, eq)), std::stoll(text.substr(eq + 1)));
      } catch (const std::logic_error&) {
        throw altrace::DomainError("--override-h expects n=12H, got '" + text + "'");
      }
    }
    tamper = [entries](altrace::HurwitzTable& table) {
      for (const auto& [n, v] : entries) table.override_entry(n, v);
    };
  }
  const auto report = altrace::run_selftest(altrace::parse_selftest_level(level), tamper);
  std::cout << report.text();
  if (!json_path.empty()) {
    if (json_path == "-") {
      std::cout << report.json() << '\n';
    } else {
      std::ofstream out(json_path);
      out << report.json() << '\n';
      if (!out) throw altrace::IoError("failed writing " + json_path);
    }
  }
  return report.ok() ? exit_ok : exit_consistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact traces of Hecke operators composed with Atkin-Lehner involutions"};
  app.require_subcommand(1);

  QueryArgs trace_args, new_args, dims_args;
  auto* trace_cmd = app.add_subcommand("trace", "Tr(T_n o W_Q | S_k(N))");
  add_query_options(trace_cmd, trace_args, true);
  auto* new_cmd = app.add_subcommand("trace-new", "Tr(T_n o W_Q | S_k(N)^new)");
  add_query_options(new_cmd, new_args, true);
  auto* dims_cmd = app.add_subcommand("dims", "dim, dim_new, dim_plus, dim_minus of S_k(N)");
  add_query_options(dims_cmd, dims_args, false);

  altrace::RunConfig config;
  std::string levels, filter = "all", format = "csv";
  bool no_cache = false;
  auto* murmur_cmd = app.add_subcommand("murmur", "newspace T_p traces split by W_N sign");
  murmur_cmd->add_option("-k,--weight", config.k, "even weight >= 2")->capture_default_str();
  murmur_cmd->add_option("--levels", levels, "level range A:B")->required();
  murmur_cmd->add_option("--primes", config.prime_bound, "prime bound P")->required();
  murmur_cmd->add_option("--filter", filter, "all|squarefree|prime")->capture_default_str();
  murmur_cmd->add_option("--format", format, "csv|json")->capture_default_str();
  murmur_cmd->add_option("-o,--output", config.output_path, "output file (default stdout)");
  murmur_cmd->add_option("--workers", config.workers, "worker threads")->capture_default_str();
  murmur_cmd->add_option("--cache", config.cache_path,
                         std::string("JSON trace cache file (default $") + cache_env + ")");
  murmur_cmd->add_flag("--no-cache", no_cache, "ignore the cache file and $ALTRACE_CACHE");

  std::int64_t n_max = 0;
  auto* hurwitz_cmd = app.add_subcommand("hurwitz", "CSV of n, 12H(n)");
  hurwitz_cmd->add_option("--max", n_max, "largest n")->required();

  std::string level = "quick", json_path;
  std::vector<std::string> overrides;
  auto* selftest_cmd = app.add_subcommand("selftest", "run the consistency suites");
  selftest_cmd->add_option("--level", level, "quick|full")->capture_default_str();
  selftest_cmd->add_option("--json", json_path, "also write the JSON report ('-' for stdout)");
  selftest_cmd->add_option("--override-h", overrides, "fault injection: replace 12H(n), as n=v");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*trace_cmd) return cmd_trace(trace_args, false);
    if (*new_cmd) return cmd_trace(new_args, true);
    if (*dims_cmd) return cmd_dims(dims_args);
    if (*murmur_cmd) return cmd_murmur(config, levels, filter, format, no_cache);
    if (*hurwitz_cmd) return cmd_hurwitz(n_max);
    if (*selftest_cmd) return cmd_selftest(level, json_path, overrides);
  } catch (const altrace::ConsistencyError& e) {
    std::cerr << "altrace: internal consistency failure: " << e.what() << '\n';
    return exit_consistency;
  } catch (const altrace::IoError& e) {
    std::cerr << "altrace: I/O error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::invalid_argument& e) {
    std::cerr << "altrace: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "altrace: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "altrace: internal error: " << e.what() << '\n';
    return exit_consistency;
  }
  return exit_usage;
}
