#include "altrace/murmur.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "altrace/arith.hpp"
#include "altrace/errors.hpp"

namespace altrace {

LevelFilter parse_level_filter(const std::string& text) {
  if (text == "all") return LevelFilter::all;
  if (text == "squarefree") return LevelFilter::squarefree;
  if (text == "prime") return LevelFilter::prime;
  throw DomainError("unknown level filter '" + text + "' (expected all|squarefree|prime)");
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw DomainError("unknown output format '" + text + "' (expected csv|json)");
}

std::string to_string(LevelFilter f) {
  switch (f) {
    case LevelFilter::all: return "all";
    case LevelFilter::squarefree: return "squarefree";
    case LevelFilter::prime: return "prime";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

void RunConfig::validate() const {
  if (k < 2 || k % 2 != 0) throw DomainError("weight must be even and >= 2");
  if (level_lo < 1 || level_lo > level_hi) throw DomainError("level range must satisfy 1 <= N1 <= N2");
  if (prime_bound < 2) throw DomainError("prime bound must be >= 2");
  if (workers < 1) throw DomainError("worker count must be >= 1");
}

bool MurmurRow::consistent() const {
  return dim_plus >= 0 && dim_minus >= 0 && dim_plus + dim_minus == dim_new &&
         tr_plus + tr_minus == tr_Tp_new && tr_plus - tr_minus == tr_TpWN_new;
}

bool level_passes(std::int64_t N, LevelFilter filter) {
  switch (filter) {
    case LevelFilter::all: return true;
    case LevelFilter::squarefree: return mobius(N) != 0;
    case LevelFilter::prime: return is_prime(N);
  }
  return false;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::vector<MurmurRow> murmur_rows_for_level(const NewspaceContext& ctx, int k, std::int64_t N,
                                             const std::vector<std::int64_t>& primes) {
  const SignedDims dims = dims_signed(ctx, k, N);
  const std::int64_t dim_new = dims.plus + dims.minus;
  std::vector<MurmurRow> rows;
  if (dim_new == 0) return rows;
  rows.reserve(primes.size());
  for (std::int64_t p : primes) {
    const std::string where = " at (N=" + std::to_string(N) + ", p=" + std::to_string(p) + ")";
    MurmurRow row;
    row.N = N;
    row.k = k;
    row.p = p;
    row.p_divides_N = N % p == 0;
    row.dim_new = dim_new;
    row.dim_plus = dims.plus;
    row.dim_minus = dims.minus;
    row.tr_Tp_new = require_integer(trace_new(ctx, k, N, 1, p), "Tr(T_p | new)" + where);
    row.tr_TpWN_new = require_integer(trace_new_TpWN(ctx, k, N, p), "Tr(T_p W_N | new)" + where);
    const Integer twice_plus = row.tr_Tp_new + row.tr_TpWN_new;
    if (twice_plus % 2 != 0) throw ConsistencyError("odd signed-trace sum" + where);
    row.tr_plus = twice_plus / 2;
    row.tr_minus = row.tr_Tp_new - row.tr_plus;
    if (!row.consistent()) throw ConsistencyError("row identities violated" + where);
    rows.push_back(std::move(row));
  }
  return rows;
}

MurmurResult murmur_scan(const RunConfig& config, std::shared_ptr<TraceCache> cache) {
  config.validate();
  const auto primes = primes_up_to(config.prime_bound);

  HurwitzTable table;
  table.ensure(checked_mul(checked_mul(4, config.level_hi), config.prime_bound));
  const NewspaceContext ctx(table, std::move(cache));

  std::vector<std::int64_t> levels;
  for (std::int64_t N = config.level_lo; N <= config.level_hi; ++N) {
    if (level_passes(N, config.filter)) levels.push_back(N);
  }

  std::vector<std::vector<MurmurRow>> per_level(levels.size());
  std::vector<std::exception_ptr> errors(levels.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < levels.size(); i = next.fetch_add(1)) {
      try {
        per_level[i] = murmur_rows_for_level(ctx, config.k, levels[i], primes);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  // Report the failure of the smallest level so the error is deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MurmurResult result;
  std::map<std::int64_t, MurmurAggregate> agg;
  for (std::int64_t p : primes) agg[p].p = p;
  for (auto& rows : per_level) {
    for (auto& row : rows) {
      auto& a = agg[row.p];
      a.levels += 1;
      a.sum_dim_plus += row.dim_plus;
      a.sum_dim_minus += row.dim_minus;
      a.sum_tr_plus += row.tr_plus;
      a.sum_tr_minus += row.tr_minus;
      result.rows.push_back(std::move(row));
    }
  }
  for (auto& [p, a] : agg) result.aggregates.push_back(std::move(a));
  return result;
}

void write_csv(const MurmurResult& result, std::ostream& out) {
  out << "N,k,p,p_divides_N,dim_new,dim_plus,dim_minus,tr_Tp_new,tr_TpWN_new,tr_plus,tr_minus\n";
  for (const auto& r : result.rows) {
    out << r.N << ',' << r.k << ',' << r.p << ',' << (r.p_divides_N ? 1 : 0) << ',' << r.dim_new
        << ',' << r.dim_plus << ',' << r.dim_minus << ',' << to_string(r.tr_Tp_new) << ','
        << to_string(r.tr_TpWN_new) << ',' << to_string(r.tr_plus) << ','
        << to_string(r.tr_minus) << '\n';
  }
  out << "# aggregate: p,levels,sum_dim_plus,sum_dim_minus,sum_tr_plus,sum_tr_minus\n";
  for (const auto& a : result.aggregates) {
    out << "# " << a.p << ',' << a.levels << ',' << a.sum_dim_plus << ',' << a.sum_dim_minus << ','
        << to_string(a.sum_tr_plus) << ',' << to_string(a.sum_tr_minus) << '\n';
  }
  if (!out) throw IoError("failed writing CSV output");
}

void write_json(const MurmurResult& result, const RunConfig& config, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["config"] = {{"k", config.k},
                   {"levels", {config.level_lo, config.level_hi}},
                   {"prime_bound", config.prime_bound},
                   {"filter", to_string(config.filter)}};
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"N", r.N},
                    {"k", r.k},
                    {"p", r.p},
                    {"p_divides_N", r.p_divides_N},
                    {"dim_new", r.dim_new},
                    {"dim_plus", r.dim_plus},
                    {"dim_minus", r.dim_minus},
                    {"tr_Tp_new", to_string(r.tr_Tp_new)},
                    {"tr_TpWN_new", to_string(r.tr_TpWN_new)},
                    {"tr_plus", to_string(r.tr_plus)},
                    {"tr_minus", to_string(r.tr_minus)}});
  }
  doc["rows"] = std::move(rows);
  ordered_json agg = ordered_json::array();
  for (const auto& a : result.aggregates) {
    agg.push_back({{"p", a.p},
                   {"levels", a.levels},
                   {"sum_dim_plus", a.sum_dim_plus},
                   {"sum_dim_minus", a.sum_dim_minus},
                   {"sum_tr_plus", to_string(a.sum_tr_plus)},
                   {"sum_tr_minus", to_string(a.sum_tr_minus)}});
  }
  doc["aggregate"] = std::move(agg);
  out << doc.dump(1) << '\n';
  if (!out) throw IoError("failed writing JSON output");
}

namespace {

std::string key_text(const NewTraceKey& key) {
  return std::to_string(key.k) + "," + std::to_string(key.N) + "," + std::to_string(key.Q) + "," +
         std::to_string(key.n);
}

NewTraceKey parse_key(const std::string& text) {
  NewTraceKey key{};
  std::istringstream in(text);
  char c1 = 0, c2 = 0, c3 = 0;
  in >> key.k >> c1 >> key.N >> c2 >> key.Q >> c3 >> key.n;
  if (!in || c1 != ',' || c2 != ',' || c3 != ',' || !in.eof()) {
    throw InputError("malformed cache key '" + text + "'");
  }
  return key;
}

}  // namespace

std::size_t load_cache_file(const std::string& path, TraceCache& cache) {
  std::ifstream in(path);
  if (!in) return 0;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cache file " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_object()) {
    throw IoError("cache file " + path + ": missing 'entries' object");
  }
  std::size_t count = 0;
  for (const auto& [key, value] : doc["entries"].items()) {
    if (!value.is_string()) throw IoError("cache file " + path + ": non-string value");
    try {
      const NewTraceKey parsed = parse_key(key);
      TraceQuery{parsed.k, parsed.N, parsed.Q, parsed.n}.validate();
      cache.insert_new(parsed, parse_rational(value.get<std::string>()));
    } catch (const std::exception& e) {
      throw IoError("cache file " + path + ": " + e.what());
    }
    ++count;
  }
  return count;
}

void save_cache_file(const std::string& path, const TraceCache& cache) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [key, value] : cache.new_entries()) entries[key_text(key)] = to_string(value);
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["entries"] = std::move(entries);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot open cache file " + tmp + " for writing");
    out << doc.dump() << '\n';
    if (!out) throw IoError("failed writing cache file " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot move cache file into " + path);
}

}  // namespace altrace
