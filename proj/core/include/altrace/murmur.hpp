#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "altrace/newspace.hpp"
#include "altrace/rational.hpp"

namespace altrace {

enum class LevelFilter { all, squarefree, prime };
enum class OutputFormat { csv, json };

LevelFilter parse_level_filter(const std::string& text);
OutputFormat parse_output_format(const std::string& text);
std::string to_string(LevelFilter f);
std::string to_string(OutputFormat f);

struct RunConfig {
  int k = 2;
  std::int64_t level_lo = 1;
  std::int64_t level_hi = 1;
  std::int64_t prime_bound = 2;
  LevelFilter filter = LevelFilter::all;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: stdout
  unsigned workers = 1;
  std::string cache_path;  // empty: no on-disk cache

  /// Throws DomainError unless level_lo <= level_hi, level_lo >= 1,
  /// prime_bound >= 2, k even >= 2 and workers >= 1.
  void validate() const;
};

/// One (N, p) record. Traces are exact; dims satisfy dim_plus + dim_minus =
/// dim_new, traces satisfy tr_plus + tr_minus = tr_Tp_new and
/// tr_plus - tr_minus = tr_TpWN_new.
struct MurmurRow {
  std::int64_t N = 0;
  int k = 2;
  std::int64_t p = 0;
  bool p_divides_N = false;
  std::int64_t dim_new = 0;
  std::int64_t dim_plus = 0;
  std::int64_t dim_minus = 0;
  Integer tr_Tp_new;
  Integer tr_TpWN_new;
  Integer tr_plus;
  Integer tr_minus;

  /// True when the row identities hold.
  bool consistent() const;
};

/// Raw per-prime sums over all emitted rows.
struct MurmurAggregate {
  std::int64_t p = 0;
  std::int64_t levels = 0;
  std::int64_t sum_dim_plus = 0;
  std::int64_t sum_dim_minus = 0;
  Integer sum_tr_plus;
  Integer sum_tr_minus;
};

struct MurmurResult {
  std::vector<MurmurRow> rows;  // N ascending, then p ascending
  std::vector<MurmurAggregate> aggregates;  // p ascending
};

bool level_passes(std::int64_t N, LevelFilter filter);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

/// Rows for one level; empty when the newspace is zero.
std::vector<MurmurRow> murmur_rows_for_level(const NewspaceContext& ctx, int k, std::int64_t N,
                                             const std::vector<std::int64_t>& primes);

/// Runs the scan with `config.workers` threads sharding by level. The
/// Hurwitz table is precomputed up to 4 * level_hi * prime_bound first. The
/// result does not depend on the worker count. Throws ConsistencyError
/// naming (N, p) on any integrality failure.
MurmurResult murmur_scan(const RunConfig& config,
                         std::shared_ptr<TraceCache> cache = std::make_shared<TraceCache>());

void write_csv(const MurmurResult& result, std::ostream& out);
void write_json(const MurmurResult& result, const RunConfig& config, std::ostream& out);

/// Loads newspace-trace entries from a JSON cache file into `cache`.
/// A missing file loads nothing. Returns the number of entries read; throws
/// InputError when the file exists but is malformed.
std::size_t load_cache_file(const std::string& path, TraceCache& cache);

/// Writes every newspace entry of `cache`; throws IoError on failure.
void save_cache_file(const std::string& path, const TraceCache& cache);

}  // namespace altrace
