#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "altrace/errors.hpp"
#include "altrace/murmur.hpp"

using namespace altrace;

namespace {

std::string csv_of(const MurmurResult& r) {
  std::ostringstream out;
  write_csv(r, out);
  return out.str();
}

RunConfig config_for(std::int64_t lo, std::int64_t hi, std::int64_t P) {
  RunConfig c;
  c.k = 2;
  c.level_lo = lo;
  c.level_hi = hi;
  c.prime_bound = P;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("altrace_test_" + name);
}

}  // namespace

TEST_CASE("config parsing and validation") {
  CHECK(parse_level_filter("squarefree") == LevelFilter::squarefree);
  CHECK(parse_output_format("json") == OutputFormat::json);
  CHECK_THROWS_AS(parse_level_filter("odd"), DomainError);
  CHECK_THROWS_AS(parse_output_format("xml"), DomainError);
  CHECK_NOTHROW(config_for(1, 10, 2).validate());
  CHECK_THROWS_AS(config_for(10, 1, 2).validate(), DomainError);
  CHECK_THROWS_AS(config_for(1, 10, 1).validate(), DomainError);
  RunConfig odd = config_for(1, 10, 5);
  odd.k = 3;
  CHECK_THROWS_AS(odd.validate(), DomainError);
  RunConfig idle = config_for(1, 10, 5);
  idle.workers = 0;
  CHECK_THROWS_AS(idle.validate(), DomainError);
}

TEST_CASE("level filters and primes") {
  CHECK(level_passes(12, LevelFilter::all));
  CHECK_FALSE(level_passes(12, LevelFilter::squarefree));
  CHECK(level_passes(30, LevelFilter::squarefree));
  CHECK(level_passes(1, LevelFilter::squarefree));
  CHECK_FALSE(level_passes(1, LevelFilter::prime));
  CHECK(level_passes(31, LevelFilter::prime));
  CHECK(primes_up_to(20) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_up_to(1).empty());
}

TEST_CASE("level 11") {
  const MurmurResult r = murmur_scan(config_for(11, 11, 3));
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].p == 2);
  CHECK(r.rows[0].tr_plus == 0);
  CHECK(r.rows[0].tr_minus == -2);
  CHECK(r.rows[1].p == 3);
  CHECK(r.rows[1].tr_plus == 0);
  CHECK(r.rows[1].tr_minus == -1);
  CHECK(csv_of(r) ==
        "N,k,p,p_divides_N,dim_new,dim_plus,dim_minus,tr_Tp_new,tr_TpWN_new,tr_plus,tr_minus\n"
        "11,2,2,0,1,0,1,-2,2,0,-2\n"
        "11,2,3,0,1,0,1,-1,1,0,-1\n"
        "# aggregate: p,levels,sum_dim_plus,sum_dim_minus,sum_tr_plus,sum_tr_minus\n"
        "# 2,1,0,1,0,-2\n"
        "# 3,1,0,1,0,-1\n");
}

TEST_CASE("levels without newforms emit no rows") {
  const MurmurResult r = murmur_scan(config_for(1, 10, 7));
  CHECK(r.rows.empty());
  REQUIRE(r.aggregates.size() == 4);
  CHECK(r.aggregates[0].levels == 0);
}

TEST_CASE("rows are ordered, consistent and flag p | N") {
  const MurmurResult r = murmur_scan(config_for(1, 120, 30));
  REQUIRE_FALSE(r.rows.empty());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    REQUIRE(row.consistent());
    REQUIRE(row.dim_new > 0);
    REQUIRE(row.p_divides_N == (row.N % row.p == 0));
    if (i > 0) {
      const auto& prev = r.rows[i - 1];
      REQUIRE((prev.N < row.N || (prev.N == row.N && prev.p < row.p)));
    }
  }
}

TEST_CASE("aggregates are the column sums") {
  const MurmurResult r = murmur_scan(config_for(1, 80, 13));
  for (const auto& a : r.aggregates) {
    std::int64_t levels = 0, dp = 0, dm = 0;
    Integer tp = 0, tm = 0;
    for (const auto& row : r.rows) {
      if (row.p != a.p) continue;
      ++levels;
      dp += row.dim_plus;
      dm += row.dim_minus;
      tp += row.tr_plus;
      tm += row.tr_minus;
    }
    CHECK(a.levels == levels);
    CHECK(a.sum_dim_plus == dp);
    CHECK(a.sum_dim_minus == dm);
    CHECK(a.sum_tr_plus == tp);
    CHECK(a.sum_tr_minus == tm);
  }
}

TEST_CASE("filters restrict levels") {
  RunConfig c = config_for(1, 100, 5);
  c.filter = LevelFilter::prime;
  for (const auto& row : murmur_scan(c).rows) CHECK(level_passes(row.N, LevelFilter::prime));
  c.filter = LevelFilter::squarefree;
  for (const auto& row : murmur_scan(c).rows) CHECK(level_passes(row.N, LevelFilter::squarefree));
}

TEST_CASE("worker count and warm cache do not change output") {
  RunConfig c = config_for(1, 150, 40);
  const std::string one = csv_of(murmur_scan(c));
  c.workers = 3;
  CHECK(csv_of(murmur_scan(c)) == one);
  c.workers = 8;
  auto cache = std::make_shared<TraceCache>();
  CHECK(csv_of(murmur_scan(c, cache)) == one);
  CHECK(csv_of(murmur_scan(c, cache)) == one);
}

TEST_CASE("JSON mirrors the CSV fields") {
  RunConfig c = config_for(11, 11, 3);
  std::ostringstream out;
  write_json(murmur_scan(c), c, out);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["tr_minus"] == "-2");
  CHECK(doc["rows"][0]["p_divides_N"] == false);
  CHECK(doc["aggregate"][1]["sum_tr_minus"] == "-1");
  CHECK(doc["config"]["levels"][1] == 11);
}

TEST_CASE("cache file round trip") {
  const auto path = temp_path("cache.json");
  std::filesystem::remove(path);
  TraceCache empty;
  CHECK(load_cache_file(path.string(), empty) == 0);

  auto cache = std::make_shared<TraceCache>();
  const RunConfig c = config_for(1, 60, 11);
  const std::string cold = csv_of(murmur_scan(c, cache));
  save_cache_file(path.string(), *cache);

  auto loaded = std::make_shared<TraceCache>();
  CHECK(load_cache_file(path.string(), *loaded) == cache->new_entries().size());
  CHECK(csv_of(murmur_scan(c, loaded)) == cold);
  std::filesystem::remove(path);
}

TEST_CASE("malformed cache files are rejected") {
  const auto path = temp_path("bad_cache.json");
  auto write = [&](const std::string& text) {
    std::ofstream(path) << text;
  };
  TraceCache cache;
  write("{not json");
  CHECK_THROWS_AS(load_cache_file(path.string(), cache), IoError);
  write(R"({"version":1})");
  CHECK_THROWS_AS(load_cache_file(path.string(), cache), IoError);
  write(R"({"version":1,"entries":{"2,11":"1"}})");
  CHECK_THROWS_AS(load_cache_file(path.string(), cache), IoError);
  write(R"({"version":1,"entries":{"2,12,2,1":"1"}})");
  CHECK_THROWS_AS(load_cache_file(path.string(), cache), IoError);
  write(R"({"version":1,"entries":{"2,11,1,1":1}})");
  CHECK_THROWS_AS(load_cache_file(path.string(), cache), IoError);
  std::filesystem::remove(path);
}
