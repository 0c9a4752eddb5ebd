// Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.
// Criteria 1-11 run the full-scale selftest suites; criterion 12 drives the CLI.
//
// usage: altrace_acceptance <path-to-altrace> [scratch-dir]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "altrace/selftest.hpp"

namespace fs = std::filesystem;
using altrace::SelftestLevel;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::string suite;
  std::vector<std::string> cases;  // empty: every case of the suite
  double limit_seconds;            // <= 0: no limit
};

struct Outcome {
  bool passed = true;
  double seconds = 0.0;
  std::string note;
};

void print(int id, const std::string& title, const Outcome& o, double limit) {
  std::ostringstream time;
  time << std::fixed << std::setprecision(o.seconds < 0.01 ? 4 : 2) << o.seconds << " s";
  if (limit > 0) time << " / limit " << limit << " s";
  std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << id << ' ' << title << " ("
            << time.str() << ')';
  if (!o.note.empty()) std::cout << ": " << o.note;
  std::cout << std::endl;
}

Outcome run_criterion(const Criterion& c) {
  Outcome o;
  const auto report = altrace::run_suite(c.suite, SelftestLevel::full);
  std::vector<std::string> notes;
  for (const auto& e : report.entries) {
    if (!c.cases.empty() &&
        std::find(c.cases.begin(), c.cases.end(), e.name) == c.cases.end()) {
      continue;
    }
    o.seconds += e.seconds;
    if (!e.passed) {
      o.passed = false;
      notes.push_back(e.name + ": " + e.counterexample.value_or("failed"));
    } else if (!e.detail.empty()) {
      notes.push_back(e.detail);
    }
  }
  if (c.limit_seconds > 0 && o.seconds > c.limit_seconds) {
    o.passed = false;
    notes.push_back("time limit exceeded");
  }
  for (std::size_t i = 0; i < notes.size(); ++i) o.note += (i ? "; " : "") + notes[i];
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double timed_system(const std::string& cmd, int& status) {
  const auto start = std::chrono::steady_clock::now();
  status = std::system(cmd.c_str());
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// murmur -k 2 --levels 1:1000 --primes 100 with 1 worker, then 8 workers,
// then cold and warm on-disk cache; every output must be byte-identical.
Outcome pipeline_scale(const std::string& exe, const fs::path& dir) {
  Outcome o;
  const std::string base = "\"" + exe + "\" murmur -k 2 --levels 1:1000 --primes 100";
  const fs::path one = dir / "murmur_w1.csv", eight = dir / "murmur_w8.csv",
                 cold = dir / "murmur_cold.csv", warm = dir / "murmur_warm.csv",
                 cache = dir / "murmur_cache.json";
  fs::remove(cache);
  struct Run {
    std::string args;
    fs::path out;
  };
  const std::vector<Run> runs = {
      {"--workers 1 --no-cache", one},
      {"--workers 8 --no-cache", eight},
      {"--workers 8 --cache \"" + cache.string() + "\"", cold},
      {"--workers 1 --cache \"" + cache.string() + "\"", warm},
  };
  double first = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    int status = 0;
    const double s = timed_system(
        base + " " + runs[i].args + " -o \"" + runs[i].out.string() + "\" 2>/dev/null", status);
    if (i == 0) first = s;
    if (status != 0) {
      o.passed = false;
      o.note = "run '" + runs[i].args + "' exited with status " + std::to_string(status);
      o.seconds = first;
      return o;
    }
  }
  o.seconds = first;
  const std::string reference = slurp(one);
  std::size_t rows = 0;
  for (char ch : reference) rows += ch == '\n';
  if (reference.empty()) {
    o.passed = false;
    o.note = "empty output";
  } else if (slurp(eight) != reference) {
    o.passed = false;
    o.note = "8-worker output differs from 1-worker output";
  } else if (slurp(cold) != reference || slurp(warm) != reference) {
    o.passed = false;
    o.note = "cached run output differs";
  } else {
    o.note = std::to_string(rows) + " lines; 1 vs 8 workers and cold vs warm cache identical";
  }
  if (o.seconds > 600.0) {
    o.passed = false;
    o.note += "; time limit exceeded";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <path-to-altrace> [scratch-dir]\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path dir = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "altrace_acceptance";
  fs::create_directories(dir);

  const std::vector<Criterion> criteria = {
      {1, "worked example k=4 n=5 level 1", "worked_example", {}, 0.001},
      {2, "Hurwitz pins and enumeration to 5000", "hurwitz", {}, 5},
      {3, "zero spaces at level 1, n <= 200", "zero_spaces", {}, 10},
      {4, "dimensions, even k <= 12, N <= 300", "dimensions", {}, 120},
      {5, "tau(n), n <= 50", "tau", {"Tr(T_n | S_12(1)) = tau(n)"}, 5},
      {6, "closed-form local counts, p^a <= 625", "local_counts", {}, 60},
      {7, "newspace decomposition and full-from-new identity", "newspace",
       {"decomposition into newspaces", "full traces from newspace traces with W"}, 300},
      {8, "T_p W_N fast path, N <= 200", "fast_path", {}, 180},
      {9, "simplified W_N trace, 4 < N <= 2000", "al_simplified",
       {"Hurwitz-only W_N trace = full formula"}, 120},
      {10, "SZ alpha identities, n <= 10^4", "sz_alpha", {}, 5},
      {11, "sign splits and row identities", "sign_splits", {}, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const Outcome o = run_criterion(c);
    print(c.id, c.title, o, c.limit_seconds);
    if (!o.passed) ++failed;
  }
  const Outcome scale = pipeline_scale(exe, dir);
  print(12, "murmur 1:1000, P=100, deterministic", scale, 600);
  if (!scale.passed) ++failed;

  std::cout << (12 - failed) << "/12 acceptance criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
