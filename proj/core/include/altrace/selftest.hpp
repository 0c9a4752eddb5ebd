#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "altrace/hurwitz.hpp"

namespace altrace {

enum class SelftestLevel { quick, full };

SelftestLevel parse_selftest_level(const std::string& text);
std::string to_string(SelftestLevel level);

struct SelftestEntry {
  std::string suite;
  std::string name;
  bool passed = false;
  std::optional<std::string> counterexample;
  std::string detail;  // coverage note, e.g. number of cases checked
  double seconds = 0.0;
};

struct SelftestReport {
  SelftestLevel level = SelftestLevel::quick;
  std::vector<SelftestEntry> entries;

  bool ok() const;
  /// One "PASS|FAIL suite/case" line per entry, counterexample appended.
  std::string text() const;
  /// {"level", "passed", "results": [{suite, case, status, counterexample?}]}
  std::string json() const;
};

/// Hook run on the Hurwitz table after it is filled and before any check.
/// Used to inject faults.
using TableTamper = std::function<void(HurwitzTable&)>;

/// Names of all suites in run order.
const std::vector<std::string>& selftest_suites();

/// Runs one suite; throws DomainError for an unknown name.
SelftestReport run_suite(const std::string& suite, SelftestLevel level,
                         const TableTamper& tamper = {});

/// Runs every suite.
SelftestReport run_selftest(SelftestLevel level, const TableTamper& tamper = {});

}  // namespace altrace
