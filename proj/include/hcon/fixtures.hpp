// Fixture corpus: a JSON manifest of theories, term sets and expected
// verdicts, and a runner that replays them.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcon/budget.hpp"

namespace hcon {

enum class FixtureKind { TEvaluation, Find, Force, Prove };

struct Fixture {
  std::string name;
  FixtureKind kind = FixtureKind::Find;
  std::string theory;  // path, relative to the manifest
  std::optional<std::string> goal;
  std::optional<std::string> lambda;
  /// TEvaluation: true atoms of the evaluation under test.
  std::vector<std::string> true_atoms;
  /// Force: the ground formula that must hold.
  std::optional<std::string> formula;
  std::string expect;
  std::string note;
};

struct FixtureReport {
  std::string name;
  std::string verdict;
  std::string expect;
  bool pass = false;
  /// Brute-force verdict when the atom table fits the oracle cap.
  std::optional<std::string> oracle;
  std::string detail;
  double millis = 0;
  bool budget_exceeded = false;
};

struct FixtureSummary {
  std::vector<FixtureReport> reports;  // ordered by name
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool budget_exceeded = false;
};

struct FixtureManifest {
  std::string directory;
  std::vector<Fixture> fixtures;
};

FixtureManifest load_manifest(const std::string& path);

FixtureReport run_fixture(const FixtureManifest& m, const std::string& name,
                          const Budget& budget = {});
FixtureReport run_fixture(const std::string& directory, const Fixture& f, const Budget& budget = {});
/// Runs every fixture concurrently.
FixtureSummary run_all(const FixtureManifest& m, const Budget& budget = {});

std::string to_string(FixtureKind k);
/// JSON text of a summary; timing is included only when asked.
std::string summary_json(const FixtureSummary& s, bool with_timing = true);
std::string summary_text(const FixtureSummary& s, bool with_timing = true);

}  // namespace hcon
