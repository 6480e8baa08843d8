#pragma once

// Verification suites: randomized and exhaustive property checks driven by
// a seed. Each property aggregates its instances into one row that records
// the first counterexample.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fwn/bounds.hpp"
#include "fwn/modespace.hpp"

namespace fwn {

enum class Arith { Rational, Float };

struct SuiteConfig {
  Arith arith = Arith::Rational;
  int modes = 4;
  std::uint64_t seed = 1;
  // Instances per randomized property; 0 selects each suite's default.
  int instances = 0;
  // Float-mode comparison tolerance (rational mode compares exactly).
  double tol = 1e-9;
  // Bound grid: "default" is p, q in {-1, 0, 1}, r in {1/2, 1, 2}; "small" is (0, 0, 1).
  std::string grid = "default";
  // Mode space; empty lambdas select lambda_j = j + 1.
  std::vector<Rational> lambdas;
  Rational alpha = 1;
};

struct PropertyRow {
  std::string suite;
  std::string property;
  std::string anchor;  // the statement being exercised
  bool holds = true;
  long instances = 0;
  std::string counterexample;  // first failing instance, empty if none
  std::string detail;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"car", "wedge", "contract", "bounds", "expansion", "full"};
  return names;
}

/// Runs one suite ("all" runs every suite in fixed order). Throws
/// std::invalid_argument for an unknown suite or an unusable config.
std::vector<PropertyRow> run_suite(const std::string& name, const SuiteConfig& cfg);

struct BoundGridPoint {
  double p, q, r;
};

std::vector<BoundGridPoint> bound_grid(const std::string& name);

struct BoundSweep {
  std::map<BoundId, long> checks;
  std::map<BoundId, long> failures;
  std::map<BoundId, double> worst_ratio;  // max lhs / rhs
  std::map<BoundId, std::string> first_failure;
  long convergence_runs = 0;
  double largest_r = 0;  // largest r needed for R < 1
  double largest_R = 0;
  double largest_tail = 0;
};

/// B1..B12 on `instances` random instances per grid point.
BoundSweep bound_sweep(const ModeSpace<double>& ms, std::uint64_t seed, int instances,
                       const std::vector<BoundGridPoint>& grid, double alpha);

}  // namespace fwn
