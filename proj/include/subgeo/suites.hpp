#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace subgeo {

struct SuiteParams {
  std::uint64_t seed = 20240601;
  int trials = 1000;
  int n_max = 8;           // ambient dimension used by most suites
  bool parallel = true;    // OpenMP over trials; reports identical either way
  bool inject_bug = false; // test hook: appends one artificial violation
  int samples = 1000;      // partition points for sampled path lengths
  int perturbations = 100; // random via-subspace insertions per geodesic trial
};

// One failed (or intentionally sought) check. The inputs document is
// self-contained: replay_violation recomputes the identical slack from it.
struct Violation {
  long trial = 0;
  std::string check;
  double slack = 0.0;      // > 0 means the check's tolerance was exceeded
  nlohmann::json inputs;
  bool expected = false;   // counterexamples a suite is supposed to find
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long trials = 0;
  double max_slack = 0.0;  // worst slack seen anywhere, violating or not
  long expected_negatives = 0;  // how many sought counterexamples were found
  std::vector<Violation> violations;  // sorted by trial; expected ones capped

  bool passed() const;     // no unexpected violations
  std::string summary() const;
  nlohmann::json to_json() const;
};

// Canonical suite names accepted by run_suite.
extern const std::vector<std::string> kSuiteNames;

// Runs the named randomized property suite:
//   triangle         oriented triangle inequality, all nine kinds
//   t0               zero distance iff contained; separation both ways
//   monotonicity     shrinking the source / growing the target only helps
//   duality          d(V,W) = d(W_perp,V_perp) for wedge/max kinds, and a
//                    recorded l2-kind counterexample (expected negative)
//   chainB1          per-family orderings on equal-dim pairs
//   chainB2          cross-family orderings with strict/equal regimes
//   interlacing      principal angles against a shrunken second argument
//   route-agreement  five asymmetric-angle routes agree
//   geodesic-length  path endpoints, exact lengths, sampled estimators,
//                    and random via-point perturbations
//   between-dg       geodesic-kind between predicate, planted and generic
//   between-dfs      angle-additivity between predicate, planted and generic
//   bc-decomposition coordinate split totals against closed forms
//   nonmetric-demos  required triangle counterexamples for the non-metrics
// Deterministic per seed, independent of parallel on/off and thread count.
// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

// Recomputes the slack of a recorded violation from its serialized inputs.
double replay_violation(const std::string& suite, const nlohmann::json& inputs);

}  // namespace subgeo
