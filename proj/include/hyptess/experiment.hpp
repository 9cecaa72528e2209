#ifndef HYPTESS_EXPERIMENT_HPP
#define HYPTESS_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyptess/construction.hpp"
#include "hyptess/estimator.hpp"
#include "hyptess/model.hpp"

namespace hyptess {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DistributionSpec {
  std::string variant = "isotropic";  // isotropic | atomic | density
  std::vector<DirectionalDistribution::AtomPair> pairs;
  Vec axis;
  double beta = 0.0;

  DirectionalDistribution build(int dim) const;
};

struct TargetConfig {
  std::string name;           // catalog name, or "custom" with explicit vertices
  std::vector<Vec> vertices;  // used when non-empty
  double scale = 1.0;         // applied to catalog vertices
  double eps = 0.0;
  std::optional<double> D;
  long trials = 0;
  std::optional<double> gamma;  // overrides the experiment gamma
};

struct ExperimentConfig {
  int dim = 2;
  double gamma = 1.0;
  DistributionSpec distribution;
  double window_radius = 0.0;
  std::vector<double> radius_ladder;
  std::vector<std::uint64_t> seeds;
  std::vector<TargetConfig> targets;
  std::string out_dir = "out";
  int threads = 1;
  bool svg = false;
  int certificate_draws = 1000;
  // Sandwich experiment knobs (used by tests/acceptance via the library).
  int sandwich_points = 10000;
};

// Parses and validates the JSON config document; ConfigError on any schema
// or invariant violation. Defaults are filled in and echoed into summaries.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Stable re-serialization of the effective config (defaults included).
std::string config_json(const ExperimentConfig& config);

struct SeedFailure {
  std::uint64_t seed = 0;
  std::string what;
};

struct CensusRunResult {
  std::vector<std::uint64_t> seeds_ok;
  std::vector<SeedFailure> failures;
  TypeCensus aggregate;
  std::vector<std::string> files_written;
};

// Per-seed census CSV + aggregate CSV + summary JSON (+ optional SVG of the
// first seed). Deterministic bytes for fixed config regardless of threads.
CensusRunResult run_census_experiment(const ExperimentConfig& config);

struct TargetEventResult {
  std::string name;
  Certificate certificate;
  EventProbability analytic;
  long trials = 0;
  long occurrences = 0;
  double mc_freq = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 3-sigma binomial interval around mc_freq
  bool agree_3sigma = false;
  double bullets_pass_rate = 1.0;   // over occurrences
  long bullet_failures = 0;
};

struct EventRunResult {
  std::vector<TargetEventResult> targets;
  std::vector<std::string> files_written;
};

// Certifies every target first (CertificationRefused aborts, exit code 3),
// then runs the Monte Carlo trials and bullet verification on occurrences.
EventRunResult run_event_experiment(const ExperimentConfig& config);

// Certificates only; writes certificates.json. Throws CertificationRefused
// if any target is refused (after writing the refusal for audit).
std::vector<Certificate> run_certify(const ExperimentConfig& config);

// d=2 tessellation SVG for the first configured seed.
std::string run_render(const ExperimentConfig& config);

}  // namespace hyptess

#endif
