#ifndef HYPTESS_SAMPLER_HPP
#define HYPTESS_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyptess/model.hpp"

namespace hyptess {

// One seeded realization of the process restricted to hyperplanes hitting
// B_R. Every stored hyperplane satisfies |tau| <= R.
struct ProcessSample {
  int dim = 2;
  double window_radius = 0.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  std::string dist_tag;
  std::vector<Hyperplane> hyperplanes;
};

// N ~ Poisson(2 gamma R), then independently u ~ phi, tau ~ Uniform(-R, R).
// Deterministic given (dist, gamma, R, seed); ids are 0..N-1 in draw order.
ProcessSample sample_process(const DirectionalDistribution& dist, const ProcessIntensity& intensity,
                             double window_radius, std::uint64_t seed);

// Keep only hyperplanes hitting B_r (r < R). Distributionally identical to
// sampling at radius r directly.
ProcessSample restrict_sample(const ProcessSample& sample, double radius);

struct GeneralPositionReport {
  struct ParallelPair {
    std::int64_t id_a, id_b;
    double abs_dot;  // |<u_a, u_b>|
  };
  struct Concurrence {
    std::vector<std::int64_t> ids;  // d+1 hyperplanes near a common point
    double residual;                // distance of the extra plane from the meet point
  };
  struct DependentNormals {
    std::vector<std::int64_t> ids;  // d hyperplanes, normal matrix near-singular
    double abs_det;
  };

  std::vector<ParallelPair> parallel_pairs;
  std::vector<Concurrence> concurrences;
  std::vector<DependentNormals> dependent_normals;

  bool empty() const {
    return parallel_pairs.empty() && concurrences.empty() && dependent_normals.empty();
  }
};

// Violation classes: (a) |<u_i,u_j>| > 1 - tol, (b) d+1 hyperplanes within
// tol of a common point, (c) d normals within tol of linear dependence.
// Empty report == general position at this tolerance. Atomic distributions
// are expected to trip (a)/(c) only; offsets are continuous so (b) stays a
// null event.
GeneralPositionReport general_position_report(const ProcessSample& sample, double tol);

// JSON-lines serialization: a header object, then one object per hyperplane.
// Byte-stable for golden tests.
std::string to_jsonl(const ProcessSample& sample);
ProcessSample sample_from_jsonl(std::istream& in);

}  // namespace hyptess

#endif
