#ifndef HYPTESS_ESTIMATOR_HPP
#define HYPTESS_ESTIMATOR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyptess/combinatorics.hpp"
#include "hyptess/geometry.hpp"
#include "hyptess/rng.hpp"

namespace hyptess {

// Everything the estimators need from a cell, computed once.
struct CellSummary {
  TypeFingerprint fp;
  Vec circumcenter;
  double circumradius = 0.0;
  double max_vertex_norm = 0.0;
  double diam = 0.0;
  int vertex_count = 0;
  bool touches_window = false;
  std::vector<Vec> vertices;  // kept for containment tests against shifted balls
};

std::vector<CellSummary> summarize_cells(const std::vector<CellPolytope>& cells);

struct CensusMarginError : std::runtime_error {
  double max_safe_n;
  explicit CensusMarginError(double max_safe);
};

// Counts per combinatorial type over a ladder of ball radii. Only cells that
// avoid the window box and lie inside B_{valid_radius} are counted (those are
// guaranteed to be true cells of the infinite tessellation); `margin` is the
// max observed cell diameter, and the ladder must satisfy
// max(radii) <= valid_radius - margin so no countable cell can be clipped.
struct TypeCensus {
  int dim = 0;
  std::vector<double> radii;
  double valid_radius = 0.0;
  double margin = 0.0;

  struct TypeRow {
    TypeFingerprint fp;
    std::optional<std::string> name;
    std::vector<long> count_contained;  // K subset of B_n(center)
    std::vector<long> count_centered;   // c(K) in B_n(center)
  };
  std::vector<TypeRow> rows;  // sorted by fingerprint

  // Aggregates over all types, per radius.
  std::vector<long> total_contained;
  std::vector<long> total_centered;
  std::vector<long> vertex_sum_centered;  // for the d=2 mean-vertex-count check

  double window_volume(int radius_index) const;
  double mean_vertex_count(int radius_index) const;  // NaN when no cells counted
};

// `center` shifts the counting balls and the validity region together
// (translation-consistency tests count within B_n(center), validate within
// B_{valid_radius}(center)).
TypeCensus census(const std::vector<CellSummary>& cells, const std::vector<double>& radii,
                  double valid_radius, const Vec& center = {});

// Merge per-seed censuses with identical ladders (counts add).
TypeCensus merge_census(const std::vector<TypeCensus>& parts);

struct DensityCurve {
  TypeFingerprint fp;
  std::optional<std::string> name;
  std::vector<double> radii;
  std::vector<double> density_contained;
  std::vector<double> density_centered;
  std::vector<double> ratio;  // contained / centered (NaN when centered = 0)
  // (max - min) / mean over the last third of the ladder; NaN if that
  // stretch has no counts.
  double tail_rel_variation_contained = 0.0;
  double tail_rel_variation_centered = 0.0;
};

DensityCurve density_curve(const TypeCensus& census, const TypeFingerprint& fp);

struct SandwichReport {
  double n = 0.0;
  long cells_matching = 0;   // f(B_n, omega)
  double middle = 0.0;       // lambda_d(B_1) * f(B_n, omega)
  double lower = 0.0;        // MC estimate of integral over B_{n-1}
  double lower_se = 0.0;
  double upper = 0.0;        // MC estimate of integral over B_{n+1}
  double upper_se = 0.0;
  bool lower_ok = false;     // lower <= middle + 3 se
  bool upper_ok = false;     // middle <= upper + 3 se
  bool pass = false;
};

// Monte Carlo check of the moving-ball sandwich
//   int_{B_{n-1}} f(B_1+t) dt  <=  lambda_d(B_1) f(B_n)  <=  int_{B_{n+1}} f(B_1+t) dt
// where f(B) counts cells with circumcenter in B whose type matches
// `predicate` (nullopt = every cell). Requires n+1 within the safe margin.
SandwichReport sandwich_check(const std::vector<CellSummary>& cells,
                              const std::optional<TypeFingerprint>& predicate, double n,
                              double valid_radius, Rng& rng, int mc_points = 10000);

}  // namespace hyptess

#endif
