#ifndef HYPTESS_CONSTRUCTION_HPP
#define HYPTESS_CONSTRUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "hyptess/combinatorics.hpp"
#include "hyptess/estimator.hpp"
#include "hyptess/geometry.hpp"
#include "hyptess/model.hpp"
#include "hyptess/rng.hpp"
#include "hyptess/sampler.hpp"

namespace hyptess {

// A simple d-polytope P recentered so its circumcenter is the origin, plus
// the closeness radius eps and diameter bound D of the event machinery.
struct TargetSpec {
  std::string name;  // catalog name or "custom"
  int dim = 0;
  std::vector<Vec> vertices;          // recentered, c(P) = o within tol
  std::vector<HalfspaceFacet> facets; // outward unit normals, offsets > 0
  TypeFingerprint fingerprint;
  double eps = 0.0;
  double D = 0.0;           // diameter bound checked by the certificate
  double circumradius = 0.0;
  double diam = 0.0;
};

// Builds the spec from an explicit vertex list (facets recovered by brute
// force). Throws std::invalid_argument if P is not simple or not
// full-dimensional, or if eps is out of range (0 < eps <= 1; the Theta(C)
// subtraction needs every A_j hyperplane to hit P + B_1, hence eps <= 1).
// D defaults to diam(P) + 2.
TargetSpec make_target(std::string name, int dim, std::vector<Vec> vertices, double eps,
                       std::optional<double> D = std::nullopt);
TargetSpec make_target(const ReferencePolytope& ref, double eps,
                       std::optional<double> D = std::nullopt);

// H lies in A_j(P, eps): H meets the closed eps-ball around every vertex of
// facet j, i.e. dist(v, H) <= eps for all v in vert F_j.
bool in_Aj(const Hyperplane& h, const TargetSpec& spec, int j);

// H lies in C(P, eps): H hits P + B_1 and is in no A_j.
bool in_C(const Hyperplane& h, const TargetSpec& spec);

struct EventClassification {
  bool occurred = false;
  std::vector<int> aj_counts;                // per facet
  long c_count = 0;
  std::vector<std::vector<std::int64_t>> aj_ids;  // hyperplane ids per A_j
};

// E(P,eps) occurred iff every A_j holds exactly one sample hyperplane and C
// holds none. With a granted certificate no hyperplane can lie in two A_j;
// that is asserted here.
EventClassification classify_event(const ProcessSample& sample, const TargetSpec& spec);

// --- certificate ---

struct PairDisjointness {
  int j = 0, k = 0;
  double min_width = 0.0;  // exact width of conv(vert F_j u vert F_k), d <= 3
  Vec direction;           // minimizing direction
};

struct BulletFailure {
  int draw_index = -1;
  std::string which;   // failed bullet
  std::string detail;
};

struct Certificate {
  std::string target_name;
  int dim = 0;
  double eps = 0.0;
  double D = 0.0;
  bool granted = false;
  // (i) pairwise disjointness: A_j cap A_k empty iff the width of
  // conv(vert F_j u vert F_k) exceeds 2 eps; width computed exactly for
  // d <= 3 (edge/facet normal candidates), multistart numerically for d >= 4.
  std::vector<PairDisjointness> pairs;
  bool disjointness_exact = true;  // false for d >= 4
  std::optional<std::pair<int, int>> failing_pair;
  // (ii) randomized bullet verification over draws of (H_1..H_m), H_j in A_j.
  int draws_attempted = 0;
  int draws_passed = 0;
  std::optional<BulletFailure> failure;
  // Worst margins observed across passing draws (diagnostics).
  double min_containment_margin = 0.0;  // 1 - max_v dist(v, P)
  double min_diam_margin = 0.0;         // D - diam Q
  double min_center_margin = 0.0;       // 1 - |c(Q)|

  std::string to_json() const;  // audit serialization, stable key order
};

// Grants iff (i) all facet pairs are width-disjoint at 2 eps and (ii) all
// `draws` random eps-close hyperplane tuples bound a polytope Q passing the
// four bullet checks (type, Q subset of P + B_1, diam <= D, c(Q) in B_1).
// Refusal is a normal outcome carrying the first counterexample.
Certificate certify_epsilon0(const TargetSpec& spec, int draws = 1000,
                             std::uint64_t seed = 0x5eedULL);

// Draw one hyperplane in A_j by perturbing the facet plane inside the eps
// constraint (covers A_j's interior; used by the certificate and by
// conditional bullet tests).
Hyperplane draw_in_Aj(const TargetSpec& spec, int j, Rng& rng);

// --- exact event probability ---

struct EventProbability {
  double value = 0.0;
  double error = 0.0;  // propagated quadrature error bound
  std::vector<double> theta_aj;
  double theta_c = 0.0;
  bool converged = true;
};

// P(E) = prod_j Theta(A_j) e^{-Theta(A_j)} * e^{-Theta(C)} with
//   Theta(A_j) = gamma int max(0, 2 eps - w_j(u)) phi(du),
//   w_j(u) = max_{v in F_j} <v,u> - min_{v in F_j} <v,u>,
//   Theta(C) = hitting mean of P + B_1 minus sum_j Theta(A_j).
// Requires a granted certificate: the product form needs the A_j pairwise
// disjoint. Throws std::invalid_argument when the certificate is absent or
// refused.
EventProbability event_probability(const TargetSpec& spec, const DirectionalDistribution& dist,
                                   const ProcessIntensity& intensity, const Certificate& cert);

struct BulletReport {
  bool type_ok = false;
  bool containment_ok = false;  // Q subset of P + B_1
  bool diam_ok = false;
  bool center_ok = false;
  bool pass = false;
  TypeFingerprint q_type;
  double max_hull_dist = 0.0;  // max_v dist(v, P)
  double q_diam = 0.0;
  double q_center_norm = 0.0;
  std::string detail;
};

// Reconstructs Q as the intersection of the halfspaces bounded by the event
// hyperplanes and oriented toward the origin, then checks the four bullet
// properties against the target.
BulletReport verify_bullets(const std::vector<Hyperplane>& event_planes, const TargetSpec& spec);

// Same checks, but Q is located as the extracted tessellation cell containing
// the origin (cross-validates the direct reconstruction). Requires
// classify_event(sample, spec).occurred.
BulletReport verify_bullet_on_event(const ProcessSample& sample, const TargetSpec& spec);

}  // namespace hyptess

#endif
