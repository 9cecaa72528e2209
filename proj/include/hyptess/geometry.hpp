#ifndef HYPTESS_GEOMETRY_HPP
#define HYPTESS_GEOMETRY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyptess/model.hpp"
#include "hyptess/sampler.hpp"

namespace hyptess {

// Source id used for window-box facets (real hyperplane ids are >= 0).
inline constexpr std::int64_t kWindowSource = -1;

// One halfspace {x : <x,u> <= c} with u a unit outward normal. `source_id`
// records which sample hyperplane the facet lies on (kWindowSource for box
// sides); the sign of <u, source normal> recovers the side.
struct HalfspaceFacet {
  std::int64_t source_id = kWindowSource;
  Vec u;
  double c = 0.0;
  std::vector<int> vertex_ids;  // indices into the owning polytope, sorted
};

struct CellPolytope {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<HalfspaceFacet> facets;  // irredundant
  bool touches_window = false;         // any facet with source_id == kWindowSource
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

// Thrown when a sample violates general position beyond tolerance in a way
// that affects cell extraction; names the hyperplanes involved.
struct DegenerateSampleError : std::runtime_error {
  std::vector<std::int64_t> ids;
  DegenerateSampleError(const std::string& what, std::vector<std::int64_t> ids_);
};

struct UnboundedPolytopeError : std::runtime_error {
  UnboundedPolytopeError() : std::runtime_error("halfspace intersection is unbounded") {}
};
struct EmptyPolytopeError : std::runtime_error {
  EmptyPolytopeError() : std::runtime_error("halfspace intersection is empty or lower-dimensional") {}
};

// Input halfspace for vertex_enumeration: {x : <x,u> <= c}.
struct Halfspace {
  Vec u;
  double c = 0.0;
  std::int64_t source_id = kWindowSource;
};

struct VertexEnumerationResult {
  std::vector<Vec> vertices;
  // incidence[f] = sorted vertex indices tight on halfspace f (input order).
  std::vector<std::vector<int>> incidence;
  std::vector<int> redundant;  // input indices of halfspaces with no tight vertex
};

// Brute-force vertex enumeration over all d-subsets of halfspaces. Input must
// define a bounded polytope with nonempty interior; throws Unbounded/Empty
// otherwise. Vertices deduplicated at tol::kVertexDedup.
VertexEnumerationResult vertex_enumeration(int dim, const std::vector<Halfspace>& halfspaces);

// All cells of the arrangement of `sample` hyperplanes clipped to the box
// [-w, w]^d circumscribing B_w, w = window_radius. Cells come back sorted
// canonically so any thread count yields identical output. Degenerate
// near-ties (a vertex within tolerance of a non-facet hyperplane) throw
// DegenerateSampleError naming the ids.
std::vector<CellPolytope> extract_cells(const ProcessSample& sample, double window_radius,
                                        int threads = 1);

// Smallest enclosing ball (Welzl). Deterministic; center lies in the convex
// hull of the points, every point within radius + kMinBallSlack.
Ball circumball(const std::vector<Vec>& points);

// Max pairwise vertex distance.
double diameter(const CellPolytope& cell);
double diameter_of(const std::vector<Vec>& points);

// Lebesgue volume from vertices + facet incidence (divergence theorem,
// recursing on facets; exact up to roundoff for simple cells in d <= 6).
double cell_volume(const CellPolytope& cell);

// Facet structure of conv(vertices) for a full-dimensional polytope given by
// its vertex list: brute force over d-subsets spanning supporting hyperplanes.
// Used for user-specified target polytopes (small inputs).
std::vector<HalfspaceFacet> facets_from_vertices(int dim, const std::vector<Vec>& vertices);

// Euclidean distance from a point to conv(vertices) (Frank-Wolfe with away
// steps; exact enough for containment checks at tol 1e-7).
double distance_to_hull(const Vec& point, const std::vector<Vec>& vertices);

}  // namespace hyptess

#endif
