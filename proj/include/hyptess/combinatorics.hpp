#ifndef HYPTESS_COMBINATORICS_HPP
#define HYPTESS_COMBINATORICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hyptess/geometry.hpp"

namespace hyptess {

// Canonical encoding of the facet-vertex incidence bipartite structure.
// Equal bytes <=> combinatorially isomorphic (equal incidence structures up
// to relabeling); invariant under affine maps and input order by design.
struct TypeFingerprint {
  std::string bytes;  // canonical encoding; hex-encode for CSV
  int dim = 0;
  int facet_count = 0;
  int vertex_count = 0;
  std::vector<int> f_vector;  // (f_0, ..., f_{d-1}) for d <= 3, else {f_0, f_{d-1}}

  friend bool operator==(const TypeFingerprint& a, const TypeFingerprint& b) {
    return a.bytes == b.bytes;
  }
  friend auto operator<=>(const TypeFingerprint& a, const TypeFingerprint& b) {
    return a.bytes <=> b.bytes;
  }
};

std::string hex_encode(const std::string& bytes);

// Abstract incidence: facet_vertices[f] lists the vertex ids on facet f.
struct IncidenceStructure {
  int dim = 0;
  int vertex_count = 0;
  std::vector<std::vector<int>> facet_vertices;
};

IncidenceStructure incidence_of(const CellPolytope& cell);

// True iff every vertex lies on exactly `dim` facets.
bool is_simple(const IncidenceStructure& inc);
bool is_simple(const CellPolytope& cell);

// Canonical labeling by iterative refinement with individualization
// backtracking; the fingerprint is the lexicographically minimal encoding
// over the search.
TypeFingerprint canonical_type(const IncidenceStructure& inc);
TypeFingerprint canonical_type(const CellPolytope& cell);

// --- named reference polytopes (catalog) ---

// Vertices + exact facet incidence, built analytically (no hull code).
struct ReferencePolytope {
  std::string name;
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> facet_vertices;
};

ReferencePolytope make_kgon(int k, double circumradius = 1.0);
ReferencePolytope make_simplex(int dim, double scale = 1.0);
ReferencePolytope make_cube(int dim, double half_side = 1.0);
ReferencePolytope make_prism(int k, double circumradius = 1.0, double half_height = 1.0);

// k-gons for k = 3..12, simplex-2..4, cube-2..4, prism-3..8; names deduped by
// fingerprint (e.g. prism-4 is cube-3, square is 4-gon).
struct CatalogEntry {
  std::string name;
  TypeFingerprint fingerprint;
};
const std::vector<CatalogEntry>& reference_catalog();

std::optional<std::string> type_catalog_lookup(const TypeFingerprint& fp);

// Reference polytope by catalog name ("4-gon"/"square", "cube-3"/"cube",
// "simplex-3"/"simplex", "prism-5", ...); nullopt if unknown.
std::optional<ReferencePolytope> reference_by_name(const std::string& name, int dim);

// catalog.json payload (name -> fingerprint hex + summary), stable key order.
std::string catalog_json();

}  // namespace hyptess

#endif
