#include "hyptess/combinatorics.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace hyptess {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ReferencePolytope make_kgon(int k, double circumradius) {
  if (k < 3) throw std::invalid_argument("k-gon needs k >= 3");
  ReferencePolytope p;
  p.name = std::to_string(k) + "-gon";
  p.dim = 2;
  for (int i = 0; i < k; ++i) {
    const double a = 2.0 * kPi * i / k;
    p.vertices.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
  }
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    p.facet_vertices.push_back({std::min(i, j), std::max(i, j)});
  }
  return p;
}

ReferencePolytope make_simplex(int dim, double scale) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("simplex dim out of range");
  ReferencePolytope p;
  p.name = "simplex-" + std::to_string(dim);
  p.dim = dim;
  // Regular simplex: e_0..e_{d-1} plus alpha*(1,..,1), recentered at the centroid.
  const double alpha = (1.0 - std::sqrt(static_cast<double>(dim + 1))) / dim;
  std::vector<Vec> vs;
  for (int i = 0; i < dim; ++i) {
    Vec v(dim, 0.0);
    v[i] = 1.0;
    vs.push_back(v);
  }
  vs.push_back(Vec(dim, alpha));
  Vec centroid(dim, 0.0);
  for (const Vec& v : vs)
    for (int i = 0; i < dim; ++i) centroid[i] += v[i] / (dim + 1);
  for (Vec& v : vs) {
    for (int i = 0; i < dim; ++i) v[i] = scale * (v[i] - centroid[i]);
    p.vertices.push_back(v);
  }
  for (int omit = 0; omit <= dim; ++omit) {
    std::vector<int> f;
    for (int i = 0; i <= dim; ++i)
      if (i != omit) f.push_back(i);
    p.facet_vertices.push_back(f);
  }
  return p;
}

ReferencePolytope make_cube(int dim, double half_side) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("cube dim out of range");
  ReferencePolytope p;
  p.name = "cube-" + std::to_string(dim);
  p.dim = dim;
  const int corners = 1 << dim;
  for (int mask = 0; mask < corners; ++mask) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = ((mask >> i) & 1) ? half_side : -half_side;
    p.vertices.push_back(v);
  }
  for (int axis = 0; axis < dim; ++axis)
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<int> f;
      for (int mask = 0; mask < corners; ++mask)
        if (((mask >> axis) & 1) == sign) f.push_back(mask);
      p.facet_vertices.push_back(f);
    }
  return p;
}

ReferencePolytope make_prism(int k, double circumradius, double half_height) {
  if (k < 3) throw std::invalid_argument("prism needs k >= 3");
  ReferencePolytope p;
  p.name = "prism-" + std::to_string(k);
  p.dim = 3;
  for (int layer = 0; layer < 2; ++layer) {
    const double z = layer ? half_height : -half_height;
    for (int i = 0; i < k; ++i) {
      const double a = 2.0 * kPi * i / k;
      p.vertices.push_back({circumradius * std::cos(a), circumradius * std::sin(a), z});
    }
  }
  std::vector<int> bottom, top;
  for (int i = 0; i < k; ++i) {
    bottom.push_back(i);
    top.push_back(k + i);
  }
  p.facet_vertices.push_back(bottom);
  p.facet_vertices.push_back(top);
  for (int i = 0; i < k; ++i) {
    int j = (i + 1) % k;
    std::vector<int> side = {i, j, k + i, k + j};
    std::sort(side.begin(), side.end());
    p.facet_vertices.push_back(side);
  }
  return p;
}

namespace {

TypeFingerprint fingerprint_of(const ReferencePolytope& p) {
  IncidenceStructure inc;
  inc.dim = p.dim;
  inc.vertex_count = static_cast<int>(p.vertices.size());
  inc.facet_vertices = p.facet_vertices;
  return canonical_type(inc);
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<ReferencePolytope> refs;
  for (int k = 3; k <= 12; ++k) refs.push_back(make_kgon(k));
  for (int d = 2; d <= 4; ++d) refs.push_back(make_simplex(d));
  for (int d = 2; d <= 4; ++d) refs.push_back(make_cube(d));
  for (int k = 3; k <= 8; ++k) refs.push_back(make_prism(k));

  std::vector<CatalogEntry> out;
  for (const ReferencePolytope& r : refs) {
    CatalogEntry e;
    e.name = r.name;
    e.fingerprint = fingerprint_of(r);
    bool dup = false;
    for (const CatalogEntry& prev : out)
      if (prev.fingerprint == e.fingerprint) {
        dup = true;  // earlier name wins (3-gon over simplex-2, cube-3 over prism-4)
        break;
      }
    if (!dup) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& reference_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

std::optional<std::string> type_catalog_lookup(const TypeFingerprint& fp) {
  for (const CatalogEntry& e : reference_catalog())
    if (e.fingerprint == fp) return e.name;
  return std::nullopt;
}

std::optional<ReferencePolytope> reference_by_name(const std::string& name, int dim) {
  if (name == "square") return make_cube(2);
  if (name == "triangle") return make_kgon(3);
  if (name == "cube") return make_cube(dim >= 2 ? dim : 3);
  if (name == "simplex") return make_simplex(dim >= 2 ? dim : 3);

  auto tail_int = [](const std::string& s, const std::string& prefix, int& value) {
    if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return false;
    try {
      std::size_t used = 0;
      value = std::stoi(s.substr(prefix.size()), &used);
      return used == s.size() - prefix.size();
    } catch (const std::exception&) {
      return false;
    }
  };
  int v = 0;
  try {
    if (tail_int(name, "cube-", v)) return make_cube(v);
    if (tail_int(name, "simplex-", v)) return make_simplex(v);
    if (tail_int(name, "prism-", v)) return make_prism(v);
    if (name.size() > 4 && name.substr(name.size() - 4) == "-gon") {
      std::size_t used = 0;
      v = std::stoi(name, &used);
      if (used == name.size() - 4) return make_kgon(v);
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::string catalog_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const CatalogEntry& e : reference_catalog()) {
    nlohmann::json j;
    j["name"] = e.name;
    j["dim"] = e.fingerprint.dim;
    j["facets"] = e.fingerprint.facet_count;
    j["vertices"] = e.fingerprint.vertex_count;
    j["f_vector"] = e.fingerprint.f_vector;
    j["fingerprint"] = hex_encode(e.fingerprint.bytes);
    arr.push_back(j);
  }
  nlohmann::json root;
  root["kind"] = "hyptess-catalog";
  root["types"] = arr;
  return root.dump(2) + "\n";
}

}  // namespace hyptess
