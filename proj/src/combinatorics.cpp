#include "hyptess/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hyptess {

std::string hex_encode(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

IncidenceStructure incidence_of(const CellPolytope& cell) {
  IncidenceStructure inc;
  inc.dim = cell.dim;
  inc.vertex_count = static_cast<int>(cell.vertices.size());
  inc.facet_vertices.reserve(cell.facets.size());
  for (const HalfspaceFacet& f : cell.facets) inc.facet_vertices.push_back(f.vertex_ids);
  return inc;
}

bool is_simple(const IncidenceStructure& inc) {
  std::vector<int> degree(inc.vertex_count, 0);
  for (const auto& fv : inc.facet_vertices)
    for (int v : fv) {
      if (v < 0 || v >= inc.vertex_count) throw std::invalid_argument("bad incidence");
      ++degree[v];
    }
  for (int d : degree)
    if (d != inc.dim) return false;
  return true;
}

bool is_simple(const CellPolytope& cell) { return is_simple(incidence_of(cell)); }

// ------------------------------------------------ canonical labeling (IR)

namespace {

struct IncGraph {
  int m = 0;  // facet nodes 0..m-1
  int n = 0;  // vertex nodes m..m+n-1
  std::vector<std::vector<int>> adj;
};

// Equitable refinement: repeatedly re-rank nodes by (color, sorted multiset
// of neighbor colors) until the partition stops splitting.
std::vector<int> refine(const IncGraph& g, std::vector<int> colors) {
  const int N = g.m + g.n;
  int classes = 0;
  {
    auto sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    classes = static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
  for (;;) {
    std::vector<std::vector<int>> sig(N);
    for (int v = 0; v < N; ++v) {
      std::vector<int>& s = sig[v];
      s.reserve(g.adj[v].size() + 1);
      s.push_back(colors[v]);
      for (int w : g.adj[v]) s.push_back(colors[w]);
      std::sort(s.begin() + 1, s.end());
    }
    std::vector<int> order(N);
    for (int v = 0; v < N; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(N);
    int rank = 0;
    next[order[0]] = 0;
    for (int i = 1; i < N; ++i) {
      if (sig[order[i]] != sig[order[i - 1]]) ++rank;
      next[order[i]] = rank;
    }
    const int new_classes = rank + 1;
    if (new_classes == classes) return next;
    classes = new_classes;
    colors = std::move(next);
  }
}

bool discrete(const std::vector<int>& colors) {
  std::vector<char> seen(colors.size(), 0);
  for (int c : colors) {
    if (seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

// Encoding under a discrete coloring: facets ordered by color, vertex ids
// re-ranked by color among vertex nodes only.
std::string encode(const IncGraph& g, const std::vector<int>& colors, int dim) {
  std::vector<int> facet_order(g.m), vertex_rank(g.n);
  {
    std::vector<int> fs(g.m), vs(g.n);
    for (int f = 0; f < g.m; ++f) fs[f] = f;
    for (int v = 0; v < g.n; ++v) vs[v] = v;
    std::sort(fs.begin(), fs.end(), [&](int a, int b) { return colors[a] < colors[b]; });
    std::sort(vs.begin(), vs.end(),
              [&](int a, int b) { return colors[g.m + a] < colors[g.m + b]; });
    facet_order = fs;
    for (int i = 0; i < g.n; ++i) vertex_rank[vs[i]] = i;
  }
  std::ostringstream os;
  os << "t" << dim << ":" << g.m << ":" << g.n << "|";
  for (int fi = 0; fi < g.m; ++fi) {
    const int f = facet_order[fi];
    std::vector<int> ids;
    ids.reserve(g.adj[f].size());
    for (int w : g.adj[f]) ids.push_back(vertex_rank[w - g.m]);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) os << ",";
      os << ids[i];
    }
    os << ";";
  }
  return os.str();
}

// Branch on every member of the first non-singleton color class and keep the
// lexicographically smallest encoding; exact for the small incidence
// structures cells produce.
std::string canon_search(const IncGraph& g, std::vector<int> colors, int dim) {
  colors = refine(g, colors);
  if (discrete(colors)) return encode(g, colors, dim);

  const int N = g.m + g.n;
  std::vector<int> count(N, 0);
  for (int c : colors) ++count[c];
  int target = -1;
  for (int c = 0; c < N; ++c)
    if (count[c] > 1) {
      target = c;
      break;
    }
  std::string best;
  for (int v = 0; v < N; ++v) {
    if (colors[v] != target) continue;
    std::vector<int> child = colors;
    child[v] = -1;  // uniquely smallest, split off by the next refinement
    std::string s = canon_search(g, std::move(child), dim);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

}  // namespace

TypeFingerprint canonical_type(const IncidenceStructure& inc) {
  const int m = static_cast<int>(inc.facet_vertices.size());
  const int n = inc.vertex_count;
  if (m == 0 || n == 0) throw std::invalid_argument("empty incidence structure");

  IncGraph g;
  g.m = m;
  g.n = n;
  g.adj.assign(m + n, {});
  for (int f = 0; f < m; ++f)
    for (int v : inc.facet_vertices[f]) {
      if (v < 0 || v >= n) throw std::invalid_argument("bad incidence");
      g.adj[f].push_back(m + v);
      g.adj[m + v].push_back(f);
    }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());

  std::vector<int> colors(m + n, 0);
  for (int v = 0; v < n; ++v) colors[m + v] = 1;

  TypeFingerprint fp;
  fp.bytes = canon_search(g, std::move(colors), inc.dim);
  fp.dim = inc.dim;
  fp.facet_count = m;
  fp.vertex_count = n;
  if (inc.dim == 2) {
    fp.f_vector = {n, m};
  } else if (inc.dim == 3) {
    long deg_sum = 0;
    for (const auto& fv : inc.facet_vertices) deg_sum += static_cast<long>(fv.size());
    fp.f_vector = {n, static_cast<int>(deg_sum / 2), m};
  } else {
    fp.f_vector = {n, m};
  }
  return fp;
}

TypeFingerprint canonical_type(const CellPolytope& cell) {
  return canonical_type(incidence_of(cell));
}

}  // namespace hyptess
