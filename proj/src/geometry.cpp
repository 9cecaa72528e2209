#include "hyptess/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <numeric>
#include <sstream>

#include "hyptess/constants.hpp"
#include "hyptess/parallel.hpp"
#include "hyptess/rng.hpp"

namespace hyptess {

DegenerateSampleError::DegenerateSampleError(const std::string& what,
                                             std::vector<std::int64_t> ids_)
    : std::runtime_error(what), ids(std::move(ids_)) {}

namespace {

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    if (ids[i] == kWindowSource)
      os << "window";
    else
      os << ids[i];
  }
  return os.str();
}

[[noreturn]] void throw_degenerate(const char* what, std::vector<std::int64_t> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::ostringstream os;
  os << what << " (hyperplanes: " << join_ids(ids) << ")";
  throw DegenerateSampleError(os.str(), std::move(ids));
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Orthonormal basis of the orthogonal complement of unit vector u.
std::vector<Vec> complement_basis(const Vec& u) {
  const int d = static_cast<int>(u.size());
  std::vector<Vec> gens;
  gens.push_back(u);
  for (int k = 0; k < d; ++k) {
    Vec e(d, 0.0);
    e[k] = 1.0;
    gens.push_back(std::move(e));
  }
  std::vector<Vec> basis = orthonormal_basis(gens);
  basis.erase(basis.begin());  // first element spans u
  return basis;
}

}  // namespace

// ---------------------------------------------------------------- enumeration

namespace {

struct VertexSet {
  std::vector<Vec> verts;
  std::vector<std::vector<int>> tight;  // per vertex: sorted constraint indices
};

// Tight constraints of x among hs, at point-relative tolerance.
std::vector<int> tight_set(const Vec& x, const std::vector<Halfspace>& hs) {
  const double t = tol::on_plane(norm(x));
  std::vector<int> out;
  for (std::size_t i = 0; i < hs.size(); ++i)
    if (std::fabs(dot(x, hs[i].u) - hs[i].c) <= t) out.push_back(static_cast<int>(i));
  return out;
}

bool feasible(const Vec& x, const std::vector<Halfspace>& hs) {
  const double t = tol::on_plane(norm(x));
  for (const Halfspace& h : hs)
    if (dot(x, h.u) - h.c > t) return false;
  return true;
}

// Brute force over all d-subsets of hs.
VertexSet enumerate_all(int dim, const std::vector<Halfspace>& hs) {
  VertexSet out;
  const int m = static_cast<int>(hs.size());
  if (m < dim) return out;
  std::vector<int> idx(dim);
  std::vector<double> A(dim * dim);
  Vec x(dim);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == dim) {
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) A[r * dim + c] = hs[idx[r]].u[c];
        x[r] = hs[idx[r]].c;
      }
      std::vector<double> M(A);
      Vec sol(x);
      if (!solve_dense(M.data(), sol.data(), dim)) return;
      if (!feasible(sol, hs)) return;
      for (const Vec& v : out.verts)
        if (dist(v, sol) <= tol::kVertexDedup) return;
      out.verts.push_back(sol);
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  out.tight.reserve(out.verts.size());
  for (const Vec& v : out.verts) out.tight.push_back(tight_set(v, hs));
  return out;
}

}  // namespace

VertexEnumerationResult vertex_enumeration(int dim, const std::vector<Halfspace>& halfspaces) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
  for (const Halfspace& h : halfspaces)
    if (static_cast<int>(h.u.size()) != dim || std::fabs(norm(h.u) - 1.0) > 1e-9)
      throw std::invalid_argument("halfspace normals must be unit vectors of the right dimension");

  // Clamp with a huge box: vertices tight on it witness an unbounded face.
  double scale = 1.0;
  for (const Halfspace& h : halfspaces) scale = std::max(scale, std::fabs(h.c));
  const double big = 1e7 * scale;
  std::vector<Halfspace> clamped = halfspaces;
  const int m = static_cast<int>(halfspaces.size());
  for (int k = 0; k < dim; ++k)
    for (double s : {1.0, -1.0}) {
      Vec u(dim, 0.0);
      u[k] = s;
      clamped.push_back({std::move(u), big, kWindowSource});
    }

  VertexSet vs = enumerate_all(dim, clamped);
  if (vs.verts.empty()) throw EmptyPolytopeError{};
  for (std::size_t i = 0; i < vs.verts.size(); ++i)
    for (int t : vs.tight[i])
      if (t >= m) throw UnboundedPolytopeError{};

  // Lower-dimensional iff some constraint is tight at every vertex.
  for (int f = 0; f < m; ++f) {
    bool everywhere = true;
    for (const auto& ts : vs.tight)
      if (!std::binary_search(ts.begin(), ts.end(), f)) {
        everywhere = false;
        break;
      }
    if (everywhere && !vs.verts.empty()) throw EmptyPolytopeError{};
  }

  VertexEnumerationResult out;
  out.vertices = std::move(vs.verts);
  out.incidence.assign(m, {});
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (int t : vs.tight[i])
      if (t < m) out.incidence[t].push_back(static_cast<int>(i));
  for (int f = 0; f < m; ++f)
    if (static_cast<int>(out.incidence[f].size()) < dim) out.redundant.push_back(f);
  return out;
}

// ---------------------------------------------------------------- extraction

namespace {

struct Region {
  std::vector<Halfspace> cons;          // current irredundant constraints
  std::vector<Vec> verts;
  std::vector<int> cand;                // indices into the sample hyperplane list
};

struct Extractor {
  int dim;
  double w;
  const std::vector<Hyperplane>* planes;

  // Checks every vertex against every constraint; throws on more than d
  // tight constraints (a general-position violation that would make the
  // cell structure ambiguous), then drops constraints supporting fewer than
  // d vertices.
  void audit_and_prune(Region& r) const {
    std::vector<int> support(r.cons.size(), 0);
    for (const Vec& v : r.verts) {
      const double t = tol::on_plane(norm(v));
      int tight = 0;
      std::vector<std::int64_t> ids;
      for (std::size_t f = 0; f < r.cons.size(); ++f) {
        if (std::fabs(dot(v, r.cons[f].u) - r.cons[f].c) <= t) {
          ++tight;
          ++support[f];
          ids.push_back(r.cons[f].source_id);
        }
      }
      if (tight > dim) throw_degenerate("vertex on more than d hyperplanes", std::move(ids));
    }
    std::vector<Halfspace> kept;
    kept.reserve(r.cons.size());
    for (std::size_t f = 0; f < r.cons.size(); ++f)
      if (support[f] >= dim) kept.push_back(std::move(r.cons[f]));
    r.cons = std::move(kept);
  }

  // Returns the position in r.cand of the first hyperplane that splits the
  // region interior, dropping non-cutting candidates along the way; -1 when
  // the region is a finished cell. Throws when a candidate passes through a
  // region vertex (concurrence degeneracy).
  int pick_split(Region& r) const {
    std::vector<int> still;
    still.reserve(r.cand.size());
    int found = -1;
    for (std::size_t ci = 0; ci < r.cand.size(); ++ci) {
      const Hyperplane& h = (*planes)[r.cand[ci]];
      if (found >= 0) {
        still.push_back(r.cand[ci]);
        continue;
      }
      bool neg = false, pos = false;
      for (const Vec& v : r.verts) {
        const double s = dot(v, h.u) - h.tau;
        const double t = tol::on_plane(norm(v));
        if (std::fabs(s) <= t) {
          std::vector<std::int64_t> ids = {h.id};
          for (const Halfspace& c : r.cons)
            if (std::fabs(dot(v, c.u) - c.c) <= t) ids.push_back(c.source_id);
          throw_degenerate("hyperplane passes through an arrangement vertex", std::move(ids));
        }
        (s < 0.0 ? neg : pos) = true;
      }
      if (neg && pos) {
        found = r.cand[ci];
        continue;  // cutting plane leaves the candidate list
      }
      // else: region entirely on one side, candidate dead for this subtree
    }
    r.cand = std::move(still);
    return found;
  }

  Region make_child(const Region& r, const Hyperplane& h, bool keep_le) const {
    Region child;
    Halfspace added;
    added.source_id = h.id;
    added.u = keep_le ? h.u : scaled(h.u, -1.0);
    added.c = keep_le ? h.tau : -h.tau;
    child.cons = r.cons;
    child.cons.push_back(added);
    child.cand = r.cand;

    // Old vertices on the kept side (strict: ties were ruled out upstream).
    for (const Vec& v : r.verts)
      if (dot(v, added.u) - added.c < 0.0) child.verts.push_back(v);

    // New vertices: h meets a (d-1)-subset of the parent constraints.
    const int pm = static_cast<int>(r.cons.size());
    std::vector<int> idx(dim - 1);
    std::vector<double> A(dim * dim);
    Vec x(dim);
    std::vector<Vec> fresh;
    std::vector<std::vector<int>> fresh_src;
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == dim - 1) {
        for (int c = 0; c < dim; ++c) A[c] = added.u[c];
        x[0] = added.c;
        for (int rrow = 1; rrow < dim; ++rrow) {
          const Halfspace& g = r.cons[idx[rrow - 1]];
          for (int c = 0; c < dim; ++c) A[rrow * dim + c] = g.u[c];
          x[rrow] = g.c;
        }
        std::vector<double> M(A);
        Vec sol(x);
        if (!solve_dense(M.data(), sol.data(), dim)) return;
        if (!feasible(sol, child.cons)) return;
        for (std::size_t i = 0; i < fresh.size(); ++i) {
          if (dist(fresh[i], sol) <= tol::kVertexDedup) {
            std::vector<std::int64_t> ids = {h.id};
            for (int q : fresh_src[i]) ids.push_back(r.cons[q].source_id);
            for (int q = 0; q < dim - 1; ++q) ids.push_back(r.cons[idx[q]].source_id);
            throw_degenerate("more than d hyperplanes through a point", std::move(ids));
          }
        }
        fresh.push_back(sol);
        fresh_src.emplace_back(idx.begin(), idx.end());
        return;
      }
      for (int i = start; i < pm; ++i) {
        idx[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    if (dim == 1) {
      Vec sol = {added.c / added.u[0]};
      if (feasible(sol, child.cons)) fresh.push_back(sol);
    } else {
      rec(rec, 0, 0);
    }
    for (Vec& v : fresh) child.verts.push_back(std::move(v));

    audit_and_prune(child);
    if (static_cast<int>(child.verts.size()) < dim + 1)
      throw_degenerate("split produced a degenerate cell", {h.id});
    return child;
  }

  CellPolytope finalize(Region&& r) const {
    CellPolytope cell;
    cell.dim = dim;
    std::sort(r.verts.begin(), r.verts.end(), lex_less);
    cell.vertices = std::move(r.verts);

    std::sort(r.cons.begin(), r.cons.end(), [](const Halfspace& a, const Halfspace& b) {
      if (a.u != b.u) return lex_less(a.u, b.u);
      return a.c < b.c;
    });
    for (const Halfspace& hs : r.cons) {
      HalfspaceFacet f;
      f.source_id = hs.source_id;
      f.u = hs.u;
      f.c = hs.c;
      for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
        const Vec& v = cell.vertices[i];
        if (std::fabs(dot(v, hs.u) - hs.c) <= tol::on_plane(norm(v)))
          f.vertex_ids.push_back(static_cast<int>(i));
      }
      if (static_cast<int>(f.vertex_ids.size()) >= dim) {
        if (f.source_id == kWindowSource) cell.touches_window = true;
        cell.facets.push_back(std::move(f));
      }
    }
    return cell;
  }

  void recurse(Region r, std::vector<CellPolytope>& out) const {
    for (;;) {
      const int s = pick_split(r);
      if (s < 0) {
        out.push_back(finalize(std::move(r)));
        return;
      }
      const Hyperplane& h = (*planes)[s];
      Region left = make_child(r, h, true);
      Region right = make_child(r, h, false);
      recurse(std::move(left), out);
      r = std::move(right);
    }
  }
};

bool cell_less(const CellPolytope& a, const CellPolytope& b) {
  const std::size_t n = std::min(a.vertices.size(), b.vertices.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.vertices[i] != b.vertices[i]) return lex_less(a.vertices[i], b.vertices[i]);
  }
  return a.vertices.size() < b.vertices.size();
}

}  // namespace

std::vector<CellPolytope> extract_cells(const ProcessSample& sample, double window_radius,
                                        int threads) {
  const int d = sample.dim;
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("unsupported dimension");
  if (!(window_radius > 0.0) || window_radius > sample.window_radius + 1e-12)
    throw std::invalid_argument("window radius must lie in (0, sample.window_radius]");
  const double w = window_radius;

  Extractor ex{d, w, &sample.hyperplanes};

  Region root;
  for (int k = 0; k < d; ++k)
    for (double s : {1.0, -1.0}) {
      Vec u(d, 0.0);
      u[k] = s;
      root.cons.push_back({std::move(u), w, kWindowSource});
    }
  for (int corner = 0; corner < (1 << d); ++corner) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v[k] = (corner >> k) & 1 ? w : -w;
    root.verts.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < sample.hyperplanes.size(); ++i) {
    const Hyperplane& h = sample.hyperplanes[i];
    double l1 = 0.0;
    for (double c : h.u) l1 += std::fabs(c);
    if (std::fabs(h.tau) < w * l1) root.cand.push_back(static_cast<int>(i));
  }

  std::vector<CellPolytope> cells;
  if (threads <= 1) {
    ex.recurse(std::move(root), cells);
  } else {
    // Expand a frontier of independent subtrees, then map over it. Split
    // decisions are identical to the serial path, so so is the cell set.
    std::deque<Region> frontier;
    frontier.push_back(std::move(root));
    const std::size_t want = static_cast<std::size_t>(threads) * 8;
    while (frontier.size() < want) {
      Region r = std::move(frontier.front());
      frontier.pop_front();
      const int s = ex.pick_split(r);
      if (s < 0) {
        cells.push_back(ex.finalize(std::move(r)));
        if (frontier.empty()) break;
        continue;
      }
      const Hyperplane& h = (*ex.planes)[s];
      frontier.push_back(ex.make_child(r, h, true));
      frontier.push_back(ex.make_child(r, h, false));
    }
    std::vector<Region> work(std::make_move_iterator(frontier.begin()),
                             std::make_move_iterator(frontier.end()));
    std::vector<std::vector<CellPolytope>> slots(work.size());
    std::vector<std::exception_ptr> errors(work.size());
    parallel_for_index(work.size(), threads, [&](std::size_t i) {
      try {
        ex.recurse(std::move(work[i]), slots[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (auto& slot : slots)
      for (auto& cell : slot) cells.push_back(std::move(cell));
  }

  std::sort(cells.begin(), cells.end(), cell_less);
  return cells;
}

// ---------------------------------------------------------------- circumball

namespace {

// Smallest ball with all boundary points exactly on its sphere: the center
// lies in their affine hull; Gram system in barycentric offsets.
Ball ball_from_boundary(const std::vector<Vec>& b) {
  Ball out;
  if (b.empty()) {
    out.radius = -1.0;  // empty ball: contains nothing
    return out;
  }
  const int k = static_cast<int>(b.size());
  const int d = static_cast<int>(b[0].size());
  if (k == 1) {
    out.center = b[0];
    out.radius = 0.0;
    return out;
  }
  const int n = k - 1;
  std::vector<Vec> wv(n);
  for (int i = 0; i < n; ++i) wv[i] = sub(b[i + 1], b[0]);
  std::vector<double> G(n * n);
  Vec rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G[i * n + j] = dot(wv[i], wv[j]);
    rhs[i] = 0.5 * norm2(wv[i]);
  }
  if (!solve_dense(G.data(), rhs.data(), n)) {
    // near-degenerate boundary set: fall back to dropping the last point
    std::vector<Vec> smaller(b.begin(), b.end() - 1);
    return ball_from_boundary(smaller);
  }
  out.center = b[0];
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) out.center[c] += rhs[i] * wv[i][c];
  double r2 = 0.0;
  for (const Vec& p : b) r2 = std::max(r2, dist2(out.center, p));
  out.radius = std::sqrt(r2);
  return out;
}

bool in_ball(const Ball& ball, const Vec& p) {
  if (ball.radius < 0.0) return false;
  return dist(ball.center, p) <= ball.radius + tol::kMinBallSlack;
}

Ball welzl(const std::vector<const Vec*>& pts, std::size_t n, std::vector<Vec>& boundary,
           int dim) {
  if (n == 0 || static_cast<int>(boundary.size()) == dim + 1)
    return ball_from_boundary(boundary);
  Ball b = welzl(pts, n - 1, boundary, dim);
  if (in_ball(b, *pts[n - 1])) return b;
  boundary.push_back(*pts[n - 1]);
  b = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return b;
}

}  // namespace

Ball circumball(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("circumball of an empty point set");
  const int dim = static_cast<int>(points[0].size());
  std::vector<const Vec*> pts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) pts[i] = &points[i];
  // deterministic shuffle keeps the recursion shallow on adversarial orders
  Rng rng(points.size(), 0x9b1e);
  for (std::size_t i = pts.size(); i > 1; --i)
    std::swap(pts[i - 1], pts[rng.below(i)]);
  std::vector<Vec> boundary;
  Ball b = welzl(pts, pts.size(), boundary, dim);
  double r2 = 0.0;
  for (const Vec& p : points) r2 = std::max(r2, dist2(b.center, p));
  b.radius = std::max(b.radius, std::sqrt(r2));
  return b;
}

double diameter_of(const std::vector<Vec>& points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, dist2(points[i], points[j]));
  return std::sqrt(best);
}

double diameter(const CellPolytope& cell) { return diameter_of(cell.vertices); }

// ------------------------------------------------------------------- volume

namespace {

struct FacetView {
  Vec u;
  double c;
  std::vector<int> vids;  // sorted
};

double polygon_area(const std::vector<Vec>& pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  Vec c(2, 0.0);
  for (const Vec& p : pts) {
    c[0] += p[0];
    c[1] += p[1];
  }
  c[0] /= n;
  c[1] /= n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) ang[i] = std::atan2(pts[i][1] - c[1], pts[i][0] - c[0]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = pts[order[i]];
    const Vec& b = pts[order[(i + 1) % n]];
    area += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::fabs(area);
}

// Divergence theorem: V = (1/d) sum_j c_j vol_{d-1}(F_j), recursing on each
// facet in its own orthonormal chart; ridges are intersections of facet
// incidence lists.
double volume_rec(int dim, const std::vector<Vec>& verts, const std::vector<FacetView>& facets) {
  if (dim == 1) {
    double lo = verts[0][0], hi = verts[0][0];
    for (const Vec& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (dim == 2) return polygon_area(verts);

  double vol = 0.0;
  for (std::size_t j = 0; j < facets.size(); ++j) {
    const FacetView& fj = facets[j];
    if (static_cast<int>(fj.vids.size()) < dim) continue;
    const std::vector<Vec> basis = complement_basis(fj.u);
    const Vec origin = scaled(fj.u, fj.c);

    std::vector<int> local(verts.size(), -1);
    std::vector<Vec> sub_verts;
    sub_verts.reserve(fj.vids.size());
    for (int gv : fj.vids) {
      local[gv] = static_cast<int>(sub_verts.size());
      const Vec rel = sub(verts[gv], origin);
      Vec y(dim - 1);
      for (int t = 0; t < dim - 1; ++t) y[t] = dot(rel, basis[t]);
      sub_verts.push_back(std::move(y));
    }

    std::vector<FacetView> sub_facets;
    for (std::size_t k = 0; k < facets.size(); ++k) {
      if (k == j) continue;
      const FacetView& fk = facets[k];
      std::vector<int> common;
      std::set_intersection(fj.vids.begin(), fj.vids.end(), fk.vids.begin(), fk.vids.end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) < dim - 1) continue;
      Vec n = fk.u;
      const double along = dot(n, fj.u);
      for (int t = 0; t < dim; ++t) n[t] -= along * fj.u[t];
      const double nn = norm(n);
      if (nn < 1e-10) continue;  // parallel facet, no ridge
      Vec nb(dim - 1);
      for (int t = 0; t < dim - 1; ++t) nb[t] = dot(n, basis[t]) / nn;
      FacetView ridge;
      ridge.u = std::move(nb);
      ridge.vids.reserve(common.size());
      for (int gv : common) ridge.vids.push_back(local[gv]);
      std::sort(ridge.vids.begin(), ridge.vids.end());
      ridge.c = dot(sub_verts[ridge.vids[0]], ridge.u);
      sub_facets.push_back(std::move(ridge));
    }
    vol += fj.c * volume_rec(dim - 1, sub_verts, sub_facets);
  }
  return vol / dim;
}

}  // namespace

double cell_volume(const CellPolytope& cell) {
  if (cell.dim == 1) {
    double lo = cell.vertices[0][0], hi = cell.vertices[0][0];
    for (const Vec& v : cell.vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (cell.dim == 2) return polygon_area(cell.vertices);
  std::vector<FacetView> fv;
  fv.reserve(cell.facets.size());
  for (const HalfspaceFacet& f : cell.facets) fv.push_back({f.u, f.c, f.vertex_ids});
  return volume_rec(cell.dim, cell.vertices, fv);
}

// --------------------------------------------------------- hull reconstruction

std::vector<HalfspaceFacet> facets_from_vertices(int dim, const std::vector<Vec>& vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n < dim + 1) throw std::invalid_argument("too few vertices for a full-dimensional polytope");

  std::vector<HalfspaceFacet> facets;
  std::vector<std::vector<int>> seen_sets;
  std::vector<int> idx(dim);

  auto consider = [&](const std::vector<int>& subset) {
    std::vector<Vec> diffs;
    for (int i = 1; i < dim; ++i) diffs.push_back(sub(vertices[subset[i]], vertices[subset[0]]));
    std::vector<Vec> span = orthonormal_basis(diffs);
    if (static_cast<int>(span.size()) != dim - 1) return;  // affinely dependent subset
    // normal: complete the span to a full basis
    std::vector<Vec> gens = span;
    for (int k = 0; k < dim; ++k) {
      Vec e(dim, 0.0);
      e[k] = 1.0;
      gens.push_back(std::move(e));
    }
    std::vector<Vec> full = orthonormal_basis(gens);
    if (static_cast<int>(full.size()) != dim) return;
    Vec nrm = full.back();
    double c = dot(vertices[subset[0]], nrm);

    bool below = true, above = true;
    for (const Vec& v : vertices) {
      const double s = dot(v, nrm) - c;
      const double t = tol::on_plane(norm(v));
      if (s > t) below = false;
      if (s < -t) above = false;
    }
    if (!below && !above) return;  // not supporting
    if (below && above) throw std::invalid_argument("vertex set is lower-dimensional");
    if (above) {
      nrm = scaled(nrm, -1.0);
      c = -c;
    }

    std::vector<int> tight;
    for (int v = 0; v < n; ++v)
      if (std::fabs(dot(vertices[v], nrm) - c) <= tol::on_plane(norm(vertices[v])))
        tight.push_back(v);
    if (static_cast<int>(tight.size()) < dim) return;
    for (const auto& s : seen_sets)
      if (s == tight) return;
    seen_sets.push_back(tight);
    HalfspaceFacet f;
    f.source_id = static_cast<std::int64_t>(facets.size());
    f.u = std::move(nrm);
    f.c = c;
    f.vertex_ids = std::move(tight);
    facets.push_back(std::move(f));
  };

  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == dim) {
      consider(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);

  if (facets.size() < static_cast<std::size_t>(dim + 1))
    throw std::invalid_argument("vertex set does not span a full-dimensional polytope");
  return facets;
}

double distance_to_hull(const Vec& point, const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("distance to empty hull");
  const std::size_t n = vertices.size();
  const int d = static_cast<int>(point.size());

  // Frank-Wolfe with away steps on 0.5 |x - q|^2 over the simplex of weights.
  std::vector<double> wts(n, 0.0);
  std::size_t start = 0;
  double best = dist2(vertices[0], point);
  for (std::size_t i = 1; i < n; ++i) {
    const double d2 = dist2(vertices[i], point);
    if (d2 < best) {
      best = d2;
      start = i;
    }
  }
  wts[start] = 1.0;
  Vec x = vertices[start];

  const double scale = 1.0 + norm2(point);
  for (int iter = 0; iter < 2000; ++iter) {
    Vec g = sub(x, point);
    // FW vertex: min <g, v>; away vertex: max over active support
    std::size_t fw = 0, away = start;
    double fw_val = dot(g, vertices[0]);
    double away_val = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      const double val = dot(g, vertices[i]);
      if (val < fw_val) {
        fw_val = val;
        fw = i;
      }
      if (wts[i] > 0.0 && val > away_val) {
        away_val = val;
        away = i;
      }
    }
    const double gap = dot(g, x) - fw_val;
    if (gap <= 1e-14 * scale) break;

    const bool use_away = (away_val - dot(g, x)) > gap && wts[away] < 1.0;
    Vec dir(d);
    double max_step;
    if (use_away) {
      for (int t = 0; t < d; ++t) dir[t] = x[t] - vertices[away][t];
      max_step = wts[away] / (1.0 - wts[away]);
    } else {
      for (int t = 0; t < d; ++t) dir[t] = vertices[fw][t] - x[t];
      max_step = 1.0;
    }
    const double denom = norm2(dir);
    if (denom < 1e-30) break;
    double step = -dot(g, dir) / denom;
    step = std::clamp(step, 0.0, max_step);
    if (step <= 0.0) break;
    if (use_away) {
      for (std::size_t i = 0; i < n; ++i) wts[i] *= (1.0 + step);
      wts[away] -= step;
      if (wts[away] < 1e-15) wts[away] = 0.0;
    } else {
      for (std::size_t i = 0; i < n; ++i) wts[i] *= (1.0 - step);
      wts[fw] += step;
    }
    for (int t = 0; t < d; ++t) x[t] += step * dir[t];
  }
  return dist(x, point);
}

}  // namespace hyptess
