#include "hyptess/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyptess/model.hpp"

namespace hyptess {

CensusMarginError::CensusMarginError(double max_safe)
    : std::runtime_error([max_safe] {
        std::ostringstream os;
        os << "ladder exceeds the safe counting region; largest safe radius is " << max_safe;
        return os.str();
      }()),
      max_safe_n(max_safe) {}

std::vector<CellSummary> summarize_cells(const std::vector<CellPolytope>& cells) {
  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (const CellPolytope& c : cells) {
    CellSummary s;
    s.touches_window = c.touches_window;
    s.vertex_count = static_cast<int>(c.vertices.size());
    s.vertices = c.vertices;
    Ball b = circumball(c.vertices);
    s.circumcenter = b.center;
    s.circumradius = b.radius;
    s.diam = diameter(c);
    for (const Vec& v : c.vertices) s.max_vertex_norm = std::max(s.max_vertex_norm, norm(v));
    if (!c.touches_window) s.fp = canonical_type(c);  // clipped cells are never typed
    out.push_back(std::move(s));
  }
  return out;
}

double TypeCensus::window_volume(int radius_index) const {
  return ball_volume(dim, radii.at(radius_index));
}

double TypeCensus::mean_vertex_count(int radius_index) const {
  const long tot = total_centered.at(radius_index);
  if (tot == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(vertex_sum_centered[radius_index]) / static_cast<double>(tot);
}

TypeCensus census(const std::vector<CellSummary>& cells, const std::vector<double>& radii,
                  double valid_radius, const Vec& center) {
  if (radii.empty()) throw std::invalid_argument("census needs at least one radius");
  TypeCensus out;
  for (const CellSummary& s : cells)
    if (!s.vertices.empty()) {
      out.dim = static_cast<int>(s.vertices.front().size());
      break;
    }
  out.radii = radii;
  std::sort(out.radii.begin(), out.radii.end());
  out.valid_radius = valid_radius;
  const bool shifted = !center.empty();
  auto far_from_center = [&](const CellSummary& s) {
    if (!shifted) return s.max_vertex_norm;
    double f = 0.0;
    for (const Vec& v : s.vertices) f = std::max(f, dist(v, center));
    return f;
  };
  // Margin over verified true cells only: window-touching fragments are
  // truncated and complete cells outside B_valid(center) may be cut by
  // unsampled hyperplanes, so neither says anything about true cell
  // diameters.
  for (const CellSummary& s : cells)
    if (!s.touches_window && far_from_center(s) <= valid_radius)
      out.margin = std::max(out.margin, s.diam);
  if (out.radii.back() > valid_radius - out.margin)
    throw CensusMarginError(valid_radius - out.margin);

  const int k = static_cast<int>(out.radii.size());
  out.total_contained.assign(k, 0);
  out.total_centered.assign(k, 0);
  out.vertex_sum_centered.assign(k, 0);

  auto row_for = [&](const TypeFingerprint& fp) -> TypeCensus::TypeRow& {
    for (auto& r : out.rows)
      if (r.fp == fp) return r;
    TypeCensus::TypeRow r;
    r.fp = fp;
    r.name = type_catalog_lookup(fp);
    r.count_contained.assign(k, 0);
    r.count_centered.assign(k, 0);
    out.rows.push_back(std::move(r));
    return out.rows.back();
  };

  for (const CellSummary& s : cells) {
    if (s.touches_window) continue;
    const double center_dist =
        shifted ? dist(s.circumcenter, center) : norm(s.circumcenter);
    const double far_dist = far_from_center(s);
    if (far_dist > valid_radius) continue;  // outside the guaranteed-complete region
    TypeCensus::TypeRow& row = row_for(s.fp);
    for (int i = 0; i < k; ++i) {
      const bool centered = center_dist <= out.radii[i];
      const bool contained = far_dist <= out.radii[i];
      if (contained && !centered)
        throw std::logic_error("containment without centering; circumcenter left its cell");
      if (centered) {
        ++row.count_centered[i];
        ++out.total_centered[i];
        out.vertex_sum_centered[i] += s.vertex_count;
      }
      if (contained) {
        ++row.count_contained[i];
        ++out.total_contained[i];
      }
    }
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const TypeCensus::TypeRow& a, const TypeCensus::TypeRow& b) {
              return a.fp.bytes < b.fp.bytes;
            });
  return out;
}

TypeCensus merge_census(const std::vector<TypeCensus>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  TypeCensus out = parts.front();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const TypeCensus& c = parts[p];
    if (c.radii != out.radii) throw std::invalid_argument("census ladders differ");
    out.dim = std::max(out.dim, c.dim);
    out.valid_radius = std::min(out.valid_radius, c.valid_radius);
    out.margin = std::max(out.margin, c.margin);
    const int k = static_cast<int>(out.radii.size());
    for (int i = 0; i < k; ++i) {
      out.total_contained[i] += c.total_contained[i];
      out.total_centered[i] += c.total_centered[i];
      out.vertex_sum_centered[i] += c.vertex_sum_centered[i];
    }
    for (const auto& row : c.rows) {
      auto it = std::find_if(out.rows.begin(), out.rows.end(),
                             [&](const TypeCensus::TypeRow& r) { return r.fp == row.fp; });
      if (it == out.rows.end()) {
        out.rows.push_back(row);
      } else {
        for (int i = 0; i < k; ++i) {
          it->count_contained[i] += row.count_contained[i];
          it->count_centered[i] += row.count_centered[i];
        }
      }
    }
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const TypeCensus::TypeRow& a, const TypeCensus::TypeRow& b) {
              return a.fp.bytes < b.fp.bytes;
            });
  return out;
}

DensityCurve density_curve(const TypeCensus& cs, const TypeFingerprint& fp) {
  DensityCurve out;
  out.fp = fp;
  out.radii = cs.radii;
  const int k = static_cast<int>(cs.radii.size());
  const TypeCensus::TypeRow* row = nullptr;
  for (const auto& r : cs.rows)
    if (r.fp == fp) {
      row = &r;
      break;
    }
  if (row && row->name) out.name = row->name;
  if (!out.name) out.name = type_catalog_lookup(fp);
  out.density_contained.assign(k, 0.0);
  out.density_centered.assign(k, 0.0);
  out.ratio.assign(k, std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < k; ++i) {
    const double vol = cs.window_volume(i);
    const long cc = row ? row->count_contained[i] : 0;
    const long cz = row ? row->count_centered[i] : 0;
    out.density_contained[i] = cc / vol;
    out.density_centered[i] = cz / vol;
    if (cz > 0) out.ratio[i] = static_cast<double>(cc) / static_cast<double>(cz);
  }
  auto tail_variation = [&](const std::vector<double>& dens) {
    const int start = (2 * k) / 3;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    int cnt = 0;
    for (int i = start; i < k; ++i) {
      lo = std::min(lo, dens[i]);
      hi = std::max(hi, dens[i]);
      sum += dens[i];
      ++cnt;
    }
    if (cnt == 0 || sum <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (hi - lo) / (sum / cnt);
  };
  out.tail_rel_variation_contained = tail_variation(out.density_contained);
  out.tail_rel_variation_centered = tail_variation(out.density_centered);
  return out;
}

SandwichReport sandwich_check(const std::vector<CellSummary>& cells,
                              const std::optional<TypeFingerprint>& predicate, double n,
                              double valid_radius, Rng& rng, int mc_points) {
  SandwichReport rep;
  rep.n = n;
  double margin = 0.0;
  for (const CellSummary& s : cells)
    if (!s.touches_window && s.max_vertex_norm <= valid_radius)
      margin = std::max(margin, s.diam);
  if (n + 1.0 > valid_radius - margin) throw CensusMarginError(valid_radius - margin - 1.0);

  // Centers of countable, predicate-matching cells.
  std::vector<Vec> centers;
  int dim = 0;
  for (const CellSummary& s : cells) {
    if (s.touches_window) continue;
    if (s.max_vertex_norm > valid_radius) continue;
    if (predicate && !(s.fp == *predicate)) continue;
    centers.push_back(s.circumcenter);
    dim = static_cast<int>(s.circumcenter.size());
  }

  auto count_in_ball = [&](const Vec& t, double r) {
    long c = 0;
    const double r2 = r * r;
    for (const Vec& p : centers) {
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - (t.empty() ? 0.0 : t[i]);
        s += d * d;
      }
      if (s <= r2) ++c;
    }
    return c;
  };

  rep.cells_matching = count_in_ball({}, n);
  rep.middle = ball_volume(dim, 1.0) * static_cast<double>(rep.cells_matching);

  auto mc_side = [&](double radius, double& est, double& se) {
    const double vol = ball_volume(dim, radius);
    double sum = 0.0, sum2 = 0.0;
    Vec t(dim);
    for (int it = 0; it < mc_points; ++it) {
      // Uniform point in B_radius: Gaussian direction, radial cdf inversion.
      double nn = 0.0;
      for (int i = 0; i < dim; ++i) {
        t[i] = rng.normal();
        nn += t[i] * t[i];
      }
      nn = std::sqrt(std::max(nn, 1e-300));
      const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
      for (int i = 0; i < dim; ++i) t[i] *= r / nn;
      const double f = static_cast<double>(count_in_ball(t, 1.0));
      sum += f;
      sum2 += f * f;
    }
    const double mean = sum / mc_points;
    const double var = std::max(0.0, sum2 / mc_points - mean * mean);
    est = vol * mean;
    se = vol * std::sqrt(var / mc_points);
  };
  if (dim == 0) {  // no matching cells anywhere: integrals are exactly zero
    rep.lower = rep.upper = rep.lower_se = rep.upper_se = 0.0;
    rep.lower_ok = rep.upper_ok = rep.pass = true;
    return rep;
  }
  mc_side(n - 1.0, rep.lower, rep.lower_se);
  mc_side(n + 1.0, rep.upper, rep.upper_se);
  rep.lower_ok = rep.lower <= rep.middle + 3.0 * rep.lower_se;
  rep.upper_ok = rep.middle <= rep.upper + 3.0 * rep.upper_se;
  rep.pass = rep.lower_ok && rep.upper_ok;
  return rep;
}

}  // namespace hyptess
