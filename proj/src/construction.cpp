#include "hyptess/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace hyptess {

namespace {

double spread_along(const std::vector<Vec>& pts, const std::vector<int>& ids, const Vec& u) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i : ids) {
    const double s = dot(pts[i], u);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

double spread_all(const std::vector<Vec>& pts, const Vec& u) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Vec& p : pts) {
    const double s = dot(p, u);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

// Width of conv(pts): d=2 scans edge perpendiculars, d=3 scans all
// edge-cross-edge directions (covers facet normals and edge-edge antipodal
// pairs, the only candidates for a width minimum of a polytope). d >= 4 falls
// back to projected subgradient descent from many starts; callers flag that
// result as non-exact.
std::pair<double, Vec> min_width(const std::vector<Vec>& pts, int dim, bool& exact) {
  double best = std::numeric_limits<double>::infinity();
  Vec best_u;
  auto consider = [&](Vec u) {
    const double n = norm(u);
    if (n < 1e-12) return;
    for (double& x : u) x /= n;
    const double w = spread_all(pts, u);
    if (w < best) {
      best = w;
      best_u = u;
    }
  };
  const std::size_t n = pts.size();
  if (dim == 2) {
    exact = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const Vec d = sub(pts[b], pts[a]);
        consider({-d[1], d[0]});
      }
  } else if (dim == 3) {
    exact = true;
    std::vector<Vec> edges;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) edges.push_back(sub(pts[b], pts[a]));
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i; j < edges.size(); ++j) {
        const Vec &e = edges[i], &f = edges[j];
        consider({e[1] * f[2] - e[2] * f[1], e[2] * f[0] - e[0] * f[2],
                  e[0] * f[1] - e[1] * f[0]});
      }
  } else {
    exact = false;
    Rng rng(0x31d7ULL ^ static_cast<std::uint64_t>(n), 0x77);
    for (int start = 0; start < 200; ++start) {
      Vec u(dim);
      for (int i = 0; i < dim; ++i) u[i] = rng.normal();
      normalize(u);
      for (int step = 0; step < 300; ++step) {
        // subgradient of the spread is v_max - v_min
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        std::size_t alo = 0, ahi = 0;
        for (std::size_t p = 0; p < n; ++p) {
          const double s = dot(pts[p], u);
          if (s < lo) { lo = s; alo = p; }
          if (s > hi) { hi = s; ahi = p; }
        }
        Vec g = sub(pts[ahi], pts[alo]);
        const double gu = dot(g, u);
        for (int i = 0; i < dim; ++i) g[i] -= gu * u[i];  // tangent projection
        const double gn = norm(g);
        if (gn < 1e-14) break;
        const double eta = 0.5 / (1.0 + step);
        for (int i = 0; i < dim; ++i) u[i] -= eta * g[i];
        normalize(u);
      }
      consider(u);
    }
  }
  return {best, best_u};
}

}  // namespace

TargetSpec make_target(std::string name, int dim, std::vector<Vec> vertices, double eps,
                       std::optional<double> D) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("target dim out of range");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("eps must satisfy 0 < eps <= 1");
  if (vertices.size() < static_cast<std::size_t>(dim) + 1)
    throw std::invalid_argument("too few vertices for a full-dimensional polytope");
  for (const Vec& v : vertices)
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("vertex dim mismatch");

  TargetSpec spec;
  spec.name = std::move(name);
  spec.dim = dim;

  Ball b = circumball(vertices);
  for (Vec& v : vertices) v = sub(v, b.center);
  spec.vertices = std::move(vertices);
  spec.circumradius = b.radius;
  {
    Ball check = circumball(spec.vertices);
    if (norm(check.center) > tol::kRecenter * (1.0 + b.radius))
      throw std::logic_error("recentering failed to move the circumcenter to the origin");
  }

  spec.facets = facets_from_vertices(dim, spec.vertices);
  for (const HalfspaceFacet& f : spec.facets)
    if (f.c <= 1e-9)
      throw std::invalid_argument(
          "circumcenter lies on the boundary; such targets are unsupported");

  IncidenceStructure inc;
  inc.dim = dim;
  inc.vertex_count = static_cast<int>(spec.vertices.size());
  for (const HalfspaceFacet& f : spec.facets) inc.facet_vertices.push_back(f.vertex_ids);
  if (!is_simple(inc)) throw std::invalid_argument("target polytope is not simple");
  spec.fingerprint = canonical_type(inc);

  spec.diam = diameter_of(spec.vertices);
  spec.eps = eps;
  spec.D = D.value_or(spec.diam + 2.0);
  if (spec.D < spec.diam)
    throw std::invalid_argument("diameter bound D below diam(P) can never certify");
  return spec;
}

TargetSpec make_target(const ReferencePolytope& ref, double eps, std::optional<double> D) {
  return make_target(ref.name, ref.dim, ref.vertices, eps, D);
}

bool in_Aj(const Hyperplane& h, const TargetSpec& spec, int j) {
  for (int v : spec.facets[j].vertex_ids)
    if (h.dist(spec.vertices[v]) > spec.eps) return false;
  return true;
}

bool in_C(const Hyperplane& h, const TargetSpec& spec) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Vec& v : spec.vertices) {
    const double s = dot(v, h.u);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (h.tau < lo - 1.0 || h.tau > hi + 1.0) return false;  // misses P + B_1
  for (std::size_t j = 0; j < spec.facets.size(); ++j)
    if (in_Aj(h, spec, static_cast<int>(j))) return false;
  return true;
}

EventClassification classify_event(const ProcessSample& sample, const TargetSpec& spec) {
  if (sample.dim != spec.dim) throw std::invalid_argument("sample/target dim mismatch");
  if (sample.window_radius < spec.circumradius + 1.0 + spec.eps - 1e-9)
    throw std::invalid_argument("window too small to decide the event");
  const int m = static_cast<int>(spec.facets.size());
  EventClassification out;
  out.aj_counts.assign(m, 0);
  out.aj_ids.assign(m, {});
  for (const Hyperplane& h : sample.hyperplanes) {
    int member = -1, members = 0;
    for (int j = 0; j < m; ++j)
      if (in_Aj(h, spec, j)) {
        member = j;
        ++members;
      }
    if (members > 1)
      throw std::logic_error("hyperplane in two A_j; the certificate promised disjointness");
    if (members == 1) {
      ++out.aj_counts[member];
      out.aj_ids[member].push_back(h.id);
      continue;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Vec& v : spec.vertices) {
      const double s = dot(v, h.u);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (h.tau >= lo - 1.0 && h.tau <= hi + 1.0) ++out.c_count;
  }
  out.occurred = out.c_count == 0;
  for (int j = 0; j < m; ++j)
    if (out.aj_counts[j] != 1) out.occurred = false;
  return out;
}

Hyperplane draw_in_Aj(const TargetSpec& spec, int j, Rng& rng) {
  const Vec& u0 = spec.facets[j].u;
  const double delta = spec.eps / (2.0 * std::max(spec.circumradius, 1e-9));
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Vec u(spec.dim);
    for (int i = 0; i < spec.dim; ++i) u[i] = u0[i] + delta * rng.normal();
    const double n = norm(u);
    if (n < 1e-9) continue;
    for (double& x : u) x /= n;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int v : spec.facets[j].vertex_ids) {
      const double s = dot(spec.vertices[v], u);
      lo = std::max(lo, s - spec.eps);
      hi = std::min(hi, s + spec.eps);
    }
    if (lo > hi) continue;  // tilt too large for every vertex to stay eps-close
    const double tau = lo + (hi - lo) * rng.uniform();
    return Hyperplane::make(u, tau, j);
  }
  throw std::logic_error("A_j rejection sampling failed to accept");
}

BulletReport verify_bullets(const std::vector<Hyperplane>& event_planes,
                            const TargetSpec& spec) {
  BulletReport rep;
  std::vector<Halfspace> hs;
  hs.reserve(event_planes.size());
  for (const Hyperplane& h : event_planes) {
    const double sgn = h.tau < 0.0 ? -1.0 : 1.0;
    Vec u = h.u;
    for (double& x : u) x *= sgn;
    hs.push_back({std::move(u), sgn * h.tau, h.id});
  }
  VertexEnumerationResult q;
  try {
    q = vertex_enumeration(spec.dim, hs);
  } catch (const UnboundedPolytopeError&) {
    rep.detail = "Q unbounded";
    return rep;
  } catch (const EmptyPolytopeError&) {
    rep.detail = "Q empty or lower-dimensional";
    return rep;
  }

  IncidenceStructure inc;
  inc.dim = spec.dim;
  inc.vertex_count = static_cast<int>(q.vertices.size());
  inc.facet_vertices = q.incidence;
  rep.q_type = canonical_type(inc);
  rep.type_ok = rep.q_type == spec.fingerprint;

  for (const Vec& v : q.vertices)
    rep.max_hull_dist = std::max(rep.max_hull_dist, distance_to_hull(v, spec.vertices));
  rep.containment_ok = rep.max_hull_dist <= 1.0 + 1e-7;

  rep.q_diam = diameter_of(q.vertices);
  rep.diam_ok = rep.q_diam <= spec.D + 1e-9;

  rep.q_center_norm = norm(circumball(q.vertices).center);
  rep.center_ok = rep.q_center_norm <= 1.0 + 1e-9;

  rep.pass = rep.type_ok && rep.containment_ok && rep.diam_ok && rep.center_ok;
  if (!rep.pass) {
    std::ostringstream os;
    if (!rep.type_ok)
      os << "type mismatch (Q has " << rep.q_type.facet_count << " facets, "
         << rep.q_type.vertex_count << " vertices); ";
    if (!rep.containment_ok) os << "vertex escapes P+B_1 by " << rep.max_hull_dist - 1.0 << "; ";
    if (!rep.diam_ok) os << "diam " << rep.q_diam << " > D; ";
    if (!rep.center_ok) os << "|c(Q)| = " << rep.q_center_norm << " > 1; ";
    rep.detail = os.str();
  }
  return rep;
}

Certificate certify_epsilon0(const TargetSpec& spec, int draws, std::uint64_t seed) {
  Certificate cert;
  cert.target_name = spec.name;
  cert.dim = spec.dim;
  cert.eps = spec.eps;
  cert.D = spec.D;

  const int m = static_cast<int>(spec.facets.size());
  bool pairs_ok = true;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      std::vector<Vec> uni;
      std::vector<char> used(spec.vertices.size(), 0);
      for (int v : spec.facets[j].vertex_ids) used[v] = 1;
      for (int v : spec.facets[k].vertex_ids) used[v] = 1;
      for (std::size_t v = 0; v < used.size(); ++v)
        if (used[v]) uni.push_back(spec.vertices[v]);
      bool exact = true;
      auto [w, dir] = min_width(uni, spec.dim, exact);
      if (!exact) cert.disjointness_exact = false;
      cert.pairs.push_back({j, k, w, dir});
      if (w <= 2.0 * spec.eps && pairs_ok) {
        pairs_ok = false;
        cert.failing_pair = std::make_pair(j, k);
      }
    }

  if (!pairs_ok) {
    cert.granted = false;
    return cert;
  }

  cert.min_containment_margin = std::numeric_limits<double>::infinity();
  cert.min_diam_margin = std::numeric_limits<double>::infinity();
  cert.min_center_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed, stream::kCertify);
  std::vector<Hyperplane> planes(m);
  for (int dr = 0; dr < draws; ++dr) {
    ++cert.draws_attempted;
    for (int j = 0; j < m; ++j) planes[j] = draw_in_Aj(spec, j, rng);
    BulletReport rep = verify_bullets(planes, spec);
    if (!rep.pass) {
      std::string which;
      if (!rep.type_ok) which = "type";
      else if (!rep.containment_ok) which = "containment";
      else if (!rep.diam_ok) which = "diameter";
      else which = "center";
      cert.failure = BulletFailure{dr, which, rep.detail};
      cert.granted = false;
      return cert;
    }
    ++cert.draws_passed;
    cert.min_containment_margin = std::min(cert.min_containment_margin, 1.0 - rep.max_hull_dist);
    cert.min_diam_margin = std::min(cert.min_diam_margin, spec.D - rep.q_diam);
    cert.min_center_margin = std::min(cert.min_center_margin, 1.0 - rep.q_center_norm);
  }
  cert.granted = true;
  return cert;
}

EventProbability event_probability(const TargetSpec& spec, const DirectionalDistribution& dist,
                                   const ProcessIntensity& intensity, const Certificate& cert) {
  if (!cert.granted || cert.target_name != spec.name || cert.eps != spec.eps)
    throw std::invalid_argument("event probability requires a granted certificate for this spec");

  EventProbability out;
  const int m = static_cast<int>(spec.facets.size());
  double err = 0.0;
  bool converged = true;

  std::vector<IntegralResult> thetas(m);
  for (int j = 0; j < m; ++j) {
    const auto& ids = spec.facets[j].vertex_ids;
    thetas[j] = dist.integrate_even([&](const Vec& u) {
      return std::max(0.0, 2.0 * spec.eps - spread_along(spec.vertices, ids, u));
    });
    out.theta_aj.push_back(intensity.gamma * thetas[j].value);
    converged = converged && thetas[j].converged;
  }

  SupportFunction hP = polytope_support(spec.vertices);
  SupportFunction hPB1 = [hP](const Vec& u) { return hP(u) + 1.0; };  // h of P + B_1
  IntegralResult hit = hitting_mean(dist, intensity, hPB1);
  const double hit_mean = hit.value;
  converged = converged && hit.converged;

  double sum_theta = 0.0;
  for (double t : out.theta_aj) sum_theta += t;
  out.theta_c = hit_mean - sum_theta;
  if (out.theta_c < -1e-6 * std::max(1.0, hit_mean))
    throw std::logic_error("Theta(C) came out negative; quadrature inconsistency");
  out.theta_c = std::max(0.0, out.theta_c);

  // P(E) = prod Theta_j * exp(-(sum Theta_j + Theta_C)) = prod Theta_j * exp(-hit_mean)
  double value = std::exp(-hit_mean);
  for (double t : out.theta_aj) value *= t;
  out.value = value;

  double rel = hit.error;  // d(hit_mean) enters exp directly
  for (int j = 0; j < m; ++j)
    if (out.theta_aj[j] > 0.0) rel += intensity.gamma * thetas[j].error / out.theta_aj[j];
  out.error = std::abs(value) * rel;
  out.converged = converged;
  return out;
}

BulletReport verify_bullet_on_event(const ProcessSample& sample, const TargetSpec& spec) {
  EventClassification cls = classify_event(sample, spec);
  if (!cls.occurred) throw std::invalid_argument("event did not occur in this sample");

  std::vector<Hyperplane> planes;
  for (const auto& ids : cls.aj_ids)
    for (const Hyperplane& h : sample.hyperplanes)
      if (h.id == ids.front()) planes.push_back(h);
  BulletReport direct = verify_bullets(planes, spec);

  // Cross-validate against the tessellation: the cell holding the origin must
  // be the same polytope.
  std::vector<CellPolytope> cells = extract_cells(sample, sample.window_radius);
  const CellPolytope* home = nullptr;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (const CellPolytope& c : cells) {
    double margin = std::numeric_limits<double>::infinity();
    for (const HalfspaceFacet& f : c.facets) margin = std::min(margin, f.c);
    if (margin > best_margin) {
      best_margin = margin;
      home = &c;
    }
  }
  if (!home || best_margin < -tol::on_plane(1.0))
    throw std::logic_error("no tessellation cell contains the origin");
  const TypeFingerprint cell_fp = canonical_type(*home);
  if (!(cell_fp == direct.q_type))
    throw std::logic_error("extracted cell type disagrees with the direct reconstruction");

  std::vector<Halfspace> hs;
  for (const Hyperplane& h : planes) {
    const double sgn = h.tau < 0.0 ? -1.0 : 1.0;
    Vec u = h.u;
    for (double& x : u) x *= sgn;
    hs.push_back({std::move(u), sgn * h.tau, h.id});
  }
  VertexEnumerationResult q = vertex_enumeration(spec.dim, hs);
  if (q.vertices.size() != home->vertices.size())
    throw std::logic_error("extracted cell vertex count disagrees with reconstruction");
  for (const Vec& v : q.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& w : home->vertices) best = std::min(best, dist(v, w));
    if (best > 1e-7)
      throw std::logic_error("extracted cell vertices disagree with reconstruction");
  }
  return direct;
}

std::string Certificate::to_json() const {
  nlohmann::json j;
  j["target"] = target_name;
  j["dim"] = dim;
  j["eps"] = eps;
  j["diameter_bound"] = D;
  j["granted"] = granted;
  j["disjointness_exact"] = disjointness_exact;
  nlohmann::json pl = nlohmann::json::array();
  for (const PairDisjointness& p : pairs) {
    nlohmann::json e;
    e["j"] = p.j;
    e["k"] = p.k;
    e["min_width"] = p.min_width;
    e["direction"] = p.direction;
    pl.push_back(e);
  }
  j["pairs"] = pl;
  if (failing_pair) j["failing_pair"] = {failing_pair->first, failing_pair->second};
  j["draws_attempted"] = draws_attempted;
  j["draws_passed"] = draws_passed;
  if (failure) {
    j["failure"] = {{"draw", failure->draw_index}, {"which", failure->which},
                    {"detail", failure->detail}};
  }
  if (granted) {
    j["margins"] = {{"containment", min_containment_margin},
                    {"diameter", min_diam_margin},
                    {"center", min_center_margin}};
  }
  return j.dump(2) + "\n";
}

}  // namespace hyptess
