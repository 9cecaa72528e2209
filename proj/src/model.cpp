#include "hyptess/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hyptess/constants.hpp"

namespace hyptess {

Hyperplane Hyperplane::make(Vec normal, double offset, std::int64_t id) {
  const double n = norm(normal);
  if (n < 1e-14) throw std::invalid_argument("hyperplane normal is zero");
  if (std::fabs(n - 1.0) > tol::kUnitNorm) {
    for (double& x : normal) x /= n;
    offset /= n;  // keep the point set {<x,normal> = offset} unchanged
  }
  // canonical representative: first nonzero coordinate positive
  for (double c : normal) {
    if (std::fabs(c) > tol::kUnitNorm) {
      if (c < 0.0) {
        for (double& x : normal) x = -x;
        offset = -offset;
      }
      break;
    }
  }
  Hyperplane h;
  h.u = std::move(normal);
  h.tau = offset;
  h.id = id;
  return h;
}

ProcessIntensity::ProcessIntensity(double g) : gamma(g) {
  if (!(g > 0.0)) throw std::invalid_argument("intensity gamma must be > 0");
}

DirectionalDistribution DirectionalDistribution::isotropic(int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  DirectionalDistribution d;
  d.kind_ = Kind::Isotropic;
  d.dim_ = dim;
  d.supports_full_sphere_ = true;
  d.vanishes_on_great_subspheres_ = true;
  return d;
}

DirectionalDistribution DirectionalDistribution::atomic(int dim, std::vector<AtomPair> pairs) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (pairs.empty()) throw std::invalid_argument("atomic distribution needs at least one pair");
  double total = 0.0;
  for (auto& p : pairs) {
    if (static_cast<int>(p.dir.size()) != dim)
      throw std::invalid_argument("atom direction has wrong dimension");
    if (!(p.weight > 0.0)) throw std::invalid_argument("atom weight must be > 0");
    normalize(p.dir);
    total += p.weight;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("atomic weights must sum to 1");
  DirectionalDistribution d;
  d.kind_ = Kind::Atomic;
  d.dim_ = dim;
  d.atoms_ = std::move(pairs);
  // An atom pair {+-u} is itself contained in the great subsphere
  // span(u) n S^{d-1}, so both theorem hypotheses fail for atomic phi.
  d.supports_full_sphere_ = false;
  d.vanishes_on_great_subspheres_ = false;
  return d;
}

DirectionalDistribution DirectionalDistribution::axial_density(int dim, Vec axis, double beta) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (static_cast<int>(axis.size()) != dim)
    throw std::invalid_argument("axis has wrong dimension");
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  DirectionalDistribution d;
  d.kind_ = Kind::Density;
  d.dim_ = dim;
  d.axis_ = normalized(std::move(axis));
  d.beta_ = beta;
  d.supports_full_sphere_ = true;          // density bounded below by 1/(1+beta/d)
  d.vanishes_on_great_subspheres_ = true;  // absolutely continuous
  return d;
}

std::string DirectionalDistribution::tag() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Isotropic:
      os << "isotropic";
      break;
    case Kind::Atomic:
      os << "atomic[" << atoms_.size() << " pairs]";
      break;
    case Kind::Density:
      os << "axial[beta=" << beta_ << "]";
      break;
  }
  return os.str();
}

double DirectionalDistribution::density_value(const Vec& u) const {
  if (kind_ != Kind::Density) throw std::logic_error("density_value: not a density kind");
  const double t = dot(u, axis_);
  return (1.0 + beta_ * t * t) / (1.0 + beta_ / dim_);
}

Vec DirectionalDistribution::sample_direction(Rng& rng) const {
  switch (kind_) {
    case Kind::Isotropic: {
      Vec u(dim_);
      double n2;
      do {
        for (double& x : u) x = rng.normal();
        n2 = norm2(u);
      } while (n2 < 1e-24);
      const double inv = 1.0 / std::sqrt(n2);
      for (double& x : u) x *= inv;
      return u;
    }
    case Kind::Atomic: {
      const double r = rng.uniform();
      double acc = 0.0;
      const AtomPair* chosen = &atoms_.back();
      for (const AtomPair& p : atoms_) {
        acc += p.weight;
        if (r < acc) {
          chosen = &p;
          break;
        }
      }
      Vec u = chosen->dir;
      if (rng.uniform() < 0.5)
        for (double& x : u) x = -x;
      return u;
    }
    case Kind::Density: {
      // rejection from the uniform law; acceptance rate >= 1/(1+beta)
      const double rho_max = (1.0 + beta_) / (1.0 + beta_ / dim_);
      auto iso = DirectionalDistribution::isotropic(dim_);
      for (;;) {
        Vec u = iso.sample_direction(rng);
        if (rng.uniform() * rho_max <= density_value(u)) return u;
      }
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Nodes and weights of the 16-point Gauss-Legendre rule on [-1,1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

double gl_panels_1d(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double local = 0.0;
    for (int i = 0; i < kGL; ++i) local += kGLw[i] * f(mid + 0.5 * h * kGLx[i]);
    sum += 0.5 * h * local;
  }
  return sum;
}

// Composite rule with panel doubling until successive estimates agree. When
// the cap is hit (kinked integrands) the last successive difference is
// reported as the error and the result is flagged unconverged.
IntegralResult adaptive_1d(const std::function<double(double)>& f, double a, double b) {
  double prev = gl_panels_1d(f, a, b, 4);
  double err = 0.0;
  for (int panels = 8; panels <= 1024; panels *= 2) {
    const double cur = gl_panels_1d(f, a, b, panels);
    err = std::fabs(cur - prev);
    if (err <= 1e-12 + 1e-10 * std::fabs(cur)) return {cur, err, true};
    prev = cur;
  }
  return {prev, err, false};
}

// Tensor-product composite rule on [-1,1] x [0,2pi], both axes refined
// together. Nesting two independently adaptive rules would multiply their
// worst-case panel counts on kinked integrands (support functions of
// polytopes), so the refinement is joint and capped.
IntegralResult adaptive_sphere_3d(const std::function<double(double, double)>& f) {
  const double two_pi = 2.0 * std::numbers::pi;
  auto eval = [&](int nz) {
    const int nphi = 2 * nz;
    const double hz = 2.0 / nz, hphi = two_pi / nphi;
    double sum = 0.0;
    for (int pz = 0; pz < nz; ++pz) {
      const double mz = -1.0 + (pz + 0.5) * hz;
      for (int iz = 0; iz < kGL; ++iz) {
        const double z = mz + 0.5 * hz * kGLx[iz];
        double row = 0.0;
        for (int pp = 0; pp < nphi; ++pp) {
          const double mp = (pp + 0.5) * hphi;
          for (int ip = 0; ip < kGL; ++ip)
            row += kGLw[ip] * f(z, mp + 0.5 * hphi * kGLx[ip]);
        }
        sum += kGLw[iz] * row * 0.5 * hphi;
      }
    }
    return sum * 0.5 * hz;
  };
  double prev = eval(2);
  double err = 0.0;
  for (int nz = 4; nz <= 64; nz *= 2) {
    const double cur = eval(nz);
    err = std::fabs(cur - prev);
    if (err <= 1e-12 + 1e-10 * std::fabs(cur)) return {cur, err, true};
    prev = cur;
  }
  return {prev, err, false};
}

}  // namespace

IntegralResult DirectionalDistribution::integrate_even(
    const std::function<double(const Vec&)>& f) const {
  switch (kind_) {
    case Kind::Atomic: {
      double s = 0.0;
      for (const AtomPair& p : atoms_) s += p.weight * f(p.dir);
      return {s, 0.0, true};
    }
    case Kind::Isotropic:
    case Kind::Density: {
      const bool weighted = kind_ == Kind::Density;
      if (dim_ == 2) {
        auto g = [&](double theta) {
          Vec u = {std::cos(theta), std::sin(theta)};
          const double w = weighted ? density_value(u) : 1.0;
          return w * f(u);
        };
        IntegralResult r = adaptive_1d(g, 0.0, 2.0 * std::numbers::pi);
        const double c = 1.0 / (2.0 * std::numbers::pi);
        return {r.value * c, r.error * c, r.converged};
      }
      if (dim_ == 3) {
        // (1/4pi) int_0^{2pi} int_{-1}^{1} f(u(z,phi)) dz dphi
        auto g = [&](double z, double phi) {
          const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
          Vec u = {s * std::cos(phi), s * std::sin(phi), z};
          const double w = weighted ? density_value(u) : 1.0;
          return w * f(u);
        };
        IntegralResult r = adaptive_sphere_3d(g);
        const double c = 1.0 / (4.0 * std::numbers::pi);
        return {r.value * c, r.error * c, r.converged};
      }
      // d >= 4: plain Monte Carlo with reported standard error.
      const int n = 200000;
      Rng rng(0xA5EBu, stream::kQuadratureMC + 17 * dim_);
      auto iso = DirectionalDistribution::isotropic(dim_);
      double sum = 0.0, sum2 = 0.0;
      for (int i = 0; i < n; ++i) {
        Vec u = iso.sample_direction(rng);
        const double w = weighted ? density_value(u) : 1.0;
        const double v = w * f(u);
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / n;
      const double var = std::max(0.0, sum2 / n - mean * mean);
      const double se = std::sqrt(var / n);
      return {mean, 3.0 * se, false};  // flagged: MC, not deterministic quadrature
    }
  }
  throw std::logic_error("unreachable");
}

SupportFunction ball_support(double radius) {
  return [radius](const Vec&) { return radius; };
}

SupportFunction polytope_support(std::vector<Vec> vertices) {
  if (vertices.empty()) throw std::invalid_argument("polytope_support: no vertices");
  return [vs = std::move(vertices)](const Vec& u) {
    double best = dot(vs.front(), u);
    for (std::size_t i = 1; i < vs.size(); ++i) best = std::max(best, dot(vs[i], u));
    return best;
  };
}

IntegralResult hitting_mean(const DirectionalDistribution& dist, const ProcessIntensity& intensity,
                            const SupportFunction& support) {
  auto width = [&](const Vec& u) {
    Vec neg = scaled(u, -1.0);
    return support(u) + support(neg);
  };
  IntegralResult r = dist.integrate_even(width);
  r.value *= intensity.gamma;
  r.error *= intensity.gamma;
  return r;
}

double ball_volume(int dim, double radius) {
  const double unit = std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
  return unit * std::pow(radius, dim);
}

}  // namespace hyptess
