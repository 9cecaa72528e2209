#ifndef HYPTESS_MODEL_HPP
#define HYPTESS_MODEL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyptess/linalg.hpp"
#include "hyptess/rng.hpp"

namespace hyptess {

// A hyperplane {x : <x,u> = tau} with unit normal u and signed offset tau.
// (u,tau) and (-u,-tau) name the same set; the stored representative has its
// first nonzero normal coordinate positive so hashing and deduplication are
// stable.
struct Hyperplane {
  Vec u;
  double tau = 0.0;
  std::int64_t id = -1;

  static Hyperplane make(Vec normal, double offset, std::int64_t id = -1);

  double signed_dist(const Vec& x) const { return dot(x, u) - tau; }
  double dist(const Vec& x) const { return std::fabs(signed_dist(x)); }
};

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;   // reported bound on the quadrature/MC error
  bool converged = true;
};

// Even probability measure on the unit sphere: the law of hyperplane normals.
class DirectionalDistribution {
 public:
  enum class Kind { Isotropic, Atomic, Density };

  // An atom entry is an antipodal pair {+dir,-dir} with its total weight.
  struct AtomPair {
    Vec dir;
    double weight;
  };

  static DirectionalDistribution isotropic(int dim);
  // Weights must sum to 1; directions are unit (normalized on construction).
  static DirectionalDistribution atomic(int dim, std::vector<AtomPair> pairs);
  // Continuous even density w.r.t. the uniform measure:
  // rho(u) = (1 + beta <u,axis>^2) / (1 + beta/d), beta >= 0.
  static DirectionalDistribution axial_density(int dim, Vec axis, double beta);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<AtomPair>& atoms() const { return atoms_; }
  std::string tag() const;  // short description used in sample headers

  // Theorem hypotheses, fixed at construction.
  bool supports_full_sphere() const { return supports_full_sphere_; }
  bool vanishes_on_great_subspheres() const { return vanishes_on_great_subspheres_; }

  // Draw a unit vector with law phi.
  Vec sample_direction(Rng& rng) const;

  // integral of f d(phi) for even f. Exact for atomic phi; composite
  // Gauss-Legendre in d=2,3; Monte Carlo with reported standard error for
  // d >= 4 (never silent: the error field is always meaningful).
  IntegralResult integrate_even(const std::function<double(const Vec&)>& f) const;

  double density_value(const Vec& u) const;  // Density kind only

 private:
  DirectionalDistribution() = default;
  Kind kind_ = Kind::Isotropic;
  int dim_ = 2;
  std::vector<AtomPair> atoms_;
  Vec axis_;
  double beta_ = 0.0;
  bool supports_full_sphere_ = true;
  bool vanishes_on_great_subspheres_ = true;
};

struct ProcessIntensity {
  double gamma = 1.0;  // expected hyperplanes hitting B_1 is 2*gamma
  explicit ProcessIntensity(double g);
};

using SupportFunction = std::function<double(const Vec&)>;

SupportFunction ball_support(double radius);
SupportFunction polytope_support(std::vector<Vec> vertices);

// Expected number of process hyperplanes hitting the convex body K:
//   Theta([K]) = gamma * int (h_K(u) + h_K(-u)) phi(du)  ( = 2 gamma int h_K dphi ).
// Translation invariant, so K need not contain the origin even though the
// stated contract assumes it does.
IntegralResult hitting_mean(const DirectionalDistribution& dist, const ProcessIntensity& intensity,
                            const SupportFunction& support);

// Lebesgue volume of the d-ball of given radius.
double ball_volume(int dim, double radius);

}  // namespace hyptess

#endif
