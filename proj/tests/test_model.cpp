#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hyptess/model.hpp"
#include "hyptess/rng.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using hyptess::DirectionalDistribution;
using hyptess::Hyperplane;
using hyptess::ProcessIntensity;
using hyptess::Vec;

namespace {
constexpr double kPi = std::numbers::pi;

DirectionalDistribution square_atoms() {
  return DirectionalDistribution::atomic(
      2, {{Vec{1.0, 0.0}, 0.5}, {Vec{0.0, 1.0}, 0.5}});
}
}  // namespace

TEST_CASE("hyperplane canonical representative") {
  const auto h = Hyperplane::make({-2.0, 0.0}, 3.0, 7);
  CHECK(h.u[0] == doctest::Approx(1.0));
  CHECK(h.u[1] == doctest::Approx(0.0));
  CHECK(h.tau == doctest::Approx(-1.5));
  CHECK(h.id == 7);

  // (u,tau) and (-u,-tau) collapse to the same representative.
  const auto a = Hyperplane::make({0.0, -1.0, 0.0}, 0.25);
  const auto b = Hyperplane::make({0.0, 1.0, 0.0}, -0.25);
  CHECK(a.u == b.u);
  CHECK(a.tau == doctest::Approx(b.tau));

  CHECK_THROWS_AS(Hyperplane::make({0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("signed distance") {
  const auto h = Hyperplane::make({1.0, 0.0}, 2.0);
  CHECK(h.signed_dist({5.0, 0.0}) == doctest::Approx(3.0));
  CHECK(h.signed_dist({0.0, 9.0}) == doctest::Approx(-2.0));
  CHECK(h.dist({0.0, 9.0}) == doctest::Approx(2.0));
  CHECK(h.dist({2.0, -4.0}) == doctest::Approx(0.0));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(DirectionalDistribution::isotropic(1), std::invalid_argument);
  CHECK_THROWS_AS(DirectionalDistribution::atomic(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      DirectionalDistribution::atomic(2, {{Vec{1.0, 0.0}, 0.5}, {Vec{0.0, 1.0}, 0.6}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      DirectionalDistribution::atomic(2, {{Vec{1.0, 0.0}, -0.2}, {Vec{0.0, 1.0}, 1.2}}),
      std::invalid_argument);
  CHECK_THROWS_AS(DirectionalDistribution::axial_density(2, {1.0, 0.0}, -0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProcessIntensity(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ProcessIntensity(-1.0), std::invalid_argument);

  // Atom directions are normalized on construction.
  const auto d = DirectionalDistribution::atomic(2, {{Vec{3.0, 4.0}, 1.0}});
  CHECK(d.atoms()[0].dir[0] == doctest::Approx(0.6));
  CHECK(d.atoms()[0].dir[1] == doctest::Approx(0.8));
}

TEST_CASE("hypothesis flags") {
  const auto iso = DirectionalDistribution::isotropic(3);
  CHECK(iso.supports_full_sphere());
  CHECK(iso.vanishes_on_great_subspheres());

  const auto atom = square_atoms();
  CHECK_FALSE(atom.supports_full_sphere());
  CHECK_FALSE(atom.vanishes_on_great_subspheres());

  const auto ax = DirectionalDistribution::axial_density(3, {0.0, 0.0, 1.0}, 4.0);
  CHECK(ax.supports_full_sphere());
  CHECK(ax.vanishes_on_great_subspheres());

  CHECK(iso.tag() != atom.tag());
  CHECK(iso.tag() != ax.tag());
}

TEST_CASE("isotropic sampling is uniform in d=3") {
  const auto dist = DirectionalDistribution::isotropic(3);
  hyptess::Rng rng(42, 90);
  const int bands = 10, sectors = 10, n = 100000;
  std::vector<long> counts(bands * sectors, 0);
  for (int i = 0; i < n; ++i) ++counts[oracle::sphere_bin(dist.sample_direction(rng), bands, sectors)];
  // Bins are equal-area (Archimedes), so uniform means equal expected counts.
  const double chi2 = teststat::chi2_equal_bins(counts);
  CHECK(chi2 < teststat::chi2_critical(bands * sectors - 1, 0.999));
}

TEST_CASE("isotropic sampling is uniform in d=2") {
  const auto dist = DirectionalDistribution::isotropic(2);
  hyptess::Rng rng(43, 90);
  const int sectors = 40, n = 100000;
  std::vector<long> counts(sectors, 0);
  for (int i = 0; i < n; ++i) {
    const Vec u = dist.sample_direction(rng);
    int s = static_cast<int>((std::atan2(u[1], u[0]) + kPi) / (2.0 * kPi) * sectors);
    ++counts[std::min(s, sectors - 1)];
  }
  CHECK(teststat::chi2_equal_bins(counts) < teststat::chi2_critical(sectors - 1, 0.999));
}

TEST_CASE("atomic sampling hits atoms and signs evenly") {
  const auto dist = DirectionalDistribution::atomic(
      2, {{Vec{1.0, 0.0}, 0.3}, {Vec{0.0, 1.0}, 0.7}});
  hyptess::Rng rng(44, 90);
  const int n = 100000;
  // Four outcomes +-e1, +-e2 with probabilities .15/.15/.35/.35.
  long c[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const Vec u = dist.sample_direction(rng);
    const int axis = std::fabs(u[0]) > 0.5 ? 0 : 1;
    const int sign = (u[axis] > 0.0) ? 0 : 1;
    ++c[2 * axis + sign];
  }
  const double p[4] = {0.15, 0.15, 0.35, 0.35};
  double chi2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double e = n * p[k];
    chi2 += (c[k] - e) * (c[k] - e) / e;
  }
  CHECK(chi2 < teststat::chi2_critical(3, 0.999));
}

TEST_CASE("axial density sampling matches its density") {
  const double beta = 4.0;
  const auto dist = DirectionalDistribution::axial_density(3, {0.0, 0.0, 1.0}, beta);
  hyptess::Rng rng(45, 90);
  const int bins = 20, n = 100000;
  std::vector<long> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double z = dist.sample_direction(rng)[2];
    counts[std::min(static_cast<int>((z + 1.0) / 2.0 * bins), bins - 1)]++;
  }
  // For f(u) = g(<u,axis>) in d=3 the law of t = <u,axis> has density
  // rho(t)/2 on [-1,1], rho(t) = (1 + beta t^2)/(1 + beta/3).
  std::vector<double> expected(bins);
  for (int k = 0; k < bins; ++k) {
    const double a = -1.0 + 2.0 * k / bins, b = a + 2.0 / bins;
    const double mass = ((b - a) + beta * (b * b * b - a * a * a) / 3.0) / (2.0 * (1.0 + beta / 3.0));
    expected[k] = n * mass;
  }
  double chi2 = 0.0;
  for (int k = 0; k < bins; ++k)
    chi2 += (counts[k] - expected[k]) * (counts[k] - expected[k]) / expected[k];
  CHECK(chi2 < teststat::chi2_critical(bins - 1, 0.999));

  CHECK(dist.density_value({0.0, 0.0, 1.0}) == doctest::Approx((1.0 + beta) / (1.0 + beta / 3.0)));
  CHECK(dist.density_value({1.0, 0.0, 0.0}) == doctest::Approx(1.0 / (1.0 + beta / 3.0)));
}

TEST_CASE("integrate_even is exact for atomic phi") {
  const auto dist = square_atoms();
  const auto r = dist.integrate_even([](const Vec& u) { return std::fabs(u[0]) + 2.0 * u[1] * u[1]; });
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5 * 1.0 + 0.5 * 2.0).epsilon(1e-12));
  CHECK(r.error <= 1e-12);
}

TEST_CASE("integrate_even normalization and first moments") {
  // int 1 dphi = 1 for every kind; int |<u,e>| dphi_iso = 2/pi (d=2), 1/2 (d=3).
  const auto one = [](const Vec&) { return 1.0; };
  for (int d : {2, 3}) {
    const auto iso = DirectionalDistribution::isotropic(d);
    const auto n = iso.integrate_even(one);
    CHECK(n.converged);
    CHECK(n.value == doctest::Approx(1.0).epsilon(1e-9));
    const auto m = iso.integrate_even([](const Vec& u) { return std::fabs(u[0]); });
    const double exact = d == 2 ? 2.0 / kPi : 0.5;
    CHECK(m.value == doctest::Approx(exact).epsilon(1e-7));
    const auto sq = iso.integrate_even([d](const Vec& u) { return u[0] * u[0]; });
    CHECK(sq.value == doctest::Approx(1.0 / d).epsilon(1e-9));
  }
  const auto ax = DirectionalDistribution::axial_density(3, {0.0, 1.0, 0.0}, 2.5);
  CHECK(ax.integrate_even(one).value == doctest::Approx(1.0).epsilon(1e-9));
  // E t^2 under rho with t = <u,axis>: uniform moments E t^2 = 1/3, E t^4 = 1/5,
  // so the value is (1/3 + beta/5) / (1 + beta/3).
  const auto m2 = ax.integrate_even([](const Vec& u) { return u[1] * u[1]; });
  CHECK(m2.value == doctest::Approx((1.0 / 3.0 + 2.5 / 5.0) / (1.0 + 2.5 / 3.0)).epsilon(1e-8));
}

TEST_CASE("integrate_even in d>=4 reports a Monte Carlo error") {
  const auto iso = DirectionalDistribution::isotropic(4);
  const auto r = iso.integrate_even([](const Vec& u) { return u[0] * u[0]; });
  CHECK(r.error > 0.0);
  CHECK(std::fabs(r.value - 0.25) < 5.0 * r.error);
}

TEST_CASE("hitting mean of a ball is 2 gamma r for every phi") {
  const ProcessIntensity gam(1.7);
  const auto support = hyptess::ball_support(1.0);
  for (const auto& dist :
       {DirectionalDistribution::isotropic(2), DirectionalDistribution::isotropic(3),
        square_atoms(), DirectionalDistribution::axial_density(3, {1.0, 1.0, 1.0}, 3.0)}) {
    const auto r = hyptess::hitting_mean(dist, gam, support);
    CHECK(r.value == doctest::Approx(2.0 * 1.7).epsilon(1e-8));
  }
  const auto r2 = hyptess::hitting_mean(DirectionalDistribution::isotropic(2), gam,
                                        hyptess::ball_support(2.5));
  CHECK(r2.value == doctest::Approx(2.0 * 1.7 * 2.5).epsilon(1e-8));
}

TEST_CASE("hitting mean of the square under atomic phi") {
  // h(+-e1) + h(-+e1) = 2 and same for e2, so Theta = gamma*(0.5*2 + 0.5*2).
  const auto sq = hyptess::polytope_support({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  const auto r = hyptess::hitting_mean(square_atoms(), ProcessIntensity(1.0), sq);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  const auto r3 = hyptess::hitting_mean(square_atoms(), ProcessIntensity(3.0), sq);
  CHECK(r3.value == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("hitting mean of a segment against Monte Carlo") {
  const Vec a = {0.3, -0.7, 0.5};
  const auto dist = DirectionalDistribution::axial_density(3, {1.0, 2.0, 2.0}, 3.0);
  const double gamma = 0.8;
  const auto quad = hyptess::hitting_mean(dist, ProcessIntensity(gamma),
                                          hyptess::polytope_support({a, hyptess::scaled(a, -1.0)}));
  const auto mc = oracle::segment_hit_mc(dist, gamma, 2.0, a, 2000000, 777);
  CHECK(std::fabs(quad.value - mc.value) < 3.0 * mc.se + quad.error);

  const auto iso = DirectionalDistribution::isotropic(2);
  const Vec b = {1.2, -0.4};
  const auto quad2 = hyptess::hitting_mean(iso, ProcessIntensity(1.0),
                                           hyptess::polytope_support({b, hyptess::scaled(b, -1.0)}));
  // Closed form for isotropic d=2: 2 gamma |b| * 2/pi.
  CHECK(quad2.value == doctest::Approx(2.0 * hyptess::norm(b) * 2.0 / kPi).epsilon(1e-7));
  const auto mc2 = oracle::segment_hit_mc(iso, 1.0, 2.0, b, 2000000, 778);
  CHECK(std::fabs(quad2.value - mc2.value) < 3.0 * mc2.se + quad2.error);
}

TEST_CASE("hitting mean is monotone under inclusion") {
  hyptess::Rng rng(46, 90);
  const auto dist = DirectionalDistribution::axial_density(3, {0.0, 0.0, 1.0}, 1.5);
  const ProcessIntensity gam(1.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Vec> big;
    for (int i = 0; i < 12; ++i)
      big.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const std::vector<Vec> small(big.begin(), big.begin() + 5);
    const auto lo = hyptess::hitting_mean(dist, gam, hyptess::polytope_support(small));
    const auto hi = hyptess::hitting_mean(dist, gam, hyptess::polytope_support(big));
    CHECK(lo.value <= hi.value + 1e-9);
  }
}

TEST_CASE("ball volume") {
  CHECK(hyptess::ball_volume(1, 2.0) == doctest::Approx(4.0));
  CHECK(hyptess::ball_volume(2, 1.0) == doctest::Approx(kPi));
  CHECK(hyptess::ball_volume(2, 3.0) == doctest::Approx(9.0 * kPi));
  CHECK(hyptess::ball_volume(3, 1.0) == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(hyptess::ball_volume(4, 1.0) == doctest::Approx(kPi * kPi / 2.0));
}
