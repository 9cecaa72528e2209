#include "hyptess/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hyptess/constants.hpp"
#include "hyptess/linalg.hpp"

namespace hyptess {

ProcessSample sample_process(const DirectionalDistribution& dist, const ProcessIntensity& intensity,
                             double window_radius, std::uint64_t seed) {
  if (!(window_radius > 0.0)) throw std::invalid_argument("window radius must be > 0");
  const double mean = 2.0 * intensity.gamma * window_radius;
  if (mean > 700.0) throw std::invalid_argument("2*gamma*R too large for the Poisson sampler");

  ProcessSample s;
  s.dim = dist.dim();
  s.window_radius = window_radius;
  s.gamma = intensity.gamma;
  s.seed = seed;
  s.dist_tag = dist.tag();

  Rng rng(seed, stream::kProcessSample);
  const int n = rng.poisson(mean);
  s.hyperplanes.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec u = dist.sample_direction(rng);
    const double tau = rng.uniform(-window_radius, window_radius);
    s.hyperplanes.push_back(Hyperplane::make(std::move(u), tau, i));
  }
  return s;
}

ProcessSample restrict_sample(const ProcessSample& sample, double radius) {
  if (!(radius > 0.0) || radius > sample.window_radius)
    throw std::invalid_argument("restriction radius must be in (0, R]");
  ProcessSample out = sample;
  out.window_radius = radius;
  out.hyperplanes.clear();
  for (const Hyperplane& h : sample.hyperplanes)
    if (std::fabs(h.tau) <= radius) out.hyperplanes.push_back(h);
  return out;
}

GeneralPositionReport general_position_report(const ProcessSample& sample, double tol) {
  GeneralPositionReport rep;
  const auto& hs = sample.hyperplanes;
  const int n = static_cast<int>(hs.size());
  const int d = sample.dim;

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = std::fabs(dot(hs[i].u, hs[j].u));
      if (a > 1.0 - tol) rep.parallel_pairs.push_back({hs[i].id, hs[j].id, a});
    }

  // (c) d normals near linear dependence, via |det| of the normal matrix.
  // For d=2 this coincides with (a) up to the tolerance convention.
  std::vector<int> idx(d);
  std::vector<double> mat(d * d), rhs(d);
  auto check_dependence = [&](auto&& self, int start, int depth) -> void {
    if (depth == d) {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) mat[r * d + c] = hs[idx[r]].u[c];
      const double det = det_dense(mat.data(), d);
      if (std::fabs(det) < tol) {
        GeneralPositionReport::DependentNormals v;
        for (int r = 0; r < d; ++r) v.ids.push_back(hs[idx[r]].id);
        v.abs_det = std::fabs(det);
        rep.dependent_normals.push_back(std::move(v));
      }
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (n >= d) check_dependence(check_dependence, 0, 0);

  // (b) d+1 hyperplanes near a common point: intersect each independent
  // d-subset, then test every other hyperplane against the meet point. A
  // concurrent (d+1)-set is found once per contained d-subset; ids are kept
  // sorted and deduplicated so each set is reported once.
  std::set<std::vector<std::int64_t>> seen;
  auto check_concurrence = [&](auto&& self, int start, int depth) -> void {
    if (depth == d) {
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) mat[r * d + c] = hs[idx[r]].u[c];
        rhs[r] = hs[idx[r]].tau;
      }
      Vec x(rhs.begin(), rhs.end());
      std::vector<double> m(mat);
      if (!solve_dense(m.data(), x.data(), d)) return;  // dependent subset, class (c)
      for (int k = 0; k < n; ++k) {
        bool in_subset = false;
        for (int r = 0; r < d; ++r)
          if (idx[r] == k) in_subset = true;
        if (in_subset) continue;
        const double resid = hs[k].dist(x);
        if (resid < tol * (1.0 + norm(x))) {
          GeneralPositionReport::Concurrence v;
          for (int r = 0; r < d; ++r) v.ids.push_back(hs[idx[r]].id);
          v.ids.push_back(hs[k].id);
          std::sort(v.ids.begin(), v.ids.end());
          v.residual = resid;
          if (seen.insert(v.ids).second) rep.concurrences.push_back(std::move(v));
        }
      }
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  if (n >= d + 1) check_concurrence(check_concurrence, 0, 0);

  return rep;
}

namespace {
using nlohmann::json;
}

std::string to_jsonl(const ProcessSample& sample) {
  std::ostringstream out;
  json header;
  header["kind"] = "hyptess-sample";
  header["dim"] = sample.dim;
  header["window_radius"] = sample.window_radius;
  header["gamma"] = sample.gamma;
  header["seed"] = sample.seed;
  header["dist"] = sample.dist_tag;
  header["count"] = sample.hyperplanes.size();
  out << header.dump() << "\n";
  for (const Hyperplane& h : sample.hyperplanes) {
    json line;
    line["id"] = h.id;
    line["u"] = h.u;
    line["tau"] = h.tau;
    out << line.dump() << "\n";
  }
  return out.str();
}

ProcessSample sample_from_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sample stream");
  json header = json::parse(line);
  if (header.value("kind", "") != "hyptess-sample")
    throw std::runtime_error("not a hyptess sample stream");
  ProcessSample s;
  s.dim = header.at("dim").get<int>();
  s.window_radius = header.at("window_radius").get<double>();
  s.gamma = header.at("gamma").get<double>();
  s.seed = header.at("seed").get<std::uint64_t>();
  s.dist_tag = header.at("dist").get<std::string>();
  const std::size_t count = header.at("count").get<std::size_t>();
  s.hyperplanes.reserve(count);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    Hyperplane h;
    h.id = j.at("id").get<std::int64_t>();
    h.u = j.at("u").get<Vec>();
    h.tau = j.at("tau").get<double>();
    s.hyperplanes.push_back(std::move(h));
  }
  if (s.hyperplanes.size() != count) throw std::runtime_error("truncated sample stream");
  return s;
}

}  // namespace hyptess
