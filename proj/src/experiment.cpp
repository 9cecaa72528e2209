#include "hyptess/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hyptess/parallel.hpp"
#include "hyptess/sampler.hpp"
#include "hyptess/svg.hpp"
#include "nlohmann/json.hpp"

namespace hyptess {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Vec parse_vec(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + " must be a number array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(what) + " must be a number array");
    v.push_back(x.get<double>());
  }
  return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError(std::string("unknown key \"") + it.key() + "\" in " + where);
  }
}

}  // namespace

DirectionalDistribution DistributionSpec::build(int dim) const {
  if (variant == "isotropic") return DirectionalDistribution::isotropic(dim);
  if (variant == "atomic") {
    try {
      return DirectionalDistribution::atomic(dim, pairs);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (variant == "density") {
    Vec a = axis;
    if (a.empty()) {
      a.assign(dim, 0.0);
      a[0] = 1.0;
    }
    try {
      return DirectionalDistribution::axial_density(dim, a, beta);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown distribution variant \"" + variant + "\"");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(root,
                      {"dim", "gamma", "distribution", "window_radius", "radius_ladder", "seeds",
                       "targets", "out_dir", "threads", "svg", "certificate_draws",
                       "sandwich_points"},
                      "config");

  ExperimentConfig c;
  if (root.contains("dim")) {
    if (!root["dim"].is_number_integer()) throw ConfigError("dim must be an integer");
    c.dim = root["dim"].get<int>();
  }
  if (c.dim < 2 || c.dim > kMaxDim)
    throw ConfigError("dim must be between 2 and " + std::to_string(kMaxDim));

  if (root.contains("gamma")) {
    if (!root["gamma"].is_number()) throw ConfigError("gamma must be a number");
    c.gamma = root["gamma"].get<double>();
  }
  if (!(c.gamma > 0.0)) throw ConfigError("gamma must be positive");

  if (root.contains("distribution")) {
    const json& d = root["distribution"];
    if (!d.is_object()) throw ConfigError("distribution must be an object");
    reject_unknown_keys(d, {"variant", "pairs", "axis", "beta"}, "distribution");
    if (d.contains("variant")) c.distribution.variant = d["variant"].get<std::string>();
    if (d.contains("pairs")) {
      if (!d["pairs"].is_array()) throw ConfigError("distribution.pairs must be an array");
      for (const auto& p : d["pairs"]) {
        if (!p.is_object()) throw ConfigError("each atom pair must be an object");
        reject_unknown_keys(p, {"dir", "weight"}, "distribution.pairs[]");
        if (!p.contains("dir") || !p.contains("weight"))
          throw ConfigError("each atom pair needs dir and weight");
        DirectionalDistribution::AtomPair ap;
        ap.dir = parse_vec(p["dir"], "atom dir");
        ap.weight = p["weight"].get<double>();
        c.distribution.pairs.push_back(std::move(ap));
      }
    }
    if (d.contains("axis")) c.distribution.axis = parse_vec(d["axis"], "distribution.axis");
    if (d.contains("beta")) c.distribution.beta = d["beta"].get<double>();
  }
  (void)c.distribution.build(c.dim);  // validate eagerly

  if (!root.contains("window_radius") || !root["window_radius"].is_number())
    throw ConfigError("window_radius (number) is required");
  c.window_radius = root["window_radius"].get<double>();
  if (!(c.window_radius > 0.0)) throw ConfigError("window_radius must be positive");
  if (2.0 * c.gamma * c.window_radius > 700.0)
    throw ConfigError("2 * gamma * window_radius too large for the Poisson sampler");

  if (root.contains("radius_ladder")) {
    if (!root["radius_ladder"].is_array()) throw ConfigError("radius_ladder must be an array");
    double prev = 0.0;
    for (const auto& x : root["radius_ladder"]) {
      if (!x.is_number()) throw ConfigError("radius_ladder entries must be numbers");
      const double n = x.get<double>();
      if (!(n > prev)) throw ConfigError("radius_ladder must be strictly increasing and positive");
      prev = n;
      c.radius_ladder.push_back(n);
    }
    if (c.radius_ladder.back() >= c.window_radius)
      throw ConfigError("radius_ladder must stay below window_radius");
  }

  if (root.contains("seeds")) {
    const json& s = root["seeds"];
    if (s.is_array()) {
      for (const auto& x : s) {
        if (!x.is_number_unsigned() && !x.is_number_integer())
          throw ConfigError("seeds must be non-negative integers");
        const auto v = x.get<std::int64_t>();
        if (v < 0) throw ConfigError("seeds must be non-negative integers");
        c.seeds.push_back(static_cast<std::uint64_t>(v));
      }
    } else if (s.is_object()) {
      reject_unknown_keys(s, {"start", "count"}, "seeds");
      if (!s.contains("start") || !s.contains("count"))
        throw ConfigError("seeds object needs start and count");
      const auto start = s["start"].get<std::int64_t>();
      const auto count = s["count"].get<std::int64_t>();
      if (start < 0 || count < 1) throw ConfigError("seeds start/count out of range");
      for (std::int64_t i = 0; i < count; ++i)
        c.seeds.push_back(static_cast<std::uint64_t>(start + i));
    } else {
      throw ConfigError("seeds must be an array or {start, count}");
    }
  } else {
    c.seeds = {1};
  }

  if (root.contains("targets")) {
    if (!root["targets"].is_array()) throw ConfigError("targets must be an array");
    for (const auto& t : root["targets"]) {
      if (!t.is_object()) throw ConfigError("each target must be an object");
      reject_unknown_keys(t, {"name", "vertices", "scale", "eps", "D", "trials", "gamma"},
                          "targets[]");
      TargetConfig tc;
      if (t.contains("name")) tc.name = t["name"].get<std::string>();
      if (t.contains("vertices")) {
        for (const auto& v : t["vertices"]) tc.vertices.push_back(parse_vec(v, "target vertex"));
      }
      if (tc.name.empty() && tc.vertices.empty())
        throw ConfigError("target needs a name or explicit vertices");
      if (t.contains("scale")) tc.scale = t["scale"].get<double>();
      if (!(tc.scale > 0.0)) throw ConfigError("target scale must be positive");
      if (!t.contains("eps") || !t["eps"].is_number())
        throw ConfigError("target eps (number) is required");
      tc.eps = t["eps"].get<double>();
      if (!(tc.eps > 0.0 && tc.eps <= 1.0)) throw ConfigError("target eps must be in (0, 1]");
      if (t.contains("D")) tc.D = t["D"].get<double>();
      if (t.contains("trials")) {
        tc.trials = t["trials"].get<long>();
        if (tc.trials < 0) throw ConfigError("target trials must be >= 0");
      }
      if (t.contains("gamma")) {
        tc.gamma = t["gamma"].get<double>();
        if (!(*tc.gamma > 0.0)) throw ConfigError("target gamma must be positive");
      }
      c.targets.push_back(std::move(tc));
    }
  }

  if (root.contains("out_dir")) c.out_dir = root["out_dir"].get<std::string>();
  if (root.contains("threads")) {
    c.threads = root["threads"].get<int>();
    if (c.threads < 1 || c.threads > 256) throw ConfigError("threads must be in [1, 256]");
  }
  if (root.contains("svg")) c.svg = root["svg"].get<bool>();
  if (root.contains("certificate_draws")) {
    c.certificate_draws = root["certificate_draws"].get<int>();
    if (c.certificate_draws < 1) throw ConfigError("certificate_draws must be >= 1");
  }
  if (root.contains("sandwich_points")) {
    c.sandwich_points = root["sandwich_points"].get<int>();
    if (c.sandwich_points < 100) throw ConfigError("sandwich_points must be >= 100");
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["dim"] = c.dim;
  j["gamma"] = c.gamma;
  json d;
  d["variant"] = c.distribution.variant;
  if (!c.distribution.pairs.empty()) {
    json arr = json::array();
    for (const auto& p : c.distribution.pairs)
      arr.push_back(json{{"dir", p.dir}, {"weight", p.weight}});
    d["pairs"] = arr;
  }
  if (!c.distribution.axis.empty()) d["axis"] = c.distribution.axis;
  if (c.distribution.variant == "density") d["beta"] = c.distribution.beta;
  j["distribution"] = d;
  j["window_radius"] = c.window_radius;
  j["radius_ladder"] = c.radius_ladder;
  j["seeds"] = c.seeds;
  if (!c.targets.empty()) {
    json arr = json::array();
    for (const auto& t : c.targets) {
      json tj;
      tj["name"] = t.name;
      if (!t.vertices.empty()) tj["vertices"] = t.vertices;
      tj["scale"] = t.scale;
      tj["eps"] = t.eps;
      if (t.D) tj["D"] = *t.D;
      tj["trials"] = t.trials;
      if (t.gamma) tj["gamma"] = *t.gamma;
      arr.push_back(tj);
    }
    j["targets"] = arr;
  }
  // threads is a run-environment knob, not experiment identity; leaving it
  // out keeps summaries byte-identical across thread counts.
  j["out_dir"] = c.out_dir;
  j["svg"] = c.svg;
  j["certificate_draws"] = c.certificate_draws;
  j["sandwich_points"] = c.sandwich_points;
  return j;
}

void write_file(const std::string& path, const std::string& bytes,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InternalError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  written.push_back(path);
}

// RFC 4180: CRLF line endings, no quoting needed for our field set.
void append_census_rows(std::string& csv, const std::string& seed_label, const TypeCensus& cs) {
  for (const auto& row : cs.rows) {
    for (std::size_t i = 0; i < cs.radii.size(); ++i) {
      const double vol = cs.window_volume(static_cast<int>(i));
      csv += seed_label;
      csv += ',';
      csv += g17(cs.radii[i]);
      csv += ',';
      csv += hex_encode(row.fp.bytes);
      csv += ',';
      csv += row.name.value_or("");
      csv += ',';
      csv += std::to_string(row.count_contained[i]);
      csv += ',';
      csv += std::to_string(row.count_centered[i]);
      csv += ',';
      csv += g17(row.count_contained[i] / vol);
      csv += ',';
      csv += g17(row.count_centered[i] / vol);
      csv += "\r\n";
    }
  }
}

constexpr const char* kCensusHeader =
    "seed,n,fingerprint,name,count_contained,count_centered,density_contained,"
    "density_centered\r\n";

TargetSpec build_target_spec(const ExperimentConfig& c, const TargetConfig& t) {
  try {
    if (!t.vertices.empty()) {
      std::vector<Vec> vs = t.vertices;
      for (Vec& v : vs)
        for (double& x : v) x *= t.scale;
      return make_target(t.name.empty() ? "custom" : t.name, c.dim, std::move(vs), t.eps, t.D);
    }
    std::optional<ReferencePolytope> ref = reference_by_name(t.name, c.dim);
    if (!ref) throw ConfigError("unknown target polytope \"" + t.name + "\"");
    if (ref->dim != c.dim)
      throw ConfigError("target \"" + t.name + "\" is " + std::to_string(ref->dim) +
                        "-dimensional but the experiment dim is " + std::to_string(c.dim));
    std::vector<Vec> vs = ref->vertices;
    for (Vec& v : vs)
      for (double& x : v) x *= t.scale;
    // keep the name the config asked for, so outputs correlate with the input
    return make_target(t.name, ref->dim, std::move(vs), t.eps, t.D);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("target \"") + t.name + "\": " + e.what());
  }
}

}  // namespace

std::string config_json(const ExperimentConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

CensusRunResult run_census_experiment(const ExperimentConfig& config) {
  if (config.radius_ladder.empty()) throw ConfigError("census needs a radius_ladder");
  if (config.seeds.empty()) throw ConfigError("census needs at least one seed");
  const DirectionalDistribution dist = config.distribution.build(config.dim);
  const ProcessIntensity intensity{config.gamma};

  struct SeedOutcome {
    bool ok = false;
    TypeCensus cs;
    std::string err;
  };
  const std::size_t ns = config.seeds.size();
  std::vector<SeedOutcome> outcomes = parallel_map<SeedOutcome>(
      ns, config.threads,
      [&](std::size_t i) {
        SeedOutcome o;
        try {
          ProcessSample sample =
              sample_process(dist, intensity, config.window_radius, config.seeds[i]);
          std::vector<CellPolytope> cells = extract_cells(sample, config.window_radius, 1);
          std::vector<CellSummary> sums = summarize_cells(cells);
          o.cs = census(sums, config.radius_ladder, config.window_radius);
          o.ok = true;
        } catch (const std::exception& e) {
          o.err = e.what();
        }
        return o;
      });

  CensusRunResult result;
  std::vector<TypeCensus> parts;
  for (std::size_t i = 0; i < ns; ++i) {
    if (outcomes[i].ok) {
      result.seeds_ok.push_back(config.seeds[i]);
      parts.push_back(outcomes[i].cs);
    } else {
      result.failures.push_back({config.seeds[i], outcomes[i].err});
    }
  }
  if (parts.empty()) throw InternalError("every seed failed: " + result.failures.front().what);
  result.aggregate = merge_census(parts);

  std::filesystem::create_directories(config.out_dir);
  const std::string dir = config.out_dir + "/";

  {
    std::size_t pi = 0;
    for (std::size_t i = 0; i < ns; ++i) {
      if (!outcomes[i].ok) continue;
      std::string csv = kCensusHeader;
      append_census_rows(csv, std::to_string(config.seeds[i]), parts[pi++]);
      write_file(dir + "census_seed_" + std::to_string(config.seeds[i]) + ".csv", csv,
                 result.files_written);
    }
    std::string csv = kCensusHeader;
    append_census_rows(csv, "aggregate", result.aggregate);
    write_file(dir + "census_aggregate.csv", csv, result.files_written);
  }

  {
    json s;
    s["kind"] = "hyptess-census-summary";
    s["config"] = config_to_json(config);
    s["hypotheses"] = {{"full_support", dist.supports_full_sphere()},
                       {"vanishes_on_great_subspheres", dist.vanishes_on_great_subspheres()},
                       {"violated", !(dist.supports_full_sphere() &&
                                      dist.vanishes_on_great_subspheres())}};
    s["seeds_ok"] = result.seeds_ok;
    json fails = json::array();
    for (const auto& f : result.failures)
      fails.push_back(json{{"seed", f.seed}, {"error", f.what}});
    s["seed_failures"] = fails;
    s["margin"] = result.aggregate.margin;
    s["valid_radius"] = result.aggregate.valid_radius;
    s["radii"] = result.aggregate.radii;
    const int last = static_cast<int>(result.aggregate.radii.size()) - 1;
    s["totals"] = {{"centered", result.aggregate.total_centered},
                   {"contained", result.aggregate.total_contained}};
    const double mvc = result.aggregate.mean_vertex_count(last);
    s["mean_vertex_count_at_max_n"] = std::isnan(mvc) ? json(nullptr) : json(mvc);
    json types = json::array();
    for (const auto& row : result.aggregate.rows) {
      DensityCurve curve = density_curve(result.aggregate, row.fp);
      json tj;
      tj["fingerprint"] = hex_encode(row.fp.bytes);
      tj["name"] = row.name ? json(*row.name) : json(nullptr);
      tj["facets"] = row.fp.facet_count;
      tj["vertices"] = row.fp.vertex_count;
      tj["count_centered"] = row.count_centered;
      tj["count_contained"] = row.count_contained;
      tj["density_centered"] = curve.density_centered;
      tj["density_contained"] = curve.density_contained;
      tj["positive_density"] = row.count_centered[last] > 0;
      tj["tail_rel_variation_centered"] = std::isnan(curve.tail_rel_variation_centered)
                                              ? json(nullptr)
                                              : json(curve.tail_rel_variation_centered);
      types.push_back(tj);
    }
    s["types"] = types;
    write_file(dir + "summary.json", s.dump(2) + "\n", result.files_written);
  }

  if (config.svg && config.dim == 2 && !result.seeds_ok.empty()) {
    ProcessSample sample =
        sample_process(dist, intensity, config.window_radius, result.seeds_ok.front());
    std::vector<CellPolytope> cells = extract_cells(sample, config.window_radius, 1);
    write_file(dir + "tessellation_seed_" + std::to_string(result.seeds_ok.front()) + ".svg",
               render_svg(cells, config.window_radius), result.files_written);
  }
  return result;
}

EventRunResult run_event_experiment(const ExperimentConfig& config) {
  if (config.targets.empty()) throw ConfigError("event experiment needs targets");
  const DirectionalDistribution dist = config.distribution.build(config.dim);
  const std::uint64_t base_seed = config.seeds.empty() ? 1 : config.seeds.front();

  EventRunResult result;
  std::filesystem::create_directories(config.out_dir);
  const std::string dir = config.out_dir + "/";

  json certs = json::array();
  for (std::size_t ti = 0; ti < config.targets.size(); ++ti) {
    const TargetConfig& tc = config.targets[ti];
    TargetSpec spec = build_target_spec(config, tc);
    Certificate cert = certify_epsilon0(spec, config.certificate_draws, base_seed);
    certs.push_back(json::parse(cert.to_json()));
    if (!cert.granted) {
      write_file(dir + "certificates.json", certs.dump(2) + "\n", result.files_written);
      std::ostringstream os;
      os << "certificate refused for target \"" << spec.name << "\"";
      if (cert.failing_pair)
        os << ": A_" << cert.failing_pair->first << " and A_" << cert.failing_pair->second
           << " overlap (width <= 2 eps)";
      else if (cert.failure)
        os << ": draw " << cert.failure->draw_index << " failed the " << cert.failure->which
           << " bullet: " << cert.failure->detail;
      throw CertificationRefused(os.str());
    }

    const ProcessIntensity intensity{tc.gamma.value_or(config.gamma)};
    TargetEventResult tr;
    tr.name = spec.name;
    tr.certificate = cert;
    tr.analytic = event_probability(spec, dist, intensity, cert);
    tr.trials = tc.trials;

    if (tc.trials > 0) {
      const double rt = spec.circumradius + 1.0 + spec.eps;
      struct TrialOutcome {
        bool occurred = false;
        bool bullets_pass = false;
        std::string err;
      };
      const std::uint64_t target_base = base_seed + (ti + 1) * 10000019ULL;
      std::vector<TrialOutcome> trials = parallel_map<TrialOutcome>(
          static_cast<std::size_t>(tc.trials), config.threads,
          [&](std::size_t k) {
            TrialOutcome o;
            ProcessSample s = sample_process(dist, intensity, rt, target_base + k);
            EventClassification cls = classify_event(s, spec);
            o.occurred = cls.occurred;
            if (cls.occurred) {
              try {
                o.bullets_pass = verify_bullet_on_event(s, spec).pass;
              } catch (const DegenerateSampleError&) {
                // extraction refused the sample; the direct reconstruction
                // still decides the bullets
                std::vector<Hyperplane> planes;
                for (const auto& ids : cls.aj_ids)
                  for (const Hyperplane& h : s.hyperplanes)
                    if (h.id == ids.front()) planes.push_back(h);
                o.bullets_pass = verify_bullets(planes, spec).pass;
              } catch (const std::exception& e) {
                o.bullets_pass = false;
                o.err = e.what();
              }
            }
            return o;
          });
      long occ = 0, bullet_pass = 0;
      for (const auto& t : trials) {
        if (t.occurred) {
          ++occ;
          if (t.bullets_pass) ++bullet_pass;
        }
      }
      tr.occurrences = occ;
      tr.bullet_failures = occ - bullet_pass;
      tr.bullets_pass_rate = occ == 0 ? 1.0 : static_cast<double>(bullet_pass) / occ;
      tr.mc_freq = static_cast<double>(occ) / static_cast<double>(tc.trials);
      const double p0 = tr.analytic.value;
      const double se =
          std::sqrt(std::max(p0 * (1.0 - p0), 0.0) / static_cast<double>(tc.trials)) +
          tr.analytic.error;
      tr.ci_lo = tr.mc_freq - 3.0 * se;
      tr.ci_hi = tr.mc_freq + 3.0 * se;
      tr.agree_3sigma = tr.ci_lo <= p0 && p0 <= tr.ci_hi;
    }
    result.targets.push_back(std::move(tr));
  }

  write_file(dir + "certificates.json", certs.dump(2) + "\n", result.files_written);

  json blocks = json::array();
  for (const TargetEventResult& tr : result.targets) {
    json b;
    b["name"] = tr.name;
    b["certificate"] = json::parse(tr.certificate.to_json());
    b["analytic"] = {{"value", tr.analytic.value},
                     {"error", tr.analytic.error},
                     {"theta_aj", tr.analytic.theta_aj},
                     {"theta_c", tr.analytic.theta_c},
                     {"converged", tr.analytic.converged}};
    b["density_lower_bound"] =
        tr.analytic.value / ball_volume(tr.certificate.dim, 1.0);
    b["trials"] = tr.trials;
    if (tr.trials > 0) {
      b["occurrences"] = tr.occurrences;
      b["mc_freq"] = tr.mc_freq;
      b["ci"] = {tr.ci_lo, tr.ci_hi};
      b["agree_3sigma"] = tr.agree_3sigma;
      b["bullets"] = {{"pass_rate", tr.bullets_pass_rate}, {"failures", tr.bullet_failures}};
    } else {
      b["occurrences"] = nullptr;
      b["mc_freq"] = nullptr;
      b["ci"] = nullptr;
      b["agree_3sigma"] = nullptr;
      b["bullets"] = nullptr;
    }
    blocks.push_back(b);
  }
  json top;
  top["kind"] = "hyptess-event-summary";
  top["config"] = config_to_json(config);
  top["targets"] = blocks;
  write_file(dir + "events.json", top.dump(2) + "\n", result.files_written);
  return result;
}

std::vector<Certificate> run_certify(const ExperimentConfig& config) {
  if (config.targets.empty()) throw ConfigError("certify needs targets");
  const std::uint64_t base_seed = config.seeds.empty() ? 1 : config.seeds.front();
  std::vector<Certificate> certs;
  std::string refusal;
  for (const TargetConfig& tc : config.targets) {
    TargetSpec spec = build_target_spec(config, tc);
    Certificate cert = certify_epsilon0(spec, config.certificate_draws, base_seed);
    if (!cert.granted && refusal.empty()) {
      std::ostringstream os;
      os << "certificate refused for target \"" << spec.name << "\"";
      if (cert.failing_pair)
        os << ": A_" << cert.failing_pair->first << " and A_" << cert.failing_pair->second
           << " overlap";
      else if (cert.failure)
        os << ": draw " << cert.failure->draw_index << " failed " << cert.failure->which;
      refusal = os.str();
    }
    certs.push_back(std::move(cert));
  }
  std::filesystem::create_directories(config.out_dir);
  json arr = json::array();
  for (const Certificate& c : certs) arr.push_back(json::parse(c.to_json()));
  std::vector<std::string> written;
  write_file(config.out_dir + "/certificates.json", arr.dump(2) + "\n", written);
  if (!refusal.empty()) throw CertificationRefused(refusal);
  return certs;
}

std::string run_render(const ExperimentConfig& config) {
  if (config.dim != 2) throw ConfigError("render supports d = 2 only");
  if (config.seeds.empty()) throw ConfigError("render needs a seed");
  const DirectionalDistribution dist = config.distribution.build(config.dim);
  ProcessSample sample = sample_process(dist, ProcessIntensity{config.gamma},
                                        config.window_radius, config.seeds.front());
  std::vector<CellPolytope> cells = extract_cells(sample, config.window_radius, 1);
  return render_svg(cells, config.window_radius);
}

}  // namespace hyptess
