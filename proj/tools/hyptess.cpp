#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hyptess/combinatorics.hpp"
#include "hyptess/experiment.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long replicates = 0;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonOpts& o, bool config_required = true) {
  auto* cfg = sub->add_option("--config", o.config_path, "experiment config (JSON)");
  if (config_required) cfg->required();
  sub->add_option("--out", o.out_dir, "output directory (overrides config)");
  sub->add_option("--seed", o.seed, "base seed (overrides config seed list)")
      ->each([&](const std::string&) { o.seed_set = true; });
  sub->add_option("--replicates", o.replicates, "number of consecutive seeds from the base")
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", o.threads, "worker threads (results identical for any N)")
      ->check(CLI::Range(1, 256));
}

hyptess::ExperimentConfig load_with_overrides(const CommonOpts& o) {
  hyptess::ExperimentConfig cfg = hyptess::load_config_file(o.config_path);
  if (o.seed_set || o.replicates > 0) {
    const std::uint64_t base =
        o.seed_set ? o.seed : (cfg.seeds.empty() ? 1 : cfg.seeds.front());
    const long count = o.replicates > 0 ? o.replicates : 1;
    cfg.seeds.clear();
    for (long i = 0; i < count; ++i) cfg.seeds.push_back(base + static_cast<std::uint64_t>(i));
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.threads > 0) cfg.threads = o.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary Poisson hyperplane tessellations: census, events, certificates"};
  app.require_subcommand(1);

  CommonOpts census_o, event_o, certify_o, render_o;
  std::string catalog_out;

  CLI::App* census = app.add_subcommand("census", "type census over seeded windows");
  add_common(census, census_o);
  CLI::App* event = app.add_subcommand("event", "E(P,eps) Monte Carlo vs analytic probability");
  add_common(event, event_o);
  CLI::App* certify = app.add_subcommand("certify", "grant or refuse eps certificates");
  add_common(certify, certify_o);
  CLI::App* render = app.add_subcommand("render", "SVG of the d=2 tessellation");
  add_common(render, render_o);
  CLI::App* catalog = app.add_subcommand("catalog", "dump the reference type catalog");
  catalog->add_option("--out", catalog_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (census->parsed()) {
      hyptess::ExperimentConfig cfg = load_with_overrides(census_o);
      hyptess::CensusRunResult r = hyptess::run_census_experiment(cfg);
      std::cout << "census: " << r.seeds_ok.size() << " seeds ok, " << r.failures.size()
                << " failed, " << r.aggregate.rows.size() << " types, wrote "
                << r.files_written.size() << " files to " << cfg.out_dir << "\n";
      for (const auto& f : r.failures)
        std::cerr << "seed " << f.seed << " failed: " << f.what << "\n";
    } else if (event->parsed()) {
      hyptess::ExperimentConfig cfg = load_with_overrides(event_o);
      hyptess::EventRunResult r = hyptess::run_event_experiment(cfg);
      for (const auto& t : r.targets) {
        std::cout << "event " << t.name << ": analytic " << t.analytic.value;
        if (t.trials > 0)
          std::cout << ", mc " << t.mc_freq << " (" << t.occurrences << "/" << t.trials
                    << "), bullets pass rate " << t.bullets_pass_rate;
        std::cout << "\n";
      }
    } else if (certify->parsed()) {
      hyptess::ExperimentConfig cfg = load_with_overrides(certify_o);
      std::vector<hyptess::Certificate> certs = hyptess::run_certify(cfg);
      for (const auto& c : certs)
        std::cout << "certify " << c.target_name << ": " << (c.granted ? "granted" : "refused")
                  << "\n";
    } else if (render->parsed()) {
      hyptess::ExperimentConfig cfg = load_with_overrides(render_o);
      const std::string svg = hyptess::run_render(cfg);
      std::filesystem::create_directories(cfg.out_dir);
      const std::string path = cfg.out_dir + "/tessellation.svg";
      std::ofstream out(path, std::ios::binary);
      out << svg;
      std::cout << "render: wrote " << path << "\n";
    } else if (catalog->parsed()) {
      const std::string doc = hyptess::catalog_json();
      if (catalog_out.empty()) {
        std::cout << doc;
      } else {
        if (catalog_out.find('/') != std::string::npos)
          std::filesystem::create_directories(
              std::filesystem::path(catalog_out).parent_path());
        std::ofstream out(catalog_out, std::ios::binary);
        out << doc;
      }
    }
  } catch (const hyptess::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hyptess::CertificationRefused& e) {
    std::cerr << "certification refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
