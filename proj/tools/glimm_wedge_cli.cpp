// glimm-wedge: random-choice solver for scaled potential flow past a slender
// wedge. Subcommands: riemann (single fan), run (full march + exports),
// study (slenderness convergence), probe (interaction-estimate sampling).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gw/diagnostics.hpp"
#include "gw/errors.hpp"
#include "gw/glimm.hpp"
#include "gw/io.hpp"
#include "gw/params.hpp"
#include "gw/riemann.hpp"
#include "gw/similarity.hpp"
#include "gw/state.hpp"

namespace {

namespace fs = std::filesystem;

void add_param_flags(CLI::App* cmd, gw::GasParams& p) {
  cmd->add_option("--gamma", p.gamma, "adiabatic exponent in [1, 2]");
  cmd->add_option("--a-inf", p.a_inf, "scaled free-stream sound-speed parameter");
  cmd->add_option("--tau", p.tau, "slenderness parameter, >= 0");
  cmd->add_option("--b0", p.b0, "wedge surface slope, < 0");
}

gw::FlowState state_of(const std::vector<double>& pair) {
  return gw::FlowState{pair.at(0), pair.at(1)};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open \"" + path.string() + "\" for writing");
  out << text;
}

struct RiemannArgs {
  std::vector<double> left{1.0, 0.0};
  std::vector<double> right;
  bool boundary = false;
  gw::GasParams params;
};

void cmd_riemann(const RiemannArgs& a) {
  a.params.validate();
  const gw::FlowState ul = state_of(a.left);
  if (a.boundary) {
    const gw::BoundaryFan fan = gw::solve_boundary(ul, a.params);
    std::cout << "boundary fan at b0 = " << a.params.b0 << "\n"
              << "  left: rho = " << ul.rho << ", v = " << ul.v << "\n"
              << "  z2 = " << fan.z2 << " (" << fan.wave_count() << " wave(s))\n"
              << "  top: rho = " << fan.top.rho << ", v = " << fan.top.v << "\n";
    if (fan.z2 != 0.0) {
      std::cout << "  " << gw::to_string(fan.wave2.kind) << " speeds [" << fan.wave2.speed_lo
                << ", " << fan.wave2.speed_hi << "]\n";
    }
    std::cout << gw::fan_json(fan, a.params);
    return;
  }
  const gw::FlowState ur = state_of(a.right);
  const gw::RiemannFan fan = gw::solve_interior(ul, ur, a.params);
  std::cout << "interior fan\n"
            << "  left (below): rho = " << ul.rho << ", v = " << ul.v << "\n"
            << "  right (above): rho = " << ur.rho << ", v = " << ur.v << "\n"
            << "  z1 = " << fan.z1 << ", z2 = " << fan.z2 << " (" << fan.wave_count()
            << " wave(s))\n"
            << "  middle: rho = " << fan.middle.rho << ", v = " << fan.middle.v << "\n";
  if (fan.z2 != 0.0) {
    std::cout << "  " << gw::to_string(fan.wave2.kind) << " speeds [" << fan.wave2.speed_lo
              << ", " << fan.wave2.speed_hi << "]\n";
  }
  if (fan.z1 != 0.0) {
    std::cout << "  " << gw::to_string(fan.wave1.kind) << " speeds [" << fan.wave1.speed_lo
              << ", " << fan.wave1.speed_hi << "]\n";
  }
  std::cout << gw::fan_json(fan, a.params);
}

struct RunArgs {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void cmd_run(const RunArgs& a) {
  gw::RunConfig cfg = gw::load_config(a.config);
  if (a.seed_set) cfg.seed = a.seed;
  const gw::FlowState u0 = cfg.initial;
  const gw::InitialData init = [u0](double) { return u0; };

  const gw::ApproxSolution sol =
      gw::run(cfg.mesh, gw::ThetaSequence(cfg.seed), init, cfg.params);
  const gw::MonotoneReport mono = gw::check_f_monotone(sol, cfg.weights);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "states.csv", std::ios::binary);
    gw::write_states_csv(os, sol);
  }
  {
    std::ofstream os(dir / "waves.csv", std::ios::binary);
    gw::write_waves_csv(os, sol);
  }
  {
    std::ofstream os(dir / "functional.csv", std::ios::binary);
    gw::write_functional_csv(os, sol, cfg.weights);
  }
  write_file(dir / "manifest.json", gw::manifest_json(cfg));
  write_file(dir / "report.json", gw::run_report_json(sol, cfg, mono));

  for (const std::string& w : sol.warnings) std::cerr << "warning: " << w << "\n";
  if (!mono.smallness_ok) {
    std::cerr << "warning: (gamma - 1 + tau^2) * F(0) = " << mono.smallness
              << " exceeds 0.05; the functional-decrease guarantee does not apply\n";
  }
  std::cout << "columns: " << sol.columns.size() << " (x up to " << cfg.mesh.x_max() << ")\n";
  if (!mono.f.empty()) {
    std::cout << "functional: F(0) = " << mono.f0 << ", F(end) = " << mono.f.back()
              << (mono.nonincreasing ? ", nonincreasing" : ", NOT nonincreasing") << "\n";
  }
  std::cout << "wrote states.csv, waves.csv, functional.csv, manifest.json, report.json to "
            << dir.string() << "\n";
}

void cmd_study(const RunArgs& a) {
  gw::RunConfig cfg = gw::load_config(a.config);
  if (a.seed_set) cfg.seed = a.seed;
  if (cfg.taus.empty()) throw std::invalid_argument("config: study requires a nonempty \"taus\"");

  const gw::SimilarityStudy st =
      gw::similarity_study(cfg.mesh, cfg.params, cfg.taus, cfg.seed,
                           [](const std::string& msg) { std::cerr << "study: " << msg << "\n"; });

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_file(dir / "manifest.json", gw::manifest_json(cfg));
  write_file(dir / "study_report.json", gw::study_report_json(st, cfg));

  std::cout << "tau        L1-to-limit    TV(final)      shock slope\n";
  for (const gw::SimilarityEntry& e : st.entries) {
    std::printf("%-9g  %-13.6g  %-13.6g  %-13.6g\n", e.tau, e.l1_to_limit, e.tv_final,
                e.shock_slope);
  }
  std::printf("%-9s  %-13s  %-13.6g  %-13.6g\n", "0 (limit)", "-", st.limit.tv_final,
              st.limit.shock_slope);
  std::cout << "wrote study_report.json, manifest.json to " << dir.string() << "\n";
}

struct ProbeArgs {
  std::string case_name = "all";
  int samples = 1000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  gw::GasParams params;
};

void cmd_probe(const ProbeArgs& a) {
  a.params.validate();
  if (a.samples < 0) throw std::invalid_argument("--samples must be nonnegative");
  std::vector<gw::ProbeReport> reports;
  if (a.case_name == "all") {
    for (const std::string& name : gw::probe_case_names()) {
      try {
        reports.push_back(gw::interaction_probe(name, a.samples, a.seed, a.params, a.threads));
      } catch (const std::invalid_argument& e) {
        std::cerr << "probe: skipping " << name << " (" << e.what() << ")\n";
      }
    }
  } else {
    reports.push_back(
        gw::interaction_probe(a.case_name, a.samples, a.seed, a.params, a.threads));
  }
  const std::string json =
      gw::probe_report_json(reports, a.params, a.samples, a.seed, a.threads);
  std::cout << json;
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    write_file(dir / "probe_report.json", json);
    std::cerr << "probe: wrote probe_report.json to " << dir.string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-choice solver for scaled potential flow past a slender wedge"};
  app.require_subcommand(1);

  RiemannArgs ra;
  CLI::App* riemann = app.add_subcommand("riemann", "solve one Riemann problem and print the fan");
  riemann->add_option("--left", ra.left, "below state rho,v")
      ->delimiter(',')
      ->expected(2)
      ->required();
  CLI::Option* right_opt =
      riemann->add_option("--right", ra.right, "above state rho,v")->delimiter(',')->expected(2);
  CLI::Option* boundary_opt =
      riemann->add_flag("--boundary", ra.boundary, "solve the wedge-surface problem instead");
  right_opt->excludes(boundary_opt);
  boundary_opt->excludes(right_opt);
  add_param_flags(riemann, ra.params);
  riemann->callback([&ra, right_opt]() {
    if (!ra.boundary && right_opt->count() == 0) {
      throw CLI::RequiredError("--right or --boundary");
    }
    cmd_riemann(ra);
  });

  RunArgs runa;
  CLI::App* runc = app.add_subcommand("run", "march the scheme and export CSV/JSON files");
  runc->add_option("--config", runa.config, "JSON config path")->required();
  runc->add_option("--out", runa.out, "output directory (default: .)");
  CLI::Option* run_seed = runc->add_option("--seed", runa.seed, "override the config seed");
  runc->callback([&runa, run_seed]() {
    runa.seed_set = run_seed->count() > 0;
    cmd_run(runa);
  });

  RunArgs studya;
  CLI::App* study = app.add_subcommand("study", "slenderness (tau) convergence study");
  study->add_option("--config", studya.config, "JSON config path with a taus array")->required();
  study->add_option("--out", studya.out, "output directory (default: .)");
  CLI::Option* study_seed = study->add_option("--seed", studya.seed, "override the config seed");
  study->callback([&studya, study_seed]() {
    studya.seed_set = study_seed->count() > 0;
    cmd_study(studya);
  });

  ProbeArgs pa;
  CLI::App* probe = app.add_subcommand("probe", "sample wave-interaction estimates");
  probe->add_option("--case", pa.case_name, "case id (for example L3.5.1) or \"all\"");
  probe->add_option("--samples", pa.samples, "samples per case (default 1000)");
  probe->add_option("--seed", pa.seed, "sampling seed");
  probe->add_option("--threads", pa.threads, "worker threads (0 = auto)");
  probe->add_option("--out", pa.out, "also write probe_report.json here");
  add_param_flags(probe, pa.params);
  probe->callback([&pa]() { cmd_probe(pa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const gw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
