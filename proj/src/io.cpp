#include "gw/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gw/errors.hpp"
#include "gw/waves.hpp"

namespace gw {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const ojson& j, const std::string& scope,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) bad("unknown key \"" + scope + item.key() + "\"");
  }
}

const ojson& require_field(const ojson& j, const std::string& scope, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad("missing key \"" + scope + key + "\"");
  return *it;
}

double require_num(const ojson& j, const std::string& scope, const char* key) {
  const ojson& f = require_field(j, scope, key);
  if (!f.is_number()) bad("key \"" + scope + key + "\" must be a number");
  return f.get<double>();
}

void opt_num(const ojson& j, const std::string& scope, const char* key, double& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  if (!it->is_number()) bad("key \"" + scope + key + "\" must be a number");
  out = it->get<double>();
}

int require_int(const ojson& j, const std::string& scope, const char* key) {
  const ojson& f = require_field(j, scope, key);
  if (!f.is_number_integer()) bad("key \"" + scope + key + "\" must be an integer");
  return f.get<int>();
}

void csv_num(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

ojson state_json(const FlowState& u) { return ojson{{"rho", u.rho}, {"v", u.v}}; }

ojson wave_json(const Wave& w) {
  return ojson{{"kind", to_string(w.kind)},
               {"family", family_of(w.kind)},
               {"strength", w.strength},
               {"speed_lo", w.speed_lo},
               {"speed_hi", w.speed_hi}};
}

ojson params_json(const GasParams& p) {
  return ojson{{"gamma", p.gamma}, {"a_inf", p.a_inf}, {"tau", p.tau}, {"b0", p.b0}};
}

ojson manifest_object(const RunConfig& cfg) {
  ojson m;
  m["schema"] = "glimm-wedge v1";
  m["generator"] = "glimm-wedge";
  m["gamma"] = cfg.params.gamma;
  m["a_inf"] = cfg.params.a_inf;
  m["tau"] = cfg.params.tau;
  m["b0"] = cfg.params.b0;
  m["rho_floor"] = cfg.params.rho_floor;
  m["tol_root"] = cfg.params.tol_root;
  m["tol_quad"] = cfg.params.tol_quad;
  m["mesh"] = ojson{{"dx", cfg.mesh.dx},
                    {"dy", cfg.mesh.dy},
                    {"k_max", cfg.mesh.k_max},
                    {"y_depth", cfg.mesh.y_depth},
                    {"cfl_safety", cfg.mesh.cfl_safety}};
  m["weights"] = ojson{{"k_b", cfg.weights.k_b}, {"c_star", cfg.weights.c_star}};
  m["seed"] = cfg.seed;
  m["initial"] = state_json(cfg.initial);
  m["taus"] = cfg.taus;
  return m;
}

std::string hash_hex(const std::string& text) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

ojson stamp(const RunConfig& cfg) {
  ojson manifest = manifest_object(cfg);
  ojson out;
  out["schema"] = "glimm-wedge v1";
  out["manifest_fnv1a64"] = hash_hex(manifest.dump(2) + "\n");
  out["manifest"] = std::move(manifest);
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  check_keys(j, "", {"gamma", "a_inf", "tau", "b0", "rho_floor", "tol_root", "tol_quad", "mesh",
                     "weights", "seed", "initial", "taus"});

  RunConfig cfg;
  cfg.params.gamma = require_num(j, "", "gamma");
  cfg.params.a_inf = require_num(j, "", "a_inf");
  cfg.params.tau = require_num(j, "", "tau");
  cfg.params.b0 = require_num(j, "", "b0");
  opt_num(j, "", "rho_floor", cfg.params.rho_floor);
  opt_num(j, "", "tol_root", cfg.params.tol_root);
  opt_num(j, "", "tol_quad", cfg.params.tol_quad);

  const ojson& m = require_field(j, "", "mesh");
  if (!m.is_object()) bad("key \"mesh\" must be an object");
  check_keys(m, "mesh.", {"dx", "dy", "k_max", "y_depth", "cfl_safety"});
  cfg.mesh.dx = require_num(m, "mesh.", "dx");
  cfg.mesh.dy = require_num(m, "mesh.", "dy");
  cfg.mesh.k_max = require_int(m, "mesh.", "k_max");
  cfg.mesh.y_depth = require_int(m, "mesh.", "y_depth");
  opt_num(m, "mesh.", "cfl_safety", cfg.mesh.cfl_safety);

  if (const auto it = j.find("weights"); it != j.end()) {
    if (!it->is_object()) bad("key \"weights\" must be an object");
    check_keys(*it, "weights.", {"k_b", "c_star"});
    opt_num(*it, "weights.", "k_b", cfg.weights.k_b);
    opt_num(*it, "weights.", "c_star", cfg.weights.c_star);
  }
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_integer() || (it->is_number_integer() && it->get<long long>() < 0)) {
      bad("key \"seed\" must be a nonnegative integer");
    }
    cfg.seed = it->get<std::uint64_t>();
  }
  if (const auto it = j.find("initial"); it != j.end()) {
    if (!it->is_object()) bad("key \"initial\" must be an object");
    check_keys(*it, "initial.", {"rho", "v"});
    opt_num(*it, "initial.", "rho", cfg.initial.rho);
    opt_num(*it, "initial.", "v", cfg.initial.v);
    if (!(cfg.initial.rho > 0.0)) bad("key \"initial.rho\" must be positive");
  }
  if (const auto it = j.find("taus"); it != j.end()) {
    if (!it->is_array()) bad("key \"taus\" must be an array of numbers");
    for (const auto& t : *it) {
      if (!t.is_number()) bad("key \"taus\" must be an array of numbers");
      cfg.taus.push_back(t.get<double>());
    }
    for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
      if (cfg.taus[i] < 0.0 || (i > 0 && !(cfg.taus[i] < cfg.taus[i - 1]))) {
        bad("key \"taus\" must be strictly decreasing and nonnegative");
      }
    }
  }

  cfg.params.validate();
  cfg.mesh.validate();
  cfg.weights.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string manifest_json(const RunConfig& cfg) { return manifest_object(cfg).dump(2) + "\n"; }

void write_states_csv(std::ostream& os, const ApproxSolution& sol) {
  os << "# glimm-wedge v1\nk,n,x,y,rho,v\n";
  const Mesh& m = sol.mesh;
  const auto row = [&](int k, int n, double x, double y, const FlowState& u) {
    os << k << ',' << n << ',';
    csv_num(os, x);
    os << ',';
    csv_num(os, y);
    os << ',';
    csv_num(os, u.rho);
    os << ',';
    csv_num(os, u.v);
    os << '\n';
  };
  for (const Column& c : sol.columns) {
    row(c.k, 0, c.x, c.b - 0.5 * (1.0 - c.theta) * m.dy, c.strip);
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
      const double y = c.b - (2.0 * static_cast<double>(i) + 1.0 - c.theta) * m.dy;
      row(c.k, -static_cast<int>(i) - 1, c.x, y, c.cells[i]);
    }
  }
}

void write_waves_csv(std::ostream& os, const ApproxSolution& sol) {
  os << "# glimm-wedge v1\nk,n,kind,strength,speed\n";
  for (const DiamondRecord& r : sol.diamonds) {
    for (const Wave& w : r.waves) {
      os << r.k << ',' << r.n << ',' << to_string(w.kind) << ',';
      csv_num(os, w.strength);
      os << ',';
      csv_num(os, 0.5 * (w.speed_lo + w.speed_hi));
      os << '\n';
    }
  }
}

void write_functional_csv(std::ostream& os, const ApproxSolution& sol,
                          const FunctionalWeights& w) {
  os << "# glimm-wedge v1\nk,l1,l2,l,q,f,tv,sup\n";
  for (const Column& c : sol.columns) {
    if (!c.has_fans) continue;
    const FunctionalValue fv = functional_on_column(sol, c.k, w);
    double sup = 0.0;
    const auto absorb = [&sup](const FlowState& u) {
      sup = std::max(sup, std::abs(u.rho - 1.0) + std::abs(u.v));
    };
    absorb(c.strip);
    for (const FlowState& u : c.cells) absorb(u);
    os << c.k << ',';
    csv_num(os, fv.l1);
    os << ',';
    csv_num(os, fv.l2);
    os << ',';
    csv_num(os, fv.l);
    os << ',';
    csv_num(os, fv.q);
    os << ',';
    csv_num(os, fv.f);
    os << ',';
    csv_num(os, total_variation(sol, c.k));
    os << ',';
    csv_num(os, sup);
    os << '\n';
  }
}

std::string fan_json(const RiemannFan& fan, const GasParams& p) {
  ojson out;
  out["schema"] = "glimm-wedge v1";
  out["params"] = params_json(p);
  out["boundary"] = false;
  out["trivial"] = fan.trivial;
  out["wave_count"] = fan.wave_count();
  out["z1"] = fan.z1;
  out["z2"] = fan.z2;
  out["left"] = state_json(fan.left);
  out["middle"] = state_json(fan.middle);
  out["right"] = state_json(fan.right);
  ojson waves = ojson::array();
  if (fan.z2 != 0.0) waves.push_back(wave_json(fan.wave2));
  if (fan.z1 != 0.0) waves.push_back(wave_json(fan.wave1));
  out["waves"] = std::move(waves);
  return out.dump(2) + "\n";
}

std::string fan_json(const BoundaryFan& fan, const GasParams& p) {
  ojson out;
  out["schema"] = "glimm-wedge v1";
  out["params"] = params_json(p);
  out["boundary"] = true;
  out["trivial"] = fan.wave_count() == 0;
  out["wave_count"] = fan.wave_count();
  out["z2"] = fan.z2;
  out["left"] = state_json(fan.left);
  out["top"] = state_json(fan.top);
  ojson waves = ojson::array();
  if (fan.z2 != 0.0) waves.push_back(wave_json(fan.wave2));
  out["waves"] = std::move(waves);
  return out.dump(2) + "\n";
}

std::string run_report_json(const ApproxSolution& sol, const RunConfig& cfg,
                            const MonotoneReport& mono) {
  ojson out = stamp(cfg);
  out["columns"] = sol.columns.size();
  out["x_max"] = sol.mesh.x_max();
  out["truncation_waves"] = sol.truncation_waves;
  out["warnings"] = sol.warnings;
  out["functional"] = ojson{{"f0", mono.f0},
                            {"smallness", mono.smallness},
                            {"smallness_ok", mono.smallness_ok},
                            {"nonincreasing", mono.nonincreasing},
                            {"first_violation", mono.first_violation},
                            {"max_rise", mono.max_rise}};
  if (!sol.columns.empty()) {
    const int last = static_cast<int>(sol.columns.size()) - 1;
    out["tv_final"] = total_variation(sol, last);
  }
  return out.dump(2) + "\n";
}

std::string study_report_json(const SimilarityStudy& study, const RunConfig& cfg) {
  ojson out = stamp(cfg);
  out["radius"] = study.radius;
  const auto entry_json = [](const SimilarityEntry& e) {
    return ojson{{"tau", e.tau},
                 {"l1_to_limit", e.l1_to_limit},
                 {"tv_final", e.tv_final},
                 {"sup_state", e.sup_state},
                 {"sup_u", e.sup_u},
                 {"shock_slope", e.shock_slope},
                 {"physical_angle", e.physical_angle}};
  };
  out["limit"] = entry_json(study.limit);
  ojson entries = ojson::array();
  for (const SimilarityEntry& e : study.entries) entries.push_back(entry_json(e));
  out["entries"] = std::move(entries);
  out["demo"] = ojson{{"k_similarity", study.demo.k_similarity},
                      {"mach_a", study.demo.mach_a},
                      {"mach_b", study.demo.mach_b},
                      {"tau_a", study.demo.tau_a},
                      {"tau_b", study.demo.tau_b},
                      {"scaled_slope_a", study.demo.scaled_slope_a},
                      {"scaled_slope_b", study.demo.scaled_slope_b},
                      {"angle_a", study.demo.angle_a},
                      {"angle_b", study.demo.angle_b}};
  return out.dump(2) + "\n";
}

std::string probe_report_json(const std::vector<ProbeReport>& reports, const GasParams& p,
                              long long samples, std::uint64_t seed, int threads) {
  ojson manifest;
  manifest["schema"] = "glimm-wedge v1";
  manifest["generator"] = "glimm-wedge";
  manifest["command"] = "probe";
  manifest["gamma"] = p.gamma;
  manifest["a_inf"] = p.a_inf;
  manifest["tau"] = p.tau;
  manifest["b0"] = p.b0;
  manifest["samples"] = samples;
  manifest["seed"] = seed;
  manifest["threads"] = threads;

  ojson out;
  out["schema"] = "glimm-wedge v1";
  out["manifest_fnv1a64"] = hash_hex(manifest.dump(2) + "\n");
  out["manifest"] = std::move(manifest);
  ojson cases = ojson::array();
  for (const ProbeReport& r : reports) {
    cases.push_back(ojson{{"case", r.case_name},
                          {"samples", r.samples},
                          {"rejected", r.rejected},
                          {"exact_hits", r.exact_hits},
                          {"max_equality_defect", r.max_equality_defect},
                          {"min_defect", r.min_defect},
                          {"max_defect", r.max_defect},
                          {"fitted", r.fitted},
                          {"slope", r.slope},
                          {"outgoing", ojson{{"s1", r.outgoing_s1},
                                             {"r1", r.outgoing_r1},
                                             {"s2", r.outgoing_s2},
                                             {"r2", r.outgoing_r2}}},
                          {"note", r.note}});
  }
  out["cases"] = std::move(cases);
  return out.dump(2) + "\n";
}

}  // namespace gw
