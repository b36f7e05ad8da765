#pragma once
// Config files, manifests, and the CSV/JSON exports behind the CLI.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gw/diagnostics.hpp"
#include "gw/glimm.hpp"
#include "gw/params.hpp"
#include "gw/riemann.hpp"
#include "gw/similarity.hpp"
#include "gw/state.hpp"

namespace gw {

struct RunConfig {
  GasParams params;
  Mesh mesh;
  FunctionalWeights weights;
  std::uint64_t seed = 0;
  FlowState initial{1.0, 0.0};
  std::vector<double> taus;  // optional; drives the study command
};

// Strict parse: required keys gamma, a_inf, tau, b0 and mesh.{dx,dy,k_max,y_depth};
// unknown keys are rejected by name. Throws std::invalid_argument on any defect,
// including JSON syntax errors and parameter-validation failures.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a64(const std::string& text);

// Canonical restatement of every input; its FNV-1a hash tags all reports.
std::string manifest_json(const RunConfig& cfg);

void write_states_csv(std::ostream& os, const ApproxSolution& sol);
void write_waves_csv(std::ostream& os, const ApproxSolution& sol);
void write_functional_csv(std::ostream& os, const ApproxSolution& sol, const FunctionalWeights& w);

std::string fan_json(const RiemannFan& fan, const GasParams& p);
std::string fan_json(const BoundaryFan& fan, const GasParams& p);
std::string run_report_json(const ApproxSolution& sol, const RunConfig& cfg,
                            const MonotoneReport& mono);
std::string study_report_json(const SimilarityStudy& study, const RunConfig& cfg);
std::string probe_report_json(const std::vector<ProbeReport>& reports, const GasParams& p,
                              long long samples, std::uint64_t seed, int threads);

}  // namespace gw
