#include "gw/params.hpp"

#include <cmath>
#include <sstream>

namespace gw {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateScaling: return "DegenerateScaling";
    case ErrorCode::UnsortedFamily: return "UnsortedFamily";
    case ErrorCode::SonicDefectExceeded: return "SonicDefectExceeded";
    case ErrorCode::VacuumReached: return "VacuumReached";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::InconsistentRH: return "InconsistentRH";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::UnsupportedTau: return "UnsupportedTau";
  }
  return "UnknownError";
}

bool GasParams::gamma_is_one() const { return std::abs(gamma - 1.0) < 1e-10; }

void GasParams::validate() const {
  std::ostringstream bad;
  if (!(gamma >= 1.0 && gamma <= 2.0)) bad << "gamma=" << gamma << " outside [1,2]; ";
  if (!(a_inf > 0.0)) bad << "a_inf=" << a_inf << " must be > 0; ";
  if (!(tau >= 0.0)) bad << "tau=" << tau << " must be >= 0; ";
  if (tau > 0.0 && !(tau < a_inf)) {
    // a_inf/tau is the free-stream Mach number; the flow must enter supersonic.
    bad << "tau=" << tau << " must be < a_inf; ";
  }
  if (!(b0 < 0.0)) bad << "b0=" << b0 << " must be < 0; ";
  if (!(rho_floor > 0.0)) bad << "rho_floor must be > 0; ";
  if (!(tol_root > 0.0) || !(tol_quad > 0.0)) bad << "tolerances must be > 0; ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw std::invalid_argument("GasParams: " + msg);
}

GasParams scaled_from_physical(const PhysicalSetup& phys, double tau) {
  if (!(phys.mach_inf > 1.0) || !(phys.theta_wedge > 0.0) || !(phys.u_inf > 0.0) ||
      !(phys.rho_inf > 0.0)) {
    throw std::invalid_argument("PhysicalSetup: requires M_inf>1, theta>0, U_inf>0, rho_inf>0");
  }
  if (!(tau > 0.0)) {
    raise(ErrorCode::DegenerateScaling,
          "physical->scaled map needs tau > 0 (b0 = -theta/tau); tau = 0 exists only as the "
          "limit system");
  }
  GasParams p;
  p.a_inf = tau * phys.mach_inf;
  p.b0 = -phys.theta_wedge / tau;
  p.tau = tau;
  return p;
}

PhysicalFields physical_fields(double rho_bar, double v_bar, double u_bar,
                               const PhysicalSetup& phys, double tau) {
  PhysicalFields f;
  f.rho = phys.rho_inf * rho_bar;
  f.u = phys.u_inf * (1.0 + tau * tau * u_bar);
  f.v = phys.u_inf * tau * v_bar;
  return f;
}

std::vector<GasParams> tau_family(double a_inf, double gamma, double b0,
                                  const std::vector<double>& taus) {
  for (size_t i = 0; i + 1 < taus.size(); ++i) {
    if (!(taus[i] > taus[i + 1])) {
      raise(ErrorCode::UnsortedFamily, "tau ladder must be strictly decreasing");
    }
  }
  if (!taus.empty() && taus.back() < 0.0) {
    raise(ErrorCode::UnsortedFamily, "tau ladder must be nonnegative");
  }
  std::vector<GasParams> family;
  family.reserve(taus.size());
  for (double t : taus) {
    GasParams p;
    p.gamma = gamma;
    p.a_inf = a_inf;
    p.b0 = b0;
    p.tau = t;
    p.validate();
    family.push_back(p);
  }
  return family;
}

}  // namespace gw
