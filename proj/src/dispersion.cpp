#include "fuzzy/dispersion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fuzzy/moments.hpp"

namespace fuzzy {

void GammaModel::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidModel, "g must be > 0");
  if (!std::isfinite(mu)) throw Error(ErrorCode::InvalidModel, "mu must be finite");
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidModel, "c must be > 0");
  if (kind != DistKind::lorentzian && kind != DistKind::uniform)
    throw Error(ErrorCode::InvalidModel, "kind must be lorentzian or uniform");
}

double commutation_at(DistKind kind, double zeta) {
  if (zeta == 0.0) return 1.0;
  return commutation_function(moments_analytic(DistributionSpec::make(kind, zeta))).C;
}

double zeta_of(const GammaModel& m, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositiveOmega, "omega must be > 0");
  return 0.5 * m.g * std::pow(omega, m.mu - 1.0);
}

double excitation_energy(const GammaModel& m, double omega) {
  m.validate();
  return commutation_at(m.kind, zeta_of(m, omega)) * omega;
}

ConstraintReport constraint_report(const GammaModel& m, const std::vector<double>& omega_grid) {
  m.validate();
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    if (!(omega_grid[i] > 0.0)) throw Error(ErrorCode::NonPositiveOmega, "omega grid must be positive");
    if (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))
      throw Error(ErrorCode::InvalidGrid, "omega grid must be ascending");
  }
  ConstraintReport rep;
  rep.finite_zero_limit = m.mu > 1.0;
  rep.large_omega_exponent_ok = m.mu <= 2.0;
  rep.zero_limit_energy = excitation_energy(m, 1e-12);
  rep.monotonic_on_grid = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (double w : omega_grid) {
    const double e = excitation_energy(m, w);
    if (!(e > prev)) rep.monotonic_on_grid = false;
    prev = e;
    const double s = m.c * w * w - 1.0;
    if (s > 0.0) {
      const double gamma = m.g * std::pow(w, m.mu);
      const double bound = w * std::sqrt(s);
      if (!(gamma < bound)) rep.violations.push_back({w, gamma, bound});
    }
  }
  return rep;
}

double multimode_energy(const std::vector<ModeOccupation>& modes, const GammaModel& m) {
  double e = 0.0;
  for (const auto& mode : modes) {
    if (mode.n < 0) throw Error(ErrorCode::InvalidSpec, "occupation must be >= 0");
    e += excitation_energy(m, mode.omega) * (mode.n + 0.5);
  }
  return e;
}

std::vector<CurvePoint> dispersion_curve(const GammaModel& m, const std::vector<double>& omega_grid) {
  m.validate();
  std::vector<CurvePoint> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) {
    const double printed = m.kind == DistKind::uniform
                               ? printed_uniform_commutation(zeta_of(m, w)) * w
                               : std::numeric_limits<double>::quiet_NaN();
    out.push_back({w, excitation_energy(m, w), printed});
  }
  return out;
}

GammaModel parse_gamma_model(const std::string& text, DistKind kind) {
  GammaModel m;
  m.kind = kind;
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> m.g >> c1 >> m.mu >> c2 >> m.c) || c1 != ',' || c2 != ',')
    throw Error(ErrorCode::InvalidModel, "gamma model must be 'g,mu,c'");
  m.validate();
  return m;
}

}  // namespace fuzzy
