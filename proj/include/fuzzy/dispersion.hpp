#pragma once

#include <vector>

#include "fuzzy/distributions.hpp"

namespace fuzzy {

/// Gamma(omega) = g omega^mu, with c the constant of the monotonicity bound
/// Gamma(omega) < omega sqrt(c omega^2 - 1).
struct GammaModel {
  double g = 1.0;
  double mu = 1.0;
  double c = 1.0;
  DistKind kind = DistKind::lorentzian;

  void validate() const;
};

struct ModeOccupation {
  double omega = 1.0;
  int n = 0;
};

/// C(zeta) for the given kind (lorentzian or uniform), definitional values.
double commutation_at(DistKind kind, double zeta);

double zeta_of(const GammaModel& m, double omega);

/// Delta E(omega) = C(zeta(omega)) omega, hbar = 1.
double excitation_energy(const GammaModel& m, double omega);

struct ConstraintViolation {
  double omega;
  double gamma;
  double bound;
};

struct ConstraintReport {
  bool finite_zero_limit = false;        ///< mu > 1
  double zero_limit_energy = 0.0;        ///< lim_{omega -> 0} Delta E, numerically
  bool large_omega_exponent_ok = false;  ///< mu <= 2
  bool monotonic_on_grid = false;
  std::vector<ConstraintViolation> violations;
};

ConstraintReport constraint_report(const GammaModel& m, const std::vector<double>& omega_grid);

double multimode_energy(const std::vector<ModeOccupation>& modes, const GammaModel& m);

struct CurvePoint {
  double omega;
  double energy;
  /// Uniform kind only: the energy from the printed closed-form C; NaN otherwise.
  double printed_energy;
};

std::vector<CurvePoint> dispersion_curve(const GammaModel& m, const std::vector<double>& omega_grid);

/// Parses "g,mu,c".
GammaModel parse_gamma_model(const std::string& text, DistKind kind = DistKind::lorentzian);

}  // namespace fuzzy
