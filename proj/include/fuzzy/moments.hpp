#pragma once

#include <array>
#include <vector>

#include "fuzzy/core.hpp"
#include "fuzzy/distributions.hpp"

namespace fuzzy {

enum class MomentMethod { exact_delta, residue, closed_form, quadrature };

const char* to_string(MomentMethod m);

/// I_k = integral of x^k f'(x) / sqrt(1 + x) over the real line, k = 0, 1.
struct MomentPair {
  Complex I0{1.0, 0.0};
  Complex I1{0.0, 0.0};
  MomentMethod method = MomentMethod::exact_delta;
  double est_error = 0.0;
};

/// a_fuzzy = u a + v a^dagger, with commutation function C = [a_fuzzy, a_fuzzy^dagger].
struct FuzzyCoefficients {
  Complex u{1.0, 0.0};
  Complex v{0.0, 0.0};
  double C = 1.0;

  /// |u|^2 - |v|^2; equals C up to rounding.
  double c_from_uv() const { return std::norm(u) - std::norm(v); }
};

struct PoleInfo {
  Complex location;
  /// Res[g_k(z) / sqrt(z)] at `location`, for k = 0, 1.
  std::array<Complex, 2> residue_over_sqrt;
};

struct Prop1Report {
  /// Large-|z| decay exponent of g_k on upper arcs, per k.
  std::array<double, 2> alpha{};
  /// Small-|z| exponent of g_k near the origin, per k.
  std::array<double, 2> beta{};
  std::vector<PoleInfo> poles;
  bool analytic_on_real_line = false;
  bool conditions_met = false;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, MomentPair partial)
      : Error(ErrorCode::QuadratureNonConvergence, what), partial_(partial) {}
  const MomentPair& partial() const noexcept { return partial_; }

 private:
  MomentPair partial_;
};

constexpr double kDefaultRelTol = 1e-10;

/// Definitional route. The factor 1/sqrt(1+x) on x < -1 is -i/sqrt(|1+x|).
/// Throws QuadratureFailure (carrying the unconverged values) when the
/// requested accuracy is not reached.
MomentPair moments_quadrature(const DistributionSpec& spec, double rel_tol = kDefaultRelTol);

/// Exact routes: delta constants, the residue sum for the lorentzian, and
/// piecewise antiderivatives for the uniform kind.
MomentPair moments_analytic(const DistributionSpec& spec);

/// Analytic when available, quadrature otherwise.
MomentPair moments(const DistributionSpec& spec, double rel_tol = kDefaultRelTol);

FuzzyCoefficients commutation_function(const MomentPair& m);

inline FuzzyCoefficients fuzzy_coefficients(const DistributionSpec& spec, double rel_tol = kDefaultRelTol) {
  return commutation_function(moments(spec, rel_tol));
}

Prop1Report prop1_check(const DistributionSpec& spec);

/// Evaluates I_k = 2 pi i sum Res[g_k / sqrt(z)] over the reported poles.
MomentPair residue_sum(const Prop1Report& report);

/// The closed form printed for the uniform kind:
/// (2/3)(2 + (sqrt(1 - z^2) - 1)/z^2) for z <= 1, (2/3)/z otherwise.
double printed_uniform_commutation(double zeta);

struct CommutationComparison {
  double definitional = 0.0;
  double printed = 0.0;
  double discrepancy = 0.0;
  bool flagged = false;
};

/// Definitional uniform C (exact antiderivatives, cross-checked by
/// quadrature) against the printed closed form. Disagreement beyond `tol`
/// is flagged, never corrected.
CommutationComparison compare_uniform_commutation(double zeta, double tol = 1e-8);

/// log|g_k(z)| for complex z (smooth kinds only). Works in log space so that
/// super-exponential growth stays finite.
double log_abs_shifted_integrand(const DistributionSpec& spec, int k, Complex z);

}  // namespace fuzzy
