#include "fuzzy/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fuzzy/quadrature.hpp"

namespace fuzzy {

namespace {

constexpr Complex kI{0.0, 1.0};

struct PartResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Integral of h(x) over the x-range (lo, hi) intersected with the half line
// x > -1 (side = +1, substitution x = t^2 - 1) or x < -1 (side = -1,
// substitution x = -1 - t^2). The substituted integrand is 2 h(x(t)) dt,
// which absorbs the inverse square root.
PartResult integrate_side(const DistributionSpec& spec, int k, int side, double abs_target, double rel_tol) {
  const auto [lo, hi] = spec.support();
  auto x_of = [side](double t) { return side > 0 ? t * t - 1.0 : -1.0 - t * t; };
  auto t_of = [side](double x) { return std::sqrt(std::max(0.0, side > 0 ? 1.0 + x : -1.0 - x)); };

  // t-range covered by the support on this side
  double t_lo = 0.0;
  double t_hi = std::numeric_limits<double>::infinity();
  if (side > 0) {
    if (hi <= -1.0) return {};
    if (lo > -1.0) t_lo = t_of(lo);
    if (std::isfinite(hi)) t_hi = t_of(hi);
  } else {
    if (lo >= -1.0) return {};
    if (hi < -1.0) t_lo = t_of(hi);
    if (std::isfinite(lo)) t_hi = t_of(lo);
  }
  if (!(t_hi > t_lo)) return {};

  std::vector<double> edges{t_lo};
  std::vector<double> interior;
  for (double x : spec.breakpoints()) {
    if (side > 0 ? x <= -1.0 : x >= -1.0) continue;
    const double t = t_of(x);
    if (t > t_lo && t < t_hi) interior.push_back(t);
  }
  std::sort(interior.begin(), interior.end());
  for (double t : interior)
    if (t > edges.back()) edges.push_back(t);

  auto integrand = [&spec, k, &x_of](double t) {
    const double x = x_of(t);
    const double f = density(spec, x);
    return 2.0 * (k == 0 ? f : x * f);
  };

  quad::Options opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_target;
  opt.max_intervals = 8000;
  quad::Result r;
  if (std::isfinite(t_hi)) {
    edges.push_back(t_hi);
    r = quad::adaptive(integrand, edges, opt);
  } else {
    std::vector<double> splits(edges.begin() + 1, edges.end());
    r = quad::adaptive_to_infinity(integrand, t_lo, splits, opt);
  }
  return {r.value, r.abs_error, r.converged};
}

Complex lorentzian_residue_over_sqrt(double zeta, int k) {
  // g_k(z) = (1/pi) (z-1)^k zeta / ((z-1)^2 + zeta^2); simple pole at 1 + i zeta
  const Complex pole{1.0, zeta};
  const Complex w = pole - 1.0;
  const Complex numer = (k == 0 ? Complex{1.0} : w) * (zeta / std::numbers::pi);
  const Complex denom_derivative = 2.0 * w;
  return numer / denom_derivative / branch_sqrt(pole);
}

double slope(const DistributionSpec& spec, int k, double r1, double r2, double theta) {
  const Complex z1 = std::polar(r1, theta);
  const Complex z2 = std::polar(r2, theta);
  return (log_abs_shifted_integrand(spec, k, z2) - log_abs_shifted_integrand(spec, k, z1)) / std::log(r2 / r1);
}

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-3 ? r : v;
}

}  // namespace

const char* to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::exact_delta: return "exact_delta";
    case MomentMethod::residue: return "residue";
    case MomentMethod::closed_form: return "closed_form";
    case MomentMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

MomentPair moments_quadrature(const DistributionSpec& spec, double rel_tol) {
  if (spec.kind() == DistKind::delta)
    throw Error(ErrorCode::DeltaHasNoDensity, "delta moments are exact; quadrature needs a density");
  if (!(rel_tol >= 1e-13 && rel_tol <= 1e-3))
    throw Error(ErrorCode::InvalidTolerance, "rel_tol must lie in [1e-13, 1e-3]");

  constexpr double kAbsFloor = 1e-14;
  MomentPair out;
  out.method = MomentMethod::quadrature;
  bool converged = true;
  std::array<Complex, 2> values;
  for (int k = 0; k < 2; ++k) {
    // Each half is held to half the budget; |re| + |im| <= sqrt(2) |I_k|.
    const auto re = integrate_side(spec, k, +1, 0.5 * kAbsFloor, 0.5 * rel_tol);
    const auto im = integrate_side(spec, k, -1, 0.5 * kAbsFloor, 0.5 * rel_tol);
    values[k] = Complex{re.value, -im.value};
    const double err = re.error + im.error;
    out.est_error = std::max(out.est_error, err);
    // one component may cancel to zero (uniform, zeta = 2); judge the complex value as a whole
    converged = converged && ((re.converged && im.converged) || err <= std::max(kAbsFloor, rel_tol * std::abs(values[k])));
  }
  out.I0 = values[0];
  out.I1 = values[1];
  if (!converged)
    throw QuadratureFailure("moment integrals did not reach rel_tol (est_error " + std::to_string(out.est_error) + ")",
                            out);
  return out;
}

MomentPair moments_analytic(const DistributionSpec& spec) {
  MomentPair out;
  switch (spec.kind()) {
    case DistKind::delta:
      out.method = MomentMethod::exact_delta;
      return out;
    case DistKind::lorentzian:
      return residue_sum(prop1_check(spec));
    case DistKind::uniform: {
      const double z = spec.zeta();
      const double pref = 1.0 / (2.0 * z);
      const double lower = std::max(-z, -1.0);
      auto F0 = [](double u) { return 2.0 * std::sqrt(u); };
      auto F1 = [](double u) { return (2.0 / 3.0) * u * std::sqrt(u) - 2.0 * std::sqrt(u); };
      Complex I0 = pref * (F0(1.0 + z) - F0(1.0 + lower));
      Complex I1 = pref * (F1(1.0 + z) - F1(1.0 + lower));
      if (z > 1.0) {
        // x in [-z, -1): 1/sqrt(1+x) = -i/sqrt(s), s = -1-x in (0, z-1]
        const double r = z - 1.0;
        const double sr = std::sqrt(r);
        I0 += pref * (-2.0 * sr) * kI;
        I1 += pref * (2.0 * sr + (2.0 / 3.0) * r * sr) * kI;
      }
      out.I0 = I0;
      out.I1 = I1;
      out.method = MomentMethod::closed_form;
      return out;
    }
    default:
      throw Error(ErrorCode::UnsupportedAnalyticKind,
                  std::string("no analytic moments for kind ") + to_string(spec.kind()));
  }
}

MomentPair moments(const DistributionSpec& spec, double rel_tol) {
  switch (spec.kind()) {
    case DistKind::delta:
    case DistKind::lorentzian:
    case DistKind::uniform:
      return moments_analytic(spec);
    default:
      return moments_quadrature(spec, rel_tol);
  }
}

FuzzyCoefficients commutation_function(const MomentPair& m) {
  if (!std::isfinite(std::abs(m.I0)) || !std::isfinite(std::abs(m.I1)))
    throw Error(ErrorCode::InvalidSpec, "non-finite moments");
  FuzzyCoefficients c;
  c.u = m.I0 + 0.5 * m.I1;
  c.v = 0.5 * m.I1;
  c.C = std::norm(m.I0) + std::real(m.I0 * std::conj(m.I1));
  if (m.method == MomentMethod::exact_delta) c.C = 1.0;
  return c;
}

double log_abs_shifted_integrand(const DistributionSpec& spec, int k, Complex z) {
  const Complex w = z - 1.0;
  const double z0 = spec.zeta();
  double log_f = 0.0;
  switch (spec.kind()) {
    case DistKind::lorentzian:
      log_f = std::log(z0 / std::numbers::pi) - std::log(std::abs(w * w + z0 * z0));
      break;
    case DistKind::gaussian:
      log_f = std::real(-w * w / (2.0 * z0 * z0)) - std::log(z0 * std::sqrt(2.0 * std::numbers::pi));
      break;
    default:
      throw Error(ErrorCode::UnsupportedAnalyticKind, "no analytic continuation for this kind");
  }
  return log_f + (k == 1 ? std::log(std::abs(w)) : 0.0);
}

Prop1Report prop1_check(const DistributionSpec& spec) {
  Prop1Report rep;
  switch (spec.kind()) {
    case DistKind::lorentzian:
    case DistKind::gaussian: {
      rep.analytic_on_real_line = true;
      const bool lor = spec.kind() == DistKind::lorentzian;
      const double r1 = lor ? 1e4 : 1e2;
      const double r2 = lor ? 1e5 : 1e3;
      for (int k = 0; k < 2; ++k) {
        double a = -std::numeric_limits<double>::infinity();
        for (int j = 1; j < 24; ++j) a = std::max(a, slope(spec, k, r1, r2, std::numbers::pi * j / 24.0));
        a = std::max({a, slope(spec, k, r1, r2, 0.0), slope(spec, k, r1, r2, std::numbers::pi)});
        double b = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= 24; ++j) b = std::min(b, slope(spec, k, 1e-7, 1e-6, std::numbers::pi * j / 24.0));
        rep.alpha[k] = snap(a);
        rep.beta[k] = snap(b);
      }
      if (lor) {
        PoleInfo p;
        p.location = Complex{1.0, spec.zeta()};
        for (int k = 0; k < 2; ++k) p.residue_over_sqrt[k] = lorentzian_residue_over_sqrt(spec.zeta(), k);
        rep.poles.push_back(p);
      }
      break;
    }
    case DistKind::uniform:
    case DistKind::tabulated:
    case DistKind::delta:
      // kinks at the support edges: no analytic continuation
      rep.alpha = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      rep.beta = rep.alpha;
      rep.analytic_on_real_line = false;
      break;
  }
  bool poles_ok = std::all_of(rep.poles.begin(), rep.poles.end(),
                              [](const PoleInfo& p) { return p.location.imag() > 0.0; });
  rep.conditions_met = rep.analytic_on_real_line && rep.alpha[0] < -0.5 && rep.alpha[1] < -0.5 &&
                       rep.beta[0] > -0.5 && rep.beta[1] > -0.5 && poles_ok;
  return rep;
}

MomentPair residue_sum(const Prop1Report& report) {
  if (!report.conditions_met)
    throw Error(ErrorCode::UnsupportedAnalyticKind, "residue formula requires both analyticity conditions");
  constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
  MomentPair out;
  out.I0 = {};
  for (const auto& p : report.poles) {
    out.I0 += two_pi_i * p.residue_over_sqrt[0];
    out.I1 += two_pi_i * p.residue_over_sqrt[1];
  }
  out.method = MomentMethod::residue;
  return out;
}

double printed_uniform_commutation(double zeta) {
  if (!(zeta > 0.0)) throw Error(ErrorCode::InvalidSpec, "zeta must be > 0");
  if (zeta <= 1.0) return (2.0 / 3.0) * (2.0 + (std::sqrt(1.0 - zeta * zeta) - 1.0) / (zeta * zeta));
  return (2.0 / 3.0) / zeta;
}

CommutationComparison compare_uniform_commutation(double zeta, double tol) {
  const auto spec = DistributionSpec::uniform(zeta);
  CommutationComparison out;
  out.definitional = commutation_function(moments_analytic(spec)).C;
  out.printed = printed_uniform_commutation(zeta);
  out.discrepancy = out.definitional - out.printed;
  out.flagged = std::abs(out.discrepancy) > tol;
  return out;
}

}  // namespace fuzzy
