#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzy/core.hpp"

namespace fuzzy {

enum class DistKind { delta, lorentzian, uniform, gaussian, tabulated };

const char* to_string(DistKind kind);
DistKind parse_dist_kind(std::string_view name);

struct TablePoint {
  double x;
  double density;
};

/// Normalized width distribution in dimensionless form, x = dw/w and
/// f'(x) = w f(dw). `zeta` is Gamma/(2w); for the gaussian kind it is the
/// standard deviation of x. Tabulated specs carry the half-width of their
/// support in `zeta`.
class DistributionSpec {
 public:
  static DistributionSpec delta();
  static DistributionSpec lorentzian(double zeta);
  static DistributionSpec uniform(double zeta);
  static DistributionSpec gaussian(double sigma);
  static DistributionSpec tabulated(std::vector<TablePoint> table);
  /// Any kind but tabulated, from a (Gamma, omega) pair: zeta = Gamma / (2 omega).
  static DistributionSpec from_width(DistKind kind, double gamma, double omega);
  static DistributionSpec make(DistKind kind, double zeta);

  DistKind kind() const noexcept { return kind_; }
  double zeta() const noexcept { return zeta_; }
  const std::vector<TablePoint>& table() const noexcept { return table_; }

  /// Where the density is nonzero; +-inf for lorentzian/gaussian.
  std::pair<double, double> support() const;

  /// x locations where the density changes character (peak, kinks, scale
  /// points). Used to seed adaptive quadrature.
  std::vector<double> breakpoints() const;

  bool smooth() const noexcept {
    return kind_ == DistKind::lorentzian || kind_ == DistKind::gaussian;
  }

 private:
  DistributionSpec(DistKind kind, double zeta, std::vector<TablePoint> table = {});
  void validate() const;

  DistKind kind_;
  double zeta_;
  std::vector<TablePoint> table_;
};

double density(const DistributionSpec& spec, double x);

/// g_k(x) = (x-1)^k f'(x-1), k in {0, 1}.
double shifted_integrand(const DistributionSpec& spec, int k, double x);

/// |integral of f' over the real line - 1|.
double normalization_residual(const DistributionSpec& spec);

/// False when a tabulated density is visibly asymmetric about x = 0 (the
/// construction accepts it; callers may warn).
bool looks_symmetric(const DistributionSpec& spec, double tol = 1e-9);

/// Two-column CSV with a header row (canonically `x,f`).
std::vector<TablePoint> read_table_csv(const std::string& path);
std::vector<TablePoint> parse_table_csv(std::string_view text);

}  // namespace fuzzy
