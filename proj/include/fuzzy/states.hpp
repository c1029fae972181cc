#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "fuzzy/core.hpp"
#include "fuzzy/fock.hpp"

namespace fuzzy {

/// Strictly increasing positions in units of b = sqrt(hbar / m omega).
class Grid {
 public:
  explicit Grid(std::vector<double> points);
  static Grid linspace(double a, double b, int n);
  /// "A:B:N"
  static Grid parse(std::string_view text);

  const std::vector<double>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<double> points_;
};

/// Trapezoid rule over the grid points.
double grid_integral(const RealVector& values, const Grid& grid);

constexpr int kMaxHermiteDegree = 400;

/// Rows 0..n_max of normalized oscillator eigenfunctions phi_n on the grid,
/// by phi_{n+1} = xi sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1}.
Eigen::MatrixXd hermite_table(int n_max, const Grid& grid);

RealVector hermite_wavefunction(int n, const Grid& grid);

/// Complex amplitude sum_j alpha_j phi_j on the grid.
VectorT<double> position_amplitude(const FockVector& state, const Grid& grid);

/// |sum_j alpha_j phi_j(xi)|^2.
RealVector position_density(const FockVector& state, const Grid& grid);

// ---------------------------------------------------------------------------

struct DisplacementArg {
  Complex z;
  Complex z_rescaled;
};

/// The sharp displacement argument equivalent to the fuzzy one:
/// z a_fuzzy^dagger - conj(z) a_fuzzy = zr a^dagger - conj(zr) a with
/// zr = conj(u) z - v conj(z).
DisplacementArg rescale_displacement(Complex z, const FuzzyCoefficients& c);

/// u z - v conj(z), the form without the conjugate on u. Agrees with
/// rescale_displacement only when u is real.
Complex unconjugated_rescaling(Complex z, const FuzzyCoefficients& c);

/// exp(M) (Pade approximant with scaling and squaring).
template <typename Real>
MatrixT<Real> matrix_exponential(const MatrixT<Real>& M) {
  return M.exp();
}

/// D(zr) = exp(zr a^dagger - conj(zr) a) on the truncated basis.
Matrix displacement_matrix(int dim, Complex zr);

/// exp(z a_fuzzy^dagger - conj(z) a_fuzzy) built from the fuzzy generator.
Matrix fuzzy_displacement(const LadderSet& ls, Complex z);

/// D(zr) |0bar>.
FockVector coherent_displaced(Complex z, const FuzzyCoefficients& c, int dim);

/// exp(-|z|^2/2) sum_n z^n / sqrt(n!) |nbar>, renormalized.
FockVector coherent_sum(Complex z, const FuzzyCoefficients& c, int dim);

/// |<a|b>|^2.
double fidelity(const FockVector& a, const FockVector& b);

/// The displaced vacuum rebuilt from the coherent-state resolution of unity,
/// integral d^2z'/pi <z'|D(zr)|0bar> |z'>, on a polar grid over the disk
/// |z'| <= |zr| + 6 (composite Simpson radially, trapezoid in angle).
FockVector coherent_phase_space(Complex z, const FuzzyCoefficients& c, int dim, int radial = 240,
                                int angular = 192);

}  // namespace fuzzy
