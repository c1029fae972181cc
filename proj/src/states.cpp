#include "fuzzy/states.hpp"

#include <charconv>

namespace fuzzy {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidGrid, "grid is empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw Error(ErrorCode::InvalidGrid, "grid points must be finite");
    if (i > 0 && !(points_[i] > points_[i - 1])) throw Error(ErrorCode::InvalidGrid, "grid must be increasing");
  }
}

Grid Grid::linspace(double a, double b, int n) {
  if (n < 1 || (n > 1 && !(b > a))) throw Error(ErrorCode::InvalidGrid, "bad linspace");
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  return Grid(std::move(pts));
}

Grid Grid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw Error(ErrorCode::InvalidGrid, "grid must be A:B:N");
  auto num = [](std::string_view s, auto& out) {
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
      throw Error(ErrorCode::InvalidGrid, "bad grid field '" + std::string(s) + "'");
  };
  double a = 0, b = 0;
  int n = 0;
  num(text.substr(0, c1), a);
  num(text.substr(c1 + 1, c2 - c1 - 1), b);
  num(text.substr(c2 + 1), n);
  return linspace(a, b, n);
}

double grid_integral(const RealVector& values, const Grid& grid) {
  const auto& x = grid.points();
  if (static_cast<std::size_t>(values.size()) != x.size()) throw Error(ErrorCode::DimMismatch, "grid size");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (values(i) + values(i - 1));
  return s;
}

Eigen::MatrixXd hermite_table(int n_max, const Grid& grid) {
  if (n_max < 0) throw Error(ErrorCode::InvalidSpec, "degree must be >= 0");
  if (n_max > kMaxHermiteDegree) throw Error(ErrorCode::DegreeTooLarge, "degree above recurrence bound");
  const auto& xs = grid.points();
  Eigen::MatrixXd table(n_max + 1, static_cast<Eigen::Index>(xs.size()));
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double xi = xs[j];
    double prev = 0.0;
    double cur = norm0 * std::exp(-0.5 * xi * xi);
    table(0, j) = cur;
    for (int n = 0; n < n_max; ++n) {
      const double next = xi * std::sqrt(2.0 / (n + 1)) * cur - std::sqrt(double(n) / (n + 1)) * prev;
      prev = cur;
      cur = next;
      table(n + 1, j) = cur;
    }
  }
  return table;
}

RealVector hermite_wavefunction(int n, const Grid& grid) { return hermite_table(n, grid).row(n).transpose(); }

VectorT<double> position_amplitude(const FockVector& state, const Grid& grid) {
  const Eigen::MatrixXd table = hermite_table(state.dim() - 1, grid);
  return table.cast<Complex>().transpose() * state.coeffs;
}

RealVector position_density(const FockVector& state, const Grid& grid) {
  return position_amplitude(state, grid).cwiseAbs2();
}

DisplacementArg rescale_displacement(Complex z, const FuzzyCoefficients& c) {
  return {z, std::conj(c.u) * z - c.v * std::conj(z)};
}

Complex unconjugated_rescaling(Complex z, const FuzzyCoefficients& c) { return c.u * z - c.v * std::conj(z); }

Matrix displacement_matrix(int dim, Complex zr) {
  if (dim < 3) throw Error(ErrorCode::DimTooSmall, "dim must be >= 3");
  if (std::norm(zr) >= dim / 8.0)
    throw Error(ErrorCode::DisplacementTooLarge, "|z|^2 must stay below dim/8");
  const Matrix a = annihilator(dim);
  const Matrix gen = zr * a.adjoint() - std::conj(zr) * a;
  return matrix_exponential<double>(gen);
}

Matrix fuzzy_displacement(const LadderSet& ls, Complex z) {
  const Complex zr = rescale_displacement(z, ls.coeffs).z_rescaled;
  if (std::norm(zr) >= ls.dim / 8.0)
    throw Error(ErrorCode::DisplacementTooLarge, "|z|^2 must stay below dim/8");
  const Matrix gen = z * ls.a_fuzzy_dag - std::conj(z) * ls.a_fuzzy;
  return matrix_exponential<double>(gen);
}

FockVector coherent_displaced(Complex z, const FuzzyCoefficients& c, int dim) {
  const auto arg = rescale_displacement(z, c);
  const FockVector vac = fuzzy_vacuum(c, dim);
  FockVector out = make_fock_vector(displacement_matrix(dim, arg.z_rescaled) * vac.coeffs, "|zbar>");
  return out;
}

FockVector coherent_sum(Complex z, const FuzzyCoefficients& c, int dim) {
  if (std::norm(z) >= dim / 8.0) throw Error(ErrorCode::DisplacementTooLarge, "|z|^2 must stay below dim/8");
  const LadderSet ls = fuzzy_ladder(dim, c);
  const FockVector vac = fuzzy_vacuum(c, dim);
  constexpr int kMargin = 8;
  Vector acc = Vector::Zero(dim);
  // |nbar> = (a_fuzzy^dagger)^n |0bar> / sqrt(n! C^n); accumulate the
  // unnormalized powers with the matching weights.
  Vector power = vac.coeffs;
  Complex weight = std::exp(-0.5 * std::norm(z));
  for (int n = 0; 2 * n + kMargin < dim; ++n) {
    if (n > 0) {
      power = ls.a_fuzzy_dag * power;
      weight *= z / std::sqrt(double(n));
    }
    const double pn = power.norm();
    if (pn == 0.0) break;
    acc += weight * (power / pn);
    if (std::abs(weight) < 1e-18) break;
  }
  return make_fock_vector(acc, "||zbar>>");
}

double fidelity(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "fidelity needs equal dims");
  return std::norm(a.coeffs.dot(b.coeffs));
}

FockVector coherent_phase_space(Complex z, const FuzzyCoefficients& c, int dim, int radial, int angular) {
  const FockVector vac = fuzzy_vacuum(c, dim);
  const Complex zr = rescale_displacement(z, c).z_rescaled;
  const double radius = std::abs(zr) + 6.0;
  if (radial % 2) ++radial;
  const double h = radius / radial;
  const double dtheta = 2.0 * std::numbers::pi / angular;

  std::vector<double> inv_sqrt_fact(static_cast<std::size_t>(dim));
  inv_sqrt_fact[0] = 1.0;
  for (int n = 1; n < dim; ++n) inv_sqrt_fact[n] = inv_sqrt_fact[n - 1] / std::sqrt(double(n));

  Vector acc = Vector::Zero(dim);
  Vector ket(dim);
  for (int i = 1; i <= radial; ++i) {  // r = 0 carries zero measure
    const double r = i * h;
    const double simpson = (i == radial) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double w_r = simpson * h / 3.0 * r;
    for (int j = 0; j < angular; ++j) {
      const Complex zp = std::polar(r, j * dtheta);
      // |z'> coefficients and <z'|D(zr)|0bar> = e^{(zr conj(z') - conj(zr) z')/2} <z' - zr|0bar>
      const double gauss = std::exp(-0.5 * std::norm(zp));
      Complex p = 1.0;
      for (int n = 0; n < dim; ++n) {
        ket(n) = gauss * p * inv_sqrt_fact[n];
        p *= zp;
      }
      const Complex w = zp - zr;
      Complex overlap = 0.0;
      Complex q = 1.0;
      for (int n = 0; n < dim; ++n) {
        overlap += q * inv_sqrt_fact[n] * vac.coeffs(n);
        q *= std::conj(w);
      }
      overlap *= std::exp(-0.5 * std::norm(w)) * std::exp(0.5 * (zr * std::conj(zp) - std::conj(zr) * zp));
      acc += (w_r * dtheta / std::numbers::pi) * overlap * ket;
    }
  }
  return make_fock_vector(acc, "|zbar> (phase space)");
}

}  // namespace fuzzy
