#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fuzzy {

template <typename Real>
using ComplexT = std::complex<Real>;

template <typename Real>
using MatrixT = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorT = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, 1>;

using Complex = ComplexT<double>;
using Matrix = MatrixT<double>;
using Vector = VectorT<double>;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
  InvalidSpec,
  DeltaHasNoDensity,
  InvalidTolerance,
  QuadratureNonConvergence,
  UnsupportedAnalyticKind,
  DimTooSmall,
  ZeroRatio,
  NonPositiveRatio,
  DegenerateC,
  NonConvergentSeries,
  TailTooFat,
  TruncationOverflow,
  NotHermitian,
  DegreeTooLarge,
  DisplacementTooLarge,
  DimMismatch,
  NonPositiveOmega,
  InvalidGrid,
  InvalidModel,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Square root with the branch cut along the negative imaginary axis, i.e.
/// arg(z) taken in [-pi/2, 3pi/2). On the negative real axis this gives
/// sqrt(-r) = +i sqrt(r), hence 1/sqrt(-1) = -i. Every complex root in the
/// library goes through here.
template <typename Real>
ComplexT<Real> branch_sqrt(const ComplexT<Real>& z) {
  const Real r = std::abs(z);
  if (r == Real(0)) return {};
  Real theta = std::arg(z);  // (-pi, pi]
  const Real pi = Real(3.14159265358979323846264338327950288L);
  if (theta < -pi / 2) theta += 2 * pi;
  return std::polar(std::sqrt(r), theta / 2);
}

template <typename Real>
ComplexT<Real> branch_sqrt(Real x) {
  return branch_sqrt(ComplexT<Real>(x, Real(0)));
}

}  // namespace fuzzy
