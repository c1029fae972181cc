#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fuzzy/core.hpp"
#include "fuzzy/moments.hpp"

namespace fuzzy {

// ---------------------------------------------------------------------------
// Scalar-generic building blocks on the truncated Fock basis |0>..|dim-1>.

/// Sharp annihilator: sqrt(n) on the first superdiagonal.
template <typename Real = double>
MatrixT<Real> annihilator(int dim) {
  if (dim < 1) throw Error(ErrorCode::DimTooSmall, "dim must be >= 1");
  MatrixT<Real> a = MatrixT<Real>::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(Real(n));
  return a;
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
  return (A * B - B * A).eval();
}

/// Leading (N - 2b) x (N - 2b) block, free of truncation edge artifacts for
/// an expression of total ladder order b.
template <typename Derived>
auto interior_block(const Eigen::MatrixBase<Derived>& M, int b) {
  const auto n = M.rows() - 2 * b;
  if (n <= 0) throw Error(ErrorCode::DimTooSmall, "interior block is empty");
  return M.topLeftCorner(n, n);
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& H) {
  return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

struct LadderSet {
  int dim = 0;
  Matrix a_sharp, a_sharp_dag;
  Matrix a_fuzzy, a_fuzzy_dag;
  FuzzyCoefficients coeffs;
  double hbar_omega = 1.0;

  /// q = (a + a^dagger)/sqrt 2 and p = i(a^dagger - a)/sqrt 2 with hbar = m = omega = 1.
  Matrix position() const { return (a_sharp + a_sharp_dag) / std::sqrt(2.0); }
  Matrix momentum() const { return Complex(0.0, 1.0) * (a_sharp_dag - a_sharp) / std::sqrt(2.0); }
};

inline LadderSet fuzzy_ladder(int dim, const FuzzyCoefficients& coeffs) {
  if (dim < 3) throw Error(ErrorCode::DimTooSmall, "dim must be >= 3");
  LadderSet ls;
  ls.dim = dim;
  ls.coeffs = coeffs;
  ls.a_sharp = annihilator(dim);
  ls.a_sharp_dag = ls.a_sharp.adjoint();
  ls.a_fuzzy = coeffs.u * ls.a_sharp + coeffs.v * ls.a_sharp_dag;
  ls.a_fuzzy_dag = ls.a_fuzzy.adjoint();
  return ls;
}

inline LadderSet sharp_ladder(int dim) { return fuzzy_ladder(dim, FuzzyCoefficients{}); }

/// a_{w'} in terms of a_w, a_w^dagger for r = w'/w (negative r allowed).
inline Matrix annihilator_at_frequency(int dim, double ratio) {
  if (ratio == 0.0) throw Error(ErrorCode::ZeroRatio, "frequency ratio must be nonzero");
  if (dim < 3) throw Error(ErrorCode::DimTooSmall, "dim must be >= 3");
  const Matrix a = annihilator(dim);
  const Complex inv_root = 1.0 / branch_sqrt(ratio);
  return inv_root * (a + (0.5 * (ratio - 1.0)) * (a.adjoint() + a));
}

/// [a_w, a_{w'}] = (sqrt r - 1/sqrt r) / 2.
inline double cross_commutator_value(double ratio) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::NonPositiveRatio, "ratio must be > 0");
  const double s = std::sqrt(ratio);
  return 0.5 * (s - 1.0 / s);
}

inline Matrix number_operator(const LadderSet& ls) {
  if (ls.coeffs.C <= 1e-12) throw Error(ErrorCode::DegenerateC, "commutation function too small");
  Matrix n = ls.a_fuzzy_dag * ls.a_fuzzy / ls.coeffs.C;
  return 0.5 * (n + n.adjoint());
}

struct HamiltonianSpec {
  double hbar_omega = 1.0;
  double drive = 0.0;  ///< lambda in -lambda (a^dagger + a)
  bool fuzzy = true;
};

inline Matrix hamiltonian(const LadderSet& ls, const HamiltonianSpec& h) {
  if (!std::isfinite(h.drive)) throw Error(ErrorCode::InvalidSpec, "drive must be finite");
  const Matrix id = Matrix::Identity(ls.dim, ls.dim);
  Matrix H;
  if (h.fuzzy)
    H = h.hbar_omega * (ls.a_fuzzy_dag * ls.a_fuzzy + (0.5 * ls.coeffs.C) * id) -
        h.drive * (ls.a_fuzzy_dag + ls.a_fuzzy);
  else
    H = h.hbar_omega * (ls.a_sharp_dag * ls.a_sharp + 0.5 * id) - h.drive * (ls.a_sharp_dag + ls.a_sharp);
  return 0.5 * (H + H.adjoint());
}

// ---------------------------------------------------------------------------

struct FockVector {
  Vector coeffs;
  std::string label;

  int dim() const { return static_cast<int>(coeffs.size()); }
  double tail_weight() const {
    const auto n = coeffs.size();
    return n < 2 ? 0.0 : std::norm(coeffs(n - 1)) + std::norm(coeffs(n - 2));
  }
};

inline FockVector make_fock_vector(Vector v, std::string label) {
  const double n = v.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidSpec, "zero state");
  return {v / n, std::move(label)};
}

inline FockVector basis_state(int dim, int n) {
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return {v, "|" + std::to_string(n) + ">"};
}

constexpr double kDefaultTailTol = 1e-14;

/// |I1 / (2 I0 + I1)| = |v/u|, the geometric decay of the vacuum coefficients.
inline double vacuum_decay_ratio(const FuzzyCoefficients& c) { return std::abs(c.v / c.u); }

/// Smallest even dim that keeps the vacuum tail below `tail_tol`.
inline int auto_dim(const FuzzyCoefficients& c, double tail_tol = kDefaultTailTol) {
  const double rho = vacuum_decay_ratio(c);
  if (rho == 0.0) return 16;
  if (rho >= 1.0) throw Error(ErrorCode::NonConvergentSeries, "vacuum series does not converge");
  const int dim = 2 * static_cast<int>(std::ceil(std::log(tail_tol) / std::log(rho))) + 8;
  return std::max(16, dim + dim % 2);
}

/// Solves a_fuzzy |0bar> = 0 on the sharp basis by the two-term recursion
///   alpha_{n+1} sqrt(n+1) (2 I0 + I1) + alpha_{n-1} sqrt(n) I1 = 0,  alpha_1 = 0,
/// normalized with alpha_0 > 0.
inline FockVector fuzzy_vacuum(const FuzzyCoefficients& c, int dim, double tail_tol = kDefaultTailTol) {
  if (dim < 3) throw Error(ErrorCode::DimTooSmall, "dim must be >= 3");
  if (vacuum_decay_ratio(c) >= 1.0)
    throw Error(ErrorCode::NonConvergentSeries, "|I1/(2 I0 + I1)| >= 1, vacuum series diverges");
  // 2 I0 + I1 = 2u and I1 = 2v
  const Complex ratio = -c.v / c.u;
  Vector alpha = Vector::Zero(dim);
  alpha(0) = 1.0;
  for (int n = 1; n + 1 < dim; ++n) alpha(n + 1) = ratio * std::sqrt(double(n) / double(n + 1)) * alpha(n - 1);
  FockVector vac = make_fock_vector(alpha, "|0bar>");
  if (vac.tail_weight() > tail_tol)
  {
    char msg[128];
    std::snprintf(msg, sizeof msg, "vacuum tail %.3e exceeds tail_tol %.3e; try dim >= %d", vac.tail_weight(),
                  tail_tol, auto_dim(c, tail_tol));
    throw Error(ErrorCode::TailTooFat, msg);
  }
  return vac;
}

/// normalize((a_fuzzy^dagger)^n |0bar>).
inline FockVector fuzzy_fock_state(int n, const FockVector& vac, const LadderSet& ls, int margin = 8) {
  if (n < 0) throw Error(ErrorCode::InvalidSpec, "n must be >= 0");
  if (vac.dim() != ls.dim) throw Error(ErrorCode::DimMismatch, "vacuum and ladder dims differ");
  if (2 * n + margin >= ls.dim) throw Error(ErrorCode::TruncationOverflow, "n too large for dim");
  Vector v = vac.coeffs;
  for (int k = 0; k < n; ++k) v = ls.a_fuzzy_dag * v;
  return make_fock_vector(v, "|" + std::to_string(n) + "bar>");
}

// ---------------------------------------------------------------------------

struct Eigensystem {
  std::vector<double> values;
  Matrix vectors;  ///< columns, same order as values
};

/// Weight of a vector on odd sharp-Fock components.
inline double odd_weight(const Eigen::Ref<const Vector>& v) {
  double w = 0.0;
  for (Eigen::Index i = 1; i < v.size(); i += 2) w += std::norm(v(i));
  return w;
}

/// Ascending eigenpairs of a Hermitian matrix. Degenerate levels (within
/// 1e-10) list the more parity-even vector first.
inline Eigensystem eigensystem(const Matrix& H) {
  if (H.rows() != H.cols()) throw Error(ErrorCode::DimMismatch, "matrix must be square");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (hermiticity_defect(H) > 1e-10 * scale) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  std::vector<int> order(vals.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(vals(a) - vals(b)) > 1e-10) return vals(a) < vals(b);
    return odd_weight(vecs.col(a)) < odd_weight(vecs.col(b));
  });
  Eigensystem es;
  es.vectors.resize(H.rows(), H.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    es.values.push_back(vals(order[i]));
    es.vectors.col(static_cast<Eigen::Index>(i)) = vecs.col(order[i]);
  }
  return es;
}

/// Lowest `count` eigenvalues; count is capped at dim/2 (interior-converged levels).
inline std::vector<double> spectrum(const Matrix& H, int count) {
  if (count < 0 || count > H.rows() / 2)
    throw Error(ErrorCode::TruncationOverflow, "count must be <= dim/2");
  auto es = eigensystem(H);
  es.values.resize(static_cast<std::size_t>(count));
  return es.values;
}

}  // namespace fuzzy
