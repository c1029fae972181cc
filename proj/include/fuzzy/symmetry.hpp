#pragma once

#include <string>

#include <Eigen/SVD>

#include "fuzzy/core.hpp"
#include "fuzzy/fock.hpp"

namespace fuzzy {

enum class TransformKind { linear_unitary, antiunitary };

inline const char* to_string(TransformKind k) {
  return k == TransformKind::linear_unitary ? "linear_unitary" : "antiunitary";
}

/// Antiunitary transforms act as U K, with K entrywise conjugation in the
/// sharp Fock basis.
struct SymmetryTransform {
  TransformKind kind = TransformKind::linear_unitary;
  Matrix matrix;
  std::string name;
};

struct SymmetryVerdict {
  bool invariant = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(M.eval());
  return svd.singularValues()(0);
}

inline SymmetryTransform parity_transform(int dim) {
  if (dim < 2) throw Error(ErrorCode::DimTooSmall, "dim must be >= 2");
  SymmetryTransform t{TransformKind::linear_unitary, Matrix::Zero(dim, dim), "parity"};
  for (int n = 0; n < dim; ++n) t.matrix(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return t;
}

inline SymmetryTransform time_reversal_transform(int dim) {
  if (dim < 2) throw Error(ErrorCode::DimTooSmall, "dim must be >= 2");
  return {TransformKind::antiunitary, Matrix::Identity(dim, dim), "time_reversal"};
}

inline Matrix transform_operator(const SymmetryTransform& t, const Matrix& A) {
  if (A.rows() != t.matrix.rows() || A.cols() != t.matrix.cols())
    throw Error(ErrorCode::DimMismatch, "operator and transform dims differ");
  const Matrix& U = t.matrix;
  if (t.kind == TransformKind::linear_unitary) return U * A * U.adjoint();
  return U * A.conjugate() * U.adjoint();
}

/// Spectral-norm deviation of O H O^-1 from H on the interior block
/// (dropping `trailing` rows and columns).
inline SymmetryVerdict invariance_verdict(const SymmetryTransform& t, const Matrix& H, double tol,
                                          int trailing = 2) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidTolerance, "tolerance must be > 0");
  const Matrix diff = transform_operator(t, H) - H;
  const auto n = diff.rows() - trailing;
  if (n <= 0) throw Error(ErrorCode::DimTooSmall, "interior block is empty");
  SymmetryVerdict v;
  v.tolerance = tol;
  v.deviation = spectral_norm(diff.topLeftCorner(n, n));
  v.invariant = v.deviation <= tol;
  return v;
}

}  // namespace fuzzy
