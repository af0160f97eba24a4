#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "errors.hpp"

namespace qci {

using complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Default tolerances. strict_tol guards primary constructions (channels,
// user-supplied states); analysis_tol guards states derived from them, where
// round-off from the TP/PSD checks of the inputs can pile up.
inline constexpr double strict_tol = 1e-10;
inline constexpr double analysis_tol = 1e-9;
// Eigenvalues below this are treated as exact zeros when taking entropies.
inline constexpr double entropy_floor = 1e-12;

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// Eigenvalues in descending order; vectors.col(i) belongs to values(i).
struct EigDecomposition {
  RVector values;
  CMatrix vectors;
};

inline EigDecomposition hermitian_eig(const CMatrix& m, double tol = strict_tol) {
  if (m.rows() != m.cols()) fail(Errc::not_square, "hermitian_eig needs a square matrix");
  if (max_abs(m - m.adjoint()) > tol) fail(Errc::not_hermitian, "hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) fail(Errc::no_convergence, "hermitian_eig failed to converge");
  const Eigen::Index n = m.rows();
  EigDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return out;
}

inline CMatrix matrix_exp(const CMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::not_square, "matrix_exp needs a square matrix");
  if (max_abs(m) == 0.0) return CMatrix::Identity(m.rows(), m.cols());  // exp(0) = 1 exactly
  return m.exp();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

enum class Keep { first, second };

// Partial trace of an operator on a d1 x d2 tensor product, row index r1*d2 + r2.
inline CMatrix partial_trace(const CMatrix& m, Eigen::Index d1, Eigen::Index d2, Keep keep) {
  if (d1 < 1 || d2 < 1 || m.rows() != m.cols() || m.rows() != d1 * d2)
    fail(Errc::dim_mismatch, "partial_trace: operator is not " + std::to_string(d1) + "x" +
                                 std::to_string(d2) + " on a tensor product");
  if (keep == Keep::first) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d1; ++j)
        for (Eigen::Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (Eigen::Index i = 0; i < d2; ++i)
    for (Eigen::Index j = 0; j < d2; ++j)
      for (Eigen::Index k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
  return out;
}

// rho^(1/4) for positive semidefinite rho. Eigenvalues in [-tol, 0) are
// clipped to zero; anything below -tol is a genuine negativity.
inline CMatrix matrix_quarter_power(const CMatrix& rho, double tol = strict_tol) {
  EigDecomposition eig = hermitian_eig(rho, tol);
  RVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double v = eig.values(i);
    if (v < -tol) fail(Errc::not_psd, "matrix_quarter_power: eigenvalue " + std::to_string(v));
    roots(i) = v <= 0.0 ? 0.0 : std::pow(v, 0.25);
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace qci
