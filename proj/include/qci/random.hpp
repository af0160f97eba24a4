#pragma once

#include <random>

#include "qstate.hpp"

namespace qci {

using Rng = std::mt19937_64;

inline CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = complex(n(rng), n(rng));
  return g;
}

// Haar-distributed: QR of a Ginibre matrix with the R-diagonal phases fixed.
inline CMatrix random_unitary(Eigen::Index d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    const complex p = r(i, i);
    if (std::abs(p) > 0.0) q.col(i) *= p / std::abs(p);
  }
  return q;
}

// Full rank almost surely.
inline DensityMatrix random_density(Eigen::Index d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  const CMatrix gram = g * g.adjoint();
  // symmetrize into a fresh matrix: writing `m = ... m.adjoint()` in place
  // aliases (adjoint reads entries the assignment already overwrote)
  CMatrix m = 0.5 * (gram + gram.adjoint());
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

inline CVector random_pure_vector(Eigen::Index d, Rng& rng) {
  return ginibre(d, 1, rng).col(0).normalized();
}

inline std::vector<CVector> random_orthonormal_basis(Eigen::Index d, Rng& rng) {
  const CMatrix u = random_unitary(d, rng);
  std::vector<CVector> basis;
  basis.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) basis.push_back(u.col(i));
  return basis;
}

// Random positive operators A_q whitened into a resolution of the identity:
// E_q = S^(-1/2) A_q S^(-1/2) with S = sum A_q.
inline std::vector<CMatrix> random_povm(Eigen::Index d, int outcomes, Rng& rng) {
  if (outcomes < 1) fail(Errc::domain, "a POVM needs at least one outcome");
  std::vector<CMatrix> a;
  CMatrix s = CMatrix::Zero(d, d);
  for (int q = 0; q < outcomes; ++q) {
    const CMatrix g = ginibre(d, d, rng);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const EigDecomposition eig = hermitian_eig(0.5 * (s + s.adjoint()));
  RVector inv_root(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= 0.0) fail(Errc::not_psd, "degenerate POVM draw");
    inv_root(i) = 1.0 / std::sqrt(eig.values(i));
  }
  const CMatrix w = eig.vectors * inv_root.asDiagonal() * eig.vectors.adjoint();
  for (CMatrix& e : a) {
    const CMatrix we = w * e * w;
    e = 0.5 * (we + we.adjoint());
  }
  return a;
}

}  // namespace qci
