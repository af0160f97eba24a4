#pragma once

#include <array>
#include <cmath>

#include "numkit.hpp"

namespace qci {

inline CMatrix pauli_1() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline CMatrix pauli_2() {
  CMatrix s(2, 2);
  s << 0, complex(0, -1), complex(0, 1), 0;
  return s;
}

inline CMatrix pauli_3() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// Repo-wide operator basis order for a two-level system: {1, sigma3, sigma1, sigma2}.
inline std::array<CMatrix, 4> bloch_basis() {
  return {CMatrix::Identity(2, 2), pauli_3(), pauli_1(), pauli_2()};
}

// Same basis, orthonormal under <a,b> = Tr(a^dag b).
inline std::array<CMatrix, 4> bloch_basis_orthonormal() {
  std::array<CMatrix, 4> e = bloch_basis();
  const double s = 1.0 / std::sqrt(2.0);
  for (auto& m : e) m *= s;
  return e;
}

// A validated density matrix: Hermitian, unit trace, positive semidefinite
// (all within tol). The matrix is stored exactly as given.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m, double tol = strict_tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
      fail(Errc::not_square, "density matrix must be square and nonempty");
    if (max_abs(m_ - m_.adjoint()) > tol) fail(Errc::not_hermitian, "density matrix is not Hermitian");
    const double trace_dev = std::abs(m_.trace() - complex(1.0));
    if (trace_dev > tol)
      fail(Errc::domain, "density matrix trace deviates from 1 by " + std::to_string(trace_dev));
    EigDecomposition eig = hermitian_eig(m_, tol);
    if (eig.values.size() > 0 && eig.values(eig.values.size() - 1) < -tol)
      fail(Errc::not_psd, "density matrix has negative eigenvalue " +
                              std::to_string(eig.values(eig.values.size() - 1)));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& mat() const { return m_; }

  static DensityMatrix maximally_mixed(Eigen::Index d) {
    if (d < 1) fail(Errc::domain, "dimension must be positive");
    return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d));
  }

  // |psi><psi| with psi normalized first.
  static DensityMatrix pure(const CVector& psi) {
    const double n = psi.norm();
    if (n <= 0.0) fail(Errc::domain, "cannot normalize the zero vector");
    CVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
  }

 private:
  CMatrix m_;
};

// Bloch coordinates (r1, r2, r3) along (sigma3, sigma1, sigma2).
struct QubitBloch {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }
};

inline DensityMatrix bloch_to_density(const QubitBloch& r, double tol = strict_tol) {
  if (r.norm() > 1.0 + tol)
    fail(Errc::bloch_norm_exceeded, "Bloch vector norm " + std::to_string(r.norm()));
  CMatrix rho = 0.5 * (CMatrix::Identity(2, 2) + r.r1 * pauli_3() + r.r2 * pauli_1() + r.r3 * pauli_2());
  return DensityMatrix(rho, tol);
}

inline QubitBloch density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) fail(Errc::dim_mismatch, "density_to_bloch needs a qubit state");
  const CMatrix& m = rho.mat();
  QubitBloch r;
  r.r1 = std::real(m(0, 0) - m(1, 1));
  r.r2 = 2.0 * std::real(m(0, 1));
  r.r3 = -2.0 * std::imag(m(0, 1));
  return r;
}

// Entrywise complex conjugate, i.e. the state transposed in the computational basis.
inline DensityMatrix conjugate_state(const DensityMatrix& rho) {
  return DensityMatrix(rho.mat().conjugate());
}

// -sum p log2 p over a spectrum. Values below entropy_floor count as exact
// zeros; negatives beyond -tol are rejected.
inline double entropy_of_spectrum(const RVector& p, double tol = analysis_tol) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -tol) fail(Errc::not_psd, "entropy of a spectrum with value " + std::to_string(p(i)));
    if (p(i) < entropy_floor) continue;
    s -= p(i) * std::log2(p(i));
  }
  return std::max(0.0, s);
}

// von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho, double tol = analysis_tol) {
  return entropy_of_spectrum(hermitian_eig(rho.mat(), tol).values, tol);
}

}  // namespace qci
