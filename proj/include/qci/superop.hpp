#pragma once

#include <utility>
#include <vector>

#include "qstate.hpp"

namespace qci {

// Report of the complete-positivity / trace-preservation audit. cp folds in
// Hermiticity preservation; min_choi_eig refers to the Choi operator
// normalized to unit trace for a TP map (i.e. divided by dim_in).
struct CpTpReport {
  bool cp = false;
  bool tp = false;
  double min_choi_eig = 0.0;
  double max_trace_dev = 0.0;
};

// A linear map on operators, stored as the image blocks s_kl of the input
// dyads |b_k><b_l|. By default b_k is the computational basis; a unitary
// basis_in declares a different orthonormal input basis for the same map.
class Superoperator {
 public:
  static Superoperator from_blocks(std::vector<CMatrix> blocks, Eigen::Index dim_in,
                                   Eigen::Index dim_out, CMatrix basis_in = CMatrix(),
                                   double tol = strict_tol) {
    Superoperator s(std::move(blocks), dim_in, dim_out, std::move(basis_in), tol);
    const double trace_dev = s.max_trace_deviation();
    if (trace_dev > tol)
      fail(Errc::not_trace_preserving, "block traces deviate from delta_kl by " + std::to_string(trace_dev));
    const double herm_dev = s.hermiticity_deviation();
    if (herm_dev > tol)
      fail(Errc::not_hermitian, "blocks break s_lk = s_kl^dag by " + std::to_string(herm_dev));
    const double min_eig = s.min_choi_eigenvalue();
    if (min_eig < -tol)
      fail(Errc::cp_violated, "Choi operator has eigenvalue " + std::to_string(min_eig));
    return s;
  }

  // Same storage with no physics checks; shapes are still enforced. Meant for
  // auditing untrusted channel descriptions via check_cp_tp.
  static Superoperator from_blocks_unchecked(std::vector<CMatrix> blocks, Eigen::Index dim_in,
                                             Eigen::Index dim_out, CMatrix basis_in = CMatrix(),
                                             double tol = strict_tol) {
    return Superoperator(std::move(blocks), dim_in, dim_out, std::move(basis_in), tol);
  }

  Eigen::Index dim_in() const { return din_; }
  Eigen::Index dim_out() const { return dout_; }

  const CMatrix& block(Eigen::Index k, Eigen::Index l) const { return blocks_[k * din_ + l]; }
  const CMatrix& basis_in() const { return basis_; }
  bool identity_basis() const { return identity_basis_; }

  // The same map with blocks re-expressed over the computational input basis.
  Superoperator canonical() const {
    if (identity_basis_) return *this;
    std::vector<CMatrix> out(static_cast<std::size_t>(din_ * din_), CMatrix::Zero(dout_, dout_));
    for (Eigen::Index k = 0; k < din_; ++k)
      for (Eigen::Index l = 0; l < din_; ++l) {
        CMatrix& b = out[k * din_ + l];
        for (Eigen::Index m = 0; m < din_; ++m)
          for (Eigen::Index n = 0; n < din_; ++n) {
            const complex c = std::conj(basis_(k, m)) * basis_(l, n);
            if (c != complex(0.0)) b += c * block(m, n);
          }
      }
    return Superoperator(std::move(out), din_, dout_, CMatrix(), strict_tol);
  }

  // Choi operator, block (k,l) holding s_kl (computational basis), divided by
  // dim_in so a TP map yields unit trace.
  CMatrix choi() const {
    Superoperator c = canonical();
    CMatrix out(din_ * dout_, din_ * dout_);
    for (Eigen::Index k = 0; k < din_; ++k)
      for (Eigen::Index l = 0; l < din_; ++l)
        out.block(k * dout_, l * dout_, dout_, dout_) = c.block(k, l);
    return out / static_cast<double>(din_);
  }

  double max_trace_deviation() const {
    double dev = 0.0;
    for (Eigen::Index k = 0; k < din_; ++k)
      for (Eigen::Index l = 0; l < din_; ++l)
        dev = std::max(dev, std::abs(block(k, l).trace() - (k == l ? complex(1.0) : complex(0.0))));
    return dev;
  }

  double hermiticity_deviation() const {
    double dev = 0.0;
    for (Eigen::Index k = 0; k < din_; ++k)
      for (Eigen::Index l = 0; l < din_; ++l)
        dev = std::max(dev, max_abs(block(l, k) - block(k, l).adjoint()));
    return dev;
  }

  double min_choi_eigenvalue() const {
    CMatrix c = choi();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(Errc::no_convergence, "Choi eigensolve failed");
    return solver.eigenvalues().minCoeff();
  }

 private:
  Superoperator(std::vector<CMatrix> blocks, Eigen::Index din, Eigen::Index dout, CMatrix basis,
                double tol)
      : blocks_(std::move(blocks)), basis_(std::move(basis)), din_(din), dout_(dout) {
    if (din_ < 1 || dout_ < 1) fail(Errc::domain, "superoperator dimensions must be positive");
    if (blocks_.size() != static_cast<std::size_t>(din_ * din_))
      fail(Errc::dim_mismatch, "expected " + std::to_string(din_ * din_) + " blocks, got " +
                                   std::to_string(blocks_.size()));
    for (const CMatrix& b : blocks_)
      if (b.rows() != dout_ || b.cols() != dout_)
        fail(Errc::dim_mismatch, "every block must be " + std::to_string(dout_) + "x" + std::to_string(dout_));
    if (basis_.size() == 0) {
      identity_basis_ = true;
      basis_ = CMatrix::Identity(din_, din_);
    } else {
      if (basis_.rows() != din_ || basis_.cols() != din_)
        fail(Errc::dim_mismatch, "input basis must be " + std::to_string(din_) + "x" + std::to_string(din_));
      if (max_abs(basis_.adjoint() * basis_ - CMatrix::Identity(din_, din_)) > tol)
        fail(Errc::not_orthonormal, "input basis columns are not orthonormal");
      identity_basis_ = max_abs(basis_ - CMatrix::Identity(din_, din_)) == 0.0;
    }
  }

  std::vector<CMatrix> blocks_;
  CMatrix basis_;
  Eigen::Index din_ = 0;
  Eigen::Index dout_ = 0;
  bool identity_basis_ = false;
};

// Image of an arbitrary operator; no output validation.
inline CMatrix apply_raw(const Superoperator& s, const CMatrix& op) {
  if (op.rows() != s.dim_in() || op.cols() != s.dim_in())
    fail(Errc::dim_mismatch, "operator dimension does not match the channel input");
  CMatrix out = CMatrix::Zero(s.dim_out(), s.dim_out());
  const CMatrix& basis = s.basis_in();
  for (Eigen::Index k = 0; k < s.dim_in(); ++k)
    for (Eigen::Index l = 0; l < s.dim_in(); ++l) {
      const complex c = s.identity_basis() ? op(k, l) : complex(basis.col(k).adjoint() * op * basis.col(l));
      if (c != complex(0.0)) out += c * s.block(k, l);
    }
  return out;
}

// Image of a state, validated as a state.
inline DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho) {
  return DensityMatrix(apply_raw(s, rho.mat()), analysis_tol);
}

// second after first: (second . first)(rho) = second(first(rho)).
inline Superoperator compose(const Superoperator& second, const Superoperator& first) {
  if (first.dim_out() != second.dim_in())
    fail(Errc::dim_mismatch, "cannot compose: inner dimensions disagree");
  const Eigen::Index din = first.dim_in();
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(din * din));
  for (Eigen::Index k = 0; k < din; ++k)
    for (Eigen::Index l = 0; l < din; ++l) blocks.push_back(apply_raw(second, first.block(k, l)));
  return Superoperator::from_blocks(std::move(blocks), din, second.dim_out(), first.basis_in());
}

// Conjugation rho -> U rho U^dag as a superoperator.
inline Superoperator from_unitary(const CMatrix& u, double tol = strict_tol) {
  if (u.rows() != u.cols()) fail(Errc::not_square, "unitary must be square");
  const Eigen::Index d = u.rows();
  if (max_abs(u.adjoint() * u - CMatrix::Identity(d, d)) > tol)
    fail(Errc::not_unitary, "matrix is not unitary");
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) blocks.push_back(u.col(k) * u.col(l).adjoint());
  return Superoperator::from_blocks(std::move(blocks), d, d, CMatrix(), tol);
}

// Generator (or any superoperator) written over the orthonormalized basis
// {1, sigma3, sigma1, sigma2}/sqrt(2) of qubit operator space.
struct OperatorBasisMatrix {
  Eigen::Matrix4d mat = Eigen::Matrix4d::Zero();
};

// exp(generator * t), converted from the operator basis back to dyad blocks.
inline Superoperator from_bloch_generator(const OperatorBasisMatrix& generator, double t,
                                          double tol = strict_tol) {
  if (!(t >= 0.0)) fail(Errc::domain, "evolution time must be >= 0");
  const CMatrix s_mn = matrix_exp((generator.mat * t).cast<complex>());
  const std::array<CMatrix, 4> e = bloch_basis_orthonormal();
  std::vector<CMatrix> blocks(4, CMatrix::Zero(2, 2));
  for (Eigen::Index k = 0; k < 2; ++k)
    for (Eigen::Index l = 0; l < 2; ++l) {
      CMatrix& b = blocks[k * 2 + l];
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) b += s_mn(m, n) * e[n](l, k) * e[m];
    }
  return Superoperator::from_blocks(std::move(blocks), 2, 2, CMatrix(), tol);
}

enum class Traced { first };

// Channel seen by system 1 when a joint channel acts on systems 1x2 and
// system 2 starts in second_init: rho1 -> Tr_1[ S12(rho1 x rho2) ]. The
// traced-out factor is the first one; the result maps d1 -> d2.
inline Superoperator reduce_joint_channel(const Superoperator& joint, const DensityMatrix& second_init,
                                          Traced = Traced::first) {
  const Eigen::Index d2 = second_init.dim();
  const Eigen::Index dd = joint.dim_in();
  if (joint.dim_out() != dd) fail(Errc::dim_mismatch, "joint channel must preserve the total dimension");
  if (dd % d2 != 0) fail(Errc::dim_mismatch, "joint dimension is not a multiple of the second factor");
  const Eigen::Index d1 = dd / d2;
  const Superoperator c = joint.canonical();
  const CMatrix& rho2 = second_init.mat();
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d1 * d1));
  for (Eigen::Index k = 0; k < d1; ++k)
    for (Eigen::Index l = 0; l < d1; ++l) {
      CMatrix b = CMatrix::Zero(d2, d2);
      for (Eigen::Index p = 0; p < d2; ++p)
        for (Eigen::Index q = 0; q < d2; ++q) {
          const complex w = rho2(p, q);
          if (w != complex(0.0)) b += w * partial_trace(c.block(k * d2 + p, l * d2 + q), d1, d2, Keep::second);
        }
      blocks.push_back(std::move(b));
    }
  return Superoperator::from_blocks(std::move(blocks), d1, d2);
}

// Map of the "measure whether the state lies in the subspace of P" choice:
// rho -> P rho P + Tr[(1-P) rho] |e><e| with |e> the extra last basis vector
// of the (d+1)-dimensional output space.
inline Superoperator choice_superoperator(const CMatrix& subspace_projector, Eigen::Index dim_ext,
                                          double tol = strict_tol) {
  const CMatrix& p = subspace_projector;
  if (p.rows() != p.cols()) fail(Errc::not_square, "projector must be square");
  const Eigen::Index d = p.rows();
  if (dim_ext != d + 1) fail(Errc::dim_mismatch, "extended dimension must be d+1");
  if (max_abs(p - p.adjoint()) > tol || max_abs(p * p - p) > tol)
    fail(Errc::not_projector, "matrix is not an orthogonal projector");
  std::vector<CMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      CMatrix b = CMatrix::Zero(dim_ext, dim_ext);
      b.topLeftCorner(d, d) = p.col(k) * p.row(l);  // P|k><l|P
      b(d, d) = (k == l ? complex(1.0) : complex(0.0)) - p(k, l);
      blocks.push_back(std::move(b));
    }
  return Superoperator::from_blocks(std::move(blocks), d, dim_ext);
}

// Report-only audit; never throws on physics violations.
inline CpTpReport check_cp_tp(const Superoperator& s, double tol = strict_tol) {
  CpTpReport r;
  r.max_trace_dev = s.max_trace_deviation();
  r.tp = r.max_trace_dev <= tol;
  const double herm_dev = s.hermiticity_deviation();
  r.min_choi_eig = s.min_choi_eigenvalue();
  r.cp = herm_dev <= tol && r.min_choi_eig >= -tol;
  return r;
}

inline Superoperator identity_superoperator(Eigen::Index d) {
  std::vector<CMatrix> blocks;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      CMatrix b = CMatrix::Zero(d, d);
      b(k, l) = 1.0;
      blocks.push_back(std::move(b));
    }
  return Superoperator::from_blocks(std::move(blocks), d, d);
}

// Wipes off-diagonal dyads: |k><l| -> delta_kl |k><k|.
inline Superoperator reduction_superoperator(Eigen::Index d) {
  std::vector<CMatrix> blocks;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      CMatrix b = CMatrix::Zero(d, d);
      if (k == l) b(k, k) = 1.0;
      blocks.push_back(std::move(b));
    }
  return Superoperator::from_blocks(std::move(blocks), d, d);
}

// The trace functional as a channel into a one-dimensional space.
inline Superoperator trace_superoperator(Eigen::Index d) {
  std::vector<CMatrix> blocks;
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) {
      CMatrix b(1, 1);
      b(0, 0) = k == l ? 1.0 : 0.0;
      blocks.push_back(std::move(b));
    }
  return Superoperator::from_blocks(std::move(blocks), d, 1);
}

// rho -> target * Tr(rho).
inline Superoperator constant_superoperator(const DensityMatrix& target, Eigen::Index dim_in) {
  std::vector<CMatrix> blocks;
  const CMatrix zero = CMatrix::Zero(target.dim(), target.dim());
  for (Eigen::Index k = 0; k < dim_in; ++k)
    for (Eigen::Index l = 0; l < dim_in; ++l) blocks.push_back(k == l ? target.mat() : zero);
  return Superoperator::from_blocks(std::move(blocks), dim_in, target.dim());
}

}  // namespace qci
