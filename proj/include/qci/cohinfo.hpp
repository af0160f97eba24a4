#pragma once

#include "superop.hpp"

namespace qci {

// Joint output/input state rho_alpha on H_out x H_in (output factor first,
// row index r_out * dim_in + r_in). Its first marginal is the channel output,
// its second the conjugate of the input.
struct JointState {
  DensityMatrix rho_alpha;
  Eigen::Index dim_out = 0;
  Eigen::Index dim_in = 0;
};

struct ChannelReport {
  double s_in = 0.0;
  double s_out = 0.0;
  double s_e = 0.0;
  double i_c = 0.0;    // max(0, raw_ic)
  double raw_ic = 0.0; // s_out - s_e, sign intact
  std::vector<double> eig_out;    // descending
  std::vector<double> eig_alpha;  // descending
};

// Assembly from an explicit input eigensystem {p_i, |v_i>}:
//   rho_alpha = sum_ij sqrt(p_i p_j) S(|v_i><v_j|) x |conj v_i><conj v_j|.
// The result does not depend on how a degenerate eigenbasis was chosen.
inline JointState joint_state_from_eigensystem(const Superoperator& s, const EigDecomposition& input_eig,
                                               double tol = analysis_tol) {
  const Eigen::Index din = s.dim_in();
  const Eigen::Index dout = s.dim_out();
  if (input_eig.vectors.rows() != din || input_eig.vectors.cols() != input_eig.values.size())
    fail(Errc::dim_mismatch, "input eigensystem does not match the channel input dimension");
  if (s.max_trace_deviation() > tol)
    fail(Errc::not_trace_preserving, "joint state is only defined for trace-preserving channels");

  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < input_eig.values.size(); ++i) {
    const double p = input_eig.values(i);
    if (p < -tol) fail(Errc::not_psd, "input eigenvalue " + std::to_string(p));
    if (p > 0.0) live.push_back(i);
  }

  CMatrix rho_alpha = CMatrix::Zero(dout * din, dout * din);
  for (Eigen::Index i : live) {
    CVector vi = input_eig.vectors.col(i).normalized();
    for (Eigen::Index j : live) {
      CVector vj = input_eig.vectors.col(j).normalized();
      const double w = std::sqrt(input_eig.values(i) * input_eig.values(j));
      rho_alpha += w * kron(apply_raw(s, vi * vj.adjoint()), vi.conjugate() * vj.transpose());
    }
  }
  return JointState{DensityMatrix(rho_alpha, tol), dout, din};
}

inline JointState joint_state(const Superoperator& s, const DensityMatrix& input,
                              double tol = analysis_tol) {
  if (input.dim() != s.dim_in()) fail(Errc::dim_mismatch, "input state does not fit the channel");
  return joint_state_from_eigensystem(s, hermitian_eig(input.mat(), tol), tol);
}

// Entropy of the output minus the entropy exchanged with the environment,
// clamped at zero; raw_ic keeps the sign.
inline ChannelReport coherent_information(const Superoperator& s, const DensityMatrix& input,
                                          double tol = analysis_tol) {
  const JointState joint = joint_state(s, input, tol);
  const CMatrix out = partial_trace(joint.rho_alpha.mat(), joint.dim_out, joint.dim_in, Keep::first);
  const EigDecomposition eig_out = hermitian_eig(out, tol);
  const EigDecomposition eig_alpha = hermitian_eig(joint.rho_alpha.mat(), tol);

  ChannelReport r;
  r.s_in = von_neumann_entropy(input, tol);
  r.s_out = entropy_of_spectrum(eig_out.values, tol);
  r.s_e = entropy_of_spectrum(eig_alpha.values, tol);
  r.raw_ic = r.s_out - r.s_e;
  r.i_c = std::max(0.0, r.raw_ic);
  r.eig_out.assign(eig_out.values.data(), eig_out.values.data() + eig_out.values.size());
  r.eig_alpha.assign(eig_alpha.values.data(), eig_alpha.values.data() + eig_alpha.values.size());
  return r;
}

// For a state already living on d1 x d2 (first factor sent, second kept):
// max(0, S(Tr_1 rho) - S(rho)).
inline double one_time_coherent_information(const DensityMatrix& joint, Eigen::Index d1, Eigen::Index d2,
                                            double tol = analysis_tol) {
  if (joint.dim() != d1 * d2) fail(Errc::dim_mismatch, "joint state does not factor as d1 x d2");
  const CMatrix kept = partial_trace(joint.mat(), d1, d2, Keep::second);
  const double s_kept = entropy_of_spectrum(hermitian_eig(kept, tol).values, tol);
  return std::max(0.0, s_kept - von_neumann_entropy(joint, tol));
}

}  // namespace qci
