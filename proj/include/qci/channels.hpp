#pragma once

#include <Eigen/Eigenvalues>
#include <array>

#include "cohinfo.hpp"

namespace qci {

// H(y) = -y log2 y - (1-y) log2 (1-y), zero outside (0,1).
inline double binary_entropy(double y) {
  double s = 0.0;
  if (y > 0.0) s -= y * std::log2(y);
  if (y < 1.0) s -= (1.0 - y) * std::log2(1.0 - y);
  return std::max(0.0, s);
}

// ---------------------------------------------------------------------------
// Two-level atom under pure dephasing (rate gamma) driven at Rabi frequency
// omega. The generator acts on the operator basis {1, sigma3, sigma1, sigma2}.

struct DephasingRabiParams {
  double gamma = 0.0;
  double omega = 0.0;
  double t = 0.0;
};

inline OperatorBasisMatrix dephasing_rabi_generator(double gamma, double omega) {
  if (!(gamma >= 0.0)) fail(Errc::domain, "dephasing rate must be >= 0");
  if (!(omega >= 0.0)) fail(Errc::domain, "Rabi frequency must be >= 0");
  OperatorBasisMatrix g;
  g.mat(1, 3) = omega;
  g.mat(2, 2) = -gamma;
  g.mat(3, 1) = -omega;
  g.mat(3, 3) = -gamma;
  return g;
}

inline Superoperator dephasing_rabi(const DephasingRabiParams& p) {
  return from_bloch_generator(dephasing_rabi_generator(p.gamma, p.omega), p.t);
}

// Spectral data of the dephasing generator. k_min_vector is the eigenvector
// of the slowest nonstationary mode (nonzero lambda with minimal |Re|),
// scaled so that its last (sigma2) component is 1; real parts are reported.
// Its identity component is always zero: that mode lives in traceless
// operator space, so tuning the input state cannot dodge the decay.
struct LiouvillianAnalysis {
  std::array<complex, 4> eigenvalues{};  // sorted by Re descending, then Im descending
  std::array<double, 4> k_min_vector{};
  double trace_component = 0.0;
};

inline LiouvillianAnalysis liouvillian_analysis(double gamma, double omega) {
  Eigen::Matrix4d l = dephasing_rabi_generator(gamma, omega).mat;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(l);
  if (solver.info() != Eigen::Success) fail(Errc::no_convergence, "generator eigensolve failed");

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const complex va = solver.eigenvalues()(a), vb = solver.eigenvalues()(b);
    if (va.real() != vb.real()) return va.real() > vb.real();
    return va.imag() > vb.imag();
  });

  LiouvillianAnalysis out;
  int k_min = -1;
  for (int i = 0; i < 4; ++i) {
    const complex ev = solver.eigenvalues()(order[i]);
    out.eigenvalues[i] = ev;
    if (std::abs(ev) <= 1e-12) continue;  // stationary modes do not count
    if (k_min < 0 || std::abs(ev.real()) < std::abs(out.eigenvalues[k_min].real())) k_min = i;
  }
  if (k_min < 0) fail(Errc::domain, "generator has no nonstationary mode");

  Eigen::Vector4cd v = solver.eigenvectors().col(order[k_min]);
  Eigen::Index pivot;
  v.cwiseAbs().maxCoeff(&pivot);
  v /= std::abs(v(3)) > 1e-9 * std::abs(v(pivot)) ? v(3) : v(pivot);
  for (int i = 0; i < 4; ++i) out.k_min_vector[i] = v(i).real();
  out.trace_component = out.k_min_vector[0];
  return out;
}

// ---------------------------------------------------------------------------
// Stark-coupled hydrogen-like atom: the metastable excited s-state (input,
// together with the ground state) precesses into the radiating p-state
// (output, together with the ground state) at amplitude x = sin(w_s t).
// Output index 2 is the phantom vacuum level collecting the rejected part.

inline Superoperator hydrogen_stark(double x) {
  if (!(std::abs(x) <= 1.0)) fail(Errc::domain, "precession amplitude must lie in [-1, 1]");
  CMatrix s00 = CMatrix::Zero(3, 3), s01 = CMatrix::Zero(3, 3), s11 = CMatrix::Zero(3, 3);
  s00(0, 0) = 1.0;
  s01(0, 1) = x;
  s11(1, 1) = x * x;
  s11(2, 2) = 1.0 - x * x;
  CMatrix s10 = s01.adjoint();
  return Superoperator::from_blocks({s00, s01, s10, s11}, 2, 3);
}

// Closed form of the same channel's coherent information at input 1/2.
inline double hydrogen_ic_analytic(double x) {
  if (!(std::abs(x) <= 1.0)) fail(Errc::domain, "precession amplitude must lie in [-1, 1]");
  const double u = x * x;
  const double t1 = (1.0 + u) * std::log2(1.0 + u);
  const double t2 = u > 0.0 ? u * std::log2(u) : 0.0;
  return std::max(0.0, 0.5 * (t1 - t2));
}

// ---------------------------------------------------------------------------
// Two coupled two-level atoms: a joint unitary on atoms 1x2, atom 2 initially
// in second_init; the channel maps atom 1's state to atom 2's.

inline CMatrix exchange_unitary(double theta) {
  CMatrix u = CMatrix::Identity(4, 4);
  u(1, 1) = u(2, 2) = std::cos(theta);
  u(1, 2) = u(2, 1) = complex(0.0, -std::sin(theta));
  return u;
}

inline Superoperator coupled_tlas(const CMatrix& u, const DensityMatrix& second_init) {
  return reduce_joint_channel(from_unitary(u), second_init);
}

// ---------------------------------------------------------------------------
// Projective measurement in an orthonormal basis, output written in the same
// space: rho -> sum_q |phi_q><phi_q| <phi_q|rho|phi_q>.

inline void require_orthonormal(const std::vector<CVector>& basis, double tol) {
  if (basis.empty()) fail(Errc::dim_mismatch, "basis must be nonempty");
  const Eigen::Index d = basis.front().size();
  if (static_cast<Eigen::Index>(basis.size()) != d)
    fail(Errc::dim_mismatch, "basis must contain exactly dim vectors");
  CMatrix b(d, d);
  for (Eigen::Index q = 0; q < d; ++q) {
    if (basis[q].size() != d) fail(Errc::dim_mismatch, "basis vectors must share one dimension");
    b.col(q) = basis[q];
  }
  if (max_abs(b.adjoint() * b - CMatrix::Identity(d, d)) > tol)
    fail(Errc::not_orthonormal, "basis vectors are not orthonormal");
}

inline Superoperator direct_measurement(const std::vector<CVector>& basis, double tol = strict_tol) {
  require_orthonormal(basis, tol);
  const Eigen::Index d = basis.front().size();
  std::vector<CMatrix> blocks(static_cast<std::size_t>(d * d), CMatrix::Zero(d, d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (const CVector& phi : basis)
        blocks[k * d + l] += std::conj(phi(k)) * phi(l) * (phi * phi.adjoint());
  return Superoperator::from_blocks(std::move(blocks), d, d);
}

// Measurement of a POVM {E_q} recorded by an external pointer: the channel
// maps the system state to the pointer state sum_q Tr(E_q rho) P_q. Trace
// preservation requires rank-one, mutually orthogonal pointer projectors.
inline Superoperator indirect_measurement(const std::vector<CMatrix>& pointer_projectors,
                                          const std::vector<CMatrix>& povm, double tol = strict_tol) {
  if (pointer_projectors.empty() || pointer_projectors.size() != povm.size())
    fail(Errc::dim_mismatch, "need one pointer projector per POVM element");
  const Eigen::Index n = pointer_projectors.front().rows();
  const Eigen::Index d = povm.front().rows();
  for (const CMatrix& p : pointer_projectors) {
    if (p.rows() != n || p.cols() != n) fail(Errc::dim_mismatch, "pointer projectors must share one dimension");
    if (max_abs(p - p.adjoint()) > tol || max_abs(p * p - p) > tol)
      fail(Errc::not_projector, "pointer matrix is not an orthogonal projector");
    if (std::abs(p.trace() - complex(1.0)) > tol)
      fail(Errc::not_projector, "pointer projectors must be rank one");
  }
  for (std::size_t q = 0; q + 1 < pointer_projectors.size(); ++q)
    for (std::size_t r = q + 1; r < pointer_projectors.size(); ++r)
      if (max_abs(pointer_projectors[q] * pointer_projectors[r]) > tol)
        fail(Errc::projectors_overlap, "pointer projectors are not mutually orthogonal");

  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& e : povm) {
    if (e.rows() != d || e.cols() != d) fail(Errc::dim_mismatch, "POVM elements must share one dimension");
    if (max_abs(e - e.adjoint()) > tol) fail(Errc::not_povm, "POVM element is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol) fail(Errc::not_povm, "POVM element is not positive");
    sum += e;
  }
  if (max_abs(sum - CMatrix::Identity(d, d)) > tol) fail(Errc::not_povm, "POVM does not sum to identity");

  std::vector<CMatrix> blocks(static_cast<std::size_t>(d * d), CMatrix::Zero(n, n));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (std::size_t q = 0; q < povm.size(); ++q)
        blocks[k * d + l] += povm[q](l, k) * pointer_projectors[q];
  return Superoperator::from_blocks(std::move(blocks), d, n);
}

// Classical copying: measure in the given basis and hand identical records to
// two parties, rho -> sum_ij |phi_i phi_i><phi_j phi_j| <phi_i|rho|phi_j>.
inline Superoperator duplication(const std::vector<CVector>& basis, double tol = strict_tol) {
  require_orthonormal(basis, tol);
  const Eigen::Index d = basis.front().size();
  std::vector<CVector> doubled;
  doubled.reserve(basis.size());
  for (const CVector& phi : basis) doubled.push_back(kron(phi, phi));
  std::vector<CMatrix> blocks(static_cast<std::size_t>(d * d), CMatrix::Zero(d * d, d * d));
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          blocks[k * d + l] +=
              std::conj(basis[i](k)) * basis[j](l) * (doubled[i] * doubled[j].adjoint());
  return Superoperator::from_blocks(std::move(blocks), d, d * d);
}

// ---------------------------------------------------------------------------
// Spontaneous emission read through the field: the channel from the initial
// atom state to the photon field (vacuum / one-photon wavepacket), with
// survival probability x = exp(-gamma t).

inline Superoperator atom_field(double gamma_t) {
  if (!(gamma_t >= 0.0)) fail(Errc::domain, "gamma t must be >= 0");
  const double x = std::exp(-gamma_t);
  CMatrix s00 = CMatrix::Zero(2, 2), s01 = CMatrix::Zero(2, 2), s11 = CMatrix::Zero(2, 2);
  s00(0, 0) = 1.0;
  s01(0, 1) = std::sqrt(1.0 - x);
  s11(0, 0) = x;
  s11(1, 1) = 1.0 - x;
  CMatrix s10 = s01.adjoint();
  return Superoperator::from_blocks({s00, s01, s10, s11}, 2, 2);
}

// Closed form for a diagonal input diag(1 - rho22, rho22):
// raw = H(rho22 (1-x)) - H(rho22 x), clamped at zero. Positive once the
// emission probability passes 1/2.
inline double atom_field_ic_analytic(double x, double rho22) {
  if (!(x >= 0.0 && x <= 1.0)) fail(Errc::domain, "survival probability must lie in [0, 1]");
  if (!(rho22 >= 0.0 && rho22 <= 1.0)) fail(Errc::domain, "population must lie in [0, 1]");
  return std::max(0.0, binary_entropy(rho22 * (1.0 - x)) - binary_entropy(rho22 * x));
}

// Joint atom x field state grown from the excited atom and the field vacuum;
// stays pure at all times.
inline DensityMatrix atom_field_excited_joint_state(double gamma_t) {
  if (!(gamma_t >= 0.0)) fail(Errc::domain, "gamma t must be >= 0");
  const double x = std::exp(-gamma_t);
  CVector psi = CVector::Zero(4);  // atom x field, each {0: ground/vacuum, 1: excited/photon}
  psi(1) = std::sqrt(1.0 - x);
  psi(2) = std::sqrt(x);
  return DensityMatrix::pure(psi);
}

// ---------------------------------------------------------------------------
// Two identical atoms coupled through the free-space field (parallel dipoles,
// perpendicular to the interatomic axis). Distances enter through phi = k0 R;
// gamma_t is time in units of the single-atom decay. zero_shift switches off
// the dipole-dipole shift to expose its role.

struct DickeParams {
  double phi = 0.0;
  double gamma_t = 0.0;
  bool zero_shift = false;
  double g = 0.0;            // collective coupling factor
  double gamma_s = 0.0;      // symmetric-state decay rate, units of gamma
  double gamma_a = 0.0;      // antisymmetric-state decay rate
  double lambda_shift = 0.0; // dipole-dipole shift, units of gamma
};

inline DickeParams dicke_params(double phi, double gamma_t, bool zero_shift = false) {
  if (!(phi > 0.0)) fail(Errc::domain, "interatomic distance phi must be > 0");
  if (!(gamma_t >= 0.0)) fail(Errc::domain, "gamma t must be >= 0");
  DickeParams p;
  p.phi = phi;
  p.gamma_t = gamma_t;
  p.zero_shift = zero_shift;
  p.g = 1.5 * (std::sin(phi) / phi + std::cos(phi) / (phi * phi) - std::sin(phi) / (phi * phi * phi));
  p.gamma_s = 1.0 + p.g;
  p.gamma_a = 1.0 - p.g;
  p.lambda_shift = zero_shift ? 0.0 : 0.75 / (phi * phi * phi);
  return p;
}

// Survival amplitudes of the doubly-ground component (ground, incoherent),
// and of the symmetric/antisymmetric one-excitation states.
struct DickeAmplitudes {
  double ground = 0.0;
  complex sym;
  complex antisym;
};

inline DickeAmplitudes dicke_amplitudes(const DickeParams& p) {
  const double t = p.gamma_t;
  const complex i(0.0, 1.0);
  DickeAmplitudes a;
  const complex es = std::exp(-(p.gamma_s / 2.0 + i * p.lambda_shift) * t);
  const complex ea = std::exp(-(p.gamma_a / 2.0 - i * p.lambda_shift) * t);
  a.ground = std::sqrt(std::max(0.0, 1.0 - 0.5 * (std::exp(-p.gamma_s * t) + std::exp(-p.gamma_a * t))));
  a.sym = 0.5 * (es + ea);
  a.antisym = 0.5 * (es - ea);
  return a;
}

// Channel from atom 1's initial state to atom 2's state at time t; atom 2
// starts in its ground state. Same shape as the atom-field channel with
// survival x = ground^2 + |sym|^2 and coherence antisym in place of
// sqrt(1 - x).
inline Superoperator two_atom_channel(const DickeParams& p) {
  const DickeAmplitudes a = dicke_amplitudes(p);
  const double x = a.ground * a.ground + std::norm(a.sym);
  CMatrix s00 = CMatrix::Zero(2, 2), s01 = CMatrix::Zero(2, 2), s10 = CMatrix::Zero(2, 2),
          s11 = CMatrix::Zero(2, 2);
  s00(0, 0) = 1.0;
  s01(0, 1) = std::conj(a.antisym);
  s10(1, 0) = a.antisym;
  s11(0, 0) = x;
  s11(1, 1) = std::norm(a.antisym);
  return Superoperator::from_blocks({s00, s01, s10, s11}, 2, 2);
}

// Excited-state population of atom 2 when atom 1 starts excited.
inline double two_atom_population(const DickeParams& p) {
  return std::norm(dicke_amplitudes(p).antisym);
}

}  // namespace qci
