#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include <qci/channels.hpp>
#include <qci/random.hpp>

using namespace qci;

namespace {

template <typename Fn>
std::optional<Errc> code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

CMatrix unit_matrix(Eigen::Index d, Eigen::Index r, Eigen::Index c) {
  CMatrix m = CMatrix::Zero(d, d);
  m(r, c) = 1.0;
  return m;
}

double block_distance(const Superoperator& a, const Superoperator& b) {
  REQUIRE(a.dim_in() == b.dim_in());
  REQUIRE(a.dim_out() == b.dim_out());
  const Superoperator ca = a.canonical();
  const Superoperator cb = b.canonical();
  double dev = 0.0;
  for (Eigen::Index k = 0; k < a.dim_in(); ++k)
    for (Eigen::Index l = 0; l < a.dim_in(); ++l)
      dev = std::max(dev, max_abs(ca.block(k, l) - cb.block(k, l)));
  return dev;
}

DensityMatrix diagonal_qubit(double p0) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = 1.0 - p0;
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("binary entropy hits its exact anchors") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(std::abs(binary_entropy(0.25) - 0.8112781244591328) <= 1e-15);
  CHECK(std::abs(binary_entropy(0.3) - binary_entropy(0.7)) <= 1e-15);
}

// --------------------------------------------------------------------------
// dephasing + driving

TEST_CASE("dephasing channel at t = 0 is the identity") {
  Superoperator s = dephasing_rabi({1.0, 2.0, 0.0});
  CHECK(block_distance(s, identity_superoperator(2)) <= 1e-15);
  CHECK(std::abs(coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c - 1.0) <= 1e-12);
}

TEST_CASE("undriven dephasing damps coherences only") {
  const double gamma = 1.0, t = 0.7;
  const double eta = std::exp(-gamma * t);
  Superoperator s = dephasing_rabi({gamma, 0.0, t});
  CHECK(max_abs(s.block(0, 0) - unit_matrix(2, 0, 0)) <= 1e-12);
  CHECK(max_abs(s.block(1, 1) - unit_matrix(2, 1, 1)) <= 1e-12);
  CHECK(max_abs(s.block(0, 1) - eta * unit_matrix(2, 0, 1)) <= 1e-12);
  // closed form at input 1/2: one bit minus the entropy shed to the environment
  ChannelReport r = coherent_information(s, DensityMatrix::maximally_mixed(2));
  CHECK(std::abs(r.i_c - (1.0 - binary_entropy(0.5 * (1.0 + eta)))) <= 1e-10);
}

TEST_CASE("driving shortens the life of the stored bit") {
  auto ic = [](double omega, double t) {
    return coherent_information(dephasing_rabi({1.0, omega, t}), DensityMatrix::maximally_mixed(2)).i_c;
  };
  CHECK(ic(2.0, 0.5) <= ic(2.0, 0.2) + 1e-9);  // decay in time
  CHECK(ic(4.0, 0.5) <= ic(0.0, 0.5) + 1e-9);  // and in drive strength
}

TEST_CASE("dephasing parameters are validated") {
  CHECK(code_of([] { dephasing_rabi({-1.0, 0.0, 1.0}); }) == Errc::domain);
  CHECK(code_of([] { dephasing_rabi({1.0, -2.0, 1.0}); }) == Errc::domain);
  CHECK(code_of([] { dephasing_rabi({1.0, 0.0, -0.5}); }) == Errc::domain);
}

TEST_CASE("generator spectrum in the overdamped regime") {
  LiouvillianAnalysis a = liouvillian_analysis(1.0, 0.4);
  // (-gamma +- sqrt(gamma^2 - 4 omega^2)) / 2 = -0.2, -0.8
  CHECK(std::abs(a.eigenvalues[0]) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[1] - complex(-0.2)) <= 1e-10);
  CHECK(std::abs(a.eigenvalues[2] - complex(-0.8)) <= 1e-10);
  CHECK(std::abs(a.eigenvalues[3] - complex(-1.0)) <= 1e-10);
  // slow mode: identity and sigma1 components vanish, sigma3 carries -omega/|re|
  CHECK(std::abs(a.k_min_vector[0]) <= 1e-9);
  CHECK(std::abs(a.k_min_vector[1] + 2.0) <= 1e-9);
  CHECK(std::abs(a.k_min_vector[2]) <= 1e-9);
  CHECK(std::abs(a.k_min_vector[3] - 1.0) <= 1e-12);
  CHECK(std::abs(a.trace_component) <= 1e-9);
}

TEST_CASE("generator spectrum in the underdamped regime keeps a -gamma/2 envelope") {
  LiouvillianAnalysis a = liouvillian_analysis(1.0, 2.0);
  const double im = 0.5 * std::sqrt(15.0);
  CHECK(std::abs(a.eigenvalues[0]) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[1] - complex(-0.5, im)) <= 1e-10);
  CHECK(std::abs(a.eigenvalues[2] - complex(-0.5, -im)) <= 1e-10);
  CHECK(std::abs(a.eigenvalues[3] - complex(-1.0)) <= 1e-10);
  CHECK(std::abs(a.k_min_vector[0]) <= 1e-9);
  CHECK(std::abs(a.k_min_vector[1] + 0.25) <= 1e-9);  // Re(omega / lambda)
  CHECK(std::abs(a.k_min_vector[2]) <= 1e-9);
  CHECK(std::abs(a.k_min_vector[3] - 1.0) <= 1e-12);
}

TEST_CASE("generator spectrum without driving decouples the populations") {
  LiouvillianAnalysis a = liouvillian_analysis(1.0, 0.0);
  CHECK(std::abs(a.eigenvalues[0]) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[1]) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[2] - complex(-1.0)) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[3] - complex(-1.0)) <= 1e-12);
  // the surviving slow mode is a pure coherence: no identity, no sigma3 part
  CHECK(std::abs(a.k_min_vector[0]) <= 1e-12);
  CHECK(std::abs(a.k_min_vector[1]) <= 1e-12);
  CHECK(std::abs(a.trace_component) <= 1e-12);
}

TEST_CASE("undamped driving leaves a rotating mode with zero real part") {
  LiouvillianAnalysis a = liouvillian_analysis(0.0, 1.0);
  CHECK(std::abs(a.eigenvalues[0] - complex(0.0, 1.0)) <= 1e-12);
  CHECK(std::abs(a.eigenvalues[3] - complex(0.0, -1.0)) <= 1e-12);
  CHECK(std::abs(a.k_min_vector[3] - 1.0) <= 1e-12);
  CHECK(code_of([] { liouvillian_analysis(0.0, 0.0); }) == Errc::domain);
}

// --------------------------------------------------------------------------
// Stark-coupled hydrogen-like atom

TEST_CASE("hydrogen channel blocks are exactly the stated family") {
  const double x = 0.6;
  Superoperator s = hydrogen_stark(x);
  REQUIRE(s.dim_in() == 2);
  REQUIRE(s.dim_out() == 3);
  CHECK(max_abs(s.block(0, 0) - unit_matrix(3, 0, 0)) == 0.0);
  CHECK(max_abs(s.block(0, 1) - x * unit_matrix(3, 0, 1)) == 0.0);
  CHECK(max_abs(s.block(1, 0) - x * unit_matrix(3, 1, 0)) == 0.0);
  CMatrix s11 = CMatrix::Zero(3, 3);
  s11(1, 1) = x * x;
  s11(2, 2) = 1.0 - x * x;
  CHECK(max_abs(s.block(1, 1) - s11) == 0.0);
  CHECK(code_of([] { hydrogen_stark(1.5); }) == Errc::domain);
}

TEST_CASE("hydrogen channel equals a level rotation followed by a subspace choice") {
  // Rotate the metastable level into the radiating one by amplitude x, then
  // keep the subspace {ground, radiating} and dump the rest on a phantom
  // vacuum level. Restricting to the physical input/output levels must
  // reproduce the shipped block family.
  for (double x : {0.3, -0.8}) {
    const double c = std::sqrt(1.0 - x * x);
    CMatrix v = CMatrix::Identity(3, 3);  // levels {0: ground, 1: metastable, 2: radiating}
    v(1, 1) = c;
    v(2, 1) = x;
    v(1, 2) = -x;
    v(2, 2) = c;
    CMatrix p = CMatrix::Zero(3, 3);
    p(0, 0) = p(2, 2) = 1.0;
    Superoperator full = compose(choice_superoperator(p, 4), from_unitary(v));

    Superoperator target = hydrogen_stark(x);
    const std::array<Eigen::Index, 3> out_map{0, 2, 3};  // ground, radiating, phantom vacuum
    for (Eigen::Index k = 0; k < 2; ++k)
      for (Eigen::Index l = 0; l < 2; ++l) {
        const CMatrix& big = full.block(k, l);
        for (Eigen::Index a = 0; a < 3; ++a)
          for (Eigen::Index b = 0; b < 3; ++b)
            CHECK(std::abs(big(out_map[a], out_map[b]) - target.block(k, l)(a, b)) <= 1e-12);
        // nothing may leak back onto the measured-out metastable level
        CHECK(big.row(1).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(big.col(1).cwiseAbs().maxCoeff() <= 1e-12);
      }
  }
}

TEST_CASE("hydrogen closed form matches the numeric value and peaks at full precession") {
  CHECK(hydrogen_ic_analytic(0.0) == 0.0);
  CHECK(std::abs(hydrogen_ic_analytic(1.0) - 1.0) <= 1e-15);
  CHECK(std::abs(hydrogen_ic_analytic(-1.0) - 1.0) <= 1e-15);
  CHECK(std::abs(hydrogen_ic_analytic(0.5) - 0.45120505930460147) <= 1e-15);
  const double x = 0.77;
  ChannelReport r = coherent_information(hydrogen_stark(x), DensityMatrix::maximally_mixed(2));
  CHECK(std::abs(r.i_c - hydrogen_ic_analytic(x)) <= 1e-10);
  CHECK(code_of([] { hydrogen_ic_analytic(-1.01); }) == Errc::domain);
}

// --------------------------------------------------------------------------
// two coupled two-level atoms

TEST_CASE("exchange unitary interpolates between identity and full swap of the middle levels") {
  CHECK(max_abs(exchange_unitary(0.0) - CMatrix::Identity(4, 4)) == 0.0);
  CMatrix u = exchange_unitary(0.3);
  CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(4, 4)) <= 1e-15);
  Superoperator s = coupled_tlas(exchange_unitary(0.0), diagonal_qubit(0.3));
  CHECK(block_distance(s, constant_superoperator(diagonal_qubit(0.3), 2)) <= 1e-15);
}

TEST_CASE("a product unitary sends nothing from atom 1 to atom 2") {
  Rng rng(307);
  CMatrix u2 = random_unitary(2, rng);
  DensityMatrix rho2 = random_density(2, rng);
  Superoperator s = coupled_tlas(kron(random_unitary(2, rng), u2), rho2);
  DensityMatrix rotated(u2 * rho2.mat() * u2.adjoint(), analysis_tol);
  CHECK(block_distance(s, constant_superoperator(rotated, 2)) <= 1e-12);
}

TEST_CASE("full exchange with a ground-state partner relays the qubit through a phase twist") {
  Superoperator s = coupled_tlas(exchange_unitary(M_PI / 2.0), diagonal_qubit(1.0));
  CHECK(max_abs(s.block(0, 0) - unit_matrix(2, 0, 0)) <= 1e-12);
  CHECK(max_abs(s.block(1, 1) - unit_matrix(2, 1, 1)) <= 1e-12);
  CHECK(max_abs(s.block(0, 1) - complex(0, 1) * unit_matrix(2, 0, 1)) <= 1e-12);
  CHECK(std::abs(coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c - 1.0) <= 1e-9);
}

TEST_CASE("partner mixedness interpolates the relayed coherent information") {
  auto ic = [](double p0) {
    return coherent_information(coupled_tlas(exchange_unitary(M_PI / 2.0), diagonal_qubit(p0)),
                                DensityMatrix::maximally_mixed(2))
        .i_c;
  };
  CHECK(std::abs(ic(0.0) - 1.0) <= 1e-9);  // excited partner relays perfectly too
  CHECK(ic(0.5) <= 1e-9);                  // maximally mixed partner erases the phase record
  const double mid = ic(0.1);
  CHECK(mid < 1.0 - 1e-3);
  CHECK(mid > 1e-3);
}

// --------------------------------------------------------------------------
// measurements

TEST_CASE("measuring in the computational basis is the reduction map") {
  std::vector<CVector> comp = {CVector::Unit(2, 0), CVector::Unit(2, 1)};
  CHECK(block_distance(direct_measurement(comp), reduction_superoperator(2)) <= 1e-15);
}

TEST_CASE("measurement in a rotated basis averages over its projectors") {
  Rng rng(311);
  std::vector<CVector> basis = random_orthonormal_basis(3, rng);
  Superoperator s = direct_measurement(basis);
  DensityMatrix rho = random_density(3, rng);
  CMatrix want = CMatrix::Zero(3, 3);
  for (const CVector& phi : basis) {
    const complex weight = (phi.adjoint() * rho.mat() * phi)(0, 0);
    want += weight * phi * phi.adjoint();
  }
  CHECK(max_abs(apply(s, rho).mat() - want) <= 1e-12);
}

TEST_CASE("direct measurement validates its basis") {
  std::vector<CVector> skew = {CVector::Unit(2, 0), CVector::Unit(2, 0)};
  CHECK(code_of([&] { direct_measurement(skew); }) == Errc::not_orthonormal);
  std::vector<CVector> incomplete = {CVector::Unit(2, 0)};
  CHECK(code_of([&] { direct_measurement(incomplete); }) == Errc::dim_mismatch);
}

TEST_CASE("pointer readout of a sharp POVM equals the reduction map") {
  std::vector<CMatrix> povm = {unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)};
  std::vector<CMatrix> pointers = {unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)};
  CHECK(block_distance(indirect_measurement(pointers, povm), reduction_superoperator(2)) <= 1e-15);
}

TEST_CASE("the trivial single-outcome POVM erases everything") {
  std::vector<CMatrix> povm = {CMatrix::Identity(2, 2)};
  std::vector<CMatrix> pointers = {CMatrix::Identity(1, 1)};
  Superoperator s = indirect_measurement(pointers, povm);
  CHECK(block_distance(s, trace_superoperator(2)) <= 1e-15);
}

TEST_CASE("a symmetric three-outcome POVM read by a pointer carries no coherent information") {
  std::vector<CMatrix> povm;
  std::vector<CMatrix> pointers;
  for (int q = 0; q < 3; ++q) {
    const double half = q * (2.0 * M_PI / 3.0) / 2.0;
    CVector dir(2);
    dir << std::cos(half), std::sin(half);
    povm.push_back((2.0 / 3.0) * dir * dir.adjoint());
    pointers.push_back(unit_matrix(3, q, q));
  }
  Superoperator s = indirect_measurement(pointers, povm);
  CpTpReport cp = check_cp_tp(s, 1e-9);
  CHECK(cp.cp);
  CHECK(cp.tp);
  CHECK(coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c <= 1e-9);
}

TEST_CASE("pointer measurement validates POVM and pointer structure") {
  const CMatrix e00 = unit_matrix(2, 0, 0);
  const CMatrix e11 = unit_matrix(2, 1, 1);
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(code_of([&] { indirect_measurement({e00}, {e00}); }) == Errc::not_povm);  // does not sum to 1
  CMatrix negative = id - 2.0 * e00;  // eigenvalue -1
  CHECK(code_of([&] { indirect_measurement({e00, e11}, {2.0 * e00, negative}); }) == Errc::not_povm);
  CMatrix crooked = unit_matrix(2, 0, 1);
  CHECK(code_of([&] { indirect_measurement({e00, e11}, {crooked, id - crooked}); }) == Errc::not_povm);
  CHECK(code_of([&] { indirect_measurement({id, e11}, {e00, e11}); }) == Errc::not_projector);
  CHECK(code_of([&] { indirect_measurement({e00, e00}, {e00, e11}); }) == Errc::projectors_overlap);
  CHECK(code_of([&] { indirect_measurement({e00}, {e00, e11}); }) == Errc::dim_mismatch);
}

// --------------------------------------------------------------------------
// classical duplication

TEST_CASE("duplication doubles the computational dyads onto matched records") {
  std::vector<CVector> comp = {CVector::Unit(2, 0), CVector::Unit(2, 1)};
  Superoperator dup = duplication(comp);
  REQUIRE(dup.dim_out() == 4);
  CHECK(max_abs(dup.block(0, 0) - unit_matrix(4, 0, 0)) == 0.0);
  CHECK(max_abs(dup.block(0, 1) - unit_matrix(4, 0, 3)) == 0.0);
  CHECK(max_abs(dup.block(1, 1) - unit_matrix(4, 3, 3)) == 0.0);
  Rng rng(331);
  DensityMatrix rho = random_density(2, rng);
  CMatrix out = apply(dup, rho).mat();
  CHECK(std::abs(out(0, 0) - rho.mat()(0, 0)) <= 1e-15);
  CHECK(std::abs(out(0, 3) - rho.mat()(0, 1)) <= 1e-15);
  CHECK(std::abs(out(3, 3) - rho.mat()(1, 1)) <= 1e-15);
  CHECK(std::abs(out(1, 1)) + std::abs(out(2, 2)) <= 1e-15);
}

TEST_CASE("duplication transmits exactly the input entropy and feeds both readers alike") {
  Rng rng(337);
  std::vector<CVector> basis = random_orthonormal_basis(2, rng);
  DensityMatrix rho = random_density(2, rng);
  Superoperator dup = duplication(basis);
  ChannelReport r = coherent_information(dup, rho);
  CHECK(r.s_e <= 1e-9);
  CHECK(std::abs(r.i_c - r.s_in) <= 1e-9);
  CMatrix copied = apply(dup, rho).mat();
  CMatrix measured = apply(direct_measurement(basis), rho).mat();
  CHECK(max_abs(partial_trace(copied, 2, 2, Keep::first) - measured) <= 1e-10);
  CHECK(max_abs(partial_trace(copied, 2, 2, Keep::second) - measured) <= 1e-10);
}

// --------------------------------------------------------------------------
// spontaneous emission into the field

TEST_CASE("atom-field channel blocks carry the emission amplitudes") {
  const double gamma_t = std::log(2.0);
  const double x = 0.5;
  Superoperator s = atom_field(gamma_t);
  CHECK(max_abs(s.block(0, 0) - unit_matrix(2, 0, 0)) <= 1e-15);
  CHECK(max_abs(s.block(0, 1) - std::sqrt(1.0 - x) * unit_matrix(2, 0, 1)) <= 1e-15);
  CMatrix s11 = CMatrix::Zero(2, 2);
  s11(0, 0) = x;
  s11(1, 1) = 1.0 - x;
  CHECK(max_abs(s.block(1, 1) - s11) <= 1e-15);
  CHECK(code_of([] { atom_field(-0.2); }) == Errc::domain);
}

TEST_CASE("atom-field channel starts as erasure to vacuum and ends as a perfect relay") {
  Superoperator fresh = atom_field(0.0);
  CHECK(block_distance(fresh, constant_superoperator(DensityMatrix::pure(CVector::Unit(2, 0)), 2)) <=
        1e-15);
  Superoperator late = atom_field(40.0);
  CHECK(block_distance(late, identity_superoperator(2)) <= 1e-8);  // x = e^-40
}

TEST_CASE("atom-field closed form matches its explicit four-term expansion") {
  const double x = 0.3, r = 0.45;
  const double direct = x * r * std::log2(x * r) - (1.0 - r + x * r) * std::log2(1.0 - (1.0 - x) * r) +
                        (1.0 - x * r) * std::log2(1.0 - x * r) - (1.0 - x) * r * std::log2(r - x * r);
  CHECK(std::abs(atom_field_ic_analytic(x, r) - direct) <= 1e-12);
  CHECK(code_of([] { atom_field_ic_analytic(1.2, 0.5); }) == Errc::domain);
  CHECK(code_of([] { atom_field_ic_analytic(0.5, -0.1); }) == Errc::domain);
}

TEST_CASE("atom-field numeric value agrees with the closed form") {
  const double gamma_t = 1.1, rho22 = 0.35;
  ChannelReport r = coherent_information(atom_field(gamma_t), diagonal_qubit(1.0 - rho22));
  CHECK(std::abs(r.i_c - atom_field_ic_analytic(std::exp(-gamma_t), rho22)) <= 1e-10);
}

TEST_CASE("atom-field joint state has the expected matrix and rank-two spectrum") {
  const double gamma_t = 0.9, rho22 = 0.4;
  const double x = std::exp(-gamma_t);
  JointState js = joint_state(atom_field(gamma_t), diagonal_qubit(1.0 - rho22));
  CMatrix want = CMatrix::Zero(4, 4);
  want(0, 0) = 1.0 - rho22;
  want(1, 1) = rho22 * x;
  want(3, 3) = rho22 * (1.0 - x);
  want(0, 3) = want(3, 0) = std::sqrt((1.0 - rho22) * rho22 * (1.0 - x));
  CHECK(max_abs(js.rho_alpha.mat() - want) <= 1e-10);
  EigDecomposition eig = hermitian_eig(js.rho_alpha.mat());
  CHECK(std::abs(eig.values(0) - (1.0 - rho22 * x)) <= 1e-10);
  CHECK(std::abs(eig.values(1) - rho22 * x) <= 1e-10);
  CHECK(std::abs(eig.values(2)) <= 1e-10);
  CHECK(std::abs(eig.values(3)) <= 1e-10);
}

TEST_CASE("atom-field transmission is population-symmetric only where emission balances survival") {
  auto ic = [](double gamma_t, double rho22) {
    return coherent_information(atom_field(gamma_t), diagonal_qubit(1.0 - rho22)).i_c;
  };
  // at x = 1/2 both entropies coincide for every population: identically zero
  for (double r : {0.2, 0.5, 0.8}) CHECK(ic(std::log(2.0), r) <= 1e-10);
  // once the photon has certainly left, only the initial populations matter
  for (double r : {0.1, 0.3}) CHECK(std::abs(ic(30.0, r) - ic(30.0, 1.0 - r)) <= 1e-9);
  // at intermediate times the two populations are genuinely inequivalent
  const double gt = -std::log(0.3);  // x = 0.3
  CHECK(ic(gt, 0.1) - ic(gt, 0.9) > 0.05);
  CHECK(std::abs(ic(gt, 0.1) - atom_field_ic_analytic(0.3, 0.1)) <= 1e-10);
  CHECK(std::abs(ic(gt, 0.9) - atom_field_ic_analytic(0.3, 0.9)) <= 1e-10);
}

TEST_CASE("pure superposition inputs yield no coherent information") {
  CMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  DensityMatrix plus(m);
  for (double gt : {0.2, 0.7, 2.0})
    CHECK(coherent_information(atom_field(gt), plus).i_c <= 1e-10);
}

TEST_CASE("the excited-atom joint state stays pure and hands over one bit at half decay") {
  DensityMatrix js = atom_field_excited_joint_state(std::log(2.0));
  CHECK(von_neumann_entropy(js) <= 1e-12);
  CHECK(std::abs(one_time_coherent_information(js, 2, 2) - 1.0) <= 1e-9);
}

// --------------------------------------------------------------------------
// two radiating atoms

TEST_CASE("collective parameters approach the small-distance limit") {
  DickeParams p = dicke_params(0.01, 0.0);
  CHECK(std::abs(p.g - 1.0) <= 1e-3);
  CHECK(std::abs(p.gamma_s + p.gamma_a - 2.0) <= 1e-15);
  CHECK(std::abs(dicke_params(0.5, 0.0).lambda_shift - 6.0) <= 1e-12);
  CHECK(dicke_params(0.5, 0.0, true).lambda_shift == 0.0);
  CHECK(code_of([] { dicke_params(0.0, 1.0); }) == Errc::domain);
  CHECK(code_of([] { dicke_params(1.0, -1.0); }) == Errc::domain);
}

TEST_CASE("survival amplitudes start whole and stay normalized") {
  DickeAmplitudes a0 = dicke_amplitudes(dicke_params(0.7, 0.0));
  CHECK(a0.ground == 0.0);
  CHECK(std::abs(a0.sym - complex(1.0)) == 0.0);
  CHECK(std::abs(a0.antisym) == 0.0);
  for (double phi : {0.3, 0.5, 1.0, 2.0, 3.0})
    for (int i = 0; i <= 40; ++i) {
      const double t = 0.1 * i;
      DickeAmplitudes a = dicke_amplitudes(dicke_params(phi, t));
      const double total = a.ground * a.ground + std::norm(a.sym) + std::norm(a.antisym);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("two-atom channel blocks carry the antisymmetric survival amplitude") {
  DickeParams p = dicke_params(0.5, 1.3);
  DickeAmplitudes a = dicke_amplitudes(p);
  Superoperator s = two_atom_channel(p);
  const double x = a.ground * a.ground + std::norm(a.sym);
  CHECK(max_abs(s.block(0, 0) - unit_matrix(2, 0, 0)) == 0.0);
  CHECK(std::abs(s.block(0, 1)(0, 1) - std::conj(a.antisym)) == 0.0);
  CHECK(std::abs(s.block(1, 0)(1, 0) - a.antisym) == 0.0);
  CHECK(std::abs(s.block(1, 1)(0, 0) - x) <= 1e-15);
  CHECK(std::abs(s.block(1, 1)(1, 1) - std::norm(a.antisym)) <= 1e-15);
  CHECK(check_cp_tp(s, 1e-9).cp);
  CHECK(check_cp_tp(s, 1e-9).tp);
}

TEST_CASE("two-atom channel at t = 0 leaves atom 2 in its ground state") {
  Superoperator s = two_atom_channel(dicke_params(1.0, 0.0));
  CHECK(block_distance(s, constant_superoperator(DensityMatrix::pure(CVector::Unit(2, 0)), 2)) <= 1e-15);
}

TEST_CASE("atom 2 population equals what the channel assigns to the excited input") {
  DickeParams p = dicke_params(0.5, 1.7);
  CMatrix excited = unit_matrix(2, 1, 1);
  CMatrix out = apply(two_atom_channel(p), DensityMatrix(excited)).mat();
  CHECK(std::abs(out(1, 1).real() - two_atom_population(p)) <= 1e-15);
  CHECK(two_atom_population(dicke_params(0.5, 0.0)) == 0.0);
}

TEST_CASE("two-atom transfer reduces to the emission channel with the matching survival") {
  // up to a phase twist on atom 2, which cannot change any entropy
  DickeParams p = dicke_params(0.5, 2.0);
  const double x = 1.0 - two_atom_population(p);
  for (double r : {0.2, 0.5, 0.9}) {
    const double got = coherent_information(two_atom_channel(p), diagonal_qubit(1.0 - r)).i_c;
    CHECK(std::abs(got - atom_field_ic_analytic(x, r)) <= 1e-9);
  }
}

TEST_CASE("without the dipole shift the neighbor never passes a quarter excitation") {
  for (double phi : {0.3, 1.0, 2.5})
    for (double t : {0.1, 0.7, 2.0, 5.0}) {
      DickeParams p = dicke_params(phi, t, true);
      CHECK(two_atom_population(p) <= 0.25 + 1e-12);
      CHECK(coherent_information(two_atom_channel(p), DensityMatrix::maximally_mixed(2)).i_c <= 1e-9);
    }
}

TEST_CASE("distant atoms decouple") {
  // the coupling dies off ~ 1/phi, so the neighbor population falls ~ 1/phi^2
  CHECK(two_atom_population(dicke_params(200.0, 2.0)) <= 1e-5);
  CHECK(two_atom_population(dicke_params(2000.0, 2.0)) <= 1e-7);
  CHECK(two_atom_population(dicke_params(20000.0, 2.0)) <= 1e-9);
}
