#pragma once

// Self-check battery for the channel catalog.  Every check compares the
// numeric pipeline (block family -> joint state -> entropies) against an
// independent closed form or structural identity and records a one-line
// verdict.  `cohctl verify` and the standalone acceptance binary both print
// these.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "channels.hpp"
#include "cohinfo.hpp"
#include "random.hpp"
#include "sweep.hpp"

namespace qci {

struct AcceptanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace verify_detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

template <typename Fn>
void run_check(std::vector<AcceptanceCheck>& out, const std::string& name, Fn fn) {
  AcceptanceCheck c;
  c.name = name;
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("unexpected exception: ") + e.what();
  }
  out.push_back(std::move(c));
}

inline ChannelReport hydrogen_report(double x) {
  return coherent_information(hydrogen_stark(x), DensityMatrix::maximally_mixed(2));
}

inline ChannelReport atom_field_report(double gamma_t, double rho22) {
  return coherent_information(atom_field(gamma_t),
                              sweep_detail::qubit_input(1.0 - rho22, 0.0));
}

// --- hydrogen atom with a Stark-coupled phantom level ---------------------

inline void check_hydrogen_closed_form(std::vector<AcceptanceCheck>& out) {
  run_check(out, "hydrogen: numeric sweep matches closed form", [](AcceptanceCheck& c) {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 2.0 * i / 100.0;
      worst = std::max(worst, std::abs(hydrogen_report(x).i_c - hydrogen_ic_analytic(x)));
    }
    const double at_plus = hydrogen_report(1.0).i_c;
    const double at_minus = hydrogen_report(-1.0).i_c;
    const bool edges = std::abs(at_plus - 1.0) <= 1e-9 && std::abs(at_minus - 1.0) <= 1e-9;
    c.passed = worst <= 1e-9 && edges;
    c.detail = "max |i_c - closed form| = " + num(worst) + " over 101 points (tol 1e-9), i_c(+-1) = " +
               num(at_plus) + ", " + num(at_minus) + " (want 1)";
  });
}

inline void check_hydrogen_average(std::vector<AcceptanceCheck>& out) {
  run_check(out, "hydrogen: mean information across the coupling range", [](AcceptanceCheck& c) {
    const int n = 1000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -1.0 + 2.0 * (i + 0.5) / n;  // midpoint rule, x uniform on [-1, 1]
      sum += hydrogen_report(x).i_c;
    }
    const double mean = sum / n;
    c.passed = std::abs(mean - 0.46) <= 0.01;
    c.detail = "mean i_c for x uniform on [-1, 1] = " + num(mean) + " (want 0.46 +- 0.01)";
  });
}

inline void check_hydrogen_joint_state(std::vector<AcceptanceCheck>& out) {
  run_check(out, "hydrogen: joint state matrix and spectrum", [](AcceptanceCheck& c) {
    double worst_entry = 0.0;
    double worst_eig = 0.0;
    for (const double x : {0.0, 0.3, -0.6, 0.85, 1.0}) {
      const JointState js = joint_state(hydrogen_stark(x), DensityMatrix::maximally_mixed(2));
      CMatrix want = CMatrix::Zero(6, 6);
      want(0, 0) = 0.5;
      want(0, 3) = x / 2.0;
      want(3, 0) = x / 2.0;
      want(3, 3) = x * x / 2.0;
      want(5, 5) = (1.0 - x * x) / 2.0;
      worst_entry = std::max(worst_entry, max_abs(js.rho_alpha.mat() - want));
      const RVector eig = hermitian_eig(js.rho_alpha.mat()).values;
      RVector expect(6);
      expect << (1.0 + x * x) / 2.0, (1.0 - x * x) / 2.0, 0.0, 0.0, 0.0, 0.0;
      std::sort(expect.data(), expect.data() + expect.size(), std::greater<double>());
      worst_eig = std::max(worst_eig, (eig - expect).cwiseAbs().maxCoeff());
    }
    c.passed = worst_entry <= 1e-10 && worst_eig <= 1e-10;
    c.detail = "max entry deviation = " + num(worst_entry) + ", max eigenvalue deviation = " +
               num(worst_eig) + " (tol 1e-10)";
  });
}

// --- spontaneous emission into the photon field ---------------------------

inline void check_atom_field_closed_form(std::vector<AcceptanceCheck>& out) {
  run_check(out, "atom-field: numeric sweep matches closed form", [](AcceptanceCheck& c) {
    double worst = 0.0;
    for (const double rho22 : {0.1, 0.5, 0.9}) {
      for (int i = 0; i <= 100; ++i) {
        const double gt = 6.0 * i / 100.0;
        const double x = std::exp(-gt);
        worst = std::max(worst, std::abs(atom_field_report(gt, rho22).i_c -
                                         atom_field_ic_analytic(x, rho22)));
      }
    }
    c.passed = worst <= 1e-9;
    c.detail = "max |i_c - closed form| = " + num(worst) +
               " over 3 x 101 points (tol 1e-9)";
  });
}

inline void check_atom_field_spectrum(std::vector<AcceptanceCheck>& out) {
  run_check(out, "atom-field: joint-state spectrum", [](AcceptanceCheck& c) {
    double worst = 0.0;
    for (const double rho22 : {0.1, 0.5, 0.9}) {
      for (int i = 0; i <= 20; ++i) {
        const double gt = 6.0 * i / 20.0;
        const double x = std::exp(-gt);
        const JointState js =
            joint_state(atom_field(gt), sweep_detail::qubit_input(1.0 - rho22, 0.0));
        const RVector eig = hermitian_eig(js.rho_alpha.mat()).values;
        RVector expect(4);
        expect << 1.0 - rho22 * x, rho22 * x, 0.0, 0.0;
        std::sort(expect.data(), expect.data() + expect.size(), std::greater<double>());
        worst = std::max(worst, (eig - expect).cwiseAbs().maxCoeff());
      }
    }
    c.passed = worst <= 1e-10;
    c.detail = "max eigenvalue deviation from {1 - p x, p x, 0, 0} = " + num(worst) +
               " (tol 1e-10)";
  });
}

inline void check_atom_field_threshold(std::vector<AcceptanceCheck>& out) {
  run_check(out, "atom-field: information appears at half survival", [](AcceptanceCheck& c) {
    // raw (unclamped) information changes sign where exp(-gamma t) crosses 1/2,
    // independent of the upper-level population
    double worst = 0.0;
    bool bracketed = true;
    for (const double rho22 : {0.1, 0.5, 0.9}) {
      double lo = 0.1, hi = 3.0;
      const double f_lo = atom_field_report(lo, rho22).raw_ic;
      const double f_hi = atom_field_report(hi, rho22).raw_ic;
      if (!(f_lo < 0.0 && f_hi > 0.0)) {
        bracketed = false;
        continue;
      }
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (atom_field_report(mid, rho22).raw_ic < 0.0)
          lo = mid;
        else
          hi = mid;
      }
      worst = std::max(worst, std::abs(std::exp(-0.5 * (lo + hi)) - 0.5));
    }
    c.passed = bracketed && worst <= 1e-6;
    c.detail = bracketed ? "max |exp(-gamma t*) - 1/2| at the sign change = " + num(worst) +
                               " (tol 1e-6)"
                         : "raw information failed to change sign on [0.1, 3]";
  });
}

inline void check_atom_field_one_time(std::vector<AcceptanceCheck>& out) {
  run_check(out, "atom-field: one-time information of the excited atom", [](AcceptanceCheck& c) {
    // initially excited atom entangled with its emitted photon: the one-time
    // information is the entropy of the decayed fraction
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double gt = 0.05 + 5.95 * i / 60.0;
      const double x = std::exp(-gt);
      const double got = one_time_coherent_information(atom_field_excited_joint_state(gt), 2, 2);
      const double want = binary_entropy(x);
      worst = std::max(worst, std::abs(got - want));
    }
    const double peak =
        one_time_coherent_information(atom_field_excited_joint_state(std::log(2.0)), 2, 2);
    c.passed = worst <= 1e-9 && std::abs(peak - 1.0) <= 1e-9;
    c.detail = "max |value - H(exp(-gamma t))| = " + num(worst) +
               " (tol 1e-9), value at half survival = " + num(peak) + " (want 1)";
  });
}

// --- measurement devices ---------------------------------------------------

inline void check_direct_measurement(std::vector<AcceptanceCheck>& out) {
  run_check(out, "measurement: direct readout carries no information", [](AcceptanceCheck& c) {
    Rng rng(911001);
    double worst = 0.0;
    std::vector<std::vector<CVector>> bases;
    bases.push_back({CVector::Unit(2, 0), CVector::Unit(2, 1)});
    for (int b = 0; b < 20; ++b) bases.push_back(random_orthonormal_basis(2, rng));
    for (const auto& basis : bases) {
      const Superoperator s = direct_measurement(basis);
      for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_density(2, rng);
        worst = std::max(worst, std::abs(coherent_information(s, rho).i_c));
      }
    }
    c.passed = worst <= 1e-9;
    c.detail = "max i_c over 21 bases x 20 inputs = " + num(worst) + " (tol 1e-9)";
  });
}

inline void check_indirect_measurement(std::vector<AcceptanceCheck>& out) {
  run_check(out, "measurement: indirect readout carries no information", [](AcceptanceCheck& c) {
    Rng rng(911002);
    double worst = 0.0;
    const auto run_device = [&](const Superoperator& s) {
      for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_density(2, rng);
        worst = std::max(worst, std::abs(coherent_information(s, rho).i_c));
      }
    };

    const auto pointer = [](int n) {
      std::vector<CMatrix> ps;
      for (int q = 0; q < n; ++q) {
        CMatrix p = CMatrix::Zero(n, n);
        p(q, q) = 1.0;
        ps.push_back(std::move(p));
      }
      return ps;
    };

    // sharp orthogonal readout
    {
      std::vector<CMatrix> povm;
      for (int q = 0; q < 2; ++q) {
        CMatrix e = CMatrix::Zero(2, 2);
        e(q, q) = 1.0;
        povm.push_back(std::move(e));
      }
      run_device(indirect_measurement(pointer(2), povm));
    }

    // symmetric three-outcome (trine) readout
    {
      std::vector<CMatrix> povm;
      for (int q = 0; q < 3; ++q) {
        const double th = q * 2.0 * M_PI / 3.0;
        CVector v(2);
        v << std::cos(th / 2.0), std::sin(th / 2.0);
        povm.push_back((2.0 / 3.0) * v * v.adjoint());
      }
      run_device(indirect_measurement(pointer(3), povm));
    }

    // random informationally unstructured readouts, 2..4 outcomes
    for (int k = 0; k < 20; ++k) {
      const int outcomes = 2 + k % 3;
      run_device(indirect_measurement(pointer(outcomes), random_povm(2, outcomes, rng)));
    }

    c.passed = worst <= 1e-9;
    c.detail = "max i_c over 22 devices x 20 inputs = " + num(worst) + " (tol 1e-9)";
  });
}

inline void check_duplication(std::vector<AcceptanceCheck>& out) {
  run_check(out, "duplication: zero exchange entropy, measurement marginals", [](AcceptanceCheck& c) {
    Rng rng(911003);
    double worst_se = 0.0, worst_gap = 0.0, worst_marg = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto basis = random_orthonormal_basis(2, rng);
      const DensityMatrix rho = random_density(2, rng);
      const Superoperator dup = duplication(basis);
      const ChannelReport r = coherent_information(dup, rho);
      worst_se = std::max(worst_se, r.s_e);
      worst_gap = std::max(worst_gap, std::abs(r.i_c - r.s_in));
      const CMatrix both = apply(dup, rho).mat();
      const CMatrix meas = apply(direct_measurement(basis), rho).mat();
      worst_marg = std::max(worst_marg, max_abs(partial_trace(both, 2, 2, Keep::first) - meas));
      worst_marg = std::max(worst_marg, max_abs(partial_trace(both, 2, 2, Keep::second) - meas));
    }
    c.passed = worst_se <= 1e-9 && worst_gap <= 1e-9 && worst_marg <= 1e-10;
    c.detail = "max s_e = " + num(worst_se) + ", max |i_c - s_in| = " + num(worst_gap) +
               " (tol 1e-9), max marginal deviation = " + num(worst_marg) + " (tol 1e-10)";
  });
}

// --- two coupled two-level atoms ------------------------------------------

inline void check_coupled_full_exchange(std::vector<AcceptanceCheck>& out) {
  run_check(out, "coupled atoms: full exchange moves one qubit", [](AcceptanceCheck& c) {
    const Superoperator s =
        coupled_tlas(exchange_unitary(M_PI / 2.0), sweep_detail::qubit_input(1.0, 0.0));
    const double ic = coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c;
    c.passed = std::abs(ic - 1.0) <= 1e-9;
    c.detail = "i_c at theta = pi/2, ground partner, maximally mixed input = " + num(ic) +
               " (want 1 +- 1e-9)";
  });
}

inline void check_coupled_product_unitary(std::vector<AcceptanceCheck>& out) {
  run_check(out, "coupled atoms: product unitary moves nothing", [](AcceptanceCheck& c) {
    Rng rng(911004);
    double worst_ic = 0.0, worst_block = 0.0;
    for (int k = 0; k < 5; ++k) {
      const CMatrix u1 = random_unitary(2, rng);
      const CMatrix u2 = random_unitary(2, rng);
      const DensityMatrix rho2 = random_density(2, rng);
      const Superoperator s = coupled_tlas(kron(u1, u2), rho2);
      // without coupling the output slot carries u2 rho2 u2^dag no matter
      // what enters, i.e. the channel is the constant map
      const Superoperator want =
          constant_superoperator(DensityMatrix(u2 * rho2.mat() * u2.adjoint()), 2);
      for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index b = 0; b < 2; ++b)
          worst_block = std::max(worst_block, max_abs(s.block(a, b) - want.block(a, b)));
      worst_ic = std::max(worst_ic, coherent_information(s, random_density(2, rng)).i_c);
      worst_ic = std::max(
          worst_ic, coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c);
    }
    c.passed = worst_ic <= 1e-9 && worst_block <= 1e-9;
    c.detail = "max i_c over 5 product unitaries = " + num(worst_ic) +
               ", max block deviation from the constant map = " + num(worst_block) + " (tol 1e-9)";
  });
}

inline void check_coupled_border_maximum(std::vector<AcceptanceCheck>& out) {
  run_check(out, "coupled atoms: information peaks for pure partner states", [](AcceptanceCheck& c) {
    // scan the partner mixture diag(r, 1-r); the ends are the only pure states
    std::vector<double> ic(11);
    for (int i = 0; i <= 10; ++i) {
      const double r = i / 10.0;
      const Superoperator s =
          coupled_tlas(exchange_unitary(M_PI / 2.0), sweep_detail::qubit_input(r, 0.0));
      ic[i] = coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c;
    }
    double interior = 0.0;
    for (int i = 1; i <= 9; ++i) interior = std::max(interior, ic[i]);
    const double border = std::max(ic[0], ic[10]);
    c.passed = border >= interior + 1e-6 && std::abs(ic[0] - 1.0) <= 1e-9 &&
               std::abs(ic[10] - 1.0) <= 1e-9;
    c.detail = "border i_c = " + num(ic[0]) + ", " + num(ic[10]) +
               ", best interior i_c = " + num(interior) + " (border must win)";
  });
}

// --- dephasing with Rabi driving ------------------------------------------

inline void check_dephasing_spectrum(std::vector<AcceptanceCheck>& out) {
  run_check(out, "dephasing: generator spectrum closed form", [](AcceptanceCheck& c) {
    double worst = 0.0;
    for (const auto& [gamma, omega] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {1.0, 0.5}, {1.0, 2.0}}) {
      const LiouvillianAnalysis a = liouvillian_analysis(gamma, omega);
      const std::complex<double> root =
          std::sqrt(std::complex<double>(gamma * gamma - 4.0 * omega * omega, 0.0));
      std::vector<std::complex<double>> expect = {
          {0.0, 0.0},
          {-gamma, 0.0},
          0.5 * (-gamma + root),
          0.5 * (-gamma - root)};
      std::vector<std::complex<double>> got(a.eigenvalues.begin(), a.eigenvalues.end());
      for (const auto& e : expect) {
        double best = 1e300;
        std::size_t at = 0;
        for (std::size_t i = 0; i < got.size(); ++i) {
          if (std::abs(got[i] - e) < best) {
            best = std::abs(got[i] - e);
            at = i;
          }
        }
        worst = std::max(worst, best);
        got.erase(got.begin() + at);
      }
    }
    c.passed = worst <= 1e-10;
    c.detail = "max eigenvalue deviation over three (gamma, omega) pairs = " + num(worst) +
               " (tol 1e-10)";
  });
}

inline void check_dephasing_decay(std::vector<AcceptanceCheck>& out) {
  run_check(out, "dephasing: information decays, driving does not help", [](AcceptanceCheck& c) {
    const auto ic = [](double omega, double t) {
      return coherent_information(dephasing_rabi({1.0, omega, t}),
                                  DensityMatrix::maximally_mixed(2))
          .i_c;
    };
    const double at_zero = coherent_information(dephasing_rabi({1.0, 1.0, 0.0}),
                                                DensityMatrix::maximally_mixed(2))
                               .i_c;
    bool monotone = true;
    double worst_step = 0.0;
    const double omegas[] = {0.0, 1.0, 2.0, 4.0};
    for (const double t : {0.2, 0.5, 1.0}) {
      for (int i = 0; i + 1 < 4; ++i) {
        const double step = ic(omegas[i + 1], t) - ic(omegas[i], t);
        worst_step = std::max(worst_step, step);
        if (step > 1e-9) monotone = false;
      }
    }
    c.passed = std::abs(at_zero - 1.0) <= 1e-9 && monotone;
    c.detail = "i_c at t = 0 is " + num(at_zero) + " (want 1); largest increase along omega = " +
               num(worst_step) + " (tol 1e-9)";
  });
}

inline void check_dephasing_singular_start(std::vector<AcceptanceCheck>& out) {
  run_check(out, "dephasing: initial decay is faster than linear", [](AcceptanceCheck& c) {
    // the difference quotient [i_c(0) - i_c(dt)] / dt grows as dt -> 0
    const auto ratio = [](double dt) {
      const double v = coherent_information(dephasing_rabi({1.0, 1.0, dt}),
                                            DensityMatrix::maximally_mixed(2))
                           .i_c;
      return (1.0 - v) / dt;
    };
    const double fine = ratio(1e-3);
    const double coarse = ratio(1e-2);
    c.passed = fine > coarse;
    c.detail = "difference quotient " + num(fine) + " at dt = 1e-3 vs " + num(coarse) +
               " at dt = 1e-2 (must grow)";
  });
}

// --- two atoms radiating into the field -----------------------------------

inline void check_two_atom_no_shift(std::vector<AcceptanceCheck>& out) {
  run_check(out, "two atoms: without level shift no information survives", [](AcceptanceCheck& c) {
    double worst_ic = 0.0, worst_n2 = 0.0;
    for (const double phi : {0.3, 0.5, 1.0, 2.0, 3.0}) {
      for (int i = 0; i <= 60; ++i) {
        const double gt = 6.0 * i / 60.0;
        const DickeParams p = dicke_params(phi, gt, true);
        const Superoperator s = two_atom_channel(p);
        for (const double rho22 : {0.1, 0.5, 0.9}) {
          const double ic =
              coherent_information(s, sweep_detail::qubit_input(1.0 - rho22, 0.0)).i_c;
          worst_ic = std::max(worst_ic, ic);
        }
        worst_n2 = std::max(worst_n2, two_atom_population(p));
      }
    }
    c.passed = worst_ic <= 1e-9 && worst_n2 <= 0.25 + 1e-12;
    c.detail = "max i_c = " + num(worst_ic) + " (tol 1e-9), max antisymmetric population = " +
               num(worst_n2) + " (bound 1/4 + 1e-12)";
  });
}

inline void check_two_atom_with_shift(std::vector<AcceptanceCheck>& out) {
  run_check(out, "two atoms: dipole shift revives information", [](AcceptanceCheck& c) {
    // phi = 0.5: strong dipole-dipole shift; information returns and the
    // antisymmetric population keeps oscillating
    double best_ic = 0.0;
    for (int i = 1; i <= 400; ++i) {
      const double gt = 4.0 * i / 400.0;
      const Superoperator s = two_atom_channel(dicke_params(0.5, gt));
      best_ic = std::max(best_ic,
                         coherent_information(s, DensityMatrix::maximally_mixed(2)).i_c);
    }
    int maxima = 0;
    const int n = 2000;
    std::vector<double> n2(n + 1);
    for (int i = 0; i <= n; ++i) n2[i] = two_atom_population(dicke_params(0.5, 4.0 * i / n));
    for (int i = 1; i < n; ++i)
      if (n2[i] > n2[i - 1] + 1e-12 && n2[i] > n2[i + 1] + 1e-12) ++maxima;
    c.passed = best_ic > 0.0 && maxima >= 2;
    c.detail = "peak i_c = " + num(best_ic) + " (must be positive), " + std::to_string(maxima) +
               " population maxima on (0, 4] (want >= 2)";
  });
}

// --- structural guarantees -------------------------------------------------

inline std::vector<std::pair<std::string, Superoperator>> catalog_samples() {
  Rng rng(911005);
  std::vector<std::pair<std::string, Superoperator>> cat;
  for (const double t : {0.0, 0.4, 1.5})
    cat.emplace_back("dephasing t=" + num(t), dephasing_rabi({1.0, 2.0, t}));
  for (const double x : {-1.0, -0.3, 0.0, 0.7, 1.0})
    cat.emplace_back("hydrogen x=" + num(x), hydrogen_stark(x));
  cat.emplace_back("coupled theta=0.7",
                   coupled_tlas(exchange_unitary(0.7), sweep_detail::qubit_input(0.3, 0.2)));
  cat.emplace_back("coupled theta=pi/2",
                   coupled_tlas(exchange_unitary(M_PI / 2.0), sweep_detail::qubit_input(1.0, 0.0)));
  cat.emplace_back("direct measurement", direct_measurement(random_orthonormal_basis(2, rng)));
  {
    std::vector<CMatrix> pointers;
    for (int q = 0; q < 3; ++q) {
      CMatrix p = CMatrix::Zero(3, 3);
      p(q, q) = 1.0;
      pointers.push_back(std::move(p));
    }
    cat.emplace_back("indirect measurement",
                     indirect_measurement(pointers, random_povm(2, 3, rng)));
  }
  cat.emplace_back("duplication", duplication(random_orthonormal_basis(2, rng)));
  for (const double gt : {0.0, 0.5, std::log(2.0), 3.0})
    cat.emplace_back("atom-field gamma t=" + num(gt), atom_field(gt));
  for (const double phi : {0.5, 1.0, 2.0})
    for (const double gt : {0.3, 1.0, 3.0}) {
      cat.emplace_back("two atoms phi=" + num(phi) + " gamma t=" + num(gt),
                       two_atom_channel(dicke_params(phi, gt)));
      cat.emplace_back("two atoms (no shift) phi=" + num(phi) + " gamma t=" + num(gt),
                       two_atom_channel(dicke_params(phi, gt, true)));
    }
  return cat;
}

inline void check_catalog_cp_tp(std::vector<AcceptanceCheck>& out) {
  run_check(out, "structure: catalog channels preserve trace and positivity", [](AcceptanceCheck& c) {
    double worst_trace = 0.0, worst_choi = 0.0;
    bool ok = true;
    std::string offender;
    for (const auto& [name, s] : catalog_samples()) {
      const CpTpReport r = check_cp_tp(s, 1e-9);
      worst_trace = std::max(worst_trace, r.max_trace_dev);
      worst_choi = std::min(worst_choi, r.min_choi_eig);
      if (!(r.cp && r.tp)) {
        ok = false;
        if (offender.empty()) offender = name;
      }
    }
    c.passed = ok;
    c.detail = ok ? "worst trace deviation = " + num(worst_trace) +
                        ", worst Choi eigenvalue = " + num(worst_choi) + " (tol 1e-9), " +
                        std::to_string(catalog_samples().size()) + " channels"
                  : "violated by: " + offender;
  });
}

inline void check_joint_state_marginals(std::vector<AcceptanceCheck>& out) {
  run_check(out, "structure: joint-state marginals", [](AcceptanceCheck& c) {
    Rng rng(911006);
    double worst = 0.0;
    for (const auto& [name, s] : catalog_samples()) {
      (void)name;
      for (int k = 0; k < 3; ++k) {
        const DensityMatrix rho = random_density(s.dim_in(), rng);
        const JointState js = joint_state(s, rho);
        const CMatrix m = js.rho_alpha.mat();
        const CMatrix out_marg = partial_trace(m, js.dim_out, js.dim_in, Keep::first);
        const CMatrix in_marg = partial_trace(m, js.dim_out, js.dim_in, Keep::second);
        worst = std::max(worst, max_abs(out_marg - apply(s, rho).mat()));
        worst = std::max(worst, max_abs(in_marg - rho.mat().conjugate()));
      }
    }
    c.passed = worst <= 1e-9;
    c.detail = "max deviation of traced joint state from channel output / conjugate input = " +
               num(worst) + " (tol 1e-9)";
  });
}

inline void check_sweep_determinism(std::vector<AcceptanceCheck>& out) {
  run_check(out, "structure: sweep output is reproducible", [](AcceptanceCheck& c) {
    bool ok = true;
    const auto same = [&](SweepSpec spec) {
      spec.threads = 1;
      const std::string a = run_sweep(spec);
      const std::string b = run_sweep(spec);
      spec.threads = 4;
      const std::string d = run_sweep(spec);
      ok = ok && a == b && a == d;
    };
    {
      SweepSpec spec;
      spec.scenario = "dephasing";
      spec.fixed = {{"gamma", 1.0}};
      spec.axes = {{"t", 0.0, 1.5, 8}, {"omega", 0.0, 4.0, 8}};
      same(spec);
    }
    {
      SweepSpec spec;
      spec.scenario = "two-atoms";
      spec.axes = {{"phi", 0.3, 3.0, 6}, {"gamma-t", 0.0, 4.0, 6}};
      same(spec);
    }
    {
      SweepSpec spec;
      spec.scenario = "hydrogen";
      spec.axes = {{"x", -1.0, 1.0, 16}};
      same(spec);
    }
    c.passed = ok;
    c.detail = ok ? "three sweeps byte-identical across repeats and 1 vs 4 threads"
                  : "sweep output differed between runs";
  });
}

}  // namespace verify_detail

inline std::vector<AcceptanceCheck> run_acceptance_checks() {
  using namespace verify_detail;
  std::vector<AcceptanceCheck> checks;
  check_hydrogen_closed_form(checks);
  check_hydrogen_average(checks);
  check_hydrogen_joint_state(checks);
  check_atom_field_closed_form(checks);
  check_atom_field_spectrum(checks);
  check_atom_field_threshold(checks);
  check_atom_field_one_time(checks);
  check_direct_measurement(checks);
  check_indirect_measurement(checks);
  check_duplication(checks);
  check_coupled_full_exchange(checks);
  check_coupled_product_unitary(checks);
  check_coupled_border_maximum(checks);
  check_dephasing_spectrum(checks);
  check_dephasing_decay(checks);
  check_dephasing_singular_start(checks);
  check_two_atom_no_shift(checks);
  check_two_atom_with_shift(checks);
  check_catalog_cp_tp(checks);
  check_joint_state_marginals(checks);
  check_sweep_determinism(checks);
  return checks;
}

// Prints one line per check; returns the number of failures.
inline int write_acceptance_report(std::ostream& os) {
  const auto checks = run_acceptance_checks();
  int failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  }
  os << checks.size() << " checks, " << failed << " failed\n";
  return failed;
}

}  // namespace qci
