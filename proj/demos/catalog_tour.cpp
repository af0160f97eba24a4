// Walks the channel catalog at one representative parameter point each and
// prints a small table: dimensions, physicality data, and the coherent
// information of a natural input state.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <qci/qci.hpp>

int main() {
  using namespace qci;
  const double pi = std::acos(-1.0);

  std::vector<std::pair<std::string, std::pair<Superoperator, DensityMatrix>>> rows;
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);

  rows.push_back({"dephasing (gamma=1, omega=2, t=0.5)",
                  {dephasing_rabi({1.0, 2.0, 0.5}), mixed}});
  rows.push_back({"hydrogen Stark (x=0.8)", {hydrogen_stark(0.8), mixed}});
  rows.push_back({"coupled atoms (theta=pi/2, ground partner)",
                  {coupled_tlas(exchange_unitary(pi / 2.0), sweep_detail::qubit_input(1.0, 0.0)),
                   mixed}});
  rows.push_back({"direct measurement (computational)",
                  {direct_measurement({CVector::Unit(2, 0), CVector::Unit(2, 1)}),
                   sweep_detail::qubit_input(0.5, 0.25)}});
  rows.push_back({"duplication (computational)",
                  {duplication({CVector::Unit(2, 0), CVector::Unit(2, 1)}),
                   sweep_detail::qubit_input(0.7, 0.0)}});
  rows.push_back({"atom-field (gamma t = 2 ln 2)", {atom_field(2.0 * std::log(2.0)), mixed}});
  // gamma t = 0.25 sits on the first revival peak for phi = 0.5
  rows.push_back({"two atoms (phi=0.5, gamma t=0.25)",
                  {two_atom_channel(dicke_params(0.5, 0.25)), mixed}});

  std::printf("%-44s %-7s %-10s %-10s %s\n", "channel", "dims", "tp dev", "choi min", "i_c");
  for (const auto& [name, pair] : rows) {
    const auto& [s, rho] = pair;
    const CpTpReport rep = check_cp_tp(s, 1e-9);
    const ChannelReport info = coherent_information(s, rho);
    std::printf("%-44s %lld -> %-2lld %-10.2e %-10.2e %.6f\n", name.c_str(),
                static_cast<long long>(s.dim_in()), static_cast<long long>(s.dim_out()),
                rep.max_trace_dev, rep.min_choi_eig, info.i_c);
  }
  return 0;
}
