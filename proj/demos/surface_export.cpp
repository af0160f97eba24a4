// Regenerates the standard survey surfaces as CSV files in the current
// directory (or the directory given as argv[1]).

#include <fstream>
#include <iostream>
#include <string>

#include <qci/qci.hpp>

namespace {

void export_csv(const std::string& dir, const std::string& name, const qci::SweepSpec& spec) {
  const std::string path = dir + "/" + name;
  std::ofstream f(path);
  if (!f) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(4);
  }
  f << qci::run_sweep(spec);
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";

  qci::SweepSpec dephasing;
  dephasing.scenario = "dephasing";
  export_csv(dir, "dephasing_surface.csv", dephasing);  // i_c over (t, omega)

  qci::SweepSpec hydrogen;
  hydrogen.scenario = "hydrogen";
  export_csv(dir, "hydrogen_curve.csv", hydrogen);  // i_c over the Stark amplitude

  qci::SweepSpec atom_field;
  atom_field.scenario = "atom-field";
  export_csv(dir, "atom_field_surface.csv", atom_field);  // i_c over (gamma t, rho11)

  qci::SweepSpec two_atoms;
  two_atoms.scenario = "two-atoms";
  export_csv(dir, "two_atom_surface.csv", two_atoms);  // i_c, n2 over (phi, gamma t)

  return 0;
}
