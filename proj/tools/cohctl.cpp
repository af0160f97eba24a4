// cohctl: command-line front end for the coherent-information library.
//
//   cohctl run <scenario> [flags]   evaluate a scenario over a grid, print CSV
//   cohctl run --spec <file>        same, grid described by a key=value file
//   cohctl verify                   run the built-in verification suite
//   cohctl check <file> [--input f] validate a channel description file
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse, 3 domain
// violation, 4 I/O failure.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <qci/qci.hpp>

namespace {

using qci::AxisSpec;
using qci::ScenarioInfo;
using qci::SweepSpec;

// flag-level problem: message + exit 2
struct UsageError {
  std::string message;
};

AxisSpec parse_axis_flag(const std::string& text) {
  std::vector<std::string> parts;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3 && parts.size() != 4)
    throw UsageError{"--axis wants name:lo:hi[:count], got '" + text + "'"};
  AxisSpec a;
  a.name = parts[0];
  double count = 0.0;
  if (!qci::parse_double_full(parts[1], a.lo) || !qci::parse_double_full(parts[2], a.hi) ||
      (parts.size() == 4 &&
       (!qci::parse_double_full(parts[3], count) || count != static_cast<int>(count))))
    throw UsageError{"malformed --axis '" + text + "'"};
  a.count = static_cast<int>(count);
  return a;
}

// Flag-shape validation: names must belong to the scenario, axes must be sane.
// Parameter *values* are validated later by the scenario itself (exit 3).
void validate_spec_shape(const SweepSpec& spec) {
  const ScenarioInfo* info = qci::find_scenario(spec.scenario);
  if (!info) {
    std::string known;
    for (const ScenarioInfo& s : qci::scenario_registry())
      known += (known.empty() ? "" : ", ") + s.name;
    throw UsageError{"unknown scenario '" + spec.scenario + "' (known: " + known + ")"};
  }
  const auto has_param = [&](const std::string& name) {
    for (const auto& [pname, def] : info->params)
      if (pname == name) return true;
    return false;
  };
  for (const auto& [name, v] : spec.fixed)
    if (!has_param(name))
      throw UsageError{"parameter '" + name + "' does not apply to scenario " + info->name};
  if (spec.axes.size() > 2) throw UsageError{"at most two --axis definitions"};
  for (const AxisSpec& a : spec.axes) {
    if (!has_param(a.name))
      throw UsageError{"axis parameter '" + a.name + "' does not apply to scenario " + info->name};
    if (spec.fixed.count(a.name))
      throw UsageError{"parameter '" + a.name + "' is both fixed and swept"};
    if (a.count != 0 && a.count < 2) throw UsageError{"axis '" + a.name + "' needs >= 2 points"};
    if (!(a.lo < a.hi)) throw UsageError{"axis '" + a.name + "' needs min < max"};
  }
  for (std::size_t i = 0; i < spec.axes.size(); ++i)
    for (std::size_t j = i + 1; j < spec.axes.size(); ++j)
      if (spec.axes[i].name == spec.axes[j].name)
        throw UsageError{"duplicate axis '" + spec.axes[i].name + "'"};
  for (const auto& [key, val] : spec.options) {
    bool key_ok = false, val_ok = false;
    for (const auto& [name, allowed] : info->options)
      if (name == key) {
        key_ok = true;
        val_ok = allowed.empty();
        for (const std::string& a : allowed) val_ok = val_ok || a == val;
      }
    if (!key_ok) throw UsageError{"option '" + key + "' does not apply to scenario " + info->name};
    if (!val_ok) throw UsageError{"'" + val + "' is not a valid value for option '" + key + "'"};
  }
  if (spec.steps < 2) throw UsageError{"--steps must be >= 2"};
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) qci::fail(qci::Errc::io, "cannot open '" + out_path + "' for writing");
  f << text;
  f.flush();
  if (!f.good()) qci::fail(qci::Errc::io, "failed writing '" + out_path + "'");
}

int run_check(const std::string& channel_path, const std::string& input_path) {
  const qci::Superoperator s = qci::read_channel_file(channel_path);
  const qci::CpTpReport r = qci::check_cp_tp(s, 1e-9);
  std::cout << "dims: " << s.dim_in() << " -> " << s.dim_out() << "\n";
  std::cout << "tp: " << (r.tp ? "true" : "false")
            << " (max trace deviation = " << qci::format_g12(r.max_trace_dev) << ")\n";
  std::cout << "cp: " << (r.cp ? "true" : "false")
            << " (min choi eigenvalue = " << qci::format_g12(r.min_choi_eig) << ")\n";
  if (!input_path.empty()) {
    const qci::DensityMatrix rho = qci::read_density_file(input_path);
    const qci::ChannelReport rep = qci::coherent_information(s, rho);
    std::cout << "s_in = " << qci::format_g12(rep.s_in) << "\n";
    std::cout << "s_out = " << qci::format_g12(rep.s_out) << "\n";
    std::cout << "s_e = " << qci::format_g12(rep.s_e) << "\n";
    std::cout << "i_c = " << qci::format_g12(rep.i_c) << "\n";
    std::cout << "raw_ic = " << qci::format_g12(rep.raw_ic) << "\n";
    const auto print_list = [](const char* label, const std::vector<double>& v) {
      std::cout << label;
      for (std::size_t i = 0; i < v.size(); ++i)
        std::cout << (i ? ", " : "") << qci::format_g12(v[i]);
      std::cout << "\n";
    };
    print_list("eig_out: ", rep.eig_out);
    print_list("eig_alpha: ", rep.eig_alpha);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent information of small quantum channels"};
  app.require_subcommand(1);

  // --- run ---
  CLI::App* run = app.add_subcommand("run", "evaluate a scenario over a parameter grid, emit CSV");
  std::string scenario;
  run->add_option("scenario", scenario, "one of: dephasing, hydrogen, coupled-tlas, measurement, "
                                        "duplication, atom-field, two-atoms");
  std::map<std::string, double> param_vals;
  std::map<std::string, CLI::Option*> param_opts;
  for (const ScenarioInfo& s : qci::scenario_registry())
    for (const auto& [pname, def] : s.params)
      if (!param_opts.count(pname))
        param_opts[pname] =
            run->add_option("--" + pname, param_vals[pname], "pin scenario parameter " + pname);
  std::vector<std::string> axis_flags;
  CLI::Option* axis_opt =
      run->add_option("--axis", axis_flags, "sweep axis as name:lo:hi[:count], up to two");
  std::string povm_kind;
  CLI::Option* povm_opt = run->add_option("--povm", povm_kind, "measurement readout: direct | trine");
  CLI::Option* lambda_zero_opt =
      run->add_flag("--lambda-zero", "two-atoms: force the dipole-dipole shift to zero");
  int steps = 64;
  CLI::Option* steps_opt = run->add_option("--steps", steps, "default points per axis");
  int threads = 0;
  CLI::Option* threads_opt = run->add_option("--threads", threads, "worker threads (0: hardware)");
  std::string out_path;
  run->add_option("--out", out_path, "write CSV here instead of stdout");
  std::string spec_path;
  CLI::Option* spec_opt = run->add_option("--spec", spec_path, "read the whole sweep from a key=value file");

  // --- verify ---
  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");

  // --- check ---
  CLI::App* check = app.add_subcommand("check", "validate a channel description file");
  std::string channel_path;
  check->add_option("file", channel_path, "channel description file")->required();
  std::string input_path;
  check->add_option("--input", input_path, "density-matrix file to send through the channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      SweepSpec spec;
      if (spec_opt->count() > 0) {
        bool extra = !scenario.empty() || axis_opt->count() || povm_opt->count() ||
                     lambda_zero_opt->count() || steps_opt->count();
        for (const auto& [name, opt] : param_opts) extra = extra || opt->count() > 0;
        if (extra) throw UsageError{"--spec replaces the scenario, parameter, and axis flags"};
        std::ifstream f(spec_path);
        if (!f) qci::fail(qci::Errc::io, "cannot open '" + spec_path + "'");
        spec = qci::parse_spec_file(f);
        if (threads_opt->count() > 0) spec.threads = threads;
      } else {
        if (scenario.empty()) throw UsageError{"give a scenario name or --spec <file>"};
        spec.scenario = scenario;
        for (const auto& [name, opt] : param_opts)
          if (opt->count() > 0) spec.fixed[name] = param_vals[name];
        for (const std::string& text : axis_flags) spec.axes.push_back(parse_axis_flag(text));
        if (povm_opt->count() > 0) spec.options["povm"] = povm_kind;
        if (lambda_zero_opt->count() > 0) spec.options["lambda-zero"] = "1";
        spec.steps = steps;
        spec.threads = threads;
      }
      validate_spec_shape(spec);
      write_text(out_path, qci::run_sweep(spec));
      return 0;
    }
    if (verify->parsed()) {
      return qci::write_acceptance_report(std::cout) == 0 ? 0 : 1;
    }
    if (check->parsed()) {
      return run_check(channel_path, input_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const qci::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qci::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qci::Errc::io ? 4 : 3;
  }
  return 0;
}
