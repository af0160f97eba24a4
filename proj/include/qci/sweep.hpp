#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "channel_io.hpp"
#include "channels.hpp"

namespace qci {

struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;  // 0: take the sweep-wide default
};

using ParamMap = std::map<std::string, double>;
using OptionMap = std::map<std::string, std::string>;

struct ScenarioInfo {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  // name, default
  std::vector<AxisSpec> default_axes;
  std::vector<std::string> value_columns;
  // allowed option keys -> allowed values (empty list: free-form)
  std::vector<std::pair<std::string, std::vector<std::string>>> options;
  std::function<std::vector<double>(const ParamMap&, const OptionMap&)> eval;
};

struct SweepSpec {
  std::string scenario;
  ParamMap fixed;              // parameters pinned by the caller
  std::vector<AxisSpec> axes;  // empty: scenario defaults minus pinned parameters
  OptionMap options;
  int steps = 64;   // default points per axis
  int threads = 0;  // 0: hardware concurrency
};

inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace sweep_detail {

inline DensityMatrix qubit_input(double rho11, double rho12) {
  CMatrix m(2, 2);
  m << rho11, rho12, rho12, 1.0 - rho11;
  return DensityMatrix(std::move(m));
}

inline std::vector<double> report_row(const ChannelReport& r) {
  return {r.s_in, r.s_out, r.s_e, r.i_c, r.raw_ic};
}

inline std::vector<CVector> rotated_basis(double angle) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  CVector a(2), b(2);
  a << c, s;
  b << -s, c;
  return {a, b};
}

inline const std::vector<std::string>& base_columns() {
  static const std::vector<std::string> cols{"s_in", "s_out", "s_e", "i_c", "raw_ic"};
  return cols;
}

inline std::vector<ScenarioInfo> make_registry() {
  const double pi = std::acos(-1.0);
  std::vector<ScenarioInfo> reg;

  reg.push_back({"dephasing",
                 {{"gamma", 1.0}, {"omega", 0.0}, {"t", 0.0}},
                 {{"t", 0.0, 1.5, 0}, {"omega", 0.0, 4.0, 0}},
                 base_columns(),
                 {},
                 [](const ParamMap& p, const OptionMap&) {
                   const Superoperator s =
                       dephasing_rabi({p.at("gamma"), p.at("omega"), p.at("t")});
                   return report_row(coherent_information(s, DensityMatrix::maximally_mixed(2)));
                 }});

  reg.push_back({"hydrogen",
                 {{"x", 0.0}},
                 {{"x", -1.0, 1.0, 0}},
                 base_columns(),
                 {},
                 [](const ParamMap& p, const OptionMap&) {
                   return report_row(coherent_information(hydrogen_stark(p.at("x")),
                                                          DensityMatrix::maximally_mixed(2)));
                 }});

  reg.push_back({"coupled-tlas",
                 {{"theta", 0.0}, {"rho11", 1.0}},
                 {{"theta", 0.0, pi, 0}, {"rho11", 0.0, 1.0, 0}},
                 base_columns(),
                 {},
                 [](const ParamMap& p, const OptionMap&) {
                   // second atom starts in diag(rho11, 1 - rho11): pure only at the borders
                   const Superoperator s =
                       coupled_tlas(exchange_unitary(p.at("theta")), qubit_input(p.at("rho11"), 0.0));
                   return report_row(coherent_information(s, DensityMatrix::maximally_mixed(2)));
                 }});

  reg.push_back({"measurement",
                 {{"angle", 0.0}, {"rho11", 0.5}, {"rho12", 0.0}},
                 {{"angle", 0.0, pi, 0}},
                 base_columns(),
                 {{"povm", {"direct", "trine"}}},
                 [](const ParamMap& p, const OptionMap& o) {
                   const DensityMatrix rho = qubit_input(p.at("rho11"), p.at("rho12"));
                   const auto it = o.find("povm");
                   const std::string kind = it == o.end() ? "direct" : it->second;
                   if (kind == "direct") {
                     const Superoperator s = direct_measurement(rotated_basis(p.at("angle")));
                     return report_row(coherent_information(s, rho));
                   }
                   const double pi_ = std::acos(-1.0);
                   std::vector<CMatrix> projectors, povm;
                   for (int q = 0; q < 3; ++q) {
                     CMatrix proj = CMatrix::Zero(3, 3);
                     proj(q, q) = 1.0;
                     projectors.push_back(std::move(proj));
                     const CVector v = rotated_basis(p.at("angle") + q * 2.0 * pi_ / 3.0)[0];
                     povm.push_back((2.0 / 3.0) * v * v.adjoint());
                   }
                   const Superoperator s = indirect_measurement(projectors, povm);
                   return report_row(coherent_information(s, rho));
                 }});

  reg.push_back({"duplication",
                 {{"angle", 0.0}, {"rho11", 0.5}, {"rho12", 0.0}},
                 {{"rho11", 0.0, 1.0, 0}},
                 base_columns(),
                 {},
                 [](const ParamMap& p, const OptionMap&) {
                   const Superoperator s = duplication(rotated_basis(p.at("angle")));
                   return report_row(
                       coherent_information(s, qubit_input(p.at("rho11"), p.at("rho12"))));
                 }});

  reg.push_back({"atom-field",
                 {{"gamma-t", 0.0}, {"rho11", 0.5}, {"rho12", 0.0}},
                 {{"gamma-t", 0.0, 5.0, 0}, {"rho11", 0.0, 1.0, 0}},
                 base_columns(),
                 {},
                 [](const ParamMap& p, const OptionMap&) {
                   const Superoperator s = atom_field(p.at("gamma-t"));
                   return report_row(
                       coherent_information(s, qubit_input(p.at("rho11"), p.at("rho12"))));
                 }});

  reg.push_back({"two-atoms",
                 {{"phi", 0.5}, {"gamma-t", 0.0}, {"rho22", 0.5}},
                 {{"phi", 0.3, 3.0, 0}, {"gamma-t", 0.0, 4.0, 0}},
                 [] {
                   std::vector<std::string> cols = base_columns();
                   cols.push_back("n2");
                   return cols;
                 }(),
                 {{"lambda-zero", {"0", "1"}}},
                 [](const ParamMap& p, const OptionMap& o) {
                   const double r22 = p.at("rho22");
                   const auto it = o.find("lambda-zero");
                   const bool zero_shift = it != o.end() && it->second == "1";
                   const DickeParams dp = dicke_params(p.at("phi"), p.at("gamma-t"), zero_shift);
                   std::vector<double> row = report_row(
                       coherent_information(two_atom_channel(dp), qubit_input(1.0 - r22, 0.0)));
                   row.push_back(two_atom_population(dp));
                   return row;
                 }});

  return reg;
}

// Exceptions thrown by worker threads are re-thrown on the caller thread.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > static_cast<int>(n)) threads = static_cast<int>(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sweep_detail

inline const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> reg = sweep_detail::make_registry();
  return reg;
}

inline const ScenarioInfo* find_scenario(const std::string& name) {
  for (const ScenarioInfo& s : scenario_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// Evaluates the grid and renders the CSV (header + rows, trailing newline).
// Deterministic: rows are row-major over the axes and formatting is fixed, so
// the text is independent of the thread count.
inline std::string run_sweep(const SweepSpec& spec) {
  const ScenarioInfo* info = find_scenario(spec.scenario);
  if (!info) fail(Errc::domain, "unknown scenario '" + spec.scenario + "'");
  if (spec.steps < 2) fail(Errc::domain, "steps must be >= 2");

  ParamMap values;
  for (const auto& [name, def] : info->params) values[name] = def;
  for (const auto& [name, v] : spec.fixed) {
    if (!values.count(name))
      fail(Errc::domain, "unknown parameter '" + name + "' for scenario " + info->name);
    values[name] = v;
  }
  for (const auto& [key, val] : spec.options) {
    bool ok = false;
    for (const auto& [name, allowed] : info->options)
      if (name == key) {
        ok = allowed.empty();
        for (const std::string& a : allowed) ok = ok || a == val;
      }
    if (!ok) fail(Errc::domain, "option " + key + "=" + val + " not valid for " + info->name);
  }

  std::vector<AxisSpec> axes = spec.axes;
  if (axes.empty())
    for (const AxisSpec& a : info->default_axes)
      if (!spec.fixed.count(a.name)) axes.push_back(a);
  if (axes.size() > 2) fail(Errc::domain, "at most two sweep axes");
  for (AxisSpec& a : axes) {
    if (!values.count(a.name))
      fail(Errc::domain, "unknown axis parameter '" + a.name + "' for scenario " + info->name);
    if (spec.fixed.count(a.name)) fail(Errc::domain, "parameter '" + a.name + "' is both fixed and swept");
    if (a.count == 0) a.count = spec.steps;
    if (a.count < 2) fail(Errc::domain, "axis '" + a.name + "' needs at least 2 points");
    if (!(a.lo < a.hi)) fail(Errc::domain, "axis '" + a.name + "' needs min < max");
  }
  for (std::size_t i = 0; i + 1 < axes.size(); ++i)
    if (axes[i].name == axes[i + 1].name) fail(Errc::domain, "duplicate axis '" + axes[i].name + "'");

  std::size_t rows = 1;
  for (const AxisSpec& a : axes) rows *= static_cast<std::size_t>(a.count);

  std::ostringstream header;
  for (const AxisSpec& a : axes) header << a.name << ",";
  for (std::size_t i = 0; i < info->value_columns.size(); ++i)
    header << (i ? "," : "") << info->value_columns[i];

  std::vector<std::string> lines(rows);
  sweep_detail::parallel_for(rows, spec.threads, [&](std::size_t idx) {
    ParamMap point = values;
    std::string prefix;
    std::size_t rest = idx;
    for (std::size_t ai = axes.size(); ai-- > 0;) {
      const AxisSpec& a = axes[ai];
      const std::size_t step = rest % static_cast<std::size_t>(a.count);
      rest /= static_cast<std::size_t>(a.count);
      const double v = a.lo + (a.hi - a.lo) * static_cast<double>(step) / (a.count - 1);
      point[a.name] = v;
      prefix = format_g12(v) + "," + prefix;
    }
    const std::vector<double> result = info->eval(point, spec.options);
    std::string line = prefix;
    for (std::size_t i = 0; i < result.size(); ++i)
      line += (i ? "," : "") + format_g12(result[i]);
    lines[idx] = std::move(line);
  });

  std::string out = header.str() + "\n";
  for (const std::string& line : lines) {
    out += line;
    out += "\n";
  }
  return out;
}

// key=value sweep description; '#' starts a comment. Axis syntax:
// axis=name:lo:hi[:count].
inline SweepSpec parse_spec_file(std::istream& in) {
  SweepSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string trimmed;
    std::istringstream raw(line);
    std::string word;
    while (raw >> word) trimmed += trimmed.empty() ? word : " " + word;
    if (trimmed.empty()) continue;
    const std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(line_no, "expected key=value");
    const std::string key = trimmed.substr(0, eq);
    const std::string val = trimmed.substr(eq + 1);
    if (key == "scenario") {
      spec.scenario = val;
    } else if (key == "steps" || key == "threads") {
      double v = 0.0;
      if (!parse_double_full(val, v) || v != static_cast<int>(v))
        throw ParseError(line_no, key + " must be an integer");
      (key == "steps" ? spec.steps : spec.threads) = static_cast<int>(v);
    } else if (key == "axis") {
      AxisSpec a;
      std::istringstream parts(val);
      std::string tok;
      std::vector<std::string> toks;
      while (std::getline(parts, tok, ':')) toks.push_back(tok);
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError(line_no, "axis wants name:lo:hi[:count]");
      a.name = toks[0];
      double cnt = 0.0;
      if (!parse_double_full(toks[1], a.lo) || !parse_double_full(toks[2], a.hi) ||
          (toks.size() == 4 && (!parse_double_full(toks[3], cnt) || cnt != static_cast<int>(cnt))))
        throw ParseError(line_no, "malformed axis '" + val + "'");
      a.count = static_cast<int>(cnt);
      spec.axes.push_back(std::move(a));
    } else if (key == "povm" || key == "lambda-zero") {
      spec.options[key] = val;
    } else {
      double v = 0.0;
      if (!parse_double_full(val, v))
        throw ParseError(line_no, "'" + val + "' is not a number for parameter " + key);
      spec.fixed[key] = v;
    }
  }
  return spec;
}

}  // namespace qci
