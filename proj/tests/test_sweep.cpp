#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <qci/sweep.hpp>

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

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) out.push_back(f);
  return out;
}

std::vector<double> column(const std::string& csv, std::size_t idx) {
  std::vector<double> out;
  const auto lines = lines_of(csv);
  for (std::size_t i = 1; i < lines.size(); ++i) out.push_back(std::stod(fields_of(lines[i]).at(idx)));
  return out;
}

}  // namespace

TEST_CASE("pinning every parameter produces a single row without axis columns") {
  SweepSpec spec;
  spec.scenario = "dephasing";
  spec.fixed = {{"gamma", 1.0}, {"omega", 0.0}, {"t", 0.0}};
  const std::string csv = run_sweep(spec);
  const auto lines = lines_of(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "s_in,s_out,s_e,i_c,raw_ic");
  CHECK(std::abs(std::stod(fields_of(lines[1]).at(3)) - 1.0) <= 1e-9);
}

TEST_CASE("a fully precessed hydrogen point transmits one bit") {
  SweepSpec spec;
  spec.scenario = "hydrogen";
  spec.fixed = {{"x", 1.0}};
  const auto lines = lines_of(run_sweep(spec));
  REQUIRE(lines.size() == 2);
  CHECK(std::abs(std::stod(fields_of(lines[1]).at(3)) - 1.0) <= 1e-9);
}

TEST_CASE("the fresh two-atom point reports zero transfer and zero population") {
  SweepSpec spec;
  spec.scenario = "two-atoms";
  spec.fixed = {{"phi", 0.5}, {"gamma-t", 0.0}};
  const auto lines = lines_of(run_sweep(spec));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "s_in,s_out,s_e,i_c,raw_ic,n2");
  const auto row = fields_of(lines[1]);
  CHECK(std::abs(std::stod(row.at(3))) <= 1e-9);  // i_c
  CHECK(std::abs(std::stod(row.at(5))) <= 1e-12); // n2
}

TEST_CASE("default axes kick in with the sweep-wide step count") {
  SweepSpec spec;
  spec.scenario = "hydrogen";
  const auto lines = lines_of(run_sweep(spec));
  REQUIRE(lines.size() == 65);  // default 64 steps + header
  CHECK(fields_of(lines[0]).at(0) == "x");

  spec.steps = 16;
  CHECK(lines_of(run_sweep(spec)).size() == 17);

  spec.axes = {{"x", 0.0, 1.0, 5}};  // explicit count wins over steps
  CHECK(lines_of(run_sweep(spec)).size() == 6);
}

TEST_CASE("two axes are rastered row-major with the second axis fastest") {
  SweepSpec spec;
  spec.scenario = "dephasing";
  spec.axes = {{"t", 0.0, 1.0, 3}, {"omega", 0.0, 4.0, 2}};
  const std::string csv = run_sweep(spec);
  const std::vector<double> t = column(csv, 0);
  const std::vector<double> omega = column(csv, 1);
  const std::vector<double> want_t = {0.0, 0.0, 0.5, 0.5, 1.0, 1.0};
  const std::vector<double> want_w = {0.0, 4.0, 0.0, 4.0, 0.0, 4.0};
  REQUIRE(t.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(t[i] == want_t[i]);
    CHECK(omega[i] == want_w[i]);
  }
}

TEST_CASE("the rendered text does not depend on the thread count") {
  SweepSpec spec;
  spec.scenario = "dephasing";
  spec.axes = {{"t", 0.0, 1.5, 8}, {"omega", 0.0, 4.0, 4}};
  spec.threads = 1;
  const std::string once = run_sweep(spec);
  spec.threads = 4;
  CHECK(run_sweep(spec) == once);
  spec.threads = 3;
  CHECK(run_sweep(spec) == once);
}

TEST_CASE("transmitted bits stay within the output-space capacity") {
  SweepSpec spec;
  spec.scenario = "atom-field";
  spec.axes = {{"gamma-t", 0.0, 5.0, 6}, {"rho11", 0.0, 1.0, 5}};
  for (double ic : column(run_sweep(spec), 5)) {
    CHECK(ic >= 0.0);
    CHECK(ic <= 1.0 + 1e-9);  // log2 of the qubit output
  }
}

TEST_CASE("every measurement readout angle transmits nothing") {
  SweepSpec spec;
  spec.scenario = "measurement";
  spec.axes = {{"angle", 0.0, 3.0, 5}};
  spec.fixed = {{"rho11", 0.3}, {"rho12", 0.2}};
  for (double ic : column(run_sweep(spec), 4)) CHECK(ic <= 1e-9);
  spec.options = {{"povm", "trine"}};
  for (double ic : column(run_sweep(spec), 4)) CHECK(ic <= 1e-9);
}

TEST_CASE("sweep requests are validated") {
  auto sweep = [](const std::string& scenario, ParamMap fixed, std::vector<AxisSpec> axes,
                  OptionMap options = {}, int steps = 64) {
    SweepSpec spec;
    spec.scenario = scenario;
    spec.fixed = std::move(fixed);
    spec.axes = std::move(axes);
    spec.options = std::move(options);
    spec.steps = steps;
    run_sweep(spec);
  };
  CHECK(code_of([&] { sweep("warp-drive", {}, {}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {{"y", 1.0}}, {}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {{"x", 0.0}}, {{"x", -1.0, 1.0, 5}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {{"q", -1.0, 1.0, 5}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {{"x", -1.0, 1.0, 1}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {{"x", 1.0, -1.0, 5}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {{"x", 0.0, 0.0, 5}}); }) == Errc::domain);
  CHECK(code_of([&] {
          sweep("dephasing", {}, {{"t", 0.0, 1.0, 3}, {"omega", 0.0, 1.0, 3}, {"gamma", 0.5, 1.0, 3}});
        }) == Errc::domain);
  CHECK(code_of([&] { sweep("dephasing", {}, {{"t", 0.0, 1.0, 3}, {"t", 0.0, 1.0, 3}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {}, {{"povm", "direct"}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("measurement", {}, {}, {{"povm", "frobnicate"}}); }) == Errc::domain);
  CHECK(code_of([&] { sweep("hydrogen", {}, {}, {}, 1); }) == Errc::domain);
  // value-domain breakage surfaces from the evaluation itself
  CHECK(code_of([&] { sweep("hydrogen", {{"x", 2.0}}, {}); }) == Errc::domain);
}

TEST_CASE("spec files parse keys, axes, options and comments") {
  std::istringstream in(
      "# a parameter scan\n"
      "scenario=measurement\n"
      "\n"
      "axis=angle:0:3.14:9   # swept\n"
      "rho11=0.25\n"
      "povm=trine\n"
      "steps=32\n"
      "threads=2\n");
  SweepSpec spec = parse_spec_file(in);
  CHECK(spec.scenario == "measurement");
  REQUIRE(spec.axes.size() == 1);
  CHECK(spec.axes[0].name == "angle");
  CHECK(spec.axes[0].lo == 0.0);
  CHECK(spec.axes[0].hi == 3.14);
  CHECK(spec.axes[0].count == 9);
  CHECK(spec.fixed.at("rho11") == 0.25);
  CHECK(spec.options.at("povm") == "trine");
  CHECK(spec.steps == 32);
  CHECK(spec.threads == 2);
}

TEST_CASE("spec file errors carry their line numbers") {
  auto failure_line = [](const std::string& text) -> std::optional<int> {
    std::istringstream in(text);
    try {
      parse_spec_file(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::nullopt;
  };
  CHECK(failure_line("scenario=hydrogen\nfrobnicate\n") == 2);
  CHECK(failure_line("x=abc\n") == 1);
  CHECK(failure_line("# fine\naxis=x:1\n") == 2);
  CHECK(failure_line("axis=x:0:1:2.5\n") == 1);
  CHECK(failure_line("steps=2.5\n") == 1);
  CHECK(failure_line("=5\n") == 1);
  CHECK_FALSE(failure_line("   # only a comment\n").has_value());
}

TEST_CASE("values render with twelve significant digits") {
  CHECK(format_g12(0.1) == "0.1");
  CHECK(format_g12(2.0) == "2");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(-0.0625) == "-0.0625");
}
