#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nhdyn/config.hpp"
#include "nhdyn/errors.hpp"

#include <string>

using namespace nhdyn;

namespace {

std::string error_of(const std::string& text, const std::filesystem::path& base = {}) {
  try {
    parse_config(text, base);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const RunConfig c = parse_config(R"({"algebra": "su2", "representation": {"j": 0.5},
      "coefficients": {"omega": 1.0, "alpha": 0.2, "beta": 0.2}})");
  CHECK(c.algebra == AlgebraKind::su2);
  CHECK(c.tolerances.rtol == 1e-10);
  CHECK(c.tolerances.atol == 1e-12);
  CHECK_FALSE(c.sign_convention.has_value());
  CHECK(c.initial.mode == InitialCondition::Mode::stationary);
  CHECK(c.indices == std::vector<double>{0.5});
  CHECK(c.build_representation().dim == 2);
  CHECK(std::get<ConstantProfile>(c.coefficients.alpha).value == cplx(0.2));
}

TEST_CASE("full config") {
  const RunConfig c = parse_config(R"({
    "algebra": "su11", "representation": {"cutoff": 24},
    "coefficients": {
      "omega": {"type": "sinusoid", "amp_re": 0.1, "frequency": 2.0, "offset_re": 1.0},
      "alpha": {"type": "constant", "re": 0.1, "im": -0.05},
      "beta": {"type": "table", "csv": "omega_table.csv", "interpolation": "linear"}},
    "initial": {"mode": "explicit", "phi": 0.3, "varphi": 0.1, "theta_zero": -1.0},
    "time": {"t0": 0.5, "t1": 2.5, "samples": 5},
    "tolerances": {"rtol": 1e-9, "atol": 1e-11},
    "indices": [0, 3], "sign_convention": -1, "seed": 42})",
                                   NHDYN_TEST_DATA_DIR);
  CHECK(c.algebra == AlgebraKind::su11);
  CHECK(c.initial.mode == InitialCondition::Mode::explicit_values);
  CHECK(c.initial.theta_zero == -1.0);
  CHECK(c.time.points() == std::vector<double>{0.5, 1.0, 1.5, 2.0, 2.5});
  CHECK(c.indices == std::vector<double>{0.0, 3.0});
  CHECK(*c.sign_convention == -1);
  CHECK(c.seed == 42u);
  CHECK(std::get<TableProfile>(c.coefficients.beta).order() == Interpolation::linear);
  CHECK(std::abs(evaluate(c.coefficients.omega, 0.0) - cplx(1.0)) < 1e-15);
}

TEST_CASE("validation errors name the field") {
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 0.5},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}, "indices": [7]})"),
                 "index out of range"));
  CHECK(contains(error_of(R"({"algebra": "su3"})"), "algebra"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 0.7},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}})"),
                 "representation.j"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 1},
      "coefficients": {"omega": 1, "alpha": 0}})"),
                 "coefficients.beta"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 1},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}, "time": {"samples": 1}})"),
                 "time.samples"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 1},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}, "time": {"t0": 2, "t1": 1}})"),
                 "time.t1"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 1},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}, "sign_convention": 3})"),
                 "sign_convention"));
  CHECK(contains(error_of(R"({"algebra": "su2", "representation": {"j": 1},
      "coefficients": {"omega": 1, "alpha": 0, "beta": 0}, "initial": {"mode": "explicit", "phi": 1}})"),
                 "initial.varphi"));
}

TEST_CASE("parse errors carry a position") {
  const std::string e = error_of("{\n  \"algebra\": \"su2\",\n  oops\n}");
  CHECK(contains(e, "parse error at line 3"));
  CHECK(contains(e, "column"));
}

TEST_CASE("missing files") {
  CHECK(contains(error_of(R"({"algebra": "su11", "representation": {"cutoff": 20},
      "coefficients": {"omega": {"type": "table", "csv": "missing_table.csv"}, "alpha": 0, "beta": 0}})",
                          "/tmp/nowhere"),
                 "/tmp/nowhere/missing_table.csv"));
  try {
    load_config("/tmp/nowhere/config.json");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "file-not-found: /tmp/nowhere/config.json");
  }
}
