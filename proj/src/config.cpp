#include "nhdyn/config.hpp"

#include "nhdyn/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace nhdyn {

using nlohmann::json;

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    out[static_cast<std::size_t>(k)] = k + 1 == samples ? t1 : t0 + (t1 - t0) * k / (samples - 1);
  }
  return out;
}

Representation RunConfig::build_representation() const {
  if (algebra == AlgebraKind::su2) return build_su2_rep(std::get<SpinLabel>(representation).j);
  return build_su11_boson_rep(std::get<FockCutoff>(representation).cutoff);
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field `" + field + "`: " + why);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& prefix) {
  if (!obj.contains(key)) return fallback;
  return number(obj.at(key), prefix + "." + key);
}

cplx complex_value(const json& obj, const char* re_key, const char* im_key, const std::string& field) {
  return {number_or(obj, re_key, 0.0, field), number_or(obj, im_key, 0.0, field)};
}

TimeProfile parse_profile(const json& j, const std::string& field, const std::filesystem::path& base) {
  if (j.is_number()) return ConstantProfile{number(j, field)};
  if (!j.is_object()) fail(field, "expected a number or an object");
  const std::string type = j.value("type", std::string("constant"));
  if (type == "constant") return ConstantProfile{complex_value(j, "re", "im", field)};
  if (type == "sinusoid") {
    return SinusoidProfile{complex_value(j, "amp_re", "amp_im", field),
                           number_or(j, "frequency", 1.0, field), number_or(j, "phase0", 0.0, field),
                           complex_value(j, "offset_re", "offset_im", field)};
  }
  if (type == "table") {
    if (!j.contains("csv") || !j.at("csv").is_string()) fail(field + ".csv", "expected a path string");
    const std::string interp = j.value("interpolation", std::string("cubic"));
    if (interp != "cubic" && interp != "linear") fail(field + ".interpolation", "must be cubic or linear");
    std::filesystem::path p = j.at("csv").get<std::string>();
    if (p.is_relative()) p = base / p;
    try {
      return load_table_csv(p, interp == "cubic" ? Interpolation::cubic : Interpolation::linear);
    } catch (const std::exception& e) {
      fail(field, e.what());
    }
  }
  fail(field + ".type", "unknown profile type `" + type + "`");
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + position_of(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!root.is_object()) fail("<root>", "expected an object");

  RunConfig cfg;
  if (!root.contains("algebra") || !root.at("algebra").is_string()) fail("algebra", "expected \"su2\" or \"su11\"");
  const std::string algebra = root.at("algebra").get<std::string>();
  if (algebra == "su2") {
    cfg.algebra = AlgebraKind::su2;
  } else if (algebra == "su11") {
    cfg.algebra = AlgebraKind::su11;
  } else {
    fail("algebra", "expected \"su2\" or \"su11\"");
  }

  if (!root.contains("representation") || !root.at("representation").is_object()) {
    fail("representation", "expected an object with `j` or `cutoff`");
  }
  const json& rep = root.at("representation");
  if (cfg.algebra == AlgebraKind::su2) {
    if (!rep.contains("j")) fail("representation.j", "required for su2");
    const double j = number(rep.at("j"), "representation.j");
    if (!(j > 0) || std::abs(2 * j - std::round(2 * j)) > 1e-12) fail("representation.j", "must be a positive half-integer");
    cfg.representation = SpinLabel{j};
  } else {
    if (!rep.contains("cutoff")) fail("representation.cutoff", "required for su11");
    const json& n = rep.at("cutoff");
    if (!n.is_number_integer() || n.get<long long>() < 4 || n.get<long long>() > 100000) {
      fail("representation.cutoff", "must be an integer >= 4");
    }
    cfg.representation = FockCutoff{n.get<int>()};
  }

  if (!root.contains("coefficients") || !root.at("coefficients").is_object()) {
    fail("coefficients", "expected an object with omega, alpha, beta");
  }
  const json& co = root.at("coefficients");
  for (const char* key : {"omega", "alpha", "beta"}) {
    if (!co.contains(key)) fail(std::string("coefficients.") + key, "required");
  }
  cfg.coefficients = {parse_profile(co.at("omega"), "coefficients.omega", base_dir),
                      parse_profile(co.at("alpha"), "coefficients.alpha", base_dir),
                      parse_profile(co.at("beta"), "coefficients.beta", base_dir)};

  if (root.contains("initial")) {
    const json& in = root.at("initial");
    if (!in.is_object()) fail("initial", "expected an object");
    const std::string mode = in.value("mode", std::string("stationary"));
    if (mode == "stationary") {
      cfg.initial.mode = InitialCondition::Mode::stationary;
    } else if (mode == "explicit") {
      cfg.initial.mode = InitialCondition::Mode::explicit_values;
      for (const char* key : {"phi", "varphi", "theta_zero"}) {
        if (!in.contains(key)) fail(std::string("initial.") + key, "required in explicit mode");
      }
      cfg.initial.phi = number(in.at("phi"), "initial.phi");
      cfg.initial.varphi = number(in.at("varphi"), "initial.varphi");
      cfg.initial.theta_zero = number(in.at("theta_zero"), "initial.theta_zero");
    } else {
      fail("initial.mode", "must be stationary or explicit");
    }
    cfg.initial.theta_zero_offset = number_or(in, "theta_zero_offset", 0.0, "initial");
  }

  if (root.contains("time")) {
    const json& tm = root.at("time");
    if (!tm.is_object()) fail("time", "expected an object");
    cfg.time.t0 = number_or(tm, "t0", 0.0, "time");
    cfg.time.t1 = number_or(tm, "t1", 1.0, "time");
    if (tm.contains("samples")) {
      if (!tm.at("samples").is_number_integer()) fail("time.samples", "expected an integer");
      cfg.time.samples = tm.at("samples").get<int>();
    }
  }
  if (cfg.time.samples < 2) fail("time.samples", "must be at least 2");
  if (!(cfg.time.t1 > cfg.time.t0)) fail("time.t1", "must exceed time.t0");

  if (root.contains("tolerances")) {
    const json& tol = root.at("tolerances");
    if (!tol.is_object()) fail("tolerances", "expected an object");
    cfg.tolerances.rtol = number_or(tol, "rtol", cfg.tolerances.rtol, "tolerances");
    cfg.tolerances.atol = number_or(tol, "atol", cfg.tolerances.atol, "tolerances");
    cfg.tolerances.max_step = number_or(tol, "max_step", cfg.tolerances.max_step, "tolerances");
    cfg.oracle.rtol = number_or(tol, "oracle_rtol", cfg.oracle.rtol, "tolerances");
    cfg.oracle.atol = number_or(tol, "oracle_atol", cfg.oracle.atol, "tolerances");
  }
  try {
    cfg.tolerances.validate();
  } catch (const std::invalid_argument& e) {
    fail("tolerances", e.what());
  }

  const Representation built = cfg.build_representation();
  if (root.contains("indices")) {
    const json& idx = root.at("indices");
    if (!idx.is_array()) fail("indices", "expected an array");
    for (const json& n : idx) {
      const double label = number(n, "indices");
      try {
        basis_column(built, label);
      } catch (const std::out_of_range&) {
        fail("indices", "index out of range: " + n.dump());
      }
      cfg.indices.push_back(label);
    }
  }
  if (cfg.indices.empty()) {
    cfg.indices.push_back(cfg.algebra == AlgebraKind::su2 ? std::get<SpinLabel>(cfg.representation).j : 0.0);
  }

  if (root.contains("sign_convention")) {
    const json& s = root.at("sign_convention");
    if (s.is_string() && s.get<std::string>() == "auto") {
      cfg.sign_convention.reset();
    } else if (s.is_number_integer() && (s.get<int>() == 1 || s.get<int>() == -1)) {
      cfg.sign_convention = s.get<int>();
    } else {
      fail("sign_convention", "must be \"auto\", 1 or -1");
    }
  }

  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }
  if (root.contains("residual_samples")) {
    if (!root.at("residual_samples").is_number_integer() || root.at("residual_samples").get<int>() < 2) {
      fail("residual_samples", "expected an integer >= 2");
    }
    cfg.residual_samples = root.at("residual_samples").get<int>();
  }
  if (root.contains("thresholds")) {
    const json& th = root.at("thresholds");
    cfg.thresholds.residual = number_or(th, "residual", cfg.thresholds.residual, "thresholds");
    cfg.thresholds.oracle = number_or(th, "oracle", cfg.thresholds.oracle, "thresholds");
    cfg.thresholds.metric = number_or(th, "metric", cfg.thresholds.metric, "thresholds");
    cfg.thresholds.decomposition =
        number_or(th, "decomposition", cfg.thresholds.decomposition, "thresholds");
  }
  if (root.contains("decompose")) {
    const json& de = root.at("decompose");
    if (de.contains("samples")) {
      if (!de.at("samples").is_number_integer() || de.at("samples").get<int>() < 1) {
        fail("decompose.samples", "expected a positive integer");
      }
      cfg.decompose.samples = de.at("samples").get<int>();
    }
    cfg.decompose.eps_max = number_or(de, "eps_max", cfg.decompose.eps_max, "decompose");
    cfg.decompose.mu_max = number_or(de, "mu_max", cfg.decompose.mu_max, "decompose");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file-not-found: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

}  // namespace nhdyn
