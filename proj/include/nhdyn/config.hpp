#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/flow.hpp"
#include "nhdyn/model.hpp"
#include "nhdyn/oracle.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nhdyn {

struct InitialCondition {
  enum class Mode { stationary, explicit_values };
  Mode mode = Mode::stationary;
  double phi = 0.0;
  double varphi = 0.0;
  double theta_zero = 0.0;
  /// Added to theta_zero after the initial state is resolved.
  double theta_zero_offset = 0.0;
};

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int samples = 11;

  std::vector<double> points() const;
};

struct Thresholds {
  double residual = 1e-6;
  double oracle = 1e-6;
  double metric = 1e-8;
  double decomposition = 1e-10;
};

struct DecomposeSweep {
  int samples = 32;
  double eps_max = 1.0;
  double mu_max = 0.4;
};

struct RunConfig {
  AlgebraKind algebra = AlgebraKind::su2;
  RepresentationLabel representation = SpinLabel{0.5};
  CoefficientSet coefficients = constant_coefficients(1.0, 0.0, 0.0);
  InitialCondition initial;
  TimeGrid time;
  IntegratorConfig tolerances;
  OracleConfig oracle;
  std::vector<double> indices;
  std::optional<int> sign_convention;  // empty: decided by the convention audit
  std::uint64_t seed = 0;
  int residual_samples = 512;
  Thresholds thresholds;
  DecomposeSweep decompose;

  Representation build_representation() const;
};

/// Parses and validates a JSON run description.  Table CSV paths are
/// resolved against `base_dir`.  Throws ConfigError with the line/column of
/// a parse error or the name of the offending field.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

/// Reads `path` and parses it relative to its own directory.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace nhdyn
