#pragma once

#include "nhdyn/config.hpp"
#include "nhdyn/transform.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nhdyn {

enum class Command { decompose, flow, evolve, verify, spectrum };

/// Throws std::invalid_argument for unknown names.
Command parse_command(const std::string& name);

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_uncertified = 2;

struct IndexReport {
  double n;
  double lambda;
  double max_oracle_error;
  double t_max_oracle_error;
  double max_metric_drift;
  /// Empty when the oracle ran; otherwise why it could not certify this label.
  std::string oracle_failure;
};

struct RunReport {
  std::string command;
  bool certified = true;
  int sigma = -1;
  bool sigma_from_audit = false;
  FlowState initial{};
  ResidualReport residuals;
  std::vector<IndexReport> indices;
  double max_offdiagonal_metric_drift = 0.0;
  double phase_integral_end = 0.0;  // I(t1)
  double mean_re_w = 0.0;           // I(t1) / (2 (t1 - t0))
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> files;
  double elapsed_seconds = 0.0;
};

/// Runs one command, writing its files under out_dir.  Domain failures
/// propagate as exceptions; certification outcomes are in the report.
RunReport run(Command cmd, const RunConfig& cfg, const std::filesystem::path& out_dir);

/// 0 when certified, 2 otherwise.
int exit_code(const RunReport& report);

/// Deterministic JSON rendering of a verify report.  Timing is included only
/// when requested.
std::string report_json(const RunReport& report, bool include_timing = false);

/// Fixed 17-significant-digit scientific rendering used by every CSV.
std::string format_real(double v);

}  // namespace nhdyn
