#include "nhdyn/run.hpp"

#include "nhdyn/decomposition.hpp"
#include "nhdyn/errors.hpp"
#include "nhdyn/oracle.hpp"
#include "nhdyn/solution.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <future>
#include <random>
#include <stdexcept>

namespace nhdyn {

Command parse_command(const std::string& name) {
  if (name == "decompose") return Command::decompose;
  if (name == "flow") return Command::flow;
  if (name == "evolve") return Command::evolve;
  if (name == "verify") return Command::verify;
  if (name == "spectrum") return Command::spectrum;
  throw std::invalid_argument("unknown command `" + name + "`");
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

int exit_code(const RunReport& report) { return report.certified ? exit_ok : exit_uncertified; }

namespace {

const char* command_name(Command cmd) {
  switch (cmd) {
    case Command::decompose: return "decompose";
    case Command::flow: return "flow";
    case Command::evolve: return "evolve";
    case Command::verify: return "verify";
    case Command::spectrum: return "spectrum";
  }
  return "?";
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

FlowState resolve_initial(const RunConfig& cfg) {
  FlowState s;
  if (cfg.initial.mode == InitialCondition::Mode::stationary) {
    s = stationary_state(eval_coeffs(cfg.coefficients, cfg.time.t0).values, cfg.algebra, cfg.time.t0);
  } else {
    s = {cfg.time.t0, cfg.initial.phi, cfg.initial.varphi, cfg.initial.theta_zero};
  }
  s.theta_zero += cfg.initial.theta_zero_offset;
  return s;
}

Trajectory flow_for(const RunConfig& cfg, const FlowState& initial) {
  const std::vector<double> stops = cfg.time.points();
  return integrate_flow(cfg.coefficients, cfg.algebra, initial, cfg.time.t1, cfg.tolerances, stops);
}

void run_decompose(const RunConfig& cfg, const std::filesystem::path& out_dir, RunReport& report) {
  const Representation rep = cfg.build_representation();
  const Index cols = rep.kind == AlgebraKind::su2 ? rep.dim : rep.dim / 2;
  std::mt19937_64 rng(cfg.seed);
  const auto path = out_dir / "decompose.csv";
  std::ofstream out = open_output(path);
  out << "eps,mu_re,mu_im,theta_plus_re,theta_plus_im,theta_zero_re,theta_zero_im,"
         "theta_minus_re,theta_minus_im,phi,varphi,chi,identity_residual\n";
  double worst = 0.0;
  for (int k = 0; k < cfg.decompose.samples; ++k) {
    const double eps = cfg.decompose.eps_max * (2.0 * unit_draw(rng) - 1.0);
    const double mod = cfg.decompose.mu_max * unit_draw(rng);
    const double ang = 2.0 * pi * unit_draw(rng);
    const CanonicalParams p{eps, std::polar(mod, ang)};
    const GaussParams g = gauss_decompose(p, rep.kind);
    const ReducedParams r = reduce_params(p, rep.kind);
    const Matrix product = build_group_element(g, rep);
    const Matrix direct = canonical_exponential(p, rep);
    const double residual = max_abs((product - direct).leftCols(cols)) / max_abs(direct.leftCols(cols));
    worst = std::max(worst, residual);
    out << format_real(eps) << ',' << format_real(p.mu.real()) << ',' << format_real(p.mu.imag()) << ','
        << format_real(g.theta_plus.real()) << ',' << format_real(g.theta_plus.imag()) << ','
        << format_real(g.theta_zero.real()) << ',' << format_real(g.theta_zero.imag()) << ','
        << format_real(g.theta_minus.real()) << ',' << format_real(g.theta_minus.imag()) << ','
        << format_real(r.phi) << ',' << format_real(r.varphi) << ',' << format_real(r.chi) << ','
        << format_real(residual) << '\n';
  }
  report.files.push_back(path);
  if (worst > cfg.thresholds.decomposition) {
    report.certified = false;
    report.warnings.push_back("decomposition identity residual " + format_real(worst) + " above threshold");
  }
}

void run_flow(const RunConfig& cfg, const std::filesystem::path& out_dir, RunReport& report) {
  report.initial = resolve_initial(cfg);
  const Trajectory traj = flow_for(cfg, report.initial);
  const auto path = out_dir / "flow.csv";
  std::ofstream out = open_output(path);
  out << "t,phi,varphi,theta0,re_w,abs_q,abs_y,abs_im_w\n";
  for (double t : cfg.time.points()) {
    const FlowState s = traj.state_at(t);
    const CoeffSample cs = eval_coeffs(cfg.coefficients, t);
    const TransformedCoeffs tc =
        transformed_coeffs(s, flow_rhs(s, cs.polar, cfg.algebra), cs.values, cfg.algebra);
    out << format_real(t) << ',' << format_real(s.phi) << ',' << format_real(s.varphi) << ','
        << format_real(s.theta_zero) << ',' << format_real(re_w(s, cs.polar, cfg.algebra)) << ','
        << format_real(std::abs(tc.Q)) << ',' << format_real(std::abs(tc.Y)) << ','
        << format_real(std::abs(tc.W.imag())) << '\n';
  }
  report.files.push_back(path);
  report.residuals = residual_scan(traj, cfg.coefficients, cfg.algebra, cfg.residual_samples);
  if (report.residuals.max() > cfg.thresholds.residual) {
    report.certified = false;
    report.warnings.push_back("constraint residual " + format_real(report.residuals.max()) +
                              " above threshold");
  }
}

int choose_sigma(const RunConfig& cfg, const Trajectory& traj, const Representation& rep, RunReport& report) {
  if (cfg.sign_convention) return *cfg.sign_convention;
  // the audit needs a label with a non-zero K0 eigenvalue
  double label = cfg.indices.front();
  for (double n : cfg.indices) {
    if (std::abs(k0_eigenvalue(rep, n)) > std::abs(k0_eigenvalue(rep, label))) label = n;
  }
  if (k0_eigenvalue(rep, label) == 0.0) {
    label = rep.kind == AlgebraKind::su2 ? std::get<SpinLabel>(rep.label).j : 0.0;
  }
  report.sigma_from_audit = true;
  return audit_sign_convention(traj, cfg.coefficients, rep, make_eigen_index(rep, label));
}

void run_evolve(const RunConfig& cfg, const std::filesystem::path& out_dir, RunReport& report) {
  const Representation rep = cfg.build_representation();
  report.initial = resolve_initial(cfg);
  const Trajectory traj = flow_for(cfg, report.initial);
  report.residuals = residual_scan(traj, cfg.coefficients, cfg.algebra, cfg.residual_samples);
  report.sigma = choose_sigma(cfg, traj, rep, report);
  const PhaseLaw phase = phase_integral(traj, cfg.coefficients, cfg.algebra, report.sigma);

  const auto path = out_dir / "evolve.csv";
  std::ofstream out = open_output(path);
  out << "t,index";
  for (Index k = 0; k < rep.dim; ++k) out << ",re_" << k;
  for (Index k = 0; k < rep.dim; ++k) out << ",im_" << k;
  out << ",metric_norm\n";
  const std::vector<double> times = cfg.time.points();
  for (double n : cfg.indices) {
    const EigenIndex idx = make_eigen_index(rep, n);
    double norm0 = 0.0;
    IndexReport ir{n, idx.lambda, 0.0, 0.0, 0.0};
    for (double t : times) {
      const StateVector psi = closed_form_state(idx, t, phase, rep);
      const double metric = metric_overlap(psi, psi, group_element_at(traj, rep, t)).real();
      if (t == times.front()) norm0 = metric;
      ir.max_metric_drift = std::max(ir.max_metric_drift, std::abs(metric - norm0) / norm0);
      out << format_real(t) << ',' << n;
      for (Index k = 0; k < rep.dim; ++k) out << ',' << format_real(psi.amplitudes[k].real());
      for (Index k = 0; k < rep.dim; ++k) out << ',' << format_real(psi.amplitudes[k].imag());
      out << ',' << format_real(metric) << '\n';
    }
    report.indices.push_back(ir);
  }
  report.files.push_back(path);
  report.phase_integral_end = phase.integral(cfg.time.t1);
  report.mean_re_w = report.phase_integral_end / (2.0 * (cfg.time.t1 - cfg.time.t0));
  if (report.residuals.max() > cfg.thresholds.residual) {
    report.certified = false;
    report.warnings.push_back("constraint residual above threshold");
  }
}

struct OracleComparison {
  IndexReport report;
  std::vector<StateVector> closed;
};

OracleComparison compare_index(const RunConfig& cfg, const Representation& rep, const Trajectory& traj,
                               const PhaseLaw& phase, double n) {
  const EigenIndex idx = make_eigen_index(rep, n);
  const std::vector<double> times = cfg.time.points();
  OracleComparison out{{n, idx.lambda, 0.0, times.front(), 0.0, {}}, {}};
  for (double t : times) out.closed.push_back(closed_form_state(idx, t, phase, rep));
  std::optional<PropagationResult> ref;
  try {
    ref = propagate_direct(cfg.coefficients, rep, out.closed.front(), times, cfg.oracle);
  } catch (const TruncationContaminated& e) {
    out.report.oracle_failure = std::string("truncation-contaminated: ") + e.what();
  }
  double metric0 = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double err = ref ? state_error(out.closed[k], ref->samples[k]) : 0.0;
    if (err > out.report.max_oracle_error) {
      out.report.max_oracle_error = err;
      out.report.t_max_oracle_error = times[k];
    }
    const double metric =
        metric_overlap(out.closed[k], out.closed[k], group_element_at(traj, rep, times[k])).real();
    if (k == 0) metric0 = metric;
    out.report.max_metric_drift = std::max(out.report.max_metric_drift, std::abs(metric - metric0) / metric0);
  }
  return out;
}

void run_verify(const RunConfig& cfg, RunReport& report) {
  const Representation rep = cfg.build_representation();
  report.initial = resolve_initial(cfg);
  const Trajectory traj = flow_for(cfg, report.initial);
  report.residuals = residual_scan(traj, cfg.coefficients, cfg.algebra, cfg.residual_samples);
  report.sigma = choose_sigma(cfg, traj, rep, report);
  const PhaseLaw phase = phase_integral(traj, cfg.coefficients, cfg.algebra, report.sigma);
  report.phase_integral_end = phase.integral(cfg.time.t1);
  report.mean_re_w = report.phase_integral_end / (2.0 * (cfg.time.t1 - cfg.time.t0));

  // Independent labels run concurrently; results are assembled in label order.
  std::vector<std::future<OracleComparison>> jobs;
  for (double n : cfg.indices) {
    jobs.push_back(std::async(std::launch::async, compare_index, std::cref(cfg), std::cref(rep),
                              std::cref(traj), std::cref(phase), n));
  }
  std::vector<OracleComparison> results;
  for (auto& job : jobs) results.push_back(job.get());

  const std::vector<double> times = cfg.time.points();
  for (std::size_t a = 0; a < results.size(); ++a) {
    report.indices.push_back(results[a].report);
    for (std::size_t b = a + 1; b < results.size(); ++b) {
      const Matrix v0 = group_element_at(traj, rep, times.front());
      const cplx m0 = metric_overlap(results[a].closed.front(), results[b].closed.front(), v0);
      const double scale = std::sqrt(
          std::abs(metric_overlap(results[a].closed.front(), results[a].closed.front(), v0)) *
          std::abs(metric_overlap(results[b].closed.front(), results[b].closed.front(), v0)));
      for (std::size_t k = 0; k < times.size(); ++k) {
        const cplx mk = metric_overlap(results[a].closed[k], results[b].closed[k],
                                       group_element_at(traj, rep, times[k]));
        report.max_offdiagonal_metric_drift =
            std::max(report.max_offdiagonal_metric_drift, std::abs(mk - m0) / scale);
      }
    }
  }

  if (report.residuals.max() > cfg.thresholds.residual) {
    report.certified = false;
    report.warnings.push_back("constraint residual above threshold");
  }
  double worst_oracle = 0.0, worst_metric = report.max_offdiagonal_metric_drift;
  for (const IndexReport& ir : report.indices) {
    if (!ir.oracle_failure.empty()) {
      report.certified = false;
      char label[32];
      std::snprintf(label, sizeof label, "%g", ir.n);
      report.warnings.push_back(std::string("label ") + label + ": " + ir.oracle_failure);
    }
    worst_oracle = std::max(worst_oracle, ir.max_oracle_error);
    worst_metric = std::max(worst_metric, ir.max_metric_drift);
  }
  if (worst_oracle > cfg.thresholds.oracle) {
    report.certified = false;
    report.warnings.push_back("closed form departs from the oracle");
  }
  if (worst_metric > cfg.thresholds.metric) {
    report.certified = false;
    report.warnings.push_back("metric norm drifts");
  }
}

void run_spectrum(const RunConfig& cfg, const std::filesystem::path& out_dir, RunReport& report) {
  if (cfg.algebra != AlgebraKind::su11) throw std::invalid_argument("spectrum requires the su11 algebra");
  const CoeffValues v = eval_coeffs(cfg.coefficients, cfg.time.t0).values;
  const auto spectrum = swanson_spectrum(v.omega, v.alpha, v.beta, std::get<FockCutoff>(cfg.representation).cutoff);
  const auto path = out_dir / "spectrum.csv";
  std::ofstream out = open_output(path);
  out << "n,re_eig,im_eig,trusted\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    out << k << ',' << format_real(spectrum[k].value.real()) << ',' << format_real(spectrum[k].value.imag())
        << ',' << (spectrum[k].trusted ? 1 : 0) << '\n';
  }
  report.files.push_back(path);
}

}  // namespace

RunReport run(Command cmd, const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  RunReport report;
  report.command = command_name(cmd);
  switch (cmd) {
    case Command::decompose: run_decompose(cfg, out_dir, report); break;
    case Command::flow: run_flow(cfg, out_dir, report); break;
    case Command::evolve: run_evolve(cfg, out_dir, report); break;
    case Command::verify: {
      run_verify(cfg, report);
      const auto path = out_dir / "report.json";
      std::ofstream out = open_output(path);
      out << report_json(report) << '\n';
      report.files.push_back(path);
      break;
    }
    case Command::spectrum: run_spectrum(cfg, out_dir, report); break;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_json(const RunReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["certified"] = r.certified;
  j["sigma"] = r.sigma;
  j["sigma_source"] = r.sigma_from_audit ? "audit" : "config";
  j["initial"] = {{"t", r.initial.t},
                  {"phi", r.initial.phi},
                  {"varphi", r.initial.varphi},
                  {"theta_zero", r.initial.theta_zero}};
  j["residuals"] = {{"max_abs_q", r.residuals.max_abs_q},     {"t_max_abs_q", r.residuals.t_max_q},
                    {"max_abs_y", r.residuals.max_abs_y},     {"t_max_abs_y", r.residuals.t_max_y},
                    {"max_abs_im_w", r.residuals.max_abs_im_w}, {"t_max_abs_im_w", r.residuals.t_max_im_w},
                    {"max_re_w_mismatch", r.residuals.max_re_w_mismatch}};
  nlohmann::ordered_json idx = nlohmann::ordered_json::array();
  for (const IndexReport& ir : r.indices) {
    nlohmann::ordered_json entry = {{"n", ir.n}, {"lambda", ir.lambda}};
    if (ir.oracle_failure.empty()) {
      entry["max_oracle_error"] = ir.max_oracle_error;
      entry["t_max_oracle_error"] = ir.t_max_oracle_error;
    } else {
      entry["max_oracle_error"] = nullptr;
      entry["t_max_oracle_error"] = nullptr;
    }
    entry["oracle_failure"] = ir.oracle_failure;
    entry["max_metric_drift"] = ir.max_metric_drift;
    idx.push_back(entry);
  }
  j["indices"] = idx;
  j["max_offdiagonal_metric_drift"] = r.max_offdiagonal_metric_drift;
  j["phase_law"] = {{"integral_end", r.phase_integral_end}, {"mean_re_w", r.mean_re_w}};
  j["warnings"] = r.warnings;
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j.dump(2);
}

}  // namespace nhdyn
