#include "nhdyn/oracle.hpp"

#include "nhdyn/errors.hpp"
#include "nhdyn/ode.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nhdyn {

PropagationResult propagate_direct(const CoefficientSet& c, const Representation& rep,
                                   const StateVector& psi0, std::span<const double> times,
                                   const OracleConfig& cfg) {
  if (psi0.amplitudes.size() != rep.dim) throw std::invalid_argument("propagate_direct: psi0 has the wrong dimension");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < psi0.t || (k > 0 && !(times[k] > times[k - 1]))) {
      throw std::invalid_argument("propagate_direct: times must increase from psi0.t");
    }
  }

  const bool truncated = rep.kind == AlgebraKind::su11;
  if (truncated) {
    const Index half = rep.dim / 2;
    const double total = psi0.amplitudes.squaredNorm();
    const double outside = psi0.amplitudes.tail(rep.dim - half).squaredNorm();
    if (outside > cfg.support_tolerance * total) {
      throw TruncationContaminated("initial state extends beyond the leading " + std::to_string(half) +
                                   " Fock levels");
    }
  }

  PropagationResult result;
  result.samples.reserve(times.size());
  const cplx minus_i(0.0, -1.0);
  auto rhs = [&](double t, const Vector& y) -> Vector { return minus_i * (h_matrix(c, rep, t) * y); };

  std::size_t next = 0;
  while (next < times.size() && times[next] == psi0.t) {
    result.samples.push_back({psi0.amplitudes, psi0.t});
    ++next;
  }
  auto observe = [&](double t, const Vector& y, const Vector&) {
    if (truncated) {
      const double edge = y.tail(2).squaredNorm() / y.squaredNorm();
      result.max_edge_mass = std::max(result.max_edge_mass, edge);
      if (edge > cfg.leakage_tolerance) {
        throw TruncationContaminated("Fock cutoff reached at t=" + std::to_string(t));
      }
    }
    while (next < times.size() && times[next] == t) {
      result.samples.push_back({y, t});
      ++next;
    }
  };

  if (!times.empty() && times.back() > psi0.t) {
    const ode::Stats stats = ode::dopri5(rhs, psi0.t, psi0.amplitudes, times.back(),
                                         {cfg.rtol, cfg.atol, cfg.max_step}, times, observe);
    result.local_error_estimate = stats.max_local_error;
    result.accepted_steps = stats.accepted;
    result.rejected_steps = stats.rejected;
  }
  if (result.samples.size() != times.size()) {
    throw std::logic_error("propagate_direct: integrator missed a requested time");
  }
  return result;
}

double state_error(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("state_error: dimension mismatch");
  const double scale = std::max(a.norm(), b.norm());
  if (scale == 0.0) throw std::invalid_argument("state_error: undefined for two zero vectors");
  return (a - b).norm() / scale;
}

double state_error(const StateVector& a, const StateVector& b) {
  return state_error(a.amplitudes, b.amplitudes);
}

std::vector<SpectrumEntry> swanson_spectrum(cplx omega, cplx alpha, cplx beta, int cutoff) {
  if (cutoff < 20) throw std::invalid_argument("swanson_spectrum needs a cutoff of at least 20");
  const Representation rep = build_su11_boson_rep(cutoff);
  const Matrix h = h_matrix(CoeffValues{omega, alpha, beta}, rep);
  Eigen::ComplexEigenSolver<Matrix> solver(h, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("swanson_spectrum: eigensolver failed");
  std::vector<cplx> values(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<SpectrumEntry> out;
  out.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.push_back({values[k], static_cast<int>(k) < cutoff / 2});
  }
  return out;
}

}  // namespace nhdyn
