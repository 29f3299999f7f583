#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/model.hpp"
#include "nhdyn/solution.hpp"

#include <span>
#include <vector>

namespace nhdyn {

/// Settings for the reference propagator.
struct OracleConfig {
  double rtol = 1e-11;
  double atol = 1e-13;
  double max_step = 0.05;
  /// su(1,1) only: mass allowed outside the leading N/2 levels at t0, and
  /// in the top two levels at any accepted step.
  double support_tolerance = 1e-8;
  double leakage_tolerance = 1e-8;
};

struct PropagationResult {
  std::vector<StateVector> samples;
  double local_error_estimate = 0.0;
  int accepted_steps = 0;
  int rejected_steps = 0;
  /// Largest fraction of squared-amplitude mass seen in the top two Fock levels.
  double max_edge_mass = 0.0;
};

/// Integrates i dpsi/dt = H(t) psi from psi0.t through every requested time.
/// Only model::h_matrix is consulted.  Throws TruncationContaminated when a
/// truncated su(1,1) state reaches the cutoff and StiffnessError on step
/// underflow.
PropagationResult propagate_direct(const CoefficientSet& c, const Representation& rep,
                                   const StateVector& psi0, std::span<const double> times,
                                   const OracleConfig& cfg = {});

/// ||a - b|| / max(||a||, ||b||) with no phase alignment.  Throws
/// std::invalid_argument for unequal sizes or two zero vectors.
double state_error(const StateVector& a, const StateVector& b);
double state_error(const Vector& a, const Vector& b);

struct SpectrumEntry {
  cplx value;
  bool trusted;
};

/// Eigenvalues of the constant-coefficient Hamiltonian in the truncated
/// su(1,1) representation, sorted by real part (then imaginary part); the
/// leading N/2 are marked trusted.  Requires N >= 20.
std::vector<SpectrumEntry> swanson_spectrum(cplx omega, cplx alpha, cplx beta, int cutoff);

}  // namespace nhdyn
