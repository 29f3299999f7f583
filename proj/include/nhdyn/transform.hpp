#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/decomposition.hpp"
#include "nhdyn/flow.hpp"
#include "nhdyn/model.hpp"

namespace nhdyn {

/// Coefficients of the transformed generator 2 W K0 + 2 Q K- + 2 Y K+.
struct TransformedCoeffs {
  cplx W;
  cplx Q;
  cplx Y;
};

/// W, Q, Y for the Gauss element built from (phi, varphi, theta_zero) and
/// its time derivative.  Throws SingularDecomposition for theta_zero = 0.
TransformedCoeffs transformed_coeffs(const FlowState& s, const FlowRates& rates,
                                     const CoeffValues& v, AlgebraKind kind);

/// |omega| cos(arg omega) + D phi |beta| cos(varphi + arg beta): Re W once
/// the constraints hold.
double re_w(const FlowState& s, const PolarCoeffs& polar, AlgebraKind kind);

struct ResidualReport {
  double max_abs_q = 0.0;
  double max_abs_y = 0.0;
  double max_abs_im_w = 0.0;
  double t_max_q = 0.0;
  double t_max_y = 0.0;
  double t_max_im_w = 0.0;
  /// Largest |Re W - re_w| seen on the scan.
  double max_re_w_mismatch = 0.0;

  double max() const;
};

/// Gauss factors along a trajectory.  theta_zero never changes sign on a
/// successful flow, so its logarithm has the constant argument 0 or pi.
GaussFactors gauss_factors(const FlowState& s);

/// Samples transformed_coeffs at `samples` equispaced times.  States come
/// from the trajectory's dense output; rates are the flow right-hand side at
/// those states.  Singular points propagate as exceptions naming the time.
ResidualReport residual_scan(const Trajectory& traj, const CoefficientSet& c, AlgebraKind kind,
                             int samples = 512);

/// Max-norm mismatch on the leading `block` rows and columns between
/// V H V^-1 + i dV/dt V^-1 (dV/dt by central differences with step h) and
/// 2 W K0 + 2 Q K- + 2 Y K+, relative to max(1, |expected|).  block <= 0
/// means the full matrix for su(2) and a third of the cutoff for su(1,1),
/// where the products of truncated factors are polluted from the edge.
double generator_audit(const Trajectory& traj, const CoefficientSet& c, const Representation& rep,
                       double t, double h = 1e-6, Index block = 0);

}  // namespace nhdyn
