#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/model.hpp"
#include "nhdyn/types.hpp"

#include <span>
#include <vector>

namespace nhdyn {

/// Auxiliary variables of the constraint flow.  phi never crosses zero and
/// theta_zero keeps the sign it started with.
struct FlowState {
  double t;
  double phi;
  double varphi;
  double theta_zero;
};

struct FlowRates {
  double dvarphi;
  double dphi;
  double dtheta_zero;
};

enum class IntegratorMethod { adaptive_rk45, fixed_rk4 };

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.1;  // also the fixed RK4 step
  IntegratorMethod method = IntegratorMethod::adaptive_rk45;

  /// Throws std::invalid_argument for rtol < 1e-13, atol < 1e-15 or a
  /// non-positive max_step.
  void validate() const;
};

/// Right-hand side of the constraint ODEs for (varphi, phi, theta_zero).
/// Throws SingularFlow (at s.t) when |phi| < 1e-12.
FlowRates flow_rhs(const FlowState& s, const PolarCoeffs& polar, AlgebraKind kind);

/// Time-ordered flow states with the rates at each node; dense output is
/// piecewise cubic Hermite.
class Trajectory {
 public:
  Trajectory(std::vector<FlowState> states, std::vector<FlowRates> rates);

  const std::vector<FlowState>& states() const { return states_; }
  const std::vector<FlowRates>& rates() const { return rates_; }
  double t0() const { return states_.front().t; }
  double t1() const { return states_.back().t; }
  static constexpr int interpolation_order = 3;

  /// Throws DomainError outside [t0, t1].
  FlowState state_at(double t) const;
  /// Derivative of the Hermite interpolant.
  FlowRates rates_at(double t) const;

 private:
  std::size_t interval(double t) const;

  std::vector<FlowState> states_;
  std::vector<FlowRates> rates_;
};

/// Integrates the constraint flow from `initial` to t1.  The integrator lands
/// exactly on every time in `stops`.  Throws SingularFlow when phi or
/// theta_zero reaches zero (with the interpolated crossing time) and
/// StiffnessError on step-size underflow.
Trajectory integrate_flow(const CoefficientSet& c, AlgebraKind kind, const FlowState& initial,
                          double t1, const IntegratorConfig& cfg = {},
                          std::span<const double> stops = {});

/// Fixed point of the flow at t0 with theta_zero chosen so that the K+
/// coefficient of the transformed Hamiltonian vanishes.  Uses the
/// smaller-modulus root of (D/2) beta m^2 - omega m - alpha = 0 for
/// m = theta_minus = -phi e^{i varphi}.  Throws NoStationaryPoint when the
/// root is degenerate or no real theta_zero exists.
FlowState stationary_state(const CoeffValues& v, AlgebraKind kind, double t0 = 0.0);
FlowState stationary_state(const PolarCoeffs& polar, AlgebraKind kind, double t0 = 0.0);

/// d(theta_minus)/dt = 2i [omega theta_minus + alpha - (D/2) beta theta_minus^2],
/// the K- cancellation condition solved for the derivative.
cplx riccati_rhs(cplx theta_minus, const CoeffValues& v, AlgebraKind kind);

struct RiccatiTrajectory {
  std::vector<double> t;
  std::vector<cplx> theta_minus;

  /// (phi, varphi) at node i from theta_minus = -phi e^{i varphi} with phi > 0.
  std::pair<double, double> reduced(std::size_t i) const;
};

RiccatiTrajectory integrate_riccati(const CoefficientSet& c, AlgebraKind kind, double t0,
                                    cplx theta_minus0, double t1,
                                    const IntegratorConfig& cfg = {},
                                    std::span<const double> stops = {});

}  // namespace nhdyn
