#include "nhdyn/flow.hpp"

#include "nhdyn/errors.hpp"
#include "nhdyn/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nhdyn {

void IntegratorConfig::validate() const {
  if (!(rtol >= 1e-13)) throw std::invalid_argument("rtol must be >= 1e-13");
  if (!(atol >= 1e-15)) throw std::invalid_argument("atol must be >= 1e-15");
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
}

FlowRates flow_rhs(const FlowState& s, const PolarCoeffs& c, AlgebraKind kind) {
  if (std::abs(s.phi) < 1e-12) throw SingularFlow("phi reached zero", s.t);
  const double d = structure_constant(kind);
  const double phi = s.phi;
  const double chi = -0.5 * d * phi * phi - s.theta_zero;
  const double sin_w = std::sin(c.arg_omega);
  const double sin_a = std::sin(c.arg_alpha - s.varphi);
  const double sin_b = std::sin(s.varphi + c.arg_beta);

  FlowRates r;
  r.dvarphi = 2.0 * c.mod_omega * std::cos(c.arg_omega) -
              2.0 * c.mod_alpha / phi * std::cos(c.arg_alpha - s.varphi) +
              d * phi * c.mod_beta * std::cos(s.varphi + c.arg_beta);
  r.dphi = -2.0 * phi * c.mod_omega * sin_w + 2.0 * c.mod_alpha * sin_a -
           d * phi * phi * c.mod_beta * sin_b;
  r.dtheta_zero = 2.0 * s.theta_zero / phi *
                  (-2.0 * phi * c.mod_omega * sin_w + c.mod_alpha * sin_a +
                   (chi - d * phi * phi) * c.mod_beta * sin_b);
  return r;
}

Trajectory::Trajectory(std::vector<FlowState> states, std::vector<FlowRates> rates)
    : states_(std::move(states)), rates_(std::move(rates)) {
  if (states_.empty() || states_.size() != rates_.size()) {
    throw std::invalid_argument("trajectory needs matching, non-empty states and rates");
  }
  for (std::size_t i = 1; i < states_.size(); ++i) {
    if (!(states_[i].t > states_[i - 1].t)) {
      throw std::invalid_argument("trajectory times must strictly increase");
    }
  }
}

std::size_t Trajectory::interval(double t) const {
  if (!(t >= t0() && t <= t1())) {
    throw DomainError("trajectory queried at t=" + std::to_string(t) + " outside [" +
                      std::to_string(t0()) + ", " + std::to_string(t1()) + "]");
  }
  auto it = std::upper_bound(states_.begin(), states_.end(), t,
                             [](double v, const FlowState& s) { return v < s.t; });
  const auto hi = static_cast<std::size_t>(it - states_.begin());
  return hi == 0 ? 0 : std::min(hi - 1, states_.size() - 2);
}

namespace {

struct Hermite {
  double h00, h10, h01, h11;  // value weights
  double d00, d10, d01, d11;  // derivative weights (already divided by h)
};

Hermite hermite(double s, double h) {
  const double s2 = s * s, s3 = s2 * s;
  return {2 * s3 - 3 * s2 + 1,
          (s3 - 2 * s2 + s) * h,
          -2 * s3 + 3 * s2,
          (s3 - s2) * h,
          (6 * s2 - 6 * s) / h,
          3 * s2 - 4 * s + 1,
          (-6 * s2 + 6 * s) / h,
          3 * s2 - 2 * s};
}

}  // namespace

FlowState Trajectory::state_at(double t) const {
  if (states_.size() == 1) {
    interval(t);
    return states_.front();
  }
  const std::size_t i = interval(t);
  const FlowState& a = states_[i];
  const FlowState& b = states_[i + 1];
  const FlowRates& ra = rates_[i];
  const FlowRates& rb = rates_[i + 1];
  const double h = b.t - a.t;
  const Hermite w = hermite((t - a.t) / h, h);
  return {t, w.h00 * a.phi + w.h10 * ra.dphi + w.h01 * b.phi + w.h11 * rb.dphi,
          w.h00 * a.varphi + w.h10 * ra.dvarphi + w.h01 * b.varphi + w.h11 * rb.dvarphi,
          w.h00 * a.theta_zero + w.h10 * ra.dtheta_zero + w.h01 * b.theta_zero +
              w.h11 * rb.dtheta_zero};
}

FlowRates Trajectory::rates_at(double t) const {
  if (states_.size() == 1) {
    interval(t);
    return rates_.front();
  }
  const std::size_t i = interval(t);
  const FlowState& a = states_[i];
  const FlowState& b = states_[i + 1];
  const FlowRates& ra = rates_[i];
  const FlowRates& rb = rates_[i + 1];
  const double h = b.t - a.t;
  const Hermite w = hermite((t - a.t) / h, h);
  return {w.d00 * a.varphi + w.d10 * ra.dvarphi + w.d01 * b.varphi + w.d11 * rb.dvarphi,
          w.d00 * a.phi + w.d10 * ra.dphi + w.d01 * b.phi + w.d11 * rb.dphi,
          w.d00 * a.theta_zero + w.d10 * ra.dtheta_zero + w.d01 * b.theta_zero +
              w.d11 * rb.dtheta_zero};
}

Trajectory integrate_flow(const CoefficientSet& c, AlgebraKind kind, const FlowState& initial,
                          double t1, const IntegratorConfig& cfg, std::span<const double> stops) {
  cfg.validate();
  if (!(t1 > initial.t)) throw std::invalid_argument("integrate_flow: t1 must exceed the initial time");
  if (std::abs(initial.phi) < 1e-12) throw SingularFlow("initial phi is zero", initial.t);
  if (std::abs(initial.theta_zero) < 1e-12) throw SingularFlow("initial theta_zero is zero", initial.t);

  using Vec = Eigen::Vector3d;  // (phi, varphi, theta_zero)
  auto rhs = [&](double t, const Vec& y) -> Vec {
    const FlowRates r = flow_rhs({t, y[0], y[1], y[2]}, eval_coeffs(c, t).polar, kind);
    return {r.dphi, r.dvarphi, r.dtheta_zero};
  };

  const double phi_sign = std::copysign(1.0, initial.phi);
  const double theta_sign = std::copysign(1.0, initial.theta_zero);
  std::vector<FlowState> states;
  std::vector<FlowRates> rates;
  auto record = [&](double t, const Vec& y, const Vec& dy) {
    auto crossing = [&](int comp) {
      if (states.empty()) return t;
      const FlowState& prev = states.back();
      const double y0 = comp == 0 ? prev.phi : prev.theta_zero;
      const double frac = y0 / (y0 - y[comp]);
      return prev.t + std::clamp(frac, 0.0, 1.0) * (t - prev.t);
    };
    if (y[0] * phi_sign < 1e-12) throw SingularFlow("phi crossed zero", crossing(0));
    if (y[2] * theta_sign < 1e-12) throw SingularFlow("theta_zero crossed zero", crossing(2));
    states.push_back({t, y[0], y[1], y[2]});
    rates.push_back({dy[1], dy[0], dy[2]});
  };

  const Vec y0(initial.phi, initial.varphi, initial.theta_zero);
  if (cfg.method == IntegratorMethod::adaptive_rk45) {
    ode::dopri5(rhs, initial.t, y0, t1, {cfg.rtol, cfg.atol, cfg.max_step}, stops, record);
  } else {
    ode::rk4(rhs, initial.t, y0, t1, cfg.max_step, stops, record);
  }
  return Trajectory(std::move(states), std::move(rates));
}

FlowState stationary_state(const CoeffValues& v, AlgebraKind kind, double t0) {
  const double d = structure_constant(kind);
  const double scale = std::max({std::abs(v.omega), std::abs(v.alpha), std::abs(v.beta), 1e-300});

  // (D/2) beta m^2 - omega m - alpha = 0, smaller |m|
  cplx m;
  if (std::abs(v.beta) < 1e-14 * scale) {
    if (std::abs(v.omega) < 1e-14 * scale) throw NoStationaryPoint("omega and beta both vanish");
    m = -v.alpha / v.omega;
  } else {
    const cplx disc = std::sqrt(v.omega * v.omega + 2.0 * d * v.alpha * v.beta);
    const cplx r1 = (v.omega + disc) / (d * v.beta);
    const cplx r2 = (v.omega - disc) / (d * v.beta);
    m = std::abs(r1) <= std::abs(r2) ? r1 : r2;
  }
  const double phi = std::abs(m);
  if (phi < 1e-12) throw NoStationaryPoint("stationary root is degenerate (phi = 0)");
  const double varphi = arg_or_zero(-m);
  const cplx p = -phi * std::polar(1.0, -varphi);

  // beta chi^2 + omega p chi - (D/2) alpha p^2 = 0; keep the root with the
  // larger |theta_zero| (the other one makes theta_zero vanish).
  auto theta_of = [&](cplx chi) { return -0.5 * d * phi * phi - chi; };
  cplx chi;
  if (std::abs(v.beta) < 1e-14 * scale) {
    chi = 0.5 * d * v.alpha * p / v.omega;
  } else {
    const cplx disc = std::sqrt(v.omega * v.omega * p * p + 2.0 * d * v.alpha * v.beta * p * p);
    const cplx c1 = (-v.omega * p + disc) / (2.0 * v.beta);
    const cplx c2 = (-v.omega * p - disc) / (2.0 * v.beta);
    chi = std::abs(theta_of(c1)) >= std::abs(theta_of(c2)) ? c1 : c2;
  }
  const cplx theta_zero = theta_of(chi);
  if (std::abs(theta_zero.imag()) > 1e-10 * std::max(1.0, std::abs(theta_zero))) {
    throw NoStationaryPoint("no real theta_zero cancels the K+ coefficient");
  }
  if (std::abs(theta_zero) < 1e-12) throw NoStationaryPoint("stationary theta_zero vanishes");

  FlowState s{t0, phi, varphi, theta_zero.real()};
  const FlowRates r = flow_rhs(s, to_polar(v), kind);
  const double rate_scale = std::max(1.0, scale);
  if (std::abs(r.dphi) > 1e-9 * rate_scale || std::abs(r.dvarphi) > 1e-9 * rate_scale ||
      std::abs(r.dtheta_zero) > 1e-9 * rate_scale * std::abs(s.theta_zero)) {
    throw NoStationaryPoint("coefficients admit no fixed point of the constraint flow");
  }
  return s;
}

FlowState stationary_state(const PolarCoeffs& polar, AlgebraKind kind, double t0) {
  const CoeffValues v{std::polar(polar.mod_omega, polar.arg_omega),
                      std::polar(polar.mod_alpha, polar.arg_alpha),
                      std::polar(polar.mod_beta, polar.arg_beta)};
  return stationary_state(v, kind, t0);
}

cplx riccati_rhs(cplx theta_minus, const CoeffValues& v, AlgebraKind kind) {
  const double d = structure_constant(kind);
  const cplx i(0.0, 1.0);
  return 2.0 * i *
         (v.omega * theta_minus + v.alpha - 0.5 * d * v.beta * theta_minus * theta_minus);
}

std::pair<double, double> RiccatiTrajectory::reduced(std::size_t i) const {
  const cplx m = theta_minus.at(i);
  return {std::abs(m), arg_or_zero(-m)};
}

RiccatiTrajectory integrate_riccati(const CoefficientSet& c, AlgebraKind kind, double t0,
                                    cplx theta_minus0, double t1, const IntegratorConfig& cfg,
                                    std::span<const double> stops) {
  cfg.validate();
  if (!(t1 > t0)) throw std::invalid_argument("integrate_riccati: t1 must exceed t0");
  using Vec = Eigen::Matrix<cplx, 1, 1>;
  auto rhs = [&](double t, const Vec& y) -> Vec {
    Vec out;
    out[0] = riccati_rhs(y[0], eval_coeffs(c, t).values, kind);
    return out;
  };
  RiccatiTrajectory out;
  auto record = [&](double t, const Vec& y, const Vec&) {
    out.t.push_back(t);
    out.theta_minus.push_back(y[0]);
  };
  Vec y0;
  y0[0] = theta_minus0;
  if (cfg.method == IntegratorMethod::adaptive_rk45) {
    ode::dopri5(rhs, t0, y0, t1, {cfg.rtol, cfg.atol, cfg.max_step}, stops, record);
  } else {
    ode::rk4(rhs, t0, y0, t1, cfg.max_step, stops, record);
  }
  return out;
}

}  // namespace nhdyn
