#include "nhdyn/transform.hpp"

#include "nhdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nhdyn {

TransformedCoeffs transformed_coeffs(const FlowState& s, const FlowRates& r, const CoeffValues& v,
                                     AlgebraKind kind) {
  if (s.theta_zero == 0.0) throw SingularDecomposition("theta_zero is zero at t=" + std::to_string(s.t));
  const double d = structure_constant(kind);
  const cplx i(0.0, 1.0);
  const cplx ep = std::polar(1.0, -s.varphi);  // e^{-i varphi}
  const cplx em = std::polar(1.0, s.varphi);   // e^{+i varphi}

  const cplx tp = -s.phi * ep;
  const cplx tm = -s.phi * em;
  const double q = s.theta_zero;
  const double chi = -0.5 * d * s.phi * s.phi - q;
  const cplx dtp = -(r.dphi - i * s.phi * r.dvarphi) * ep;
  const cplx dtm = -(r.dphi + i * s.phi * r.dvarphi) * em;
  const double dq = r.dtheta_zero;

  TransformedCoeffs out;
  out.W = (v.omega * (0.5 * d * tp * tm - chi) + d * (tp * v.alpha + tm * v.beta * chi) +
           0.5 * i * (dq + d * tp * dtm)) /
          q;
  out.Q = (v.omega * tm + v.alpha - 0.5 * d * v.beta * tm * tm + 0.5 * i * dtm) / q;
  out.Y = (v.omega * chi * tp - 0.5 * d * v.alpha * tp * tp + v.beta * chi * chi +
           0.5 * i * (q * dtp - tp * dq - 0.5 * d * tp * tp * dtm)) /
          q;
  return out;
}

double re_w(const FlowState& s, const PolarCoeffs& c, AlgebraKind kind) {
  const double d = structure_constant(kind);
  return c.mod_omega * std::cos(c.arg_omega) + d * s.phi * c.mod_beta * std::cos(s.varphi + c.arg_beta);
}

double ResidualReport::max() const { return std::max({max_abs_q, max_abs_y, max_abs_im_w}); }

GaussFactors gauss_factors(const FlowState& s) {
  if (s.theta_zero == 0.0) throw SingularDecomposition("theta_zero is zero at t=" + std::to_string(s.t));
  const cplx log_q(std::log(std::abs(s.theta_zero)), s.theta_zero < 0.0 ? pi : 0.0);
  return {-s.phi * std::polar(1.0, -s.varphi), log_q, -s.phi * std::polar(1.0, s.varphi)};
}

ResidualReport residual_scan(const Trajectory& traj, const CoefficientSet& c, AlgebraKind kind,
                             int samples) {
  if (samples < 2) throw std::invalid_argument("residual_scan needs at least two samples");
  ResidualReport rep;
  const double t0 = traj.t0();
  const double span = traj.t1() - t0;
  for (int k = 0; k < samples; ++k) {
    const double t = k + 1 == samples ? traj.t1() : t0 + span * k / (samples - 1);
    const FlowState s = traj.state_at(t);
    const CoeffSample cs = eval_coeffs(c, t);
    const FlowRates r = flow_rhs(s, cs.polar, kind);
    const TransformedCoeffs tc = transformed_coeffs(s, r, cs.values, kind);
    auto update = [t](double value, double& best, double& at) {
      if (value > best) {
        best = value;
        at = t;
      }
    };
    update(std::abs(tc.Q), rep.max_abs_q, rep.t_max_q);
    update(std::abs(tc.Y), rep.max_abs_y, rep.t_max_y);
    update(std::abs(tc.W.imag()), rep.max_abs_im_w, rep.t_max_im_w);
    rep.max_re_w_mismatch =
        std::max(rep.max_re_w_mismatch, std::abs(tc.W.real() - re_w(s, cs.polar, kind)));
  }
  return rep;
}

double generator_audit(const Trajectory& traj, const CoefficientSet& c, const Representation& rep,
                       double t, double h, Index block) {
  if (!(t - h >= traj.t0() && t + h <= traj.t1())) {
    throw DomainError("generator_audit: t +/- h must lie inside the trajectory");
  }
  const FlowState s = traj.state_at(t);
  const CoeffSample cs = eval_coeffs(c, t);
  const TransformedCoeffs tc = transformed_coeffs(s, flow_rhs(s, cs.polar, rep.kind), cs.values, rep.kind);

  const Matrix v = build_group_element(gauss_factors(s), rep);
  const Matrix v_inv = invert_group_element(gauss_factors(s), rep);
  const Matrix v_fwd = build_group_element(gauss_factors(traj.state_at(t + h)), rep);
  const Matrix v_bwd = build_group_element(gauss_factors(traj.state_at(t - h)), rep);
  const Matrix v_dot = (v_fwd - v_bwd) / (2.0 * h);

  const cplx i(0.0, 1.0);
  const Matrix generator = v * h_matrix(cs.values, rep) * v_inv + i * v_dot * v_inv;
  const Matrix expected = 2.0 * tc.W * rep.k0 + 2.0 * tc.Q * rep.kminus + 2.0 * tc.Y * rep.kplus;
  const Index b = block > 0 ? std::min(block, rep.dim)
                            : (rep.kind == AlgebraKind::su2 ? rep.dim : rep.dim / 3);
  return max_abs((generator - expected).topLeftCorner(b, b)) /
         std::max(1.0, max_abs(expected.topLeftCorner(b, b)));
}

}  // namespace nhdyn
