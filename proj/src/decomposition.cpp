#include "nhdyn/decomposition.hpp"

#include "nhdyn/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhdyn {

double cosh_sqrt(double x) {
  if (x >= 0.0) return std::cosh(std::sqrt(x));
  return std::cos(std::sqrt(-x));
}

double sinhc_sqrt(double x) {
  if (std::abs(x) < 1e-4) {
    // 1 + x/3! + x^2/5! + x^3/7! + x^4/9!
    return 1.0 + x / 6.0 * (1.0 + x / 20.0 * (1.0 + x / 42.0 * (1.0 + x / 72.0)));
  }
  if (x > 0.0) {
    const double r = std::sqrt(x);
    return std::sinh(r) / r;
  }
  const double r = std::sqrt(-x);
  return std::sin(r) / r;
}

namespace {

struct CellValues {
  double theta_sq;
  double cosh_t;   // cosh(theta)
  double sinhc_t;  // sinh(theta)/theta
  double den;      // cosh(theta) - eps sinh(theta)/theta
};

CellValues cell_values(const CanonicalParams& p, AlgebraKind kind) {
  const double d = structure_constant(kind);
  CellValues v;
  v.theta_sq = p.eps * p.eps + 2.0 * d * std::norm(p.mu);
  v.cosh_t = cosh_sqrt(v.theta_sq);
  v.sinhc_t = sinhc_sqrt(v.theta_sq);
  v.den = v.cosh_t - p.eps * v.sinhc_t;
  if (std::abs(v.den) < 1e-13) {
    throw SingularDecomposition("group element leaves the Gauss cell (eps=" +
                                std::to_string(p.eps) + ", |mu|=" +
                                std::to_string(std::abs(p.mu)) + ")");
  }
  return v;
}

}  // namespace

GaussParams gauss_decompose(const CanonicalParams& p, AlgebraKind kind) {
  const CellValues v = cell_values(p, kind);
  GaussParams g;
  g.theta_zero = 1.0 / (v.den * v.den);
  g.theta_minus = 2.0 * p.mu * v.sinhc_t / v.den;
  g.theta_plus = 2.0 * std::conj(p.mu) * v.sinhc_t / v.den;
  g.theta = std::sqrt(cplx(v.theta_sq, 0.0));
  return g;
}

ReducedParams reduce_params(const CanonicalParams& p, AlgebraKind kind) {
  // Built from the Gauss form so that eps = 0 is regular.
  const CellValues v = cell_values(p, kind);
  ReducedParams r;
  r.varphi = arg_or_zero(p.mu);
  r.phi = -2.0 * std::abs(p.mu) * v.sinhc_t / v.den;
  r.chi = -(v.cosh_t + p.eps * v.sinhc_t) / v.den;
  r.z_mod = p.eps != 0.0 ? 2.0 * std::abs(p.mu) / std::abs(p.eps)
                         : std::numeric_limits<double>::infinity();
  return r;
}

GaussParams gauss_from_reduced(const ReducedParams& r, AlgebraKind kind) {
  const double d = structure_constant(kind);
  GaussParams g;
  g.theta_plus = -r.phi * std::polar(1.0, -r.varphi);
  g.theta_minus = -r.phi * std::polar(1.0, r.varphi);
  g.theta_zero = -0.5 * d * r.phi * r.phi - r.chi;
  return g;
}

ReducedParams fold_sign(const ReducedParams& r) {
  ReducedParams f = r;
  f.phi = -r.phi;
  f.varphi = wrap_angle(r.varphi + pi);
  return f;
}

GaussFactors principal_factors(const GaussParams& g) {
  if (g.theta_zero == cplx(0.0, 0.0)) throw SingularDecomposition("theta_zero is zero");
  return {g.theta_plus, std::log(g.theta_zero), g.theta_minus};
}

cplx LogTracker::operator()(cplx z) {
  if (z == cplx(0.0, 0.0)) throw SingularDecomposition("logarithm of zero along a trajectory");
  double a = std::arg(z);
  if (last_arg_) a += 2.0 * pi * std::round((*last_arg_ - a) / (2.0 * pi));
  last_arg_ = a;
  return {std::log(std::abs(z)), a};
}

namespace {

Vector diagonal_exp(cplx scale, const Representation& rep) {
  return (scale * rep.k0.diagonal()).array().exp().matrix();
}

}  // namespace

Matrix build_group_element(const GaussFactors& g, const Representation& rep) {
  const Matrix upper = exp_nilpotent(g.theta_plus * rep.kplus);
  const Matrix lower = exp_nilpotent(g.theta_minus * rep.kminus);
  return upper * diagonal_exp(g.log_theta_zero, rep).asDiagonal() * lower;
}

Matrix build_group_element(const GaussParams& g, const Representation& rep) {
  return build_group_element(principal_factors(g), rep);
}

Matrix invert_group_element(const GaussFactors& g, const Representation& rep) {
  const Matrix lower = exp_nilpotent(-g.theta_minus * rep.kminus);
  const Matrix upper = exp_nilpotent(-g.theta_plus * rep.kplus);
  return lower * diagonal_exp(-g.log_theta_zero, rep).asDiagonal() * upper;
}

Matrix invert_group_element(const GaussParams& g, const Representation& rep) {
  return invert_group_element(principal_factors(g), rep);
}

Matrix canonical_exponential(const CanonicalParams& p, const Representation& rep) {
  const Matrix generator =
      2.0 * p.eps * rep.k0 + 2.0 * p.mu * rep.kminus + 2.0 * std::conj(p.mu) * rep.kplus;
  return generator.exp();
}

std::array<double, 6> adjoint_identity_residuals(const GaussFactors& g, const Representation& rep) {
  const double d = structure_constant(rep.kind);
  const Index b = rep.trusted_dim;
  const cplx p = g.theta_plus;
  const cplx m = g.theta_minus;
  const cplx q = std::exp(g.log_theta_zero);

  const Matrix ep = exp_nilpotent(p * rep.kplus);
  const Matrix ep_inv = exp_nilpotent(-p * rep.kplus);
  const Matrix em = exp_nilpotent(m * rep.kminus);
  const Matrix em_inv = exp_nilpotent(-m * rep.kminus);
  const Vector el = diagonal_exp(g.log_theta_zero, rep);
  const Vector el_inv = diagonal_exp(-g.log_theta_zero, rep);

  auto rel = [b](const Matrix& lhs, const Matrix& rhs) {
    const double scale = std::max(1.0, max_abs(rhs.topLeftCorner(b, b)));
    return max_abs((lhs - rhs).topLeftCorner(b, b)) / scale;
  };
  auto conj_diag = [](const Vector& left, const Matrix& x, const Vector& right) -> Matrix {
    return left.asDiagonal() * x * right.asDiagonal();
  };

  return {
      rel(em * rep.k0 * em_inv, rep.k0 + m * rep.kminus),
      rel(ep * rep.k0 * ep_inv, rep.k0 - p * rep.kplus),
      rel(conj_diag(el, rep.kminus, el_inv), rep.kminus / q),
      rel(ep * rep.kminus * ep_inv, rep.kminus + d * p * rep.k0 - 0.5 * d * p * p * rep.kplus),
      rel(conj_diag(el, rep.kplus, el_inv), q * rep.kplus),
      rel(em * rep.kplus * em_inv, rep.kplus - d * m * rep.k0 - 0.5 * d * m * m * rep.kminus),
  };
}

}  // namespace nhdyn
