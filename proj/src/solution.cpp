#include "nhdyn/solution.hpp"

#include "nhdyn/decomposition.hpp"
#include "nhdyn/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nhdyn {

namespace {

// 5-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 5> gl_nodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> gl_weights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

template <typename F>
auto gauss_legendre(double a, double b, F&& f) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  decltype(f(a)) sum{};
  for (std::size_t k = 0; k < gl_nodes.size(); ++k) sum += gl_weights[k] * f(mid + half * gl_nodes[k]);
  return half * sum;
}

// int_{t0}^{t} f over the trajectory's node intervals.
template <typename F>
auto integrate_on_nodes(const Trajectory& traj, double t, F&& f) {
  const auto& states = traj.states();
  decltype(f(t)) total{};
  for (std::size_t i = 0; i + 1 < states.size() && states[i].t < t; ++i) {
    const double b = std::min(states[i + 1].t, t);
    total += gauss_legendre(states[i].t, b, f);
  }
  return total;
}

}  // namespace

EigenIndex make_eigen_index(const Representation& rep, double n) {
  return {n, k0_eigenvalue(rep, n)};
}

PhaseLaw::PhaseLaw(Trajectory traj, CoefficientSet c, AlgebraKind kind, int sigma)
    : traj_(std::move(traj)), coeffs_(std::move(c)), kind_(kind), sigma_(sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  const auto& states = traj_.states();
  cumulative_.assign(states.size(), 0.0);
  auto integrand = [this](double t) {
    return 2.0 * re_w(traj_.state_at(t), eval_coeffs(coeffs_, t).polar, kind_);
  };
  for (std::size_t i = 1; i < states.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + gauss_legendre(states[i - 1].t, states[i].t, integrand);
  }
}

double PhaseLaw::integral(double t) const {
  const auto& states = traj_.states();
  if (!(t >= traj_.t0() && t <= traj_.t1())) {
    throw DomainError("phase law queried outside the trajectory at t=" + std::to_string(t));
  }
  auto it = std::upper_bound(states.begin(), states.end(), t,
                             [](double v, const FlowState& s) { return v < s.t; });
  const auto i = static_cast<std::size_t>(it - states.begin()) - 1;
  if (states[i].t == t) return cumulative_[i];
  auto integrand = [this](double x) {
    return 2.0 * re_w(traj_.state_at(x), eval_coeffs(coeffs_, x).polar, kind_);
  };
  return cumulative_[i] + gauss_legendre(states[i].t, t, integrand);
}

PhaseLaw phase_integral(const Trajectory& traj, const CoefficientSet& c, AlgebraKind kind, int sigma) {
  return PhaseLaw(traj, c, kind, sigma);
}

Matrix group_element_at(const Trajectory& traj, const Representation& rep, double t) {
  return build_group_element(gauss_factors(traj.state_at(t)), rep);
}

StateVector closed_form_state(const EigenIndex& idx, double t, const PhaseLaw& phase,
                              const Representation& rep) {
  const Matrix v_inv = invert_group_element(gauss_factors(phase.trajectory().state_at(t)), rep);
  const cplx factor =
      std::exp(cplx(0.0, phase.sigma() * idx.lambda * phase.integral(t)));
  return {factor * v_inv.col(basis_column(rep, idx.n)), t};
}

cplx metric_overlap(const StateVector& a, const StateVector& b, const Matrix& v) {
  if (a.amplitudes.size() != b.amplitudes.size() || v.cols() != a.amplitudes.size()) {
    throw std::invalid_argument("metric_overlap: dimension mismatch");
  }
  return (v * a.amplitudes).dot(v * b.amplitudes);
}

NormDrift naive_norm_drift(const EigenIndex& idx, const Trajectory& traj, const CoefficientSet& c,
                           const Representation& rep, double t, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  if (!(t >= traj.t0() && t <= traj.t1())) {
    throw DomainError("naive_norm_drift queried outside the trajectory");
  }
  auto full_w = [&](double x) {
    const FlowState s = traj.state_at(x);
    const CoeffSample cs = eval_coeffs(c, x);
    return 2.0 * transformed_coeffs(s, flow_rhs(s, cs.polar, rep.kind), cs.values, rep.kind).W;
  };
  const cplx g = integrate_on_nodes(traj, t, full_w);

  const Index col = basis_column(rep, idx.n);
  Vector phi0 = Vector::Zero(rep.dim);
  phi0[col] = 1.0;
  const Vector phi_t = std::exp(cplx(0.0, sigma * idx.lambda) * g) * phi0;
  const double ratio = phi_t.squaredNorm() / phi0.squaredNorm();
  return {ratio, std::log(ratio), g.imag()};
}

double schrodinger_residual(const EigenIndex& idx, double t, const PhaseLaw& phase,
                            const CoefficientSet& c, const Representation& rep, double h) {
  auto psi = [&](double x) { return closed_form_state(idx, x, phase, rep).amplitudes; };
  const Vector dpsi = (-psi(t + 2 * h) + 8.0 * psi(t + h) - 8.0 * psi(t - h) + psi(t - 2 * h)) / (12.0 * h);
  const Vector here = psi(t);
  const cplx i(0.0, 1.0);
  const Vector r = i * dpsi - h_matrix(c, rep, t) * here;
  // truncated su(1,1): edge rows carry the cutoff artefact
  const Index b = rep.trusted_dim;
  return r.head(b).norm() / here.norm();
}

int audit_sign_convention(const Trajectory& traj, const CoefficientSet& c, const Representation& rep,
                          const EigenIndex& idx, int probes) {
  const PhaseLaw minus(traj, c, rep.kind, -1);
  const PhaseLaw plus(traj, c, rep.kind, +1);
  double res_minus = 0.0, res_plus = 0.0;
  const double span = traj.t1() - traj.t0();
  for (int k = 1; k <= probes; ++k) {
    const double t = traj.t0() + span * k / (probes + 1);
    res_minus = std::max(res_minus, schrodinger_residual(idx, t, minus, c, rep));
    res_plus = std::max(res_plus, schrodinger_residual(idx, t, plus, c, rep));
  }
  return res_minus <= res_plus ? -1 : +1;
}

double basis_min_singular_value(const std::vector<EigenIndex>& labels, double t,
                                const PhaseLaw& phase, const Representation& rep) {
  Matrix stacked(rep.dim, static_cast<Index>(labels.size()));
  for (std::size_t k = 0; k < labels.size(); ++k) {
    stacked.col(static_cast<Index>(k)) = closed_form_state(labels[k], t, phase, rep).amplitudes;
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  return svd.singularValues().minCoeff();
}

}  // namespace nhdyn
