#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/types.hpp"

#include <array>
#include <optional>

namespace nhdyn {

/// Generator of V = exp(2 eps K0 + 2 mu K- + 2 conj(mu) K+).
struct CanonicalParams {
  double eps;
  cplx mu;
};

/// V = exp(theta_plus K+) exp(ln(theta_zero) K0) exp(theta_minus K-).
/// `theta` is the auxiliary root sqrt(eps^2 + 2 D |mu|^2) and is only
/// present when the parameters came from CanonicalParams.
struct GaussParams {
  cplx theta_plus;
  cplx theta_zero;
  cplx theta_minus;
  std::optional<cplx> theta;
};

/// theta_plus/minus = -phi exp(-/+ i varphi), theta_zero = -(D/2) phi^2 - chi.
/// z_mod = |2 mu / eps| is +inf when eps = 0.
struct ReducedParams {
  double phi;
  double varphi;
  double chi;
  double z_mod;
};

/// Gauss coordinates with an explicit logarithm of theta_zero, so that a
/// caller walking a trajectory can keep the branch continuous.
struct GaussFactors {
  cplx theta_plus;
  cplx log_theta_zero;
  cplx theta_minus;
};

/// cosh(sqrt(x)) and sinh(sqrt(x))/sqrt(x); both are entire in x, so no
/// branch of the square root is ever chosen.
double cosh_sqrt(double x);
double sinhc_sqrt(double x);

/// Throws SingularDecomposition when cosh(theta) - (eps/theta) sinh(theta)
/// vanishes (|.| < 1e-13).
GaussParams gauss_decompose(const CanonicalParams& p, AlgebraKind kind);

ReducedParams reduce_params(const CanonicalParams& p, AlgebraKind kind);

GaussParams gauss_from_reduced(const ReducedParams& r, AlgebraKind kind);

/// (phi, varphi) -> (-phi, varphi + pi); leaves theta_plus/minus unchanged.
ReducedParams fold_sign(const ReducedParams& r);

/// Principal logarithm of theta_zero; throws SingularDecomposition at zero.
GaussFactors principal_factors(const GaussParams& g);

/// Logarithm with the argument unwrapped against the previous call, for use
/// along a sampled trajectory.
class LogTracker {
 public:
  cplx operator()(cplx z);
  void reset() { last_arg_.reset(); }

 private:
  std::optional<double> last_arg_;
};

/// exp(m) for nilpotent m (truncated ladder operators) by a terminating
/// Taylor series.
template <typename Derived>
Matrix exp_nilpotent(const Eigen::MatrixBase<Derived>& m) {
  const Index n = m.rows();
  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    term = (term * m) / static_cast<double>(k);
    const double size = max_abs(term);
    if (size == 0.0) break;
    result += term;
    if (size < 1e-18 * max_abs(result)) break;
  }
  return result;
}

Matrix build_group_element(const GaussFactors& g, const Representation& rep);
Matrix build_group_element(const GaussParams& g, const Representation& rep);

/// exp(-theta_minus K-) exp(-ln(theta_zero) K0) exp(-theta_plus K+)
Matrix invert_group_element(const GaussFactors& g, const Representation& rep);
Matrix invert_group_element(const GaussParams& g, const Representation& rep);

/// Dense exp(2 eps K0 + 2 mu K- + 2 conj(mu) K+) by scaling and squaring.
Matrix canonical_exponential(const CanonicalParams& p, const Representation& rep);

/// Residuals of the six conjugation identities
///   e^{m K-} K0 e^{-m K-} = K0 + m K-
///   e^{p K+} K0 e^{-p K+} = K0 - p K+
///   e^{l K0} K- e^{-l K0} = K- / theta_zero
///   e^{p K+} K- e^{-p K+} = K- + D p K0 - (D/2) p^2 K+
///   e^{l K0} K+ e^{-l K0} = theta_zero K+
///   e^{m K-} K+ e^{-m K-} = K+ - D m K0 - (D/2) m^2 K-
/// with l = ln theta_zero, measured in relative max-norm on the trusted block.
std::array<double, 6> adjoint_identity_residuals(const GaussFactors& g, const Representation& rep);

}  // namespace nhdyn
