#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace nhdyn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Largest absolute entry; zero for empty expressions.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

template <typename A, typename B>
Matrix commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a * b - b * a;
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

/// Argument in (-pi, pi]; zero for a zero modulus.
inline double arg_or_zero(cplx z) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  double a = std::arg(z);
  return a == -pi ? pi : a;
}

}  // namespace nhdyn
