#pragma once

#include "nhdyn/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace nhdyn::ode {

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.1;
};

struct Stats {
  int accepted = 0;
  int rejected = 0;
  double max_local_error = 0.0;  // largest accepted error-estimate max-norm
};

namespace detail {

// Step acceptance uses the max-norm so that a single large component of a
// long state vector cannot hide behind the others.
template <typename Vec>
double scaled_max(const Vec& err, const Vec& y0, const Vec& y1, const StepControl& c) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = c.atol + c.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    worst = std::max(worst, double(std::abs(err[i])) / sc);
  }
  return worst;
}

template <typename Vec>
double scaled_rms(const Vec& err, const Vec& y0, const Vec& y1, const StepControl& c) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = c.atol + c.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(err[i]) / sc;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(err.size(), 1)));
}

inline double next_limit(double t, double t1, std::span<const double> stops, std::size_t& k) {
  while (k < stops.size() && stops[k] <= t) ++k;
  return k < stops.size() ? std::min(stops[k], t1) : t1;
}

}  // namespace detail

/// Dormand-Prince 5(4) with FSAL and local extrapolation.  The integrator
/// lands exactly on every time in `stops` (sorted ascending).  `on_step`
/// receives (t, y, dy/dt) after every accepted step, including the initial
/// point, and may throw to abort.
template <typename Vec, typename Rhs, typename OnStep>
Stats dopri5(Rhs&& f, double t0, Vec y, double t1, const StepControl& ctl,
             std::span<const double> stops, OnStep&& on_step) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats stats;
  double t = t0;
  Vec k1 = f(t, y);
  on_step(t, y, k1);

  // Initial step from the scaled size of y and y'.
  double h;
  {
    const double d0 = detail::scaled_rms(y, y, y, ctl);
    const double d1 = detail::scaled_rms(k1, y, y, ctl);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, ctl.max_step, t1 - t0});
  }

  std::size_t stop_k = 0;
  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
  while (t < t1) {
    const double limit = detail::next_limit(t, t1, stops, stop_k);
    bool lands = false;
    if (t + h >= limit || (limit - t - h) < 1e-12 * std::max(1.0, std::abs(limit))) {
      h = limit - t;
      lands = true;
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw StiffnessError("step size underflow", t);
    }

    const Vec k2 = f(t + c2 * h, Vec(y + h * (a21 * k1)));
    const Vec k3 = f(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
    const Vec k4 = f(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const Vec k5 = f(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const Vec k6 =
        f(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const Vec y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double t_new = lands ? limit : t + h;
    const Vec k7 = f(t_new, y_new);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = detail::scaled_max(err, y, y_new, ctl);
    const double fac =
        en == 0.0 ? fac_max : std::clamp(safety * std::pow(en, -0.2), fac_min, fac_max);
    if (en <= 1.0) {
      ++stats.accepted;
      double emax = 0.0;
      for (Eigen::Index i = 0; i < err.size(); ++i) emax = std::max(emax, double(std::abs(err[i])));
      stats.max_local_error = std::max(stats.max_local_error, emax);
      t = t_new;
      y = y_new;
      k1 = k7;
      on_step(t, y, k1);
      h = std::min(h * fac, ctl.max_step);
    } else {
      ++stats.rejected;
      h *= std::min(1.0, fac);
    }
    if (stats.accepted + stats.rejected > 50'000'000) throw StiffnessError("step budget exhausted", t);
  }
  return stats;
}

/// Classical fourth-order Runge-Kutta with fixed step max_step (shortened to
/// land on stops and t1).
template <typename Vec, typename Rhs, typename OnStep>
Stats rk4(Rhs&& f, double t0, Vec y, double t1, double step, std::span<const double> stops,
          OnStep&& on_step) {
  Stats stats;
  double t = t0;
  Vec k1 = f(t, y);
  on_step(t, y, k1);
  std::size_t stop_k = 0;
  while (t < t1) {
    const double limit = detail::next_limit(t, t1, stops, stop_k);
    double h = step;
    bool lands = false;
    if (t + h >= limit || (limit - t - h) < 1e-12 * std::max(1.0, std::abs(limit))) {
      h = limit - t;
      lands = true;
    }
    const Vec k2 = f(t + 0.5 * h, Vec(y + 0.5 * h * k1));
    const Vec k3 = f(t + 0.5 * h, Vec(y + 0.5 * h * k2));
    const Vec k4 = f(t + h, Vec(y + h * k3));
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = lands ? limit : t + h;
    k1 = f(t, y);
    ++stats.accepted;
    on_step(t, y, k1);
  }
  return stats;
}

}  // namespace nhdyn::ode
