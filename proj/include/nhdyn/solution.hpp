#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/flow.hpp"
#include "nhdyn/model.hpp"
#include "nhdyn/transform.hpp"

#include <vector>

namespace nhdyn {

/// K0 eigenvector label and its eigenvalue: (n + 1/2)/2 on Fock level n for
/// su(1,1), the magnetic number itself for su(2).
struct EigenIndex {
  double n;
  double lambda;
};

/// Throws std::out_of_range for labels outside the representation.
EigenIndex make_eigen_index(const Representation& rep, double n);

struct StateVector {
  Vector amplitudes;
  double t = 0.0;
};

/// Cumulative I(t) = int_{t0}^{t} 2 re_w dt', with the Gauss-Legendre
/// quadrature run on the same nodes as the flow's dense output.  The
/// evolving phase of label n is exp(sigma i lambda_n I(t)).
class PhaseLaw {
 public:
  PhaseLaw(Trajectory traj, CoefficientSet c, AlgebraKind kind, int sigma);

  double integral(double t) const;
  int sigma() const { return sigma_; }
  const Trajectory& trajectory() const { return traj_; }
  const std::vector<double>& node_integrals() const { return cumulative_; }

 private:
  Trajectory traj_;
  CoefficientSet coeffs_;
  AlgebraKind kind_;
  int sigma_;
  std::vector<double> cumulative_;
};

/// sigma must be +1 or -1.
PhaseLaw phase_integral(const Trajectory& traj, const CoefficientSet& c, AlgebraKind kind,
                        int sigma = -1);

/// exp(sigma i lambda_n I(t)) V^{-1}(t) e_n
StateVector closed_form_state(const EigenIndex& idx, double t, const PhaseLaw& phase,
                              const Representation& rep);

/// V(t) along the trajectory.
Matrix group_element_at(const Trajectory& traj, const Representation& rep, double t);

/// <a| V^dagger V |b>; throws std::invalid_argument on a dimension mismatch.
cplx metric_overlap(const StateVector& a, const StateVector& b, const Matrix& v);

struct NormDrift {
  double ratio;        // <phi_n(t)|phi_n(t)> / <phi_n(0)|phi_n(0)>
  double log_ratio;    // ln(ratio)
  double im_integral;  // Im int_{t0}^{t} 2 W dt' with the full complex W
};

/// Norm growth of the transformed-frame state exp(sigma i lambda_n int 2W) e_n
/// when W keeps its imaginary part.  Rates come from the flow right-hand
/// side, so this is only meaningful along an integrated trajectory.
NormDrift naive_norm_drift(const EigenIndex& idx, const Trajectory& traj, const CoefficientSet& c,
                           const Representation& rep, double t, int sigma = -1);

/// ||i dpsi/dt - H psi|| / ||psi|| for the closed-form state, with a
/// fourth-order central difference of step h.
double schrodinger_residual(const EigenIndex& idx, double t, const PhaseLaw& phase,
                            const CoefficientSet& c, const Representation& rep, double h = 1e-3);

/// Picks sigma in {+1, -1} minimizing the Schrodinger residual of label n
/// at the interior probe times of the trajectory.
int audit_sign_convention(const Trajectory& traj, const CoefficientSet& c,
                          const Representation& rep, const EigenIndex& idx, int probes = 5);

/// Smallest singular value of the matrix whose columns are the closed-form
/// states of `labels` at time t.
double basis_min_singular_value(const std::vector<EigenIndex>& labels, double t,
                                const PhaseLaw& phase, const Representation& rep);

}  // namespace nhdyn
