#pragma once

#include "nhdyn/algebra.hpp"
#include "nhdyn/types.hpp"

#include <filesystem>
#include <variant>
#include <vector>

namespace nhdyn {

struct ConstantProfile {
  cplx value;
};

/// offset + amplitude * sin(frequency * t + phase0)
struct SinusoidProfile {
  cplx amplitude;
  double frequency;
  double phase0;
  cplx offset;
};

enum class Interpolation { linear, cubic };

/// Tabulated complex samples.  Real and imaginary parts are interpolated
/// independently; the cubic variant is a natural spline.
class TableProfile {
 public:
  TableProfile(std::vector<double> t, std::vector<cplx> values,
               Interpolation order = Interpolation::cubic);

  cplx operator()(double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }
  Interpolation order() const { return order_; }
  const std::vector<double>& times() const { return t_; }
  const std::vector<cplx>& values() const { return values_; }

 private:
  std::vector<double> t_;
  std::vector<cplx> values_;
  std::vector<cplx> second_;  // spline second derivatives at the knots
  Interpolation order_;
};

/// Reads a `t,re,im` CSV.  Throws std::runtime_error naming the path when
/// the file is missing or malformed.
TableProfile load_table_csv(const std::filesystem::path& path,
                            Interpolation order = Interpolation::cubic);

using TimeProfile = std::variant<ConstantProfile, SinusoidProfile, TableProfile>;

/// Throws DomainError for t outside a table's range.
cplx evaluate(const TimeProfile& profile, double t);

struct CoefficientSet {
  TimeProfile omega;
  TimeProfile alpha;
  TimeProfile beta;
};

/// Builds a set of constant coefficients.
CoefficientSet constant_coefficients(cplx omega, cplx alpha, cplx beta);

struct CoeffValues {
  cplx omega;
  cplx alpha;
  cplx beta;
};

/// Polar form used by the constraint flow.  A zero modulus has argument 0.
struct PolarCoeffs {
  double mod_omega, arg_omega;
  double mod_alpha, arg_alpha;
  double mod_beta, arg_beta;
};

PolarCoeffs to_polar(const CoeffValues& v);

struct CoeffSample {
  CoeffValues values;
  PolarCoeffs polar;
};

CoeffSample eval_coeffs(const CoefficientSet& c, double t);

/// 2 omega K0 + 2 alpha K- + 2 beta K+
Matrix h_matrix(const CoeffValues& v, const Representation& rep);
Matrix h_matrix(const CoefficientSet& c, const Representation& rep, double t);

}  // namespace nhdyn
