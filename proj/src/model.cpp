#include "nhdyn/model.hpp"

#include "nhdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nhdyn {

namespace {

// Natural cubic spline second derivatives (tridiagonal sweep).
std::vector<cplx> spline_second_derivatives(const std::vector<double>& t,
                                            const std::vector<cplx>& y) {
  const std::size_t n = t.size();
  std::vector<cplx> m(n, cplx{});
  if (n < 3) return m;
  std::vector<double> diag(n, 1.0), upper(n, 0.0);
  std::vector<cplx> rhs(n, cplx{});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const double lower = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    upper[i] = h1 / 6.0;
    rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    // eliminate the sub-diagonal against row i-1
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
  }
  return m;
}

}  // namespace

TableProfile::TableProfile(std::vector<double> t, std::vector<cplx> values, Interpolation order)
    : t_(std::move(t)), values_(std::move(values)), order_(order) {
  if (t_.size() != values_.size()) throw std::invalid_argument("table: t and values differ in length");
  if (t_.size() < 2) throw std::invalid_argument("table: at least two samples required");
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("table: sample times must strictly increase");
  }
  if (order_ == Interpolation::cubic) second_ = spline_second_derivatives(t_, values_);
}

cplx TableProfile::operator()(double t) const {
  if (!(t >= t_.front() && t <= t_.back())) {
    throw DomainError("table profile queried at t=" + std::to_string(t) + " outside [" +
                      std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - t_.begin()), t_.size() - 1);
  std::size_t lo = hi - 1;
  const double h = t_[hi] - t_[lo];
  const double a = (t_[hi] - t) / h;
  const double b = 1.0 - a;
  cplx y = a * values_[lo] + b * values_[hi];
  if (order_ == Interpolation::cubic) {
    y += ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * (h * h / 6.0);
  }
  return y;
}

TableProfile load_table_csv(const std::filesystem::path& path, Interpolation order) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("file-not-found: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty table file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im") {
    throw std::runtime_error("table " + path.string() + ": header must be `t,re,im`");
  }
  std::vector<double> ts;
  std::vector<cplx> vs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',')) {
      throw std::runtime_error("table " + path.string() + ": line " + std::to_string(lineno) +
                               " needs three columns");
    }
    try {
      ts.push_back(std::stod(a));
      vs.emplace_back(std::stod(b), std::stod(c));
    } catch (const std::exception&) {
      throw std::runtime_error("table " + path.string() + ": line " + std::to_string(lineno) +
                               " is not numeric");
    }
  }
  return TableProfile(std::move(ts), std::move(vs), order);
}

cplx evaluate(const TimeProfile& profile, double t) {
  struct Visitor {
    double t;
    cplx operator()(const ConstantProfile& p) const { return p.value; }
    cplx operator()(const SinusoidProfile& p) const {
      return p.offset + p.amplitude * std::sin(p.frequency * t + p.phase0);
    }
    cplx operator()(const TableProfile& p) const { return p(t); }
  };
  return std::visit(Visitor{t}, profile);
}

CoefficientSet constant_coefficients(cplx omega, cplx alpha, cplx beta) {
  return {ConstantProfile{omega}, ConstantProfile{alpha}, ConstantProfile{beta}};
}

PolarCoeffs to_polar(const CoeffValues& v) {
  return {std::abs(v.omega), arg_or_zero(v.omega), std::abs(v.alpha),
          arg_or_zero(v.alpha), std::abs(v.beta),  arg_or_zero(v.beta)};
}

CoeffSample eval_coeffs(const CoefficientSet& c, double t) {
  CoeffValues v{evaluate(c.omega, t), evaluate(c.alpha, t), evaluate(c.beta, t)};
  return {v, to_polar(v)};
}

Matrix h_matrix(const CoeffValues& v, const Representation& rep) {
  return 2.0 * v.omega * rep.k0 + 2.0 * v.alpha * rep.kminus + 2.0 * v.beta * rep.kplus;
}

Matrix h_matrix(const CoefficientSet& c, const Representation& rep, double t) {
  return h_matrix(eval_coeffs(c, t).values, rep);
}

}  // namespace nhdyn
