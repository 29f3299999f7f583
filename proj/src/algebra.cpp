#include "nhdyn/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nhdyn {

AlgebraKind algebra_from_structure_constant(int d) {
  if (d == 2) return AlgebraKind::su2;
  if (d == -2) return AlgebraKind::su11;
  throw std::invalid_argument("structure constant must be +2 or -2, got " + std::to_string(d));
}

const char* to_string(AlgebraKind kind) {
  return kind == AlgebraKind::su2 ? "su2" : "su11";
}

Representation build_su2_rep(double j) {
  const double twice = 2.0 * j;
  if (!(j > 0.0) || !std::isfinite(j) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw std::invalid_argument("spin j must be a positive half-integer");
  }
  const auto dim = static_cast<Index>(std::lround(twice)) + 1;
  Matrix k0 = Matrix::Zero(dim, dim);
  Matrix kplus = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const double m = j - static_cast<double>(i);
    k0(i, i) = m;
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>, and m+1 sits at row i-1.
    if (i > 0) kplus(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Matrix kminus = kplus.adjoint();
  return Representation{AlgebraKind::su2, dim, std::move(k0), std::move(kplus), std::move(kminus),
                        SpinLabel{j}, dim};
}

Representation build_su11_boson_rep(int cutoff) {
  if (cutoff < 4) throw std::invalid_argument("Fock cutoff must be at least 4");
  const Index dim = cutoff;
  Matrix k0 = Matrix::Zero(dim, dim);
  Matrix kminus = Matrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) {
    const double level = static_cast<double>(n);
    k0(n, n) = 0.5 * (level + 0.5);
    if (n >= 2) kminus(n - 2, n) = 0.5 * std::sqrt(level * (level - 1.0));
  }
  Matrix kplus = kminus.adjoint();
  return Representation{AlgebraKind::su11, dim, std::move(k0), std::move(kplus), std::move(kminus),
                        FockCutoff{cutoff}, dim - 2};
}

double CommutatorResiduals::max() const {
  return std::max({k0_kplus, k0_kminus, kplus_kminus});
}

CommutatorResiduals commutator_residuals(const Representation& rep, Index block) {
  const Index b = block > 0 ? std::min(block, rep.dim) : rep.trusted_dim;
  const double d = structure_constant(rep.kind);
  const Matrix r1 = commutator(rep.k0, rep.kplus) - rep.kplus;
  const Matrix r2 = commutator(rep.k0, rep.kminus) + rep.kminus;
  const Matrix r3 = commutator(rep.kplus, rep.kminus) - d * rep.k0;
  return {max_abs(r1.topLeftCorner(b, b)), max_abs(r2.topLeftCorner(b, b)),
          max_abs(r3.topLeftCorner(b, b))};
}

Index basis_column(const Representation& rep, double n) {
  if (const auto* spin = std::get_if<SpinLabel>(&rep.label)) {
    const double offset = spin->j - n;
    if (std::abs(offset - std::round(offset)) > 1e-12 || offset < 0 ||
        offset > 2.0 * spin->j + 1e-12) {
      throw std::out_of_range("index out of range for spin " + std::to_string(spin->j));
    }
    return static_cast<Index>(std::lround(offset));
  }
  if (n < 0 || n >= static_cast<double>(rep.dim) || n != std::floor(n)) {
    throw std::out_of_range("index out of range for cutoff " + std::to_string(rep.dim));
  }
  return static_cast<Index>(n);
}

double k0_eigenvalue(const Representation& rep, double n) {
  const Index col = basis_column(rep, n);
  return rep.k0(col, col).real();
}

}  // namespace nhdyn
