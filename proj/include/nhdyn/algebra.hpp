#pragma once

#include "nhdyn/types.hpp"

#include <variant>

namespace nhdyn {

/// Selects the commutator [K+, K-] = D K0: D = +2 is su(2), D = -2 is su(1,1).
enum class AlgebraKind : int { su2 = 2, su11 = -2 };

inline int structure_constant(AlgebraKind kind) { return static_cast<int>(kind); }

/// Throws std::invalid_argument unless d is +2 or -2.
AlgebraKind algebra_from_structure_constant(int d);

const char* to_string(AlgebraKind kind);

struct SpinLabel {
  double j;
};
struct FockCutoff {
  int cutoff;
};
using RepresentationLabel = std::variant<SpinLabel, FockCutoff>;

/// Finite matrices for the generator triple.  The su(2) basis descends
/// m = j..-j; the truncated su(1,1) basis ascends through Fock levels
/// n = 0..N-1.  The algebra holds exactly on the leading trusted_dim block.
struct Representation {
  AlgebraKind kind;
  Index dim;
  Matrix k0;
  Matrix kplus;
  Matrix kminus;
  RepresentationLabel label;
  Index trusted_dim;
};

Representation build_su2_rep(double j);
Representation build_su11_boson_rep(int cutoff);

struct CommutatorResiduals {
  double k0_kplus;     // [K0,K+] - K+
  double k0_kminus;    // [K0,K-] + K-
  double kplus_kminus; // [K+,K-] - D K0

  double max() const;
};

/// Max-norm residuals of the three defining relations on the leading
/// `block` rows and columns (trusted_dim when block <= 0).
CommutatorResiduals commutator_residuals(const Representation& rep, Index block = 0);

/// Basis column of the K0 eigenvector labelled n: the magnetic number for
/// su(2) (n in j, j-1, ..., -j, half-integers allowed), the Fock level for
/// su(1,1).  Throws std::out_of_range for labels outside the representation.
Index basis_column(const Representation& rep, double n);

/// K0 eigenvalue attached to label n.
double k0_eigenvalue(const Representation& rep, double n);

}  // namespace nhdyn
