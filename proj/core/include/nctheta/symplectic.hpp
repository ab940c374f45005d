#ifndef NCTHETA_SYMPLECTIC_HPP
#define NCTHETA_SYMPLECTIC_HPP

#include <vector>

#include "nctheta/linalg.hpp"

namespace nctheta {

// Point of the Siegel upper half-space: symmetric complex g x g matrix
// with positive definite imaginary part.
struct SiegelPoint {
  int g = 0;
  CMatrix omega;

  static SiegelPoint checked(CMatrix omega);
};

// Integer 2g x 2g matrix preserving the standard symplectic form exactly.
struct SymplecticIntMatrix {
  int g = 0;
  IMatrix entries;

  IMatrix blockA() const { return entries.topLeftCorner(g, g); }
  IMatrix blockB() const { return entries.topRightCorner(g, g); }
  IMatrix blockC() const { return entries.bottomLeftCorner(g, g); }
  IMatrix blockD() const { return entries.bottomRightCorner(g, g); }

  static SymplecticIntMatrix checked(IMatrix entries);
  static SymplecticIntMatrix identity(int g);
};

// Complex 2g x g matrix whose columns span a Lagrangian subspace of the
// complexified phase space (pairwise symplectically orthogonal, full rank).
struct LagrangianBasis {
  int g = 0;
  CMatrix basis;

  static LagrangianBasis checked(CMatrix basis);
};

// Real antisymmetric d x d matrix, nondegenerate when used as a form.
struct AntisymmetricRealMatrix {
  int d = 0;
  RMatrix entries;

  static AntisymmetricRealMatrix checked(RMatrix entries, bool require_nondegenerate = true);
};

bool is_symplectic(const IMatrix& m);

// Fractional-linear action (A Omega + B)(C Omega + D)^{-1} on the Siegel space.
SiegelPoint mobius_action(const SymplecticIntMatrix& gamma, const SiegelPoint& omega);

// Theta subgroup membership: diagonals of A B^t and C D^t all even.
bool is_in_gamma12(const SymplecticIntMatrix& gamma);

bool is_positive_lagrangian(const CMatrix& omega);

// Graph normal form of a Lagrangian subspace. `swaps` lists the coordinate
// indices (1-based) sent through the partial Fourier symplectomorphism
// x^a -> p_a, p_a -> -x^a before the subspace becomes {p + Omega x = 0}.
struct LagrangianNormalForm {
  CMatrix omega;            // symmetric g x g
  std::vector<int> swaps;   // sorted, 1-based
  double residual = 0.0;    // max |P + Omega X| over the swapped basis
};

LagrangianNormalForm normalize_lagrangian(const LagrangianBasis& basis);

// Returns T with T^t omega T equal to the standard form [[0,I],[-I,0]].
RMatrix darboux_standardize(const AntisymmetricRealMatrix& omega);

}  // namespace nctheta

#endif
