#ifndef NCTHETA_THETA_HPP
#define NCTHETA_THETA_HPP

#include <vector>

#include "nctheta/symplectic.hpp"

namespace nctheta {

// theta(z, Omega) = sum_{n in Z^g} exp(pi i n^t Omega n + 2 pi i n^t z),
// evaluated over the box |n|_inf <= R with a rigorous bound on the
// omitted mass.
struct ThetaQuery {
  int g = 0;
  CVector z;
  SiegelPoint omega;
  double tol = 1e-12;

  static ThetaQuery checked(CVector z, SiegelPoint omega, double tol);
};

struct ThetaResult {
  Complex value;
  int radius = 0;
  double tail_bound = 0.0;
};

ThetaResult theta_sum(const ThetaQuery& q);

// |theta(z + m, Omega) - theta(z, Omega)| for integer m.
double check_periodicity(const CVector& z, const SiegelPoint& omega,
                         const IVector& m, double tol = 1e-12);

// Residual of theta(z + Omega m) = exp(-pi i m^t Omega m - 2 pi i m^t z) theta(z),
// normalized by |theta(z)| unless that is below 1e-14.
struct QuasiPeriodicityResidual {
  double residual = 0.0;
  bool normalized = true;
};

QuasiPeriodicityResidual check_quasi_periodicity(const CVector& z, const SiegelPoint& omega,
                                                 const IVector& m, double tol = 1e-12);

// Modular ratio zeta across z-samples. The ratio
//   theta(((C Omega + D)^t)^{-1} z, gamma Omega) /
//   [det(C Omega + D)^{1/2} exp(pi i z^t (C Omega + D)^{-1} C z) theta(z, Omega)]
// uses the principal square root; only |zeta| = 1 and zeta^8 = 1 are contractual.
struct ModularRatio {
  Complex zeta;
  double constancy = 0.0;
};

ModularRatio modular_ratio(const SymplecticIntMatrix& gamma, const SiegelPoint& omega,
                           const std::vector<CVector>& z_samples, double tol = 1e-12);

}  // namespace nctheta

#endif
