#ifndef NCTHETA_CORRESPONDENCE_HPP
#define NCTHETA_CORRESPONDENCE_HPP

#include <vector>

#include "nctheta/schwartz.hpp"
#include "nctheta/theta.hpp"

namespace nctheta {

// Section transform f~(rho, sigma) = sum_{k in Z^g} e^{-2 pi i rho^t k} f(sigma + k),
// truncated over |k|_inf <= R with a rigorous Gaussian tail bound <= tol.
Complex tilde_transform(const PolyGaussianVector& v, const RVector& rho,
                        const RVector& sigma, double tol);

// Truncation radius used by tilde_transform, independent of (rho, sigma).
int tilde_radius(const PolyGaussianVector& v, double tol);

// Transform truncated at a caller-fixed radius; useful for comparing the
// transform at lattice-shifted arguments with matched truncation.
Complex tilde_transform_radius(const PolyGaussianVector& v, const RVector& rho,
                               const RVector& sigma, int radius);

// Inverse transform at a point: equispaced product quadrature in rho composed
// with the sigma-collapse onto sigma = frac(x). Exact for the band-limited
// truncated transform once grid_n >= 2 R + 2; coarser grids alias.
Complex reconstruct(const PolyGaussianVector& v, const RVector& x, int grid_n,
                    double tol = 1e-12);

// Holomorphic coordinates z = Omega sigma - rho.
CVector complex_coordinates(const RVector& rho, const RVector& sigma,
                            const SiegelPoint& omega);

struct SectionSample {
  RVector rho;
  RVector sigma;
  Complex lhs;       // transform of the theta vector
  Complex rhs;       // exp(pi i sigma^t Omega sigma) theta(z, Omega)
  double residual = 0.0;
};

struct CorrespondenceReport {
  std::vector<SectionSample> samples;
  double max_residual = 0.0;
};

// Compares the transform of the Gaussian theta vector against the classical
// series on an equispaced (rho, sigma) grid with n points per axis. The two
// sides go through disjoint code paths.
CorrespondenceReport check_theta_correspondence(const SiegelPoint& omega,
                                                int grid_per_axis, double tol);

// Residual of the transform intertwining the connection:
//   alpha <= g:  transform(nabla_alpha v) = (2 pi i sigma^alpha - d/d rho^alpha) v~
//   alpha  > g:  transform(nabla_alpha v) = d/d sigma^{alpha-g} v~
// with the derivative approximated by a central difference of step h.
double nabla_tilde_intertwining(int alpha, const PolyGaussianVector& v,
                                const RVector& rho, const RVector& sigma, double h,
                                double tol = 1e-12);

}  // namespace nctheta

#endif
