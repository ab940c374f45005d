#ifndef NCTHETA_SCHWARTZ_HPP
#define NCTHETA_SCHWARTZ_HPP

#include <vector>

#include "nctheta/nc_algebra.hpp"
#include "nctheta/polynomial.hpp"
#include "nctheta/symplectic.hpp"

namespace nctheta {

// Exact symbolic arena: finite sums of terms
//
//   poly(x) * exp(pi i x^t Q x + 2 pi i b^t x),   Im Q positive definite,
//
// closed under multiplication by coordinates, differentiation, shifts,
// modulations and Fourier transform. Identities of the connection calculus
// hold exactly here instead of up to grid resolution.
//
// Operator conventions, fixed once for the whole library:
//   nabla_a = 2 pi i x^a                 for 1 <= a <= g,
//   nabla_a = d/dx^{a-g}                 for g < a <= 2g,
// so [nabla_a, nabla_b] = 2 pi i w0_{ab} with w0 = [[0,-I],[I,0]].
// For an invertible antisymmetric theta the adapted frame
//   nabla^theta_a = sum_r M_{ar} nabla_r,  M w0 M^t = theta^{-1},
// has curvature theta^{-1} (M = identity when theta is the standard
// symplectic matrix). The module generators
//   U_a = exp(-theta^{ab} nabla^theta_b)
// then satisfy [nabla^theta_a, U_b] = 2 pi i delta_{ab} U_b, and the lattice
// operators W_n = exp(-n_a theta^{ab} nabla^theta_b) compose as
//   W_n W_m = exp(-pi i n^t theta m) W_{n+m},
// equivalently W_m W_n = exp(+pi i n^t theta m) W_{n+m}. The Fourier algebra
// therefore acts on this space as a right module:
//   act(f * g, v) = act(g, act(f, v)).
struct PolyGaussianTerm {
  int g = 0;
  Poly poly;
  CMatrix quadratic;   // Q, symmetric with Im Q > 0
  CVector linear;      // b

  PolyGaussianTerm() : poly(0) {}
  static PolyGaussianTerm checked(Poly poly, CMatrix quadratic, CVector linear);
  Complex evaluate(const CVector& x) const;
};

class PolyGaussianVector {
 public:
  explicit PolyGaussianVector(int g) : g_(g) {}

  static PolyGaussianVector zero(int g) { return PolyGaussianVector(g); }
  static PolyGaussianVector single(PolyGaussianTerm term);

  int g() const { return g_; }
  const std::vector<PolyGaussianTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void append(PolyGaussianTerm term);
  Complex evaluate(const CVector& x) const;
  Complex evaluate_real(const RVector& x) const;

  PolyGaussianVector operator+(const PolyGaussianVector& other) const;
  PolyGaussianVector operator-(const PolyGaussianVector& other) const;
  PolyGaussianVector scaled(Complex s) const;

  // Merge terms sharing the same Gaussian data and drop empty polynomials.
  PolyGaussianVector canonicalized(double tol = 1e-13) const;

 private:
  int g_;
  std::vector<PolyGaussianTerm> terms_;
};

// Exponent of a Weyl operator: K = 2 pi i u^t x + v^t d/dx.
struct WeylExponent {
  CVector u;
  CVector v;
};

// (W f)(x) = phase * exp(2 pi i modulation^t x) * f(x - shift).
struct WeylOperator {
  int g = 0;
  Complex phase{1.0, 0.0};
  CVector shift;
  CVector modulation;

  static WeylOperator identity(int g);
  // exp(2 pi i u^t x + v^t d/dx) = e^{pi i u^t v} e^{2 pi i u^t x} e^{v^t d/dx}.
  static WeylOperator from_exponent(const WeylExponent& k);

  WeylOperator compose(const WeylOperator& rhs) const;  // (*this) after rhs
  WeylOperator inverse() const;
  WeylOperator power(long long n) const;
};

// Scalar commutator [K1, K2] = 2 pi i (u2^t v1 - u1^t v2) of two exponents.
Complex exponent_commutator(const WeylExponent& k1, const WeylExponent& k2);

PolyGaussianVector apply_nabla(int alpha, const PolyGaussianVector& v);
// sum_r coeffs(r) nabla_r applied to v (coeffs has size 2g).
PolyGaussianVector apply_nabla_combination(const CVector& coeffs, const PolyGaussianVector& v);
PolyGaussianVector apply_weyl(const WeylOperator& w, const PolyGaussianVector& v);

// Frame change M with M w0 M^t = theta^{-1}; identity for standard theta.
RMatrix representation_matrix(const ThetaMatrix& theta);

WeylExponent generator_exponent(int alpha, const ThetaMatrix& theta);
WeylOperator generator_U(int alpha, const ThetaMatrix& theta);
// W_n for a lattice point n (single exponential of the combined generator).
WeylOperator lattice_weyl(const std::vector<long long>& n, const ThetaMatrix& theta);

// Right action of the Fourier algebra: v . f = sum_n f_n W_n v.
PolyGaussianVector module_action(const NcElement& f, const PolyGaussianVector& v,
                                 const ThetaMatrix& theta);

// max over (a, b) of sup_x |([nabla^theta_a, nabla^theta_b] - 2 pi i w_{ab}) v|
// on the standard probe grid, with w = theta^{-1}.
double curvature_residual(const ThetaMatrix& theta, const PolyGaussianVector& v);

// Gaussian exp(pi i x^t Omega x); rejects non-positive Omega.
PolyGaussianVector theta_vector(const SiegelPoint& omega);

// max over a of the L2 norm of (d_a - 2 pi i Omega_{ab} x^b) v.
double holomorphic_residual(const SiegelPoint& omega, const PolyGaussianVector& v);

// L2 pairing <v, w> = integral of conj(v) w, in closed form.
Complex inner_product(const PolyGaussianVector& v, const PolyGaussianVector& w);
double l2_norm(const PolyGaussianVector& v);

// Fourier transform with kernel exp(+2 pi i x^t y), exact on this family.
PolyGaussianVector fourier_transform(const PolyGaussianVector& v);

// Deterministic probe grid used by the pointwise checks.
std::vector<RVector> probe_points(int g, int count = 10);
double sup_probe_norm(const PolyGaussianVector& v);
double pointwise_distance(const PolyGaussianVector& a, const PolyGaussianVector& b);

// integral of p(x) exp(pi i x^t S x + 2 pi i c^t x) over R^g.
Complex integral_poly_gaussian(const Poly& p, const CMatrix& s, const CVector& c);

}  // namespace nctheta

#endif
