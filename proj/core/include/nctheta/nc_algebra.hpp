#ifndef NCTHETA_NC_ALGEBRA_HPP
#define NCTHETA_NC_ALGEBRA_HPP

#include <map>
#include <vector>

#include "nctheta/linalg.hpp"

namespace nctheta {

// Deformation parameter of the smooth torus algebra: real antisymmetric d x d.
struct ThetaMatrix {
  int d = 0;
  RMatrix theta;

  static ThetaMatrix checked(RMatrix theta);
  static ThetaMatrix zero(int d);
  // theta with theta(a, a+g) = 1, theta(a+g, a) = -1 for a < g (d = 2g).
  static ThetaMatrix standard_symplectic(int g);
};

// Finitely supported Fourier series sum_n f_n U_n with the product law
// U_n U_m = exp(pi i n^t theta m) U_{n+m}. Coefficients below 1e-15 are pruned.
class NcElement {
 public:
  using Support = std::map<std::vector<long long>, Complex>;

  explicit NcElement(int d) : d_(d) {}

  static NcElement unit(int d);
  static NcElement monomial(std::vector<long long> n, Complex c);

  int d() const { return d_; }
  const Support& coeffs() const { return coeffs_; }
  Complex coeff(const std::vector<long long>& n) const;
  std::size_t support_size() const { return coeffs_.size(); }

  void add_term(const std::vector<long long>& n, Complex c);
  void prune();

  NcElement operator+(const NcElement& other) const;
  NcElement operator-(const NcElement& other) const;
  NcElement scaled(Complex s) const;

 private:
  int d_;
  Support coeffs_;
};

NcElement multiply(const NcElement& f, const NcElement& g, const ThetaMatrix& theta);
NcElement involution(const NcElement& f);
// Derivation along direction alpha (1-based): (delta_a f)_n = 2 pi i n_a f_n.
NcElement derivation(int alpha, const NcElement& f);
// Coefficientwise residual of U_a U_b - exp(2 pi i theta^{ab}) U_b U_a.
double check_commutation(int alpha, int beta, const ThetaMatrix& theta);

double coefficient_distance(const NcElement& f, const NcElement& g);

}  // namespace nctheta

#endif
