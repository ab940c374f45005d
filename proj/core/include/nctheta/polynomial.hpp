#ifndef NCTHETA_POLYNOMIAL_HPP
#define NCTHETA_POLYNOMIAL_HPP

#include <map>
#include <vector>

#include "nctheta/linalg.hpp"

namespace nctheta {

// Sparse polynomial in `nvars` variables with complex coefficients.
// Total degree is capped at kDegreeBudget; operations that would exceed it
// throw a budget error.
class Poly {
 public:
  static constexpr int kDegreeBudget = 64;
  using MultiIndex = std::vector<int>;
  using Terms = std::map<MultiIndex, Complex>;

  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, Complex c);
  static Poly variable(int nvars, int index);  // 0-based

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  double max_abs_coeff() const;

  void add_term(const MultiIndex& m, Complex c);
  void prune(double tol = 1e-15);

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly scaled(Complex s) const;
  Poly pow(int k) const;

  Poly derivative(int index) const;          // d/dx_index, 0-based
  Poly conjugate_coeffs() const;

  // p(M x + c): affine substitution with a complex matrix and offset.
  Poly affine_substitute(const CMatrix& m, const CVector& c) const;
  Poly shifted(const CVector& a) const;      // p(x + a)

  Complex evaluate(const CVector& x) const;

 private:
  int nvars_;
  Terms terms_;
};

double coefficient_distance(const Poly& a, const Poly& b);

}  // namespace nctheta

#endif
