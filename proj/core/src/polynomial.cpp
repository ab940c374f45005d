#include "nctheta/polynomial.hpp"

#include <cmath>

namespace nctheta {

Poly Poly::constant(int nvars, Complex c) {
  Poly p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  Poly p(nvars);
  MultiIndex m(nvars, 0);
  m[index] = 1;
  p.add_term(m, Complex(1.0, 0.0));
  return p;
}

int Poly::total_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (int e : m) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

double Poly::max_abs_coeff() const {
  double v = 0.0;
  for (const auto& [m, c] : terms_) v = std::max(v, std::abs(c));
  return v;
}

void Poly::add_term(const MultiIndex& m, Complex c) {
  if (static_cast<int>(m.size()) != nvars_)
    throw Error(ErrorKind::Dimension, "multi-index has wrong arity");
  int deg = 0;
  for (int e : m) {
    if (e < 0) throw Error(ErrorKind::Precondition, "negative exponent");
    deg += e;
  }
  if (deg > kDegreeBudget) throw Error(ErrorKind::Budget, "degree budget exceeded");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
}

void Poly::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::operator+(const Poly& other) const {
  if (nvars_ != other.nvars_) throw Error(ErrorKind::Dimension, "arity mismatch");
  Poly out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& other) const {
  return *this + other.scaled(Complex(-1.0, 0.0));
}

Poly Poly::operator*(const Poly& other) const {
  if (nvars_ != other.nvars_) throw Error(ErrorKind::Dimension, "arity mismatch");
  Poly out(nvars_);
  MultiIndex sum(nvars_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : other.terms_) {
      for (int i = 0; i < nvars_; ++i) sum[i] = m1[i] + m2[i];
      out.add_term(sum, c1 * c2);
    }
  }
  return out;
}

Poly Poly::scaled(Complex s) const {
  Poly out(nvars_);
  if (s == Complex(0.0, 0.0)) return out;
  for (const auto& [m, c] : terms_) out.add_term(m, s * c);
  return out;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw Error(ErrorKind::Precondition, "negative power");
  Poly out = Poly::constant(nvars_, Complex(1.0, 0.0));
  for (int i = 0; i < k; ++i) out = out * (*this);
  return out;
}

Poly Poly::derivative(int index) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    MultiIndex dm = m;
    dm[index] -= 1;
    out.add_term(dm, c * static_cast<double>(m[index]));
  }
  return out;
}

Poly Poly::conjugate_coeffs() const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) out.add_term(m, std::conj(c));
  return out;
}

Poly Poly::affine_substitute(const CMatrix& mat, const CVector& c) const {
  if (mat.rows() != nvars_ || mat.cols() != nvars_ || c.size() != nvars_)
    throw Error(ErrorKind::Dimension, "affine substitution shape mismatch");
  // Precompute the degree-one images of each variable.
  std::vector<Poly> image;
  image.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    Poly lin(nvars_);
    if (c(i) != Complex(0.0, 0.0)) lin.add_term(MultiIndex(nvars_, 0), c(i));
    for (int j = 0; j < nvars_; ++j) {
      if (mat(i, j) == Complex(0.0, 0.0)) continue;
      MultiIndex m(nvars_, 0);
      m[j] = 1;
      lin.add_term(m, mat(i, j));
    }
    image.push_back(std::move(lin));
  }
  Poly out(nvars_);
  for (const auto& [m, coeff] : terms_) {
    Poly mono = Poly::constant(nvars_, coeff);
    for (int i = 0; i < nvars_; ++i)
      if (m[i] > 0) mono = mono * image[i].pow(m[i]);
    out = out + mono;
  }
  return out;
}

Poly Poly::shifted(const CVector& a) const {
  return affine_substitute(CMatrix::Identity(nvars_, nvars_), a);
}

Complex Poly::evaluate(const CVector& x) const {
  if (x.size() != nvars_) throw Error(ErrorKind::Dimension, "evaluation point arity");
  Complex v(0.0, 0.0);
  for (const auto& [m, c] : terms_) {
    Complex t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x(i);
    v += t;
  }
  return v;
}

double coefficient_distance(const Poly& a, const Poly& b) {
  Poly diff = a - b;
  return diff.max_abs_coeff();
}

}  // namespace nctheta
