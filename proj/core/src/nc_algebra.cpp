#include "nctheta/nc_algebra.hpp"

#include <cmath>
#include <numbers>

namespace nctheta {

namespace {
constexpr double kPruneTol = 1e-15;
constexpr double kPi = std::numbers::pi;
}  // namespace

ThetaMatrix ThetaMatrix::checked(RMatrix theta) {
  if (theta.rows() != theta.cols() || theta.rows() == 0)
    throw Error(ErrorKind::Dimension, "theta must be square");
  if (!is_antisymmetric(theta, 1e-12))
    throw Error(ErrorKind::Precondition, "theta must be antisymmetric");
  ThetaMatrix t;
  t.d = static_cast<int>(theta.rows());
  t.theta = std::move(theta);
  return t;
}

ThetaMatrix ThetaMatrix::zero(int d) { return checked(RMatrix::Zero(d, d)); }

ThetaMatrix ThetaMatrix::standard_symplectic(int g) {
  return checked(standard_symplectic_real(g));
}

NcElement NcElement::unit(int d) {
  NcElement e(d);
  e.add_term(std::vector<long long>(d, 0), Complex(1.0, 0.0));
  return e;
}

NcElement NcElement::monomial(std::vector<long long> n, Complex c) {
  NcElement e(static_cast<int>(n.size()));
  e.add_term(n, c);
  return e;
}

Complex NcElement::coeff(const std::vector<long long>& n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

void NcElement::add_term(const std::vector<long long>& n, Complex c) {
  if (static_cast<int>(n.size()) != d_)
    throw Error(ErrorKind::Dimension, "lattice point has wrong dimension");
  auto [it, inserted] = coeffs_.try_emplace(n, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTol) coeffs_.erase(it);
}

void NcElement::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) < kPruneTol)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

NcElement NcElement::operator+(const NcElement& other) const {
  if (d_ != other.d_) throw Error(ErrorKind::Dimension, "dimension mismatch");
  NcElement out = *this;
  for (const auto& [n, c] : other.coeffs_) out.add_term(n, c);
  return out;
}

NcElement NcElement::operator-(const NcElement& other) const {
  return *this + other.scaled(Complex(-1.0, 0.0));
}

NcElement NcElement::scaled(Complex s) const {
  NcElement out(d_);
  for (const auto& [n, c] : coeffs_) out.add_term(n, s * c);
  return out;
}

NcElement multiply(const NcElement& f, const NcElement& g, const ThetaMatrix& theta) {
  if (f.d() != g.d() || f.d() != theta.d)
    throw Error(ErrorKind::Dimension, "dimension mismatch in product");
  const int d = f.d();
  NcElement out(d);
  std::vector<long long> sum(d);
  for (const auto& [n, cn] : f.coeffs()) {
    for (const auto& [m, cm] : g.coeffs()) {
      // Exchange phase exp(pi i n^t theta m), evaluated in one shot.
      double q = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          q += static_cast<double>(n[a]) * theta.theta(a, b) * static_cast<double>(m[b]);
      Complex phase = std::polar(1.0, kPi * q);
      for (int a = 0; a < d; ++a) sum[a] = n[a] + m[a];
      out.add_term(sum, cn * cm * phase);
    }
  }
  out.prune();
  return out;
}

NcElement involution(const NcElement& f) {
  NcElement out(f.d());
  std::vector<long long> neg(f.d());
  for (const auto& [n, c] : f.coeffs()) {
    for (int a = 0; a < f.d(); ++a) neg[a] = -n[a];
    out.add_term(neg, std::conj(c));
  }
  return out;
}

NcElement derivation(int alpha, const NcElement& f) {
  if (alpha < 1 || alpha > f.d())
    throw Error(ErrorKind::Precondition, "derivation index out of range");
  NcElement out(f.d());
  for (const auto& [n, c] : f.coeffs())
    out.add_term(n, Complex(0.0, 2.0 * kPi * static_cast<double>(n[alpha - 1])) * c);
  out.prune();
  return out;
}

double check_commutation(int alpha, int beta, const ThetaMatrix& theta) {
  if (alpha < 1 || alpha > theta.d || beta < 1 || beta > theta.d || alpha == beta)
    throw Error(ErrorKind::Precondition, "indices must be distinct and in range");
  std::vector<long long> ea(theta.d, 0), eb(theta.d, 0);
  ea[alpha - 1] = 1;
  eb[beta - 1] = 1;
  NcElement ua = NcElement::monomial(ea, Complex(1.0, 0.0));
  NcElement ub = NcElement::monomial(eb, Complex(1.0, 0.0));
  NcElement lhs = multiply(ua, ub, theta);
  Complex phase = std::polar(1.0, 2.0 * kPi * theta.theta(alpha - 1, beta - 1));
  NcElement rhs = multiply(ub, ua, theta).scaled(phase);
  return coefficient_distance(lhs, rhs);
}

double coefficient_distance(const NcElement& f, const NcElement& g) {
  if (f.d() != g.d()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  double m = 0.0;
  for (const auto& [n, c] : f.coeffs()) m = std::max(m, std::abs(c - g.coeff(n)));
  for (const auto& [n, c] : g.coeffs()) m = std::max(m, std::abs(c - f.coeff(n)));
  return m;
}

}  // namespace nctheta
