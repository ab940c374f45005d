#include "nctheta/schwartz.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace nctheta {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
const Complex k2PiI(0.0, 2.0 * std::numbers::pi);

// Curvature of the literal frame: [nabla_a, nabla_b] = 2 pi i w0_{ab}.
RMatrix representation_curvature(int g) {
  return -standard_symplectic_real(g);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Central moments sum_m of exp(pi i u^t S u) with memoization.
class GaussianMoments {
 public:
  explicit GaussianMoments(const CMatrix& s) : g_(static_cast<int>(s.rows())) {
    Complex det = (Complex(0.0, -1.0) * s).determinant();
    if (std::abs(det) < 1e-250)
      throw Error(ErrorKind::Singularity, "degenerate quadratic form in Gaussian integral");
    norm_ = 1.0 / principal_sqrt(det);
    sinv_ = inverse(s);
  }

  Complex operator()(const Poly::MultiIndex& m) {
    int deg = 0;
    for (int e : m) deg += e;
    if (deg % 2 == 1) return Complex(0.0, 0.0);
    if (deg == 0) return norm_;
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;

    // Pick the first active variable: m = base + e_k, then
    // (M_{base + e_j})_j = (i / 2 pi) S^{-1} (base_j M_{base - e_j})_j.
    int k = 0;
    while (m[k] == 0) ++k;
    Poly::MultiIndex base = m;
    base[k] -= 1;
    CVector rhs = CVector::Zero(g_);
    for (int j = 0; j < g_; ++j) {
      if (base[j] == 0) continue;
      Poly::MultiIndex lower = base;
      lower[j] -= 1;
      rhs(j) = static_cast<double>(base[j]) * (*this)(lower);
    }
    Complex value = (kI / (2.0 * kPi)) * (sinv_.row(k) * rhs)(0, 0);
    cache_.emplace(m, value);
    return value;
  }

 private:
  int g_;
  Complex norm_;
  CMatrix sinv_;
  std::map<Poly::MultiIndex, Complex> cache_;
};

}  // namespace

PolyGaussianTerm PolyGaussianTerm::checked(Poly poly, CMatrix quadratic, CVector linear) {
  const int g = static_cast<int>(quadratic.rows());
  if (quadratic.cols() != g || linear.size() != g || poly.nvars() != g)
    throw Error(ErrorKind::Dimension, "term components disagree on dimension");
  if (!is_symmetric(quadratic, 1e-12))
    throw Error(ErrorKind::Precondition, "quadratic exponent must be symmetric");
  if (!is_positive_definite_sym(quadratic.imag()))
    throw Error(ErrorKind::Positivity, "Im Q must be positive definite");
  if (poly.total_degree() > Poly::kDegreeBudget)
    throw Error(ErrorKind::Budget, "polynomial degree budget exceeded");
  PolyGaussianTerm t;
  t.g = g;
  t.poly = std::move(poly);
  t.quadratic = std::move(quadratic);
  t.linear = std::move(linear);
  return t;
}

Complex PolyGaussianTerm::evaluate(const CVector& x) const {
  Complex quad = bdot(x, quadratic * x);
  Complex lin = bdot(linear, x);
  return poly.evaluate(x) * std::exp(Complex(0.0, kPi) * quad + k2PiI * lin);
}

PolyGaussianVector PolyGaussianVector::single(PolyGaussianTerm term) {
  PolyGaussianVector v(term.g);
  v.append(std::move(term));
  return v;
}

void PolyGaussianVector::append(PolyGaussianTerm term) {
  if (term.g != g_) throw Error(ErrorKind::Dimension, "term dimension mismatch");
  if (!term.poly.is_zero()) terms_.push_back(std::move(term));
}

Complex PolyGaussianVector::evaluate(const CVector& x) const {
  Complex v(0.0, 0.0);
  for (const auto& t : terms_) v += t.evaluate(x);
  return v;
}

Complex PolyGaussianVector::evaluate_real(const RVector& x) const {
  return evaluate(x.cast<Complex>());
}

PolyGaussianVector PolyGaussianVector::operator+(const PolyGaussianVector& other) const {
  if (g_ != other.g_) throw Error(ErrorKind::Dimension, "dimension mismatch");
  PolyGaussianVector out = *this;
  for (const auto& t : other.terms_) out.append(t);
  return out.canonicalized();
}

PolyGaussianVector PolyGaussianVector::operator-(const PolyGaussianVector& other) const {
  return *this + other.scaled(Complex(-1.0, 0.0));
}

PolyGaussianVector PolyGaussianVector::scaled(Complex s) const {
  PolyGaussianVector out(g_);
  if (s == Complex(0.0, 0.0)) return out;
  for (const auto& t : terms_) {
    PolyGaussianTerm ts = t;
    ts.poly = ts.poly.scaled(s);
    out.append(std::move(ts));
  }
  return out;
}

PolyGaussianVector PolyGaussianVector::canonicalized(double tol) const {
  PolyGaussianVector out(g_);
  for (const auto& t : terms_) {
    bool merged = false;
    for (auto& u : out.terms_) {
      if (max_abs(CMatrix(u.quadratic - t.quadratic)) <= tol &&
          (u.linear - t.linear).cwiseAbs().maxCoeff() <= tol) {
        u.poly = u.poly + t.poly;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms_.push_back(t);
  }
  for (auto& u : out.terms_) u.poly.prune(1e-15);
  std::erase_if(out.terms_, [](const PolyGaussianTerm& t) { return t.poly.is_zero(); });
  return out;
}

WeylOperator WeylOperator::identity(int g) {
  WeylOperator w;
  w.g = g;
  w.shift = CVector::Zero(g);
  w.modulation = CVector::Zero(g);
  return w;
}

WeylOperator WeylOperator::from_exponent(const WeylExponent& k) {
  const int g = static_cast<int>(k.u.size());
  if (k.v.size() != g) throw Error(ErrorKind::Dimension, "exponent components disagree");
  WeylOperator w;
  w.g = g;
  w.phase = std::exp(Complex(0.0, kPi) * bdot(k.u, k.v));
  w.modulation = k.u;
  w.shift = -k.v;
  return w;
}

WeylOperator WeylOperator::compose(const WeylOperator& rhs) const {
  if (g != rhs.g) throw Error(ErrorKind::Dimension, "dimension mismatch");
  WeylOperator out;
  out.g = g;
  out.phase = phase * rhs.phase * std::exp(-k2PiI * bdot(rhs.modulation, shift));
  out.shift = shift + rhs.shift;
  out.modulation = modulation + rhs.modulation;
  return out;
}

WeylOperator WeylOperator::inverse() const {
  WeylOperator out;
  out.g = g;
  out.shift = -shift;
  out.modulation = -modulation;
  out.phase = std::exp(-k2PiI * bdot(modulation, shift)) / phase;
  return out;
}

WeylOperator WeylOperator::power(long long n) const {
  WeylOperator base = n >= 0 ? *this : inverse();
  long long reps = n >= 0 ? n : -n;
  WeylOperator out = identity(g);
  for (long long i = 0; i < reps; ++i) out = base.compose(out);
  return out;
}

Complex exponent_commutator(const WeylExponent& k1, const WeylExponent& k2) {
  return k2PiI * (bdot(k2.u, k1.v) - bdot(k1.u, k2.v));
}

PolyGaussianVector apply_nabla(int alpha, const PolyGaussianVector& v) {
  const int g = v.g();
  if (alpha < 1 || alpha > 2 * g)
    throw Error(ErrorKind::Precondition, "nabla index out of range");
  PolyGaussianVector out(g);
  for (const auto& t : v.terms()) {
    PolyGaussianTerm nt = t;
    if (alpha <= g) {
      nt.poly = t.poly * Poly::variable(g, alpha - 1).scaled(k2PiI);
    } else {
      const int j = alpha - g - 1;
      // d/dx_j (p e^{pi i xQx + 2 pi i bx}) = (dp + p (2 pi i (Qx)_j + 2 pi i b_j)) e^{...}
      Poly chain(g);
      for (int k = 0; k < g; ++k)
        if (t.quadratic(j, k) != Complex(0.0, 0.0))
          chain = chain + Poly::variable(g, k).scaled(k2PiI * t.quadratic(j, k));
      chain = chain + Poly::constant(g, k2PiI * t.linear(j));
      nt.poly = t.poly.derivative(j) + t.poly * chain;
    }
    out.append(std::move(nt));
  }
  return out.canonicalized();
}

PolyGaussianVector apply_nabla_combination(const CVector& coeffs, const PolyGaussianVector& v) {
  const int g = v.g();
  if (coeffs.size() != 2 * g) throw Error(ErrorKind::Dimension, "coefficient row has wrong size");
  PolyGaussianVector out(g);
  for (int a = 1; a <= 2 * g; ++a) {
    if (coeffs(a - 1) == Complex(0.0, 0.0)) continue;
    out = out + apply_nabla(a, v).scaled(coeffs(a - 1));
  }
  return out;
}

PolyGaussianVector apply_weyl(const WeylOperator& w, const PolyGaussianVector& v) {
  if (w.g != v.g()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  const int g = v.g();
  PolyGaussianVector out(g);
  for (const auto& t : v.terms()) {
    // c e^{2 pi i w x} p(x-a) e^{pi i (x-a)Q(x-a) + 2 pi i b(x-a)}:
    // poly recenters, Q is unchanged, b <- b + w - Q a, and the scalar
    // exp(pi i a^t Q a - 2 pi i b^t a) joins the coefficient.
    PolyGaussianTerm nt = t;
    nt.poly = t.poly.shifted(-w.shift);
    nt.linear = t.linear + w.modulation - t.quadratic * w.shift;
    Complex scalar = w.phase * std::exp(Complex(0.0, kPi) * bdot(w.shift, t.quadratic * w.shift) -
                                        k2PiI * bdot(t.linear, w.shift));
    nt.poly = nt.poly.scaled(scalar);
    out.append(std::move(nt));
  }
  return out.canonicalized();
}

RMatrix representation_matrix(const ThetaMatrix& theta) {
  const int d = theta.d;
  if (d % 2 != 0) throw Error(ErrorKind::Dimension, "theta must have even size");
  const int g = d / 2;
  if (std::abs(theta.theta.determinant()) <= 1e-10)
    throw Error(ErrorKind::Singularity, "theta must be invertible");
  RMatrix omega = inverse(theta.theta);
  RMatrix omega0 = representation_curvature(g);
  if (max_abs(RMatrix(omega - omega0)) < 1e-12)
    return RMatrix::Identity(d, d);
  RMatrix t = darboux_standardize(AntisymmetricRealMatrix::checked(omega));
  // K w0 K^t = J for the block swap K = [[0,I],[I,0]].
  RMatrix k = RMatrix::Zero(d, d);
  k.topRightCorner(g, g) = RMatrix::Identity(g, g);
  k.bottomLeftCorner(g, g) = RMatrix::Identity(g, g);
  RMatrix m = inverse(RMatrix(t.transpose())) * k;
  if (max_abs(RMatrix(m * omega0 * m.transpose() - omega)) > 1e-9)
    throw Error(ErrorKind::Singularity, "frame adaptation failed");
  return m;
}

WeylExponent generator_exponent(int alpha, const ThetaMatrix& theta) {
  const int d = theta.d;
  if (alpha < 1 || alpha > d)
    throw Error(ErrorKind::Precondition, "generator index out of range");
  if (d % 2 != 0) throw Error(ErrorKind::Dimension, "theta must have even size");
  const int g = d / 2;
  RMatrix m = representation_matrix(theta);
  RVector coeff = -(theta.theta.row(alpha - 1) * m).transpose();
  WeylExponent k;
  k.u = coeff.head(g).cast<Complex>();
  k.v = coeff.tail(g).cast<Complex>();
  return k;
}

WeylOperator generator_U(int alpha, const ThetaMatrix& theta) {
  return WeylOperator::from_exponent(generator_exponent(alpha, theta));
}

WeylOperator lattice_weyl(const std::vector<long long>& n, const ThetaMatrix& theta) {
  const int d = theta.d;
  if (static_cast<int>(n.size()) != d)
    throw Error(ErrorKind::Dimension, "lattice point has wrong dimension");
  const int g = d / 2;
  RMatrix m = representation_matrix(theta);
  RVector nv(d);
  for (int i = 0; i < d; ++i) nv(i) = static_cast<double>(n[i]);
  RVector coeff = -(nv.transpose() * theta.theta * m).transpose();
  WeylExponent k;
  k.u = coeff.head(g).cast<Complex>();
  k.v = coeff.tail(g).cast<Complex>();
  return WeylOperator::from_exponent(k);
}

PolyGaussianVector module_action(const NcElement& f, const PolyGaussianVector& v,
                                 const ThetaMatrix& theta) {
  if (f.d() != theta.d || theta.d != 2 * v.g())
    throw Error(ErrorKind::Dimension, "algebra dimension must be twice the module dimension");
  PolyGaussianVector out(v.g());
  for (const auto& [n, c] : f.coeffs())
    out = out + apply_weyl(lattice_weyl(n, theta), v).scaled(c);
  return out.canonicalized();
}

double curvature_residual(const ThetaMatrix& theta, const PolyGaussianVector& v) {
  const int d = theta.d;
  if (d != 2 * v.g()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  if (std::abs(theta.theta.determinant()) <= 1e-10)
    throw Error(ErrorKind::Singularity, "theta must be invertible");
  RMatrix omega = inverse(theta.theta);
  RMatrix m = representation_matrix(theta);
  std::vector<PolyGaussianVector> first;
  first.reserve(d);
  for (int a = 0; a < d; ++a)
    first.push_back(apply_nabla_combination(m.row(a).cast<Complex>(), v));
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      PolyGaussianVector comm =
          apply_nabla_combination(m.row(a).cast<Complex>(), first[b]) -
          apply_nabla_combination(m.row(b).cast<Complex>(), first[a]);
      PolyGaussianVector residual = comm - v.scaled(k2PiI * omega(a, b));
      worst = std::max(worst, sup_probe_norm(residual));
    }
  }
  return worst;
}

PolyGaussianVector theta_vector(const SiegelPoint& omega) {
  PolyGaussianTerm t = PolyGaussianTerm::checked(
      Poly::constant(omega.g, Complex(1.0, 0.0)), omega.omega, CVector::Zero(omega.g));
  return PolyGaussianVector::single(std::move(t));
}

double holomorphic_residual(const SiegelPoint& omega, const PolyGaussianVector& v) {
  const int g = v.g();
  if (omega.g != g) throw Error(ErrorKind::Dimension, "dimension mismatch");
  double worst = 0.0;
  for (int a = 0; a < g; ++a) {
    // (d_a - 2 pi i Omega_{ab} x^b) v; note x^b = nabla_b / (2 pi i).
    PolyGaussianVector w = apply_nabla(g + 1 + a, v);
    for (int b = 0; b < g; ++b)
      w = w - apply_nabla(b + 1, v).scaled(omega.omega(a, b));
    worst = std::max(worst, l2_norm(w));
  }
  return worst;
}

Complex integral_poly_gaussian(const Poly& p, const CMatrix& s, const CVector& c) {
  GaussianMoments moments(s);
  CVector mu = -(inverse(s) * c);
  Complex base = std::exp(Complex(0.0, -kPi) * bdot(c, inverse(s) * c));
  Poly shifted = p.shifted(mu);
  Complex total(0.0, 0.0);
  for (const auto& [m, coeff] : shifted.terms()) total += coeff * moments(m);
  return base * total;
}

Complex inner_product(const PolyGaussianVector& v, const PolyGaussianVector& w) {
  if (v.g() != w.g()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  Complex total(0.0, 0.0);
  for (const auto& tv : v.terms()) {
    for (const auto& tw : w.terms()) {
      CMatrix s = tw.quadratic - tv.quadratic.conjugate();
      CVector c = tw.linear - tv.linear.conjugate();
      Poly p = tv.poly.conjugate_coeffs() * tw.poly;
      total += integral_poly_gaussian(p, s, c);
    }
  }
  return total;
}

double l2_norm(const PolyGaussianVector& v) {
  if (v.is_zero()) return 0.0;
  Complex n2 = inner_product(v, v);
  return std::sqrt(std::max(0.0, n2.real()));
}

PolyGaussianVector fourier_transform(const PolyGaussianVector& v) {
  const int g = v.g();
  PolyGaussianVector out(g);
  for (const auto& t : v.terms()) {
    // integral of p(y) exp(pi i y Q y + 2 pi i (b + x) y) dy. Completing the
    // square at mu(x) = -Q^{-1}(b + x) gives a term with Q' = -Q^{-1},
    // b' = -Q^{-1} b and determinant factor det(-i Q)^{-1/2}.
    Complex det = (Complex(0.0, -1.0) * t.quadratic).determinant();
    if (std::abs(det) < 1e-250)
      throw Error(ErrorKind::Singularity, "quadratic exponent is numerically singular");
    CMatrix qinv = inverse(t.quadratic);
    GaussianMoments moments(t.quadratic);

    CMatrix lin_mat = -qinv;               // x-part of mu(x)
    CVector lin_off = -(qinv * t.linear);  // constant part of mu(x)

    // Expand p(u + mu(x)) as a polynomial in u with Poly-in-x coefficients,
    // then integrate u against the central moments.
    std::vector<Poly> var_polys;  // mu_j(x) as degree-1 polynomials
    for (int j = 0; j < g; ++j) {
      Poly lj = Poly::constant(g, lin_off(j));
      for (int k = 0; k < g; ++k)
        if (lin_mat(j, k) != Complex(0.0, 0.0))
          lj = lj + Poly::variable(g, k).scaled(lin_mat(j, k));
      var_polys.push_back(std::move(lj));
    }

    Poly result(g);
    for (const auto& [m, coeff] : t.poly.terms()) {
      std::map<Poly::MultiIndex, Poly> expansion;
      expansion.emplace(Poly::MultiIndex(g, 0), Poly::constant(g, coeff));
      for (int j = 0; j < g; ++j) {
        if (m[j] == 0) continue;
        std::map<Poly::MultiIndex, Poly> next;
        for (const auto& [beta, polyx] : expansion) {
          for (int tpow = 0; tpow <= m[j]; ++tpow) {
            Poly::MultiIndex nb = beta;
            nb[j] += tpow;
            Poly contrib =
                polyx.scaled(static_cast<double>(binomial(m[j], tpow))) *
                var_polys[j].pow(m[j] - tpow);
            auto [it, inserted] = next.try_emplace(nb, contrib);
            if (!inserted) it->second = it->second + contrib;
          }
        }
        expansion = std::move(next);
      }
      for (const auto& [beta, polyx] : expansion) result = result + polyx.scaled(moments(beta));
    }

    Complex scalar = std::exp(Complex(0.0, -kPi) * bdot(t.linear, qinv * t.linear));
    PolyGaussianTerm nt = PolyGaussianTerm::checked(result.scaled(scalar), -qinv, -(qinv * t.linear));
    out.append(std::move(nt));
  }
  return out.canonicalized();
}

std::vector<RVector> probe_points(int g, int count) {
  static const double table[10] = {0.0,  0.35, -0.45, 0.8,  -0.9,
                                   1.25, -1.3, 0.15,  0.55, -0.1};
  std::vector<RVector> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    RVector x(g);
    for (int j = 0; j < g; ++j) x(j) = table[(i + 3 * j + i * j) % 10];
    pts.push_back(std::move(x));
  }
  return pts;
}

double sup_probe_norm(const PolyGaussianVector& v) {
  double m = 0.0;
  for (const auto& x : probe_points(v.g())) m = std::max(m, std::abs(v.evaluate_real(x)));
  return m;
}

double pointwise_distance(const PolyGaussianVector& a, const PolyGaussianVector& b) {
  if (a.g() != b.g()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  double m = 0.0;
  for (const auto& x : probe_points(a.g()))
    m = std::max(m, std::abs(a.evaluate_real(x) - b.evaluate_real(x)));
  return m;
}

}  // namespace nctheta
