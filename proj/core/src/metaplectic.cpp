#include "nctheta/metaplectic.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace nctheta {

namespace {
constexpr double kPi = std::numbers::pi;
}

MetaplecticGenerator MetaplecticGenerator::linear(IMatrix a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::Dimension, "linear generator needs a square matrix");
  long long det = integer_determinant(a);
  if (det != 1 && det != -1)
    throw Error(ErrorKind::Precondition, "linear generator must be unimodular");
  MetaplecticGenerator gen;
  gen.kind = Kind::Linear;
  gen.g = static_cast<int>(a.rows());
  gen.parameter = std::move(a);
  return gen;
}

MetaplecticGenerator MetaplecticGenerator::shear(IMatrix b) {
  if (b.rows() != b.cols() || b.rows() == 0)
    throw Error(ErrorKind::Dimension, "shear generator needs a square matrix");
  if (!(b - IMatrix(b.transpose())).isZero(0))
    throw Error(ErrorKind::Precondition, "shear block must be symmetric");
  MetaplecticGenerator gen;
  gen.kind = Kind::Shear;
  gen.g = static_cast<int>(b.rows());
  gen.parameter = std::move(b);
  return gen;
}

MetaplecticGenerator MetaplecticGenerator::fourier(int g) {
  if (g < 1) throw Error(ErrorKind::Dimension, "dimension must be positive");
  MetaplecticGenerator gen;
  gen.kind = Kind::Fourier;
  gen.g = g;
  gen.parameter = IMatrix::Zero(g, g);
  return gen;
}

SymplecticIntMatrix MetaplecticGenerator::symplectic() const {
  IMatrix m = IMatrix::Zero(2 * g, 2 * g);
  switch (kind) {
    case Kind::Linear: {
      IMatrix inv_t = unimodular_inverse(parameter).transpose();
      m.topLeftCorner(g, g) = parameter;
      m.bottomRightCorner(g, g) = inv_t;
      break;
    }
    case Kind::Shear:
      m.topLeftCorner(g, g) = IMatrix::Identity(g, g);
      m.bottomRightCorner(g, g) = IMatrix::Identity(g, g);
      m.topRightCorner(g, g) = parameter;
      break;
    case Kind::Fourier:
      m.topRightCorner(g, g) = -IMatrix::Identity(g, g);
      m.bottomLeftCorner(g, g) = IMatrix::Identity(g, g);
      break;
  }
  return SymplecticIntMatrix::checked(std::move(m));
}

IMatrix MetaplecticGenerator::conjugation_matrix() const {
  IMatrix m = IMatrix::Zero(2 * g, 2 * g);
  switch (kind) {
    case Kind::Linear:
      // f(A^t x): multiplications pick up A^t, derivatives A^{-1}.
      m.topLeftCorner(g, g) = IMatrix(parameter.transpose());
      m.bottomRightCorner(g, g) = unimodular_inverse(parameter);
      break;
    case Kind::Shear:
      m.topLeftCorner(g, g) = IMatrix::Identity(g, g);
      m.bottomRightCorner(g, g) = IMatrix::Identity(g, g);
      m.bottomLeftCorner(g, g) = -parameter;
      break;
    case Kind::Fourier:
      m.topRightCorner(g, g) = IMatrix::Identity(g, g);
      m.bottomLeftCorner(g, g) = -IMatrix::Identity(g, g);
      break;
  }
  return m;
}

PolyGaussianVector apply_v_gamma(const MetaplecticGenerator& gen,
                                 const PolyGaussianVector& v) {
  if (gen.g != v.g()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  const int g = gen.g;
  switch (gen.kind) {
    case MetaplecticGenerator::Kind::Linear: {
      CMatrix a = gen.parameter.cast<double>().cast<Complex>();
      CMatrix at = a.transpose();
      PolyGaussianVector out(g);
      for (const auto& t : v.terms()) {
        PolyGaussianTerm nt = t;
        nt.poly = t.poly.affine_substitute(at, CVector::Zero(g));
        nt.quadratic = a * t.quadratic * at;
        nt.linear = a * t.linear;
        out.append(std::move(nt));
      }
      return out.canonicalized();
    }
    case MetaplecticGenerator::Kind::Shear: {
      CMatrix b = gen.parameter.cast<double>().cast<Complex>();
      PolyGaussianVector out(g);
      for (const auto& t : v.terms()) {
        PolyGaussianTerm nt = t;
        nt.quadratic = t.quadratic + b;
        out.append(std::move(nt));
      }
      return out.canonicalized();
    }
    case MetaplecticGenerator::Kind::Fourier:
      return fourier_transform(v);
  }
  throw Error(ErrorKind::UnsupportedGenerator, "unknown generator kind");
}

PolyGaussianVector apply_v_word(const std::vector<MetaplecticGenerator>& word,
                                const PolyGaussianVector& v) {
  // Word order is operator order: the last letter acts first.
  PolyGaussianVector out = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = apply_v_gamma(*it, out);
  return out;
}

SymplecticIntMatrix word_symplectic(const std::vector<MetaplecticGenerator>& word, int g) {
  IMatrix acc = IMatrix::Identity(2 * g, 2 * g);
  for (const auto& gen : word) {
    if (gen.g != g) throw Error(ErrorKind::Dimension, "word mixes dimensions");
    acc = acc * gen.symplectic().entries;
  }
  return SymplecticIntMatrix::checked(std::move(acc));
}

double check_theta_covariance(const std::vector<MetaplecticGenerator>& word,
                              const SiegelPoint& omega) {
  PolyGaussianVector w = apply_v_word(word, theta_vector(omega));
  SiegelPoint target = mobius_action(word_symplectic(word, omega.g), omega);
  PolyGaussianVector t = theta_vector(target);
  Complex tt = inner_product(t, t);
  double wnorm = l2_norm(w);
  if (tt.real() <= 0.0 || wnorm <= 0.0)
    throw Error(ErrorKind::NearZeroDivisor, "degenerate covariance pair");
  // Residual of w against the ray through t, with the projection removed
  // symbolically so that collinear pairs cancel coefficientwise.
  Complex c = inner_product(t, w) / tt;
  return l2_norm(w - t.scaled(c)) / wnorm;
}

std::vector<Complex> c_alpha(const SymplecticIntMatrix& gamma, const ThetaMatrix& theta) {
  const int d = theta.d;
  if (d != 2 * gamma.g)
    throw Error(ErrorKind::Dimension, "gamma and theta dimensions differ");
  std::vector<Complex> out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    double q = 0.0;
    for (int l = 0; l < d; ++l)
      for (int m = l + 1; m < d; ++m)
        q += static_cast<double>(gamma.entries(a, l)) * theta.theta(l, m) *
             static_cast<double>(gamma.entries(a, m));
    out.push_back(std::polar(1.0, kPi * q));
  }
  return out;
}

double check_transformed_generators(const SymplecticIntMatrix& gamma,
                                    const ThetaMatrix& theta,
                                    const PolyGaussianVector& v,
                                    bool include_phase) {
  const int d = theta.d;
  if (d != 2 * gamma.g || d != 2 * v.g())
    throw Error(ErrorKind::Dimension, "dimension mismatch");
  if (std::abs(theta.theta.determinant()) <= 1e-10)
    throw Error(ErrorKind::Singularity, "theta must be invertible");
  std::vector<Complex> phases = c_alpha(gamma, theta);
  std::vector<WeylOperator> gens;
  gens.reserve(d);
  for (int l = 1; l <= d; ++l) gens.push_back(generator_U(l, theta));

  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    std::vector<long long> n(d);
    for (int l = 0; l < d; ++l) n[l] = gamma.entries(a, l);
    WeylOperator lhs = lattice_weyl(n, theta);
    WeylOperator rhs = WeylOperator::identity(v.g());
    for (int l = 0; l < d; ++l) rhs = rhs.compose(gens[l].power(n[l]));
    if (include_phase) rhs.phase *= phases[a];
    worst = std::max(worst, pointwise_distance(apply_weyl(lhs, v), apply_weyl(rhs, v)));
  }
  return worst;
}

double bch_phase_check(const std::vector<WeylExponent>& exponents) {
  if (exponents.empty()) throw Error(ErrorKind::Precondition, "need at least one exponent");
  const int g = static_cast<int>(exponents.front().u.size());
  WeylExponent total;
  total.u = CVector::Zero(g);
  total.v = CVector::Zero(g);
  Complex correction(0.0, 0.0);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i].u.size() != g || exponents[i].v.size() != g)
      throw Error(ErrorKind::Dimension, "exponents disagree on dimension");
    total.u += exponents[i].u;
    total.v += exponents[i].v;
    for (std::size_t j = i + 1; j < exponents.size(); ++j)
      correction += exponent_commutator(exponents[i], exponents[j]);
  }
  WeylOperator lhs = WeylOperator::from_exponent(total);
  WeylOperator rhs = WeylOperator::identity(g);
  for (const auto& k : exponents) rhs = rhs.compose(WeylOperator::from_exponent(k));
  rhs.phase *= std::exp(-0.5 * correction);

  SiegelPoint probe = SiegelPoint::checked(Complex(0.0, 1.0) * CMatrix::Identity(g, g));
  PolyGaussianVector gauss = theta_vector(probe);
  return pointwise_distance(apply_weyl(lhs, gauss), apply_weyl(rhs, gauss));
}

Gamma12ScanReport gamma12_criterion_scan(int g, int max_word_len) {
  if (max_word_len < 1 || max_word_len > 5)
    throw Error(ErrorKind::Precondition, "word length must lie in [1, 5]");
  ThetaMatrix theta = ThetaMatrix::standard_symplectic(g);

  std::vector<MetaplecticGenerator> alphabet;
  alphabet.push_back(MetaplecticGenerator::fourier(g));
  if (g == 1) {
    alphabet.push_back(MetaplecticGenerator::linear((IMatrix(1, 1) << -1).finished()));
    alphabet.push_back(MetaplecticGenerator::shear((IMatrix(1, 1) << 2).finished()));
    alphabet.push_back(MetaplecticGenerator::shear((IMatrix(1, 1) << 1).finished()));  // probe
  } else {
    IMatrix swap = IMatrix::Zero(g, g);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    for (int i = 2; i < g; ++i) swap(i, i) = 1;
    alphabet.push_back(MetaplecticGenerator::linear(swap));
    IMatrix upper = IMatrix::Identity(g, g);
    upper(0, 1) = 1;
    alphabet.push_back(MetaplecticGenerator::linear(upper));
    IMatrix even = IMatrix::Zero(g, g);
    even(0, 0) = 2;
    alphabet.push_back(MetaplecticGenerator::shear(even));
    IMatrix off = IMatrix::Zero(g, g);
    off(0, 1) = 1;
    off(1, 0) = 1;
    alphabet.push_back(MetaplecticGenerator::shear(off));
    IMatrix odd = IMatrix::Zero(g, g);
    odd(0, 0) = 1;
    alphabet.push_back(MetaplecticGenerator::shear(odd));  // probe
  }

  std::vector<IMatrix> sp_alphabet;
  for (const auto& gen : alphabet) sp_alphabet.push_back(gen.symplectic().entries);

  Gamma12ScanReport report;
  std::map<std::vector<long long>, bool> seen;
  auto key_of = [&](const IMatrix& m) {
    std::vector<long long> key(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        key[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
    return key;
  };

  auto examine = [&](const IMatrix& m) {
    ++report.words_checked;
    auto key = key_of(m);
    if (seen.count(key)) return;
    seen.emplace(std::move(key), true);
    ++report.distinct_matrices;
    SymplecticIntMatrix sm = SymplecticIntMatrix::checked(m);
    bool member = is_in_gamma12(sm);
    bool phases_trivial = true;
    for (Complex c : c_alpha(sm, theta))
      if (std::abs(c - Complex(1.0, 0.0)) > 1e-9) phases_trivial = false;
    if (member != phases_trivial) report.counterexamples.push_back(m);
  };

  std::vector<IMatrix> frontier{IMatrix::Identity(2 * g, 2 * g)};
  examine(frontier.front());
  for (int len = 1; len <= max_word_len; ++len) {
    std::vector<IMatrix> next;
    next.reserve(frontier.size() * sp_alphabet.size());
    for (const auto& m : frontier) {
      for (const auto& a : sp_alphabet) {
        IMatrix prod = m * a;
        examine(prod);
        next.push_back(std::move(prod));
      }
    }
    frontier = std::move(next);
  }
  return report;
}

}  // namespace nctheta
