#include "nctheta/duality.hpp"

#include <bit>
#include <cmath>

namespace nctheta {

namespace {

// Sign of a^S a^T for disjoint masks: parity of pairs (s in S, t in T, s > t).
int shuffle_sign(std::uint32_t s, std::uint32_t t) {
  int inversions = 0;
  for (std::uint32_t bit = t; bit != 0; bit &= bit - 1) {
    int j = std::countr_zero(bit);
    std::uint32_t above = s & ~((2u << j) - 1);  // elements of S greater than j
    inversions += std::popcount(above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

GrassmannElement::GrassmannElement(int d) : d_(d) {
  if (d < 1 || d > 31) throw Error(ErrorKind::Dimension, "generator count must be in [1, 31]");
}

GrassmannElement GrassmannElement::one(int d) {
  GrassmannElement e(d);
  e.add_term(0, Rational(1));
  return e;
}

GrassmannElement GrassmannElement::generator(int d, int index) {
  if (index < 1 || index > d) throw Error(ErrorKind::Precondition, "generator index out of range");
  GrassmannElement e(d);
  e.add_term(1u << (index - 1), Rational(1));
  return e;
}

Rational GrassmannElement::coeff(std::uint32_t mask) const {
  auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void GrassmannElement::add_term(std::uint32_t mask, const Rational& c) {
  if (mask >= (1u << d_)) throw Error(ErrorKind::Dimension, "subset outside generator range");
  auto [it, inserted] = coeffs_.try_emplace(mask, c);
  if (!inserted) it->second += c;
  if (it->second == Rational(0)) coeffs_.erase(it);
}

GrassmannElement GrassmannElement::operator+(const GrassmannElement& other) const {
  if (d_ != other.d_) throw Error(ErrorKind::Dimension, "dimension mismatch");
  GrassmannElement out = *this;
  for (const auto& [m, c] : other.coeffs_) out.add_term(m, c);
  return out;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& other) const {
  return *this + other.scaled(Rational(-1));
}

GrassmannElement GrassmannElement::scaled(const Rational& s) const {
  GrassmannElement out(d_);
  if (s == Rational(0)) return out;
  for (const auto& [m, c] : coeffs_) out.add_term(m, s * c);
  return out;
}

GrassmannElement grassmann_multiply(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.d() != b.d()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  GrassmannElement out(a.d());
  for (const auto& [s, cs] : a.coeffs()) {
    for (const auto& [t, ct] : b.coeffs()) {
      if (s & t) continue;  // repeated generator
      int sign = shuffle_sign(s, t);
      out.add_term(s | t, cs * ct * Rational(sign));
    }
  }
  return out;
}

GrassmannElement grassmann_exp(const GrassmannElement& a) {
  if (a.scalar_part() != Rational(0))
    throw Error(ErrorKind::Precondition, "exponent must have zero scalar part");
  GrassmannElement sum = GrassmannElement::one(a.d());
  GrassmannElement power = GrassmannElement::one(a.d());
  long long factorial = 1;
  for (int k = 1; k <= a.d(); ++k) {
    power = grassmann_multiply(power, a);
    if (power.coeffs().empty()) break;
    factorial *= k;
    sum = sum + power.scaled(Rational(1, factorial));
  }
  return sum;
}

Rational berezin_top(const GrassmannElement& mu) {
  return mu.coeff((1u << mu.d()) - 1);
}

SODDMatrix SODDMatrix::checked(IMatrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 || entries.rows() == 0)
    throw Error(ErrorKind::Dimension, "split-form matrix must be square of even size");
  const int d = static_cast<int>(entries.rows() / 2);
  IMatrix q = IMatrix::Zero(2 * d, 2 * d);
  q.topRightCorner(d, d) = IMatrix::Identity(d, d);
  q.bottomLeftCorner(d, d) = IMatrix::Identity(d, d);
  if (!(IMatrix(entries.transpose() * q * entries) - q).isZero(0))
    throw Error(ErrorKind::Precondition, "matrix does not preserve the split form");
  SODDMatrix m;
  m.d = d;
  m.entries = std::move(entries);
  return m;
}

SODDMatrix SODDMatrix::identity(int d) {
  return checked(IMatrix::Identity(2 * d, 2 * d));
}

ThetaMatrix fractional_transform(const SODDMatrix& g, const ThetaMatrix& theta) {
  if (g.d != theta.d) throw Error(ErrorKind::Dimension, "dimension mismatch");
  RMatrix m = g.blockM().cast<double>();
  RMatrix n = g.blockN().cast<double>();
  RMatrix r = g.blockR().cast<double>();
  RMatrix s = g.blockS().cast<double>();
  RMatrix denom = r * theta.theta + s;
  Eigen::PartialPivLU<RMatrix> lu(denom);
  double det = std::abs(lu.determinant());
  if (det <= 1e-10)
    throw Error(ErrorKind::Singularity, "R theta + S is singular; transform undefined here");
  RMatrix num = m * theta.theta + n;
  RMatrix out = denom.transpose().partialPivLu().solve(num.transpose()).transpose();
  if (max_abs(RMatrix(out + out.transpose())) > 1e-10)
    throw Error(ErrorKind::Precondition, "transform produced a non-antisymmetric matrix");
  out = 0.5 * (out - out.transpose().eval());
  return ThetaMatrix::checked(std::move(out));
}

DualityGenerator DualityGenerator::gl(IMatrix a) {
  long long det = integer_determinant(a);
  if (det != 1 && det != -1)
    throw Error(ErrorKind::Precondition, "GL generator must be unimodular");
  DualityGenerator g;
  g.kind = Kind::GL;
  g.d = static_cast<int>(a.rows());
  g.parameter = std::move(a);
  return g;
}

DualityGenerator DualityGenerator::shear(IMatrix n) {
  if (!(n + IMatrix(n.transpose())).isZero(0))
    throw Error(ErrorKind::Precondition, "shear block must be antisymmetric");
  DualityGenerator g;
  g.kind = Kind::Shear;
  g.d = static_cast<int>(n.rows());
  g.parameter = std::move(n);
  return g;
}

DualityGenerator DualityGenerator::flip(int d, int index) {
  if (index < 1 || index > d) throw Error(ErrorKind::Precondition, "flip index out of range");
  DualityGenerator g;
  g.kind = Kind::Flip;
  g.d = d;
  g.flip_index = index;
  g.parameter = IMatrix::Zero(d, d);
  return g;
}

SODDMatrix DualityGenerator::matrix() const {
  IMatrix m = IMatrix::Zero(2 * d, 2 * d);
  switch (kind) {
    case Kind::GL:
      m.topLeftCorner(d, d) = parameter;
      m.bottomRightCorner(d, d) = IMatrix(unimodular_inverse(parameter).transpose());
      break;
    case Kind::Shear:
      m.topLeftCorner(d, d) = IMatrix::Identity(d, d);
      m.bottomRightCorner(d, d) = IMatrix::Identity(d, d);
      m.topRightCorner(d, d) = parameter;
      break;
    case Kind::Flip: {
      m.topLeftCorner(d, d) = IMatrix::Identity(d, d);
      m.bottomRightCorner(d, d) = IMatrix::Identity(d, d);
      int i = flip_index - 1;
      m(i, i) = 0;
      m(d + i, d + i) = 0;
      m(i, d + i) = 1;
      m(d + i, i) = 1;
      break;
    }
  }
  return SODDMatrix::checked(std::move(m));
}

namespace {

// Creation: a^i ^ a^S with the sign from moving a^i past earlier generators.
void creation(int index, std::uint32_t mask, const Rational& c, GrassmannElement& out) {
  std::uint32_t bit = 1u << index;
  if (mask & bit) return;  // nilpotent
  int below = std::popcount(mask & (bit - 1));
  out.add_term(mask | bit, below % 2 == 0 ? c : -c);
}

// Annihilation: derivative from the left with the matching sign.
void annihilation(int index, std::uint32_t mask, const Rational& c, GrassmannElement& out) {
  std::uint32_t bit = 1u << index;
  if (!(mask & bit)) return;
  int below = std::popcount(mask & (bit - 1));
  out.add_term(mask & ~bit, below % 2 == 0 ? c : -c);
}

long long subset_minor_det(const IMatrix& a, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  IMatrix sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
  return integer_determinant(sub);
}

std::vector<int> mask_indices(std::uint32_t mask) {
  std::vector<int> idx;
  for (std::uint32_t b = mask; b != 0; b &= b - 1) idx.push_back(std::countr_zero(b));
  return idx;
}

}  // namespace

GrassmannElement spinor_action(const DualityGenerator& g, const GrassmannElement& mu) {
  if (g.d != mu.d()) throw Error(ErrorKind::Dimension, "dimension mismatch");
  const int d = g.d;
  switch (g.kind) {
    case DualityGenerator::Kind::GL: {
      // a^S -> sum_T det(A[T | S]) a^T over subsets T of the same size.
      GrassmannElement out(d);
      for (const auto& [mask, c] : mu.coeffs()) {
        std::vector<int> cols = mask_indices(mask);
        const int k = static_cast<int>(cols.size());
        if (k == 0) {
          out.add_term(0, c);
          continue;
        }
        // Enumerate size-k subsets of {0..d-1}.
        std::vector<int> rows(k);
        for (int i = 0; i < k; ++i) rows[i] = i;
        while (true) {
          long long det = subset_minor_det(g.parameter, rows, cols);
          if (det != 0) {
            std::uint32_t target = 0;
            for (int r : rows) target |= 1u << r;
            out.add_term(target, c * Rational(det));
          }
          int i = k - 1;
          while (i >= 0 && rows[i] == d - k + i) --i;
          if (i < 0) break;
          ++rows[i];
          for (int j = i + 1; j < k; ++j) rows[j] = rows[j - 1] + 1;
        }
      }
      return out;
    }
    case DualityGenerator::Kind::Shear: {
      GrassmannElement quad(d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          if (g.parameter(i, j) != 0)
            quad.add_term((1u << i) | (1u << j), Rational(g.parameter(i, j)));
      return grassmann_multiply(grassmann_exp(quad), mu);
    }
    case DualityGenerator::Kind::Flip: {
      GrassmannElement out(d);
      const int idx = g.flip_index - 1;
      for (const auto& [mask, c] : mu.coeffs()) {
        creation(idx, mask, c, out);
        annihilation(idx, mask, c, out);
      }
      return out;
    }
  }
  throw Error(ErrorKind::UnsupportedGenerator, "unknown generator kind");
}

GrassmannElement spinor_action_word(const std::vector<DualityGenerator>& word,
                                    const GrassmannElement& mu) {
  GrassmannElement out = mu;
  for (const auto& g : word) out = spinor_action(g, out);
  return out;
}

BimoduleTriple BimoduleTriple::from_word(ThetaMatrix theta,
                                         std::vector<DualityGenerator> word) {
  const int d = theta.d;
  IMatrix acc = IMatrix::Identity(2 * d, 2 * d);
  // Word applied left to right: the total matrix is g_k ... g_1.
  for (const auto& gen : word) {
    if (gen.d != d) throw Error(ErrorKind::Dimension, "word mixes dimensions");
    acc = gen.matrix().entries * acc;
  }
  BimoduleTriple t{ThetaMatrix::checked(theta.theta), ThetaMatrix::zero(d),
                   std::move(word), SODDMatrix::checked(std::move(acc))};
  t.theta_hat = fractional_transform(t.g, t.theta);
  return t;
}

long long theta_vector_dimension(const BimoduleTriple& triple) {
  GrassmannElement mu = spinor_action_word(triple.word, GrassmannElement::one(triple.theta.d));
  Rational top = berezin_top(mu);
  if (top.denominator() != 1)
    throw Error(ErrorKind::Precondition, "top coefficient is not an integer");
  return top.numerator();
}

BimoduleTriple compose_triples(const BimoduleTriple& t1, const BimoduleTriple& t2) {
  if (t1.theta.d != t2.theta.d)
    throw Error(ErrorKind::Dimension, "dimension mismatch");
  if (max_abs(RMatrix(t1.theta_hat.theta - t2.theta.theta)) > 1e-12)
    throw Error(ErrorKind::Composition, "middle torus of the triples does not match");
  BimoduleTriple out{t1.theta, t2.theta_hat, t1.word, SODDMatrix::identity(t1.theta.d)};
  out.word.insert(out.word.end(), t2.word.begin(), t2.word.end());
  out.g = SODDMatrix::checked(IMatrix(t2.g.entries * t1.g.entries));
  // Re-verify the invariant through the fractional-linear action.
  ThetaMatrix direct = fractional_transform(out.g, out.theta);
  if (max_abs(RMatrix(direct.theta - out.theta_hat.theta)) > 1e-10)
    throw Error(ErrorKind::Composition, "composed transform disagrees with theta_hat");
  return out;
}

}  // namespace nctheta
