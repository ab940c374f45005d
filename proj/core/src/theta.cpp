#include "nctheta/theta.hpp"

#include <cmath>
#include <numbers>

#include "nctheta/parallel.hpp"

namespace nctheta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRadiusBudget = 10000;

// Number of lattice points with |n|_inf == k in Z^g.
double shell_count(int g, int k) {
  if (k == 0) return 1.0;
  return std::pow(2.0 * k + 1.0, g) - std::pow(2.0 * k - 1.0, g);
}

// Upper bound on sum over |n|_inf > R of exp(-pi lam |n|^2 + 2 pi y |n|),
// using |n|_2 >= |n|_inf on each shell. Valid once the per-shell envelope is
// decreasing, which holds for k >= y/lam + 1.
double gaussian_tail(int g, double lam, double y, int radius) {
  double hump = y / lam;
  if (radius < hump) return std::numeric_limits<double>::infinity();
  double tail = 0.0;
  for (int k = radius + 1;; ++k) {
    double term = shell_count(g, k) * std::exp(-kPi * lam * k * k + 2.0 * kPi * y * k);
    tail += term;
    if (k > radius + 4 && term < 1e-300) break;
    // Geometric cutoff: once the shell ratio is provably below 1/2, the
    // remainder is bounded by the last term.
    double ratio = std::exp(-kPi * lam * (2.0 * k + 1.0) + 2.0 * kPi * y) *
                   std::pow((2.0 * k + 3.0) / (2.0 * k + 1.0), g);
    if (ratio < 0.5 && term < tail * 1e-18 + 1e-300) {
      tail += term;  // covers the geometric remainder
      break;
    }
    if (k > radius + 100000) break;
  }
  return tail;
}

// Enumerate the box |n|_inf <= R lexicographically and evaluate the terms,
// then reduce with a fixed pairwise tree for reproducibility.
Complex tree_reduce(std::vector<Complex>& terms) {
  std::size_t n = terms.size();
  if (n == 0) return Complex(0.0, 0.0);
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
    n = half;
  }
  return terms[0];
}

}  // namespace

ThetaQuery ThetaQuery::checked(CVector z, SiegelPoint omega, double tol) {
  if (omega.g > 4) throw Error(ErrorKind::Dimension, "only g <= 4 is supported");
  if (z.size() != omega.g)
    throw Error(ErrorKind::Dimension, "z and Omega dimensions differ");
  if (!(tol > 0.0) || tol > 1e-2)
    throw Error(ErrorKind::Precondition, "tol must lie in (0, 1e-2]");
  ThetaQuery q;
  q.g = omega.g;
  q.z = std::move(z);
  q.omega = std::move(omega);
  q.tol = tol;
  return q;
}

ThetaResult theta_sum(const ThetaQuery& q) {
  const int g = q.g;
  const RMatrix im = q.omega.omega.imag();
  const double lam = min_eigenvalue_sym(im);
  if (lam <= 0.0)
    throw Error(ErrorKind::Positivity, "Im Omega must be positive definite");
  const double y = q.z.imag().norm();

  int radius = std::max(1, static_cast<int>(std::ceil(y / lam)) + 1);
  double tail = gaussian_tail(g, lam, y, radius);
  while (tail > q.tol) {
    ++radius;
    if (radius > kRadiusBudget)
      throw Error(ErrorKind::Convergence, "required truncation radius exceeds budget");
    tail = gaussian_tail(g, lam, y, radius);
  }

  const long long side = 2LL * radius + 1;
  long long count = 1;
  for (int i = 0; i < g; ++i) count *= side;

  std::vector<Complex> terms(static_cast<std::size_t>(count));
  const CMatrix& om = q.omega.omega;
  const CVector& z = q.z;
  parallel_for_index(static_cast<std::size_t>(count), [&](std::size_t idx) {
    // Lexicographic decode of idx into n in [-R, R]^g.
    RVector n(g);
    long long rem = static_cast<long long>(idx);
    for (int i = g - 1; i >= 0; --i) {
      n(i) = static_cast<double>(rem % side - radius);
      rem /= side;
    }
    CVector nc = n.cast<Complex>();
    Complex quad = bdot(nc, om * nc);
    Complex lin = bdot(nc, z);
    terms[idx] = std::exp(Complex(0.0, kPi) * quad + Complex(0.0, 2.0 * kPi) * lin);
  });

  ThetaResult r;
  r.value = tree_reduce(terms);
  r.radius = radius;
  r.tail_bound = tail;
  return r;
}

double check_periodicity(const CVector& z, const SiegelPoint& omega,
                         const IVector& m, double tol) {
  if (m.size() != omega.g) throw Error(ErrorKind::Dimension, "m has wrong size");
  CVector shifted = z + m.cast<double>().cast<Complex>();
  Complex a = theta_sum(ThetaQuery::checked(shifted, omega, tol)).value;
  Complex b = theta_sum(ThetaQuery::checked(z, omega, tol)).value;
  return std::abs(a - b);
}

QuasiPeriodicityResidual check_quasi_periodicity(const CVector& z, const SiegelPoint& omega,
                                                 const IVector& m, double tol) {
  if (m.size() != omega.g) throw Error(ErrorKind::Dimension, "m has wrong size");
  CVector mc = m.cast<double>().cast<Complex>();
  CVector shifted = z + omega.omega * mc;
  Complex lhs = theta_sum(ThetaQuery::checked(shifted, omega, tol)).value;
  Complex base = theta_sum(ThetaQuery::checked(z, omega, tol)).value;
  Complex quad = bdot(mc, omega.omega * mc);
  Complex lin = bdot(mc, z);
  Complex factor = std::exp(Complex(0.0, -kPi) * quad + Complex(0.0, -2.0 * kPi) * lin);
  double diff = std::abs(lhs - factor * base);
  QuasiPeriodicityResidual out;
  if (std::abs(base) < 1e-14) {
    out.residual = diff;
    out.normalized = false;
  } else {
    out.residual = diff / std::abs(base);
    out.normalized = true;
  }
  return out;
}

ModularRatio modular_ratio(const SymplecticIntMatrix& gamma, const SiegelPoint& omega,
                           const std::vector<CVector>& z_samples, double tol) {
  if (gamma.g != omega.g)
    throw Error(ErrorKind::Dimension, "matrix and Siegel point dimensions differ");
  if (!is_in_gamma12(gamma))
    throw Error(ErrorKind::DomainMembership, "matrix is not in the theta subgroup");
  if (z_samples.empty())
    throw Error(ErrorKind::Precondition, "at least one z sample is required");

  SiegelPoint target = mobius_action(gamma, omega);
  CMatrix c = gamma.blockC().cast<double>().cast<Complex>();
  CMatrix d = gamma.blockD().cast<double>().cast<Complex>();
  CMatrix denom = c * omega.omega + d;
  CMatrix denom_inv = inverse(denom);
  Complex root = principal_sqrt(denom.determinant());

  std::vector<Complex> ratios;
  ratios.reserve(z_samples.size());
  for (const CVector& z : z_samples) {
    if (z.size() != omega.g) throw Error(ErrorKind::Dimension, "sample has wrong size");
    Complex base = theta_sum(ThetaQuery::checked(z, omega, tol)).value;
    if (std::abs(base) <= 1e-10)
      throw Error(ErrorKind::NearZeroDivisor, "theta(z, Omega) too small at a sample");
    CVector zt = denom_inv.transpose() * z;
    Complex transformed = theta_sum(ThetaQuery::checked(zt, target, tol)).value;
    Complex quad = bdot(z, denom_inv * c * z);
    Complex factor = root * std::exp(Complex(0.0, kPi) * quad) * base;
    if (std::abs(factor) <= 1e-14)
      throw Error(ErrorKind::NearZeroDivisor, "zero denominator in modular ratio");
    ratios.push_back(transformed / factor);
  }

  Complex mean(0.0, 0.0);
  for (Complex r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double constancy = 0.0;
  for (Complex r : ratios) constancy = std::max(constancy, std::abs(r - mean));
  return ModularRatio{mean, constancy};
}

}  // namespace nctheta
