#include "nctheta/correspondence.hpp"

#include <cmath>
#include <numbers>

namespace nctheta {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex k2PiI(0.0, 2.0 * std::numbers::pi);
constexpr int kRadiusBudget = 10000;

struct TermEnvelope {
  double lam = 0.0;         // smallest eigenvalue of Im Q
  double beta = 0.0;        // |Im b|
  int degree = 0;
  std::vector<double> abs_coeffs_by_degree;
};

// |poly(x) exp(...)| <= P(r) exp(-pi lam r^2 + 2 pi beta r) at |x|_2 = r.
double envelope_value(const TermEnvelope& e, double r) {
  double p = 0.0;
  double ringpow = 1.0;
  for (std::size_t d = 0; d < e.abs_coeffs_by_degree.size(); ++d) {
    p += e.abs_coeffs_by_degree[d] * ringpow;
    ringpow *= r;
  }
  return p * std::exp(-kPi * e.lam * r * r + 2.0 * kPi * e.beta * r);
}

std::vector<TermEnvelope> build_envelopes(const PolyGaussianVector& v) {
  std::vector<TermEnvelope> out;
  for (const auto& t : v.terms()) {
    TermEnvelope e;
    e.lam = min_eigenvalue_sym(t.quadratic.imag());
    if (e.lam <= 0.0)
      throw Error(ErrorKind::Precondition, "term is not Schwartz class");
    e.beta = t.linear.imag().norm();
    e.degree = t.poly.total_degree();
    e.abs_coeffs_by_degree.assign(e.degree + 1, 0.0);
    for (const auto& [m, c] : t.poly.terms()) {
      int d = 0;
      for (int x : m) d += x;
      e.abs_coeffs_by_degree[d] += std::abs(c);
    }
    out.push_back(std::move(e));
  }
  return out;
}

double shell_count(int g, int k) {
  if (k == 0) return 1.0;
  return std::pow(2.0 * k + 1.0, g) - std::pow(2.0 * k - 1.0, g);
}

// Radius past which every envelope is decreasing in r (shifted by sqrt(g)
// to account for sigma inside the unit cell).
int safe_start_radius(int g, const std::vector<TermEnvelope>& envelopes) {
  double r = 1.0;
  for (const auto& e : envelopes) {
    double a = 2.0 * kPi * e.beta;
    double disc = a * a + 8.0 * kPi * e.lam * std::max(1, e.degree);
    double hump = (a + std::sqrt(disc)) / (4.0 * kPi * e.lam);
    r = std::max(r, hump);
  }
  return static_cast<int>(std::ceil(r + std::sqrt(static_cast<double>(g)))) + 1;
}

double lattice_tail(int g, const std::vector<TermEnvelope>& envelopes, int radius) {
  double tail = 0.0;
  double sg = std::sqrt(static_cast<double>(g));
  for (int k = radius + 1;; ++k) {
    double rk = std::max(0.0, static_cast<double>(k) - sg);
    double term = 0.0;
    for (const auto& e : envelopes) term += envelope_value(e, rk);
    term *= shell_count(g, k);
    tail += term;
    if (term < 1e-300 && k > radius + 4) break;
    if (term < tail * 1e-18 + 1e-300 && k > radius + 2) {
      tail += term;
      break;
    }
    if (k > radius + 100000) break;
  }
  return tail;
}

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

Complex tilde_at_radius(const PolyGaussianVector& v, const RVector& rho,
                        const RVector& sigma, int radius) {
  const int g = v.g();
  const long long side = 2LL * radius + 1;
  long long count = 1;
  for (int i = 0; i < g; ++i) count *= side;
  std::vector<Complex> terms(static_cast<std::size_t>(count));
  for (long long idx = 0; idx < count; ++idx) {
    long long rem = idx;
    RVector k(g);
    for (int i = g - 1; i >= 0; --i) {
      k(i) = static_cast<double>(rem % side - radius);
      rem /= side;
    }
    double phase = -2.0 * kPi * rho.dot(k);
    terms[static_cast<std::size_t>(idx)] =
        std::polar(1.0, phase) * v.evaluate_real(sigma + k);
  }
  return tree_reduce(terms);
}

}  // namespace

int tilde_radius(const PolyGaussianVector& v, double tol) {
  if (!(tol > 0.0) || tol > 1e-2)
    throw Error(ErrorKind::Precondition, "tol must lie in (0, 1e-2]");
  if (v.is_zero()) return 0;
  auto envelopes = build_envelopes(v);
  int radius = safe_start_radius(v.g(), envelopes);
  double tail = lattice_tail(v.g(), envelopes, radius);
  while (tail > tol) {
    ++radius;
    if (radius > kRadiusBudget)
      throw Error(ErrorKind::Convergence, "required truncation radius exceeds budget");
    tail = lattice_tail(v.g(), envelopes, radius);
  }
  return radius;
}

Complex tilde_transform(const PolyGaussianVector& v, const RVector& rho,
                        const RVector& sigma, double tol) {
  const int g = v.g();
  if (rho.size() != g || sigma.size() != g)
    throw Error(ErrorKind::Dimension, "rho/sigma have wrong size");
  if (v.is_zero()) return Complex(0.0, 0.0);
  return tilde_at_radius(v, rho, sigma, tilde_radius(v, tol));
}

Complex tilde_transform_radius(const PolyGaussianVector& v, const RVector& rho,
                               const RVector& sigma, int radius) {
  const int g = v.g();
  if (rho.size() != g || sigma.size() != g)
    throw Error(ErrorKind::Dimension, "rho/sigma have wrong size");
  if (radius < 0 || radius > kRadiusBudget)
    throw Error(ErrorKind::Precondition, "radius outside budget");
  if (v.is_zero()) return Complex(0.0, 0.0);
  return tilde_at_radius(v, rho, sigma, radius);
}

Complex reconstruct(const PolyGaussianVector& v, const RVector& x, int grid_n,
                    double tol) {
  const int g = v.g();
  if (x.size() != g) throw Error(ErrorKind::Dimension, "x has wrong size");
  if (v.is_zero()) return Complex(0.0, 0.0);
  const int radius = tilde_radius(v, tol);
  if (grid_n < 2 * radius + 2)
    throw Error(ErrorKind::Precondition, "grid_n must be at least 2R + 2");

  RVector sigma(g), kstar(g);
  for (int i = 0; i < g; ++i) {
    double f = x(i) - std::floor(x(i));
    sigma(i) = f;
    kstar(i) = x(i) - f;
  }

  auto quadrature = [&](int n) {
    long long count = 1;
    for (int i = 0; i < g; ++i) count *= n;
    std::vector<Complex> samples(static_cast<std::size_t>(count));
    for (long long idx = 0; idx < count; ++idx) {
      long long rem = idx;
      RVector rho(g);
      for (int i = g - 1; i >= 0; --i) {
        rho(i) = static_cast<double>(rem % n) / static_cast<double>(n);
        rem /= n;
      }
      samples[static_cast<std::size_t>(idx)] =
          tilde_at_radius(v, rho, sigma, radius) *
          std::polar(1.0, 2.0 * kPi * rho.dot(kstar));
    }
    Complex total = tree_reduce(samples);
    return total / static_cast<double>(count);
  };

  Complex coarse = quadrature(grid_n);
  Complex fine = quadrature(2 * grid_n);
  if (std::abs(coarse - fine) > 1e-6)
    throw Error(ErrorKind::Aliasing, "quadrature grid is too coarse");
  return coarse;
}

CVector complex_coordinates(const RVector& rho, const RVector& sigma,
                            const SiegelPoint& omega) {
  if (rho.size() != omega.g || sigma.size() != omega.g)
    throw Error(ErrorKind::Dimension, "rho/sigma have wrong size");
  return omega.omega * sigma.cast<Complex>() - rho.cast<Complex>();
}

CorrespondenceReport check_theta_correspondence(const SiegelPoint& omega,
                                                int grid_per_axis, double tol) {
  const int g = omega.g;
  if (grid_per_axis < 1) throw Error(ErrorKind::Precondition, "grid must be positive");
  PolyGaussianVector tau = theta_vector(omega);
  const int radius = tilde_radius(tau, tol);

  long long per_block = 1;
  for (int i = 0; i < g; ++i) per_block *= grid_per_axis;

  CorrespondenceReport report;
  for (long long ri = 0; ri < per_block; ++ri) {
    RVector rho(g);
    long long rem = ri;
    for (int i = g - 1; i >= 0; --i) {
      rho(i) = static_cast<double>(rem % grid_per_axis) / grid_per_axis;
      rem /= grid_per_axis;
    }
    for (long long si = 0; si < per_block; ++si) {
      RVector sigma(g);
      long long rem2 = si;
      for (int i = g - 1; i >= 0; --i) {
        sigma(i) = static_cast<double>(rem2 % grid_per_axis) / grid_per_axis;
        rem2 /= grid_per_axis;
      }
      SectionSample sample;
      sample.rho = rho;
      sample.sigma = sigma;
      sample.lhs = tilde_at_radius(tau, rho, sigma, radius);
      CVector z = complex_coordinates(rho, sigma, omega);
      CVector sc = sigma.cast<Complex>();
      Complex prefactor = std::exp(Complex(0.0, kPi) * bdot(sc, omega.omega * sc));
      sample.rhs = prefactor * theta_sum(ThetaQuery::checked(z, omega, tol)).value;
      sample.residual = std::abs(sample.lhs - sample.rhs);
      report.max_residual = std::max(report.max_residual, sample.residual);
      report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

double nabla_tilde_intertwining(int alpha, const PolyGaussianVector& v,
                                const RVector& rho, const RVector& sigma, double h,
                                double tol) {
  const int g = v.g();
  if (alpha < 1 || alpha > 2 * g)
    throw Error(ErrorKind::Precondition, "index out of range");
  if (h < 1e-6 || h > 1e-2)
    throw Error(ErrorKind::Precondition, "step must lie in [1e-6, 1e-2]");

  Complex lhs = tilde_transform(apply_nabla(alpha, v), rho, sigma, tol);
  Complex rhs;
  if (alpha <= g) {
    RVector rp = rho, rm = rho;
    rp(alpha - 1) += h;
    rm(alpha - 1) -= h;
    Complex drho = (tilde_transform(v, rp, sigma, tol) -
                    tilde_transform(v, rm, sigma, tol)) / (2.0 * h);
    rhs = k2PiI * sigma(alpha - 1) * tilde_transform(v, rho, sigma, tol) - drho;
  } else {
    RVector sp = sigma, sm = sigma;
    sp(alpha - g - 1) += h;
    sm(alpha - g - 1) -= h;
    rhs = (tilde_transform(v, rho, sp, tol) -
           tilde_transform(v, rho, sm, tol)) / (2.0 * h);
  }
  return std::abs(lhs - rhs);
}

}  // namespace nctheta
