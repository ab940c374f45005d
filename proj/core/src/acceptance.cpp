#include "nctheta/acceptance.hpp"

#include <chrono>
#include <functional>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nctheta/correspondence.hpp"
#include "nctheta/duality.hpp"
#include "nctheta/metaplectic.hpp"
#include "nctheta/nc_algebra.hpp"
#include "nctheta/schwartz.hpp"
#include "nctheta/symplectic.hpp"
#include "nctheta/theta.hpp"

namespace nctheta {

namespace {

constexpr double kPi = std::numbers::pi;
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

long long uniform_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

SiegelPoint random_siegel(int g, Rng& rng) {
  CMatrix re(g, g), a(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      re(i, j) = Complex(uniform(rng, -0.5, 0.5), 0.0);
      a(i, j) = Complex(uniform(rng, -0.7, 0.7), 0.0);
    }
  CMatrix sym_re = 0.5 * (re + re.transpose().eval());
  CMatrix im = a * a.transpose() + 0.4 * CMatrix::Identity(g, g);
  return SiegelPoint::checked(sym_re + Complex(0.0, 1.0) * im);
}

CVector random_cvector(int g, Rng& rng, double scale) {
  CVector z(g);
  for (int i = 0; i < g; ++i)
    z(i) = Complex(uniform(rng, -scale, scale), uniform(rng, -scale, scale));
  return z;
}

NcElement random_nc(int d, int max_support, Rng& rng) {
  NcElement f(d);
  int count = 1 + static_cast<int>(uniform_int(rng, 0, max_support - 1));
  for (int t = 0; t < count; ++t) {
    std::vector<long long> n(d);
    for (int i = 0; i < d; ++i) n[i] = uniform_int(rng, -3, 3);
    f.add_term(n, Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)));
  }
  return f;
}

PolyGaussianVector random_vector(int g, Rng& rng) {
  PolyGaussianVector v(g);
  int terms = 1 + static_cast<int>(uniform_int(rng, 0, 1));
  for (int t = 0; t < terms; ++t) {
    SiegelPoint q = random_siegel(g, rng);
    Poly p(g);
    p.add_term(Poly::MultiIndex(g, 0), Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)));
    for (int j = 0; j < g; ++j) {
      Poly::MultiIndex m(g, 0);
      m[j] = 1;
      p.add_term(m, Complex(uniform(rng, -0.8, 0.8), uniform(rng, -0.8, 0.8)));
    }
    v.append(PolyGaussianTerm::checked(std::move(p), q.omega, random_cvector(g, rng, 0.4)));
  }
  return v;
}

ThetaMatrix random_theta(int d, Rng& rng, bool nondegenerate) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    RMatrix t = RMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double v = uniform(rng, -0.8, 0.8);
        t(i, j) = v;
        t(j, i) = -v;
      }
    if (nondegenerate) {
      t += 1.2 * standard_symplectic_real(d / 2);
      if (std::abs(t.determinant()) < 1e-2) continue;
    }
    return ThetaMatrix::checked(std::move(t));
  }
  throw Error(ErrorKind::Degeneracy, "failed to sample a nondegenerate form");
}

// Convolution without phases: the theta = 0 oracle.
NcElement plain_convolution(const NcElement& f, const NcElement& g) {
  NcElement out(f.d());
  std::vector<long long> sum(f.d());
  for (const auto& [n, cn] : f.coeffs())
    for (const auto& [m, cm] : g.coeffs()) {
      for (int i = 0; i < f.d(); ++i) sum[i] = n[i] + m[i];
      out.add_term(sum, cn * cm * std::polar(1.0, 0.0));
    }
  out.prune();
  return out;
}

long long pfaffian(const IMatrix& n) {
  const int d = static_cast<int>(n.rows());
  if (d == 0) return 1;
  if (d % 2 != 0) return 0;
  // Expansion along the first row: Pf(N) = sum_j (-1)^j N_{0j} Pf(N with rows/cols 0, j removed).
  long long total = 0;
  for (int j = 1; j < d; ++j) {
    if (n(0, j) == 0) continue;
    IMatrix sub(d - 2, d - 2);
    int ri = 0;
    for (int r = 1; r < d; ++r) {
      if (r == j) continue;
      int ci = 0;
      for (int c = 1; c < d; ++c) {
        if (c == j) continue;
        sub(ri, ci++) = n(r, c);
      }
      ++ri;
    }
    long long sign = (j % 2 == 1) ? 1 : -1;
    total += sign * n(0, j) * pfaffian(sub);
  }
  return total;
}

struct Recorder {
  CriterionResult result;
  explicit Recorder(int id, std::string name) {
    result.id = id;
    result.name = std::move(name);
    result.pass = true;
  }
  void check(const std::string& label, double value, double tol) {
    result.residuals.push_back({label, value, tol});
    if (!(value <= tol)) result.pass = false;
  }
  void check_flag(const std::string& label, bool ok) {
    result.residuals.push_back({label, ok ? 0.0 : 1.0, 0.5});
    if (!ok) result.pass = false;
  }
};

CriterionResult criterion_quasi_periodicity(const AcceptanceOptions& opt) {
  Recorder rec(1, "quasi-periodicity of the lattice sum");
  Rng rng(opt.seed + 1);
  const int per_g = opt.quick ? 4 : 10;
  double worst2 = 0.0, worst3 = 0.0;
  for (int g = 1; g <= 2; ++g) {
    for (int i = 0; i < per_g; ++i) {
      // The relative residual of the Omega-shift law is amplified by the
      // factor exp(pi m^t Im(Omega) m), so the draw keeps that factor
      // moderate; the absolute identity is checked at full precision.
      CMatrix re(g, g), a(g, g);
      for (int r = 0; r < g; ++r)
        for (int c = 0; c < g; ++c) {
          re(r, c) = Complex(uniform(rng, -0.5, 0.5), 0.0);
          a(r, c) = Complex(uniform(rng, -0.3, 0.3), 0.0);
        }
      CMatrix sym_re = 0.5 * (re + re.transpose().eval());
      CMatrix im = a * a.transpose() + 0.35 * CMatrix::Identity(g, g);
      SiegelPoint om = SiegelPoint::checked(sym_re + Complex(0.0, 1.0) * im);
      CVector z(g);
      for (int k = 0; k < g; ++k)
        z(k) = Complex(uniform(rng, -0.8, 0.8), uniform(rng, -0.2, 0.2));
      IVector m(g);
      for (int k = 0; k < g; ++k) m(k) = uniform_int(rng, -1, 1);
      IVector m2(g);
      for (int k = 0; k < g; ++k) m2(k) = uniform_int(rng, -2, 2);
      worst2 = std::max(worst2, check_periodicity(z, om, m2));
      worst3 = std::max(worst3, check_quasi_periodicity(z, om, m).residual);
    }
  }
  rec.check("integer-shift residual", worst2, 1e-10);
  rec.check("omega-shift residual", worst3, 1e-10);
  return rec.result;
}

CriterionResult criterion_modular_law(const AcceptanceOptions& opt) {
  Recorder rec(2, "modular transformation law");
  (void)opt;
  auto lin = MetaplecticGenerator::linear((IMatrix(1, 1) << -1).finished());
  auto shear2 = MetaplecticGenerator::shear((IMatrix(1, 1) << 2).finished());
  auto fourier = MetaplecticGenerator::fourier(1);

  std::vector<std::vector<MetaplecticGenerator>> words = {
      {lin}, {shear2}, {fourier},
      {fourier, fourier}, {fourier, shear2}, {shear2, fourier},
      {shear2, shear2}, {lin, fourier}};

  std::vector<CVector> samples;
  const double offsets[5][2] = {{0.13, 0.07}, {-0.21, 0.11}, {0.33, -0.05},
                                {0.04, 0.23}, {-0.17, -0.13}};
  for (auto& o : offsets) {
    CVector z(1);
    z(0) = Complex(o[0], o[1]);
    samples.push_back(z);
  }

  std::vector<SiegelPoint> omegas;
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0, 1)).finished()));
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0, 2)).finished()));
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0.5, 1)).finished()));

  double worst_const = 0.0, worst_root = 0.0;
  for (const auto& word : words) {
    SymplecticIntMatrix gamma = word_symplectic(word, 1);
    for (const auto& om : omegas) {
      ModularRatio mr = modular_ratio(gamma, om, samples);
      worst_const = std::max(worst_const, mr.constancy);
      Complex z8 = std::pow(mr.zeta, 8);
      worst_root = std::max(worst_root, std::abs(z8 - Complex(1.0, 0.0)));
    }
  }
  rec.check("constancy of the ratio", worst_const, 1e-8);
  rec.check("|zeta^8 - 1|", worst_root, 1e-8);
  return rec.result;
}

CriterionResult criterion_star_product(const AcceptanceOptions& opt) {
  Recorder rec(3, "star-product algebra");
  Rng rng(opt.seed + 3);
  const int trials = opt.quick ? 25 : 100;
  double worst_assoc = 0.0;
  for (int t = 0; t < trials; ++t) {
    int d = 2 + static_cast<int>(uniform_int(rng, 0, 2));
    ThetaMatrix theta = random_theta(d, rng, false);
    NcElement f = random_nc(d, 10, rng);
    NcElement g = random_nc(d, 10, rng);
    NcElement h = random_nc(d, 10, rng);
    NcElement lhs = multiply(multiply(f, g, theta), h, theta);
    NcElement rhs = multiply(f, multiply(g, h, theta), theta);
    worst_assoc = std::max(worst_assoc, coefficient_distance(lhs, rhs));
  }
  rec.check("associativity", worst_assoc, 1e-12);

  double worst_comm = 0.0;
  for (int t = 0; t < (opt.quick ? 5 : 20); ++t) {
    int d = 2 + static_cast<int>(uniform_int(rng, 0, 2));
    ThetaMatrix theta = random_theta(d, rng, false);
    int a = 1 + static_cast<int>(uniform_int(rng, 0, d - 1));
    int b = 1 + static_cast<int>(uniform_int(rng, 0, d - 1));
    if (a == b) b = (b % d) + 1;
    worst_comm = std::max(worst_comm, check_commutation(a, b, theta));
  }
  rec.check("exchange relation", worst_comm, 1e-15);

  double conv = 0.0;
  for (int t = 0; t < (opt.quick ? 5 : 20); ++t) {
    int d = 2 + static_cast<int>(uniform_int(rng, 0, 2));
    ThetaMatrix zero = ThetaMatrix::zero(d);
    NcElement f = random_nc(d, 8, rng);
    NcElement g = random_nc(d, 8, rng);
    conv = std::max(conv, coefficient_distance(multiply(f, g, zero), plain_convolution(f, g)));
  }
  rec.check("theta = 0 is plain convolution", conv, 0.0);
  return rec.result;
}

CriterionResult criterion_ccr(const AcceptanceOptions& opt) {
  Recorder rec(4, "constant curvature and connection relation");
  Rng rng(opt.seed + 4);
  const int trials = opt.quick ? 6 : 20;
  double worst_curv = 0.0;
  for (int t = 0; t < trials; ++t) {
    int g = 1 + static_cast<int>(uniform_int(rng, 0, 1));
    PolyGaussianVector v = random_vector(g, rng);
    worst_curv = std::max(worst_curv,
                          curvature_residual(ThetaMatrix::standard_symplectic(g), v));
    ThetaMatrix omega_form = random_theta(2 * g, rng, true);
    ThetaMatrix theta = ThetaMatrix::checked(inverse(omega_form.theta));
    worst_curv = std::max(worst_curv, curvature_residual(theta, v));
  }
  rec.check("curvature residual", worst_curv, 1e-11);

  double worst_conn = 0.0;
  for (int t = 0; t < (opt.quick ? 3 : 8); ++t) {
    int g = 1 + static_cast<int>(uniform_int(rng, 0, 1));
    const int d = 2 * g;
    PolyGaussianVector v = random_vector(g, rng);
    ThetaMatrix theta = (t % 2 == 0)
                            ? ThetaMatrix::standard_symplectic(g)
                            : ThetaMatrix::checked(inverse(random_theta(d, rng, true).theta));
    RMatrix frame = representation_matrix(theta);
    for (int a = 1; a <= d; ++a) {
      CVector row = frame.row(a - 1).cast<Complex>();
      for (int b = 1; b <= d; ++b) {
        WeylOperator u = generator_U(b, theta);
        PolyGaussianVector uv = apply_weyl(u, v);
        PolyGaussianVector comm = apply_nabla_combination(row, uv) -
                                  apply_weyl(u, apply_nabla_combination(row, v));
        Complex target = (a == b) ? Complex(0.0, 2.0 * kPi) : Complex(0.0, 0.0);
        worst_conn = std::max(worst_conn, pointwise_distance(comm, uv.scaled(target)));
      }
    }
  }
  rec.check("connection relation", worst_conn, 1e-11);
  return rec.result;
}

CriterionResult criterion_theta_vector(const AcceptanceOptions& opt) {
  Recorder rec(5, "existence and uniqueness of the holomorphic vector");
  Rng rng(opt.seed + 5);
  double worst_holo = 0.0;
  for (int t = 0; t < 10; ++t) {
    int g = 1 + (t % 2);
    SiegelPoint om = random_siegel(g, rng);
    worst_holo = std::max(worst_holo, holomorphic_residual(om, theta_vector(om)));
  }
  rec.check("holomorphicity of the Gaussian", worst_holo, 1e-12);

  int rejected = 0;
  std::vector<CMatrix> bad;
  bad.push_back((CMatrix(1, 1) << Complex(0, -1)).finished());
  bad.push_back((CMatrix(1, 1) << Complex(0, -2)).finished());
  bad.push_back((CMatrix(1, 1) << Complex(0.3, 0)).finished());
  CMatrix indefinite = CMatrix::Zero(2, 2);
  indefinite(0, 0) = Complex(0, 1);
  indefinite(1, 1) = Complex(0, -1);
  bad.push_back(indefinite);
  bad.push_back(Complex(0, -1) * CMatrix::Identity(2, 2));
  for (const auto& m : bad) {
    try {
      theta_vector(SiegelPoint::checked(m));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Positivity) ++rejected;
    }
  }
  rec.check_flag("non-positive exponents rejected", rejected == static_cast<int>(bad.size()));

  // Kernel of the holomorphicity system within the degree <= 2 ansatz.
  int kernel_ok = 0;
  for (int g = 1; g <= 2; ++g) {
    SiegelPoint om = random_siegel(g, rng);
    std::vector<Poly::MultiIndex> monos;
    std::function<void(Poly::MultiIndex&, int, int)> gen = [&](Poly::MultiIndex& m, int pos,
                                                               int left) {
      if (pos == g) {
        monos.push_back(m);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        m[pos] = e;
        gen(m, pos + 1, left - e);
      }
      m[pos] = 0;
    };
    Poly::MultiIndex buf(g, 0);
    gen(buf, 0, 2);

    // Row space: coefficients of the annihilator output per (alpha, monomial).
    Eigen::MatrixXcd system(static_cast<Eigen::Index>(g * monos.size()),
                            static_cast<Eigen::Index>(monos.size()));
    system.setZero();
    for (std::size_t col = 0; col < monos.size(); ++col) {
      Poly p(g);
      p.add_term(monos[col], Complex(1.0, 0.0));
      PolyGaussianVector v = PolyGaussianVector::single(
          PolyGaussianTerm::checked(p, om.omega, CVector::Zero(g)));
      for (int a = 0; a < g; ++a) {
        PolyGaussianVector w = apply_nabla(g + 1 + a, v);
        for (int b = 0; b < g; ++b)
          w = w - apply_nabla(b + 1, v).scaled(om.omega(a, b));
        if (w.is_zero()) continue;
        if (w.terms().size() != 1)
          throw Error(ErrorKind::Precondition, "unexpected term split in kernel system");
        for (const auto& [m, c] : w.terms().front().poly.terms()) {
          for (std::size_t row = 0; row < monos.size(); ++row) {
            if (monos[row] == m) {
              system(static_cast<Eigen::Index>(a * monos.size() + row),
                     static_cast<Eigen::Index>(col)) += c;
            }
          }
        }
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system);
    double smax = svd.singularValues().maxCoeff();
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-8 * smax) ++rank;
    int nullity = static_cast<int>(monos.size()) - rank;
    if (nullity == 1) ++kernel_ok;
  }
  rec.check_flag("kernel is one-dimensional (g = 1, 2)", kernel_ok == 2);
  return rec.result;
}

CriterionResult criterion_correspondence(const AcceptanceOptions& opt) {
  Recorder rec(6, "section transform matches the classical series");
  Rng rng(opt.seed + 6);

  SiegelPoint om_i = SiegelPoint::checked((CMatrix(1, 1) << Complex(0, 1)).finished());
  SiegelPoint om_half = SiegelPoint::checked((CMatrix(1, 1) << Complex(0.5, 1)).finished());
  double worst1 = 0.0;
  for (const auto& om : {om_i, om_half})
    worst1 = std::max(worst1, check_theta_correspondence(om, 8, 1e-12).max_residual);
  rec.check("g = 1 dual-path residual", worst1, 1e-9);

  CMatrix om2m(2, 2);
  om2m << Complex(0, 1), Complex(0.3, 0), Complex(0.3, 0), Complex(0, 2);
  SiegelPoint om2 = SiegelPoint::checked(om2m);
  double worst2 = check_theta_correspondence(om2, 4, 1e-12).max_residual;
  rec.check("g = 2 dual-path residual", worst2, 1e-8);

  PolyGaussianVector tau = theta_vector(om_i);
  double law1 = 0.0, law2 = 0.0;
  const int samples = opt.quick ? 8 : 20;
  // Matched truncation radius with margin for the shifted argument.
  const int law_radius = tilde_radius(tau, 1e-13) + 3;
  for (int t = 0; t < samples; ++t) {
    RVector rho(1), sigma(1);
    rho(0) = uniform(rng, 0.0, 1.0);
    sigma(0) = uniform(rng, 0.0, 1.0);
    RVector e(1);
    e(0) = static_cast<double>(uniform_int(rng, -2, 2));
    Complex base = tilde_transform_radius(tau, rho, sigma, law_radius);
    law1 = std::max(law1,
                    std::abs(tilde_transform_radius(tau, rho + e, sigma, law_radius) - base));
    Complex phase = std::polar(1.0, 2.0 * kPi * rho(0) * e(0));
    law2 = std::max(law2, std::abs(tilde_transform_radius(tau, rho, sigma + e, law_radius) -
                                   phase * base));
  }
  rec.check("lattice shift laws", std::max(law1, law2), 1e-12);

  const int radius = tilde_radius(tau, 1e-12);
  double roundtrip = 0.0;
  for (int t = 0; t < 10; ++t) {
    RVector x(1);
    x(0) = -2.0 + 4.0 * (t + 0.5) / 10.0;
    Complex rec_val = reconstruct(tau, x, 2 * radius + 2);
    roundtrip = std::max(roundtrip, std::abs(rec_val - tau.evaluate_real(x)));
  }
  rec.check("inverse transform roundtrip", roundtrip, 1e-8);

  RVector rho(1), sigma(1);
  rho(0) = 0.31;
  sigma(0) = 0.17;
  double inter = 0.0;
  for (int alpha : {1, 2})
    inter = std::max(inter, nabla_tilde_intertwining(alpha, tau, rho, sigma, 1e-4));
  rec.check("connection intertwining at h = 1e-4", inter, 1e-6);

  double r1 = nabla_tilde_intertwining(1, tau, rho, sigma, 1e-3);
  double r2 = nabla_tilde_intertwining(1, tau, rho, sigma, 5e-4);
  double ratio = r1 / std::max(r2, 1e-300);
  rec.check_flag("second-order convergence of the difference stencil",
                 ratio > 3.4 && ratio < 4.6);
  return rec.result;
}

CriterionResult criterion_covariance(const AcceptanceOptions& opt) {
  Recorder rec(7, "covariance of the Gaussian under the projective action");
  std::vector<MetaplecticGenerator> alphabet = {
      MetaplecticGenerator::linear((IMatrix(1, 1) << -1).finished()),
      MetaplecticGenerator::shear((IMatrix(1, 1) << 1).finished()),
      MetaplecticGenerator::shear((IMatrix(1, 1) << 2).finished()),
      MetaplecticGenerator::fourier(1)};
  std::vector<SiegelPoint> omegas;
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0, 1)).finished()));
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0, 2)).finished()));
  omegas.push_back(SiegelPoint::checked((CMatrix(1, 1) << Complex(0.5, 1)).finished()));

  const int max_len = opt.quick ? 2 : 3;
  double worst = 0.0;
  std::vector<std::vector<MetaplecticGenerator>> frontier{{}};
  long long words = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<MetaplecticGenerator>> next;
    for (const auto& w : frontier) {
      for (const auto& gen : alphabet) {
        auto extended = w;
        extended.push_back(gen);
        for (const auto& om : omegas)
          worst = std::max(worst, check_theta_covariance(extended, om));
        ++words;
        next.push_back(std::move(extended));
      }
    }
    frontier = std::move(next);
  }
  std::ostringstream os;
  os << words << " generator words through length " << max_len;
  rec.result.details = os.str();
  rec.check("ray residual", worst, 1e-9);
  return rec.result;
}

CriterionResult criterion_gamma12(const AcceptanceOptions& opt) {
  Recorder rec(8, "reordering phases detect the theta subgroup");
  Gamma12ScanReport scan1 = gamma12_criterion_scan(1, opt.quick ? 3 : 4);
  Gamma12ScanReport scan2 = gamma12_criterion_scan(2, opt.quick ? 2 : 3);
  rec.check_flag("scan counterexamples (g = 1)", scan1.counterexamples.empty());
  rec.check_flag("scan counterexamples (g = 2)", scan2.counterexamples.empty());
  std::ostringstream os;
  os << scan1.words_checked << " + " << scan2.words_checked << " words scanned";
  rec.result.details = os.str();

  ThetaMatrix theta = ThetaMatrix::standard_symplectic(1);
  Rng rng(opt.seed + 8);
  PolyGaussianVector v = theta_vector(
      SiegelPoint::checked((CMatrix(1, 1) << Complex(0.2, 1.1)).finished()));
  std::vector<IMatrix> gammas;
  gammas.push_back((IMatrix(2, 2) << 0, -1, 1, 0).finished());
  gammas.push_back((IMatrix(2, 2) << 1, 1, 0, 1).finished());
  gammas.push_back((IMatrix(2, 2) << 1, 2, 0, 1).finished());
  gammas.push_back((IMatrix(2, 2) << 2, 1, 1, 1).finished());
  double worst = 0.0;
  for (const auto& m : gammas)
    worst = std::max(worst, check_transformed_generators(SymplecticIntMatrix::checked(m),
                                                         theta, v, true));
  rec.check("transformed generator identity", worst, 1e-11);

  double no_phase = check_transformed_generators(
      SymplecticIntMatrix::checked((IMatrix(2, 2) << 1, 1, 0, 1).finished()), theta, v, false);
  rec.check_flag("phase necessity (identity fails without it)", no_phase > 1e-2);

  double worst_bch = 0.0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<WeylExponent> ks;
    for (int i = 0; i < n; ++i) {
      WeylExponent k;
      CVector u(1), w(1);
      u(0) = Complex(static_cast<double>(uniform_int(rng, -2, 2)), 0.0);
      w(0) = Complex(static_cast<double>(uniform_int(rng, -2, 2)), 0.0);
      k.u = u;
      k.v = w;
      ks.push_back(std::move(k));
    }
    worst_bch = std::max(worst_bch, bch_phase_check(ks));
  }
  rec.check("central product formula", worst_bch, 1e-11);
  return rec.result;
}

CriterionResult criterion_duality(const AcceptanceOptions& opt) {
  Recorder rec(9, "duality bookkeeping");
  Rng rng(opt.seed + 9);

  auto random_generator = [&](int d) {
    int pick = static_cast<int>(uniform_int(rng, 0, 2));
    if (pick == 0) {
      IMatrix a = IMatrix::Identity(d, d);
      for (int ops = 0; ops < 3; ++ops) {
        int i = static_cast<int>(uniform_int(rng, 0, d - 1));
        int j = static_cast<int>(uniform_int(rng, 0, d - 1));
        if (i != j) a.row(i) += uniform_int(rng, -1, 1) * a.row(j);
      }
      return DualityGenerator::gl(std::move(a));
    }
    if (pick == 1) {
      IMatrix n = IMatrix::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          long long v = uniform_int(rng, -2, 2);
          n(i, j) = v;
          n(j, i) = -v;
        }
      return DualityGenerator::shear(std::move(n));
    }
    return DualityGenerator::flip(d, 1 + static_cast<int>(uniform_int(rng, 0, d - 1)));
  };

  const int trials = opt.quick ? 15 : 50;
  double worst_comp = 0.0;
  int defined = 0;
  for (int t = 0; t < trials; ++t) {
    int d = (t % 2 == 0) ? 2 : 4;
    ThetaMatrix theta = random_theta(d, rng, false);
    int len = 1 + static_cast<int>(uniform_int(rng, 0, 2));
    std::vector<DualityGenerator> word;
    IMatrix total = IMatrix::Identity(2 * d, 2 * d);
    for (int i = 0; i < len; ++i) {
      word.push_back(random_generator(d));
      total = word.back().matrix().entries * total;
    }
    try {
      ThetaMatrix stepwise = theta;
      for (const auto& gen : word) stepwise = fractional_transform(gen.matrix(), stepwise);
      ThetaMatrix direct = fractional_transform(SODDMatrix::checked(total), theta);
      worst_comp = std::max(worst_comp, max_abs(RMatrix(stepwise.theta - direct.theta)));
      ++defined;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Singularity) throw;
    }
  }
  {
    std::ostringstream os;
    os << defined << "/" << trials << " random words defined everywhere";
    rec.result.details = os.str();
  }
  rec.check("fractional-linear composition", worst_comp, 1e-10);

  // Exact algebra axioms on random rational elements.
  bool axioms = true;
  for (int t = 0; t < (opt.quick ? 4 : 10); ++t) {
    int d = 2 + 2 * static_cast<int>(uniform_int(rng, 0, 1));
    auto random_grassmann = [&]() {
      GrassmannElement x(d);
      for (int k = 0; k < 5; ++k) {
        std::uint32_t mask = static_cast<std::uint32_t>(uniform_int(rng, 0, (1 << d) - 1));
        x.add_term(mask, Rational(uniform_int(rng, -3, 3), 1 + uniform_int(rng, 0, 2)));
      }
      return x;
    };
    GrassmannElement a = random_grassmann();
    GrassmannElement b = random_grassmann();
    GrassmannElement c = random_grassmann();
    GrassmannElement lhs = grassmann_multiply(grassmann_multiply(a, b), c);
    GrassmannElement rhs = grassmann_multiply(a, grassmann_multiply(b, c));
    if (!(lhs - rhs).coeffs().empty()) axioms = false;
    for (int i = 1; i <= d && axioms; ++i) {
      GrassmannElement gi = GrassmannElement::generator(d, i);
      if (!grassmann_multiply(gi, gi).coeffs().empty()) axioms = false;
      for (int j = i + 1; j <= d; ++j) {
        GrassmannElement gj = GrassmannElement::generator(d, j);
        GrassmannElement anti = grassmann_multiply(gi, gj) + grassmann_multiply(gj, gi);
        if (!anti.coeffs().empty()) axioms = false;
      }
    }
  }
  rec.check_flag("exact Grassmann axioms", axioms);

  // Top coefficient against the Pfaffian for small shear blocks.
  bool pfaff_ok = true;
  long long range = opt.quick ? 1 : 2;
  for (long long v = -range; v <= range && pfaff_ok; ++v) {
    IMatrix n2(2, 2);
    n2 << 0, v, -v, 0;
    BimoduleTriple t = BimoduleTriple::from_word(
        ThetaMatrix::zero(2), {DualityGenerator::shear(n2)});
    if (theta_vector_dimension(t) != pfaffian(n2)) pfaff_ok = false;
  }
  {
    std::vector<long long> vals;
    for (long long v = -range; v <= range; ++v) vals.push_back(v);
    std::vector<long long> e(6, 0);
    std::function<void(int)> rec4 = [&](int pos) {
      if (!pfaff_ok) return;
      if (pos == 6) {
        IMatrix n4 = IMatrix::Zero(4, 4);
        int idx = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) {
            n4(i, j) = e[idx];
            n4(j, i) = -e[idx];
            ++idx;
          }
        BimoduleTriple t = BimoduleTriple::from_word(
            ThetaMatrix::zero(4), {DualityGenerator::shear(n4)});
        if (theta_vector_dimension(t) != pfaffian(n4)) pfaff_ok = false;
        return;
      }
      for (long long v : vals) {
        e[pos] = v;
        rec4(pos + 1);
      }
    };
    rec4(0);
  }
  rec.check_flag("top coefficient equals the Pfaffian", pfaff_ok);
  return rec.result;
}

CriterionResult criterion_dimension_claim(const AcceptanceOptions& opt) {
  Recorder rec(10, "theta-vector count recorded, dimension claim unverified");
  (void)opt;
  IMatrix n(2, 2);
  n << 0, 3, -3, 0;
  BimoduleTriple t =
      BimoduleTriple::from_word(ThetaMatrix::zero(2), {DualityGenerator::shear(n)});
  long long count = theta_vector_dimension(t);
  std::ostringstream os;
  os << "sample count N = " << count
     << "; equality with the holomorphic-subspace dimension requires an explicit "
        "module construction and is reported as unverified";
  rec.result.details = os.str();
  rec.check_flag("count computed and claim flagged unverified", count == 3);
  return rec.result;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  using Clock = std::chrono::steady_clock;
  std::vector<CriterionResult> results;
  auto timed = [&](auto&& fn) {
    auto start = Clock::now();
    CriterionResult r = fn(options);
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count() /
        1000.0;
    results.push_back(std::move(r));
  };
  timed(criterion_quasi_periodicity);
  timed(criterion_modular_law);
  timed(criterion_star_product);
  timed(criterion_ccr);
  timed(criterion_theta_vector);
  timed(criterion_correspondence);
  timed(criterion_covariance);
  timed(criterion_gamma12);
  timed(criterion_duality);
  timed(criterion_dimension_claim);
  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace nctheta
