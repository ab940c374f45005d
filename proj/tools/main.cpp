// Batch front end: every identity check and evaluation is a subcommand that
// emits a machine-readable run report on stdout and exits 0 iff all checks
// passed. Reports are byte-identical across runs except for elapsed_ms.

#include <chrono>
#include <random>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nctheta/acceptance.hpp"
#include "nctheta/correspondence.hpp"
#include "nctheta/duality.hpp"
#include "nctheta/json_io.hpp"
#include "nctheta/metaplectic.hpp"
#include "nctheta/nc_algebra.hpp"
#include "nctheta/schwartz.hpp"
#include "nctheta/symplectic.hpp"
#include "nctheta/theta.hpp"

namespace {

using nctheta::Complex;
using nctheta::Error;
using nctheta::ErrorKind;
using json = nlohmann::json;

struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  json residuals = json::array();
  bool pass = true;

  void residual(const std::string& name, double value, double tol) {
    residuals.push_back({{"name", name}, {"value", value}, {"tolerance", tol}});
    if (!(value <= tol)) pass = false;
  }
  void flag(const std::string& name, bool ok) { residual(name, ok ? 0.0 : 1.0, 0.5); }
};

int emit(Report& report, std::chrono::steady_clock::time_point start) {
  json out;
  out["command"] = report.command;
  out["inputs"] = report.inputs;
  out["results"] = report.results;
  out["residuals"] = report.residuals;
  out["pass"] = report.pass;
  out["elapsed_ms"] = static_cast<long long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
  std::cout << out.dump(2) << "\n";
  return report.pass ? 0 : 1;
}

// Inline JSON, or @path to load a file.
std::string load_argument(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw Error(ErrorKind::Parse, "cannot open file: " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

nctheta::CMatrix omega_from_flags(int g, const std::vector<double>& re,
                                  const std::vector<double>& im) {
  auto fill = [&](const std::vector<double>& v) {
    nctheta::RMatrix m = nctheta::RMatrix::Zero(g, g);
    if (v.empty()) return m;
    if (static_cast<int>(v.size()) == g * g) {
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) m(i, j) = v[static_cast<std::size_t>(i * g + j)];
    } else if (static_cast<int>(v.size()) == g) {
      for (int i = 0; i < g; ++i) m(i, i) = v[static_cast<std::size_t>(i)];
    } else {
      throw Error(ErrorKind::Parse, "omega flags need g or g*g entries");
    }
    return m;
  };
  nctheta::RMatrix real = fill(re);
  nctheta::RMatrix imag = im.empty() ? nctheta::RMatrix(nctheta::RMatrix::Identity(g, g))
                                     : fill(im);
  return real.cast<Complex>() + Complex(0, 1) * imag.cast<Complex>();
}

nctheta::CVector z_from_flags(int g, const std::vector<double>& z) {
  nctheta::CVector out = nctheta::CVector::Zero(g);
  if (z.empty()) return out;
  if (static_cast<int>(z.size()) != 2 * g)
    throw Error(ErrorKind::Parse, "--z needs 2g numbers (re im per component)");
  for (int i = 0; i < g; ++i) out(i) = Complex(z[2 * i], z[2 * i + 1]);
  return out;
}

nctheta::IMatrix gamma_from_string(const std::string& text) {
  std::istringstream in(text);
  std::vector<long long> entries;
  long long v;
  while (in >> v) entries.push_back(v);
  std::size_t n = 0;
  while ((n + 1) * (n + 1) <= entries.size()) ++n;
  if (n * n != entries.size() || n == 0 || n % 2 != 0)
    throw Error(ErrorKind::Parse, "--gamma needs (2g)^2 integers");
  nctheta::IMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  return m;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

std::vector<nctheta::CVector> default_modular_samples() {
  const double offsets[5][2] = {{0.13, 0.07}, {-0.21, 0.11}, {0.33, -0.05},
                                {0.04, 0.23}, {-0.17, -0.13}};
  std::vector<nctheta::CVector> out;
  for (auto& o : offsets) {
    nctheta::CVector z(1);
    z(0) = Complex(o[0], o[1]);
    out.push_back(z);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta functions, noncommutative tori, and duality bookkeeping"};
  app.require_subcommand(1);
  unsigned long seed = 0;

  // --- theta ---------------------------------------------------------------
  auto* theta_cmd = app.add_subcommand("theta", "classical theta series");
  theta_cmd->require_subcommand(1);

  int t_g = 1;
  std::vector<double> t_z, t_om_re, t_om_im;
  double t_tol = 1e-12;
  std::string t_json;
  auto* theta_eval = theta_cmd->add_subcommand("eval", "evaluate the series with a tail bound");
  theta_eval->add_option("--g", t_g);
  theta_eval->add_option("--z", t_z, "re im pairs");
  theta_eval->add_option("--omega-re", t_om_re, "g*g entries or g diagonal entries");
  theta_eval->add_option("--omega-im", t_om_im, "g*g entries or g diagonal entries");
  theta_eval->add_option("--tol", t_tol);
  theta_eval->add_option("--json", t_json, "full query as inline JSON or @file");

  std::vector<long long> q_m;
  auto* theta_quasi = theta_cmd->add_subcommand("check-quasi", "periodicity residuals");
  theta_quasi->add_option("--g", t_g);
  theta_quasi->add_option("--z", t_z);
  theta_quasi->add_option("--omega-re", t_om_re);
  theta_quasi->add_option("--omega-im", t_om_im);
  theta_quasi->add_option("--m", q_m, "integer lattice shift");
  theta_quasi->add_option("--tol", t_tol);

  std::string mod_gamma;
  auto* theta_mod = theta_cmd->add_subcommand("check-modular", "modular ratio across samples");
  theta_mod->add_option("--gamma", mod_gamma, "(2g)^2 integers, row-major")->required();
  theta_mod->add_option("--g", t_g);
  theta_mod->add_option("--omega-re", t_om_re);
  theta_mod->add_option("--omega-im", t_om_im);
  theta_mod->add_option("--tol", t_tol);

  // --- nct -----------------------------------------------------------------
  auto* nct_cmd = app.add_subcommand("nct", "noncommutative torus algebra");
  nct_cmd->require_subcommand(1);

  std::string nf, ng, ntheta;
  auto* nct_mul = nct_cmd->add_subcommand("mul", "star product of two elements");
  nct_mul->add_option("--f", nf, "element JSON or @file")->required();
  nct_mul->add_option("--g", ng, "element JSON or @file")->required();
  nct_mul->add_option("--theta", ntheta, "antisymmetric matrix JSON or @file")->required();

  int a_d = 2, a_trials = 100, a_support = 10;
  auto* nct_assoc = nct_cmd->add_subcommand("check-assoc", "random associativity battery");
  nct_assoc->add_option("--d", a_d);
  nct_assoc->add_option("--trials", a_trials);
  nct_assoc->add_option("--max-support", a_support);
  nct_assoc->add_option("--seed", seed, "seed for the random batch");

  // --- module --------------------------------------------------------------
  auto* mod_cmd = app.add_subcommand("module", "projective module of Gaussian vectors");
  mod_cmd->require_subcommand(1);

  int m_g = 1;
  std::vector<double> m_om_re, m_om_im;
  std::string m_vector, m_theta;
  auto* mod_tv = mod_cmd->add_subcommand("theta-vector", "holomorphic Gaussian for Omega");
  mod_tv->add_option("--g", m_g);
  mod_tv->add_option("--omega-re", m_om_re);
  mod_tv->add_option("--omega-im", m_om_im);

  auto* mod_holo = mod_cmd->add_subcommand("holo-residual", "holomorphicity residual");
  mod_holo->add_option("--g", m_g);
  mod_holo->add_option("--omega-re", m_om_re);
  mod_holo->add_option("--omega-im", m_om_im);
  mod_holo->add_option("--vector", m_vector, "vector JSON or @file (default: theta vector)");

  auto* mod_curv = mod_cmd->add_subcommand("curvature", "constant-curvature residual");
  mod_curv->add_option("--g", m_g);
  mod_curv->add_option("--theta", m_theta, "theta JSON or @file (default: standard symplectic)");
  mod_curv->add_option("--vector", m_vector, "vector JSON or @file");

  // --- corr ----------------------------------------------------------------
  auto* corr_cmd = app.add_subcommand("corr", "module/line-bundle correspondence");
  corr_cmd->require_subcommand(1);

  int c_g = 1, c_grid = 8, c_points = 10, c_grid_n = 0;
  std::vector<double> c_om_re, c_om_im;
  double c_tol = 1e-12, c_max_residual = 1e-9;
  std::string c_csv;
  auto* corr_check = corr_cmd->add_subcommand("check", "dual-path theta comparison on a grid");
  corr_check->add_option("--g", c_g);
  corr_check->add_option("--omega-re", c_om_re);
  corr_check->add_option("--omega-im", c_om_im);
  corr_check->add_option("--grid", c_grid, "points per axis");
  corr_check->add_option("--tol", c_tol);
  corr_check->add_option("--max-residual", c_max_residual);
  corr_check->add_option("--csv", c_csv, "also write a CSV rendering to this path");

  auto* corr_round = corr_cmd->add_subcommand("roundtrip", "transform followed by reconstruction");
  corr_round->add_option("--g", c_g);
  corr_round->add_option("--omega-re", c_om_re);
  corr_round->add_option("--omega-im", c_om_im);
  corr_round->add_option("--points", c_points);
  corr_round->add_option("--grid-n", c_grid_n, "quadrature points (default 2R+2)");
  corr_round->add_option("--tol", c_tol);

  // --- meta ----------------------------------------------------------------
  auto* meta_cmd = app.add_subcommand("meta", "projective symplectic action");
  meta_cmd->require_subcommand(1);

  std::string w_word, w_gamma, w_theta;
  int w_g = 1, w_maxlen = 4;
  std::vector<double> w_om_re, w_om_im;
  auto* meta_cov = meta_cmd->add_subcommand("covariance", "Gaussian covariance along a word");
  meta_cov->add_option("--word", w_word, "generator word JSON or @file")->required();
  meta_cov->add_option("--g", w_g);
  meta_cov->add_option("--omega-re", w_om_re);
  meta_cov->add_option("--omega-im", w_om_im);

  auto* meta_calpha = meta_cmd->add_subcommand("c-alpha", "reordering phases of a matrix");
  meta_calpha->add_option("--gamma", w_gamma, "(2g)^2 integers, row-major")->required();
  meta_calpha->add_option("--theta", w_theta, "theta JSON or @file (default: standard)");

  auto* meta_scan = meta_cmd->add_subcommand("scan", "phase/membership agreement scan");
  meta_scan->add_option("--g", w_g);
  meta_scan->add_option("--max-len", w_maxlen);

  // --- dual ----------------------------------------------------------------
  auto* dual_cmd = app.add_subcommand("dual", "split-group duality bookkeeping");
  dual_cmd->require_subcommand(1);

  std::string d_word, d_theta;
  int d_d = 2;
  auto* dual_tr = dual_cmd->add_subcommand("transform", "fractional-linear action on theta");
  dual_tr->add_option("--word", d_word, "generator word JSON or @file")->required();
  dual_tr->add_option("--theta", d_theta, "theta JSON or @file")->required();

  auto* dual_dim = dual_cmd->add_subcommand("dim", "theta-vector count of a triple");
  dual_dim->add_option("--word", d_word, "generator word JSON or @file")->required();
  dual_dim->add_option("--d", d_d);

  // --- verify ----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "verification batteries");
  verify_cmd->require_subcommand(1);
  bool v_quick = false;
  auto* verify_all = verify_cmd->add_subcommand("all", "run the whole acceptance battery");
  verify_all->add_flag("--quick", v_quick, "reduced sample counts");
  verify_all->add_option("--seed", seed, "seed for randomized property batches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    if (theta_eval->parsed()) {
      report.command = "theta eval";
      nctheta::ThetaQuery query =
          !t_json.empty()
              ? nctheta::theta_query_from_json(load_argument(t_json))
              : nctheta::ThetaQuery::checked(
                    z_from_flags(t_g, t_z),
                    nctheta::SiegelPoint::checked(omega_from_flags(t_g, t_om_re, t_om_im)),
                    t_tol);
      report.inputs = {{"g", query.g},
                       {"z", json::parse(nctheta::to_json(query.z))},
                       {"omega", json::parse(nctheta::to_json(query.omega.omega))},
                       {"tol", query.tol}};
      nctheta::ThetaResult r = nctheta::theta_sum(query);
      report.results = json::parse(nctheta::to_json(r));
      report.residual("tail_bound", r.tail_bound, query.tol);
    } else if (theta_quasi->parsed()) {
      report.command = "theta check-quasi";
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(t_g, t_om_re, t_om_im));
      nctheta::CVector z = z_from_flags(t_g, t_z);
      nctheta::IVector m = nctheta::IVector::Zero(t_g);
      for (int i = 0; i < std::min<int>(t_g, static_cast<int>(q_m.size())); ++i) m(i) = q_m[i];
      report.inputs = {{"g", t_g},
                       {"z", json::parse(nctheta::to_json(z))},
                       {"omega", json::parse(nctheta::to_json(om.omega))},
                       {"m", q_m},
                       {"tol", t_tol}};
      double p = nctheta::check_periodicity(z, om, m, t_tol);
      auto qp = nctheta::check_quasi_periodicity(z, om, m, t_tol);
      report.results = {{"periodicity_residual", p},
                        {"quasi_periodicity_residual", qp.residual},
                        {"normalized", qp.normalized}};
      report.residual("periodicity", p, 1e-10);
      report.residual("quasi_periodicity", qp.residual, 1e-10);
    } else if (theta_mod->parsed()) {
      report.command = "theta check-modular";
      nctheta::SymplecticIntMatrix gamma =
          nctheta::SymplecticIntMatrix::checked(gamma_from_string(mod_gamma));
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(gamma.g, t_om_re, t_om_im));
      auto samples = default_modular_samples();
      if (gamma.g != 1)
        throw Error(ErrorKind::Dimension, "built-in samples cover g = 1; use the library for g > 1");
      report.inputs = {{"gamma", mod_gamma},
                       {"omega", json::parse(nctheta::to_json(om.omega))},
                       {"tol", t_tol},
                       {"samples", static_cast<int>(samples.size())}};
      nctheta::ModularRatio mr = nctheta::modular_ratio(gamma, om, samples, t_tol);
      Complex z8 = std::pow(mr.zeta, 8);
      report.results = {{"zeta", complex_json(mr.zeta)},
                        {"constancy", mr.constancy},
                        {"zeta8", complex_json(z8)}};
      report.residual("constancy", mr.constancy, 1e-8);
      report.residual("zeta8_deviation", std::abs(z8 - Complex(1, 0)), 1e-8);
    } else if (nct_mul->parsed()) {
      report.command = "nct mul";
      nctheta::NcElement f = nctheta::nc_element_from_json(load_argument(nf));
      nctheta::NcElement g = nctheta::nc_element_from_json(load_argument(ng));
      nctheta::ThetaMatrix theta =
          nctheta::ThetaMatrix::checked(nctheta::rmatrix_from_json(load_argument(ntheta)));
      report.inputs = {{"f", json::parse(nctheta::to_json(f))},
                       {"g", json::parse(nctheta::to_json(g))},
                       {"theta", json::parse(nctheta::to_json(theta.theta))}};
      report.results = {{"product", json::parse(nctheta::to_json(multiply(f, g, theta)))}};
    } else if (nct_assoc->parsed()) {
      report.command = "nct check-assoc";
      std::mt19937_64 rng(seed);
      auto rand_elem = [&]() {
        nctheta::NcElement f(a_d);
        std::uniform_int_distribution<int> lat(-3, 3);
        std::uniform_real_distribution<double> co(-1.0, 1.0);
        std::uniform_int_distribution<int> count(1, a_support);
        int n = count(rng);
        for (int t = 0; t < n; ++t) {
          std::vector<long long> p(a_d);
          for (auto& x : p) x = lat(rng);
          f.add_term(p, Complex(co(rng), co(rng)));
        }
        return f;
      };
      std::uniform_real_distribution<double> th(-0.8, 0.8);
      double worst = 0.0;
      for (int t = 0; t < a_trials; ++t) {
        nctheta::RMatrix tm = nctheta::RMatrix::Zero(a_d, a_d);
        for (int i = 0; i < a_d; ++i)
          for (int j = i + 1; j < a_d; ++j) {
            double v = th(rng);
            tm(i, j) = v;
            tm(j, i) = -v;
          }
        nctheta::ThetaMatrix theta = nctheta::ThetaMatrix::checked(tm);
        nctheta::NcElement f = rand_elem(), g = rand_elem(), h = rand_elem();
        worst = std::max(worst,
                         coefficient_distance(multiply(multiply(f, g, theta), h, theta),
                                              multiply(f, multiply(g, h, theta), theta)));
      }
      report.inputs = {{"d", a_d}, {"trials", a_trials}, {"max_support", a_support}, {"seed", seed}};
      report.results = {{"max_residual", worst}};
      report.residual("associativity", worst, 1e-12);
    } else if (mod_tv->parsed()) {
      report.command = "module theta-vector";
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(m_g, m_om_re, m_om_im));
      report.inputs = {{"g", m_g}, {"omega", json::parse(nctheta::to_json(om.omega))}};
      report.results = {{"vector", json::parse(nctheta::to_json(nctheta::theta_vector(om)))}};
    } else if (mod_holo->parsed()) {
      report.command = "module holo-residual";
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(m_g, m_om_re, m_om_im));
      nctheta::PolyGaussianVector v =
          m_vector.empty() ? nctheta::theta_vector(om)
                           : nctheta::poly_gaussian_from_json(load_argument(m_vector));
      report.inputs = {{"g", m_g},
                       {"omega", json::parse(nctheta::to_json(om.omega))},
                       {"vector", json::parse(nctheta::to_json(v))}};
      double r = nctheta::holomorphic_residual(om, v);
      report.results = {{"residual", r}};
      report.residual("holomorphicity", r, m_vector.empty() ? 1e-12 : 1e308);
    } else if (mod_curv->parsed()) {
      report.command = "module curvature";
      nctheta::ThetaMatrix theta =
          m_theta.empty()
              ? nctheta::ThetaMatrix::standard_symplectic(m_g)
              : nctheta::ThetaMatrix::checked(nctheta::rmatrix_from_json(load_argument(m_theta)));
      nctheta::PolyGaussianVector v =
          m_vector.empty()
              ? nctheta::theta_vector(nctheta::SiegelPoint::checked(
                    Complex(0, 1) * nctheta::CMatrix::Identity(theta.d / 2, theta.d / 2)))
              : nctheta::poly_gaussian_from_json(load_argument(m_vector));
      report.inputs = {{"theta", json::parse(nctheta::to_json(theta.theta))},
                       {"vector", json::parse(nctheta::to_json(v))}};
      double r = nctheta::curvature_residual(theta, v);
      report.results = {{"residual", r}};
      report.residual("curvature", r, 1e-11);
    } else if (corr_check->parsed()) {
      report.command = "corr check";
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(c_g, c_om_re, c_om_im));
      report.inputs = {{"g", c_g},
                       {"omega", json::parse(nctheta::to_json(om.omega))},
                       {"grid", c_grid},
                       {"tol", c_tol}};
      nctheta::CorrespondenceReport rep = nctheta::check_theta_correspondence(om, c_grid, c_tol);
      report.results = json::parse(nctheta::to_json(rep));
      if (!c_csv.empty()) {
        std::ofstream out(c_csv);
        out << nctheta::to_csv(rep);
      }
      report.residual("max_residual", rep.max_residual, c_max_residual);
    } else if (corr_round->parsed()) {
      report.command = "corr roundtrip";
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(c_g, c_om_re, c_om_im));
      nctheta::PolyGaussianVector tau = nctheta::theta_vector(om);
      int radius = nctheta::tilde_radius(tau, c_tol);
      int grid_n = c_grid_n > 0 ? c_grid_n : 2 * radius + 2;
      double worst = 0.0;
      for (int t = 0; t < c_points; ++t) {
        nctheta::RVector x(c_g);
        for (int i = 0; i < c_g; ++i)
          x(i) = -2.0 + 4.0 * (t + 0.5 + 0.13 * i) / c_points;
        Complex rec = nctheta::reconstruct(tau, x, grid_n, c_tol);
        worst = std::max(worst, std::abs(rec - tau.evaluate_real(x)));
      }
      report.inputs = {{"g", c_g},
                       {"omega", json::parse(nctheta::to_json(om.omega))},
                       {"points", c_points},
                       {"grid_n", grid_n}};
      report.results = {{"max_error", worst}, {"radius", radius}};
      report.residual("roundtrip", worst, 1e-8);
    } else if (meta_cov->parsed()) {
      report.command = "meta covariance";
      auto word = nctheta::metaplectic_word_from_json(load_argument(w_word));
      nctheta::SiegelPoint om =
          nctheta::SiegelPoint::checked(omega_from_flags(w_g, w_om_re, w_om_im));
      report.inputs = {{"word", json::parse(load_argument(w_word))},
                       {"omega", json::parse(nctheta::to_json(om.omega))}};
      double r = nctheta::check_theta_covariance(word, om);
      report.results = {{"ray_residual", r}};
      report.residual("ray_residual", r, 1e-9);
    } else if (meta_calpha->parsed()) {
      report.command = "meta c-alpha";
      nctheta::SymplecticIntMatrix gamma =
          nctheta::SymplecticIntMatrix::checked(gamma_from_string(w_gamma));
      nctheta::ThetaMatrix theta =
          w_theta.empty()
              ? nctheta::ThetaMatrix::standard_symplectic(gamma.g)
              : nctheta::ThetaMatrix::checked(nctheta::rmatrix_from_json(load_argument(w_theta)));
      std::vector<Complex> phases = nctheta::c_alpha(gamma, theta);
      bool all_one = true;
      json phases_json = json::array();
      for (Complex c : phases) {
        phases_json.push_back(complex_json(c));
        if (std::abs(c - Complex(1, 0)) > 1e-9) all_one = false;
      }
      bool member = nctheta::is_in_gamma12(gamma);
      report.inputs = {{"gamma", w_gamma},
                       {"theta", json::parse(nctheta::to_json(theta.theta))}};
      report.results = {{"phases", phases_json},
                        {"all_phases_one", all_one},
                        {"in_gamma12", member},
                        {"consistent", all_one == member}};
      report.flag("phase/membership consistency", all_one == member);
    } else if (meta_scan->parsed()) {
      report.command = "meta scan";
      nctheta::Gamma12ScanReport scan = nctheta::gamma12_criterion_scan(w_g, w_maxlen);
      json counter = json::array();
      for (const auto& m : scan.counterexamples) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
          rows.push_back(row);
        }
        counter.push_back(rows);
      }
      report.inputs = {{"g", w_g}, {"max_len", w_maxlen}};
      report.results = {{"words_checked", scan.words_checked},
                        {"distinct_matrices", scan.distinct_matrices},
                        {"counterexamples", counter}};
      report.flag("no counterexamples", scan.counterexamples.empty());
    } else if (dual_tr->parsed()) {
      report.command = "dual transform";
      auto word = nctheta::duality_word_from_json(load_argument(d_word));
      nctheta::ThetaMatrix theta =
          nctheta::ThetaMatrix::checked(nctheta::rmatrix_from_json(load_argument(d_theta)));
      nctheta::BimoduleTriple triple = nctheta::BimoduleTriple::from_word(theta, word);
      report.inputs = {{"word", json::parse(load_argument(d_word))},
                       {"theta", json::parse(nctheta::to_json(theta.theta))}};
      nctheta::RMatrix asym =
          triple.theta_hat.theta + nctheta::RMatrix(triple.theta_hat.theta.transpose());
      report.results = {{"theta_hat", json::parse(nctheta::to_json(triple.theta_hat.theta))}};
      report.residual("antisymmetry", nctheta::max_abs(asym), 1e-10);
    } else if (dual_dim->parsed()) {
      report.command = "dual dim";
      auto word = nctheta::duality_word_from_json(load_argument(d_word));
      int dim = word.empty() ? d_d : word.front().d;
      nctheta::BimoduleTriple triple =
          nctheta::BimoduleTriple::from_word(nctheta::ThetaMatrix::zero(dim), word);
      long long n = nctheta::theta_vector_dimension(triple);
      report.inputs = {{"word", json::parse(load_argument(d_word))}, {"d", dim}};
      report.results = {{"N", n}, {"dimension_claim_verified", false}};
    } else if (verify_all->parsed()) {
      report.command = "verify all";
      nctheta::AcceptanceOptions options;
      options.quick = v_quick;
      options.seed = seed;
      auto results = nctheta::run_acceptance(options);
      json criteria = json::array();
      for (const auto& r : results) {
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name;
        if (!r.details.empty()) std::cerr << " (" << r.details << ")";
        std::cerr << "\n";
        json residuals = json::array();
        for (const auto& res : r.residuals) {
          std::cerr << "         " << res.name << " = " << res.value
                    << "  (tolerance " << res.tolerance << ")\n";
          residuals.push_back(
              {{"name", res.name}, {"value", res.value}, {"tolerance", res.tolerance}});
          report.residual("c" + std::to_string(r.id) + ": " + res.name, res.value, res.tolerance);
        }
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"pass", r.pass},
                            {"details", r.details},
                            {"residuals", residuals}});
      }
      report.inputs = {{"quick", v_quick}, {"seed", seed}};
      report.results = {{"criteria", criteria}, {"all_pass", nctheta::all_pass(results)}};
    }
  } catch (const Error& e) {
    json out;
    out["command"] = report.command;
    out["error"] = {{"kind", nctheta::error_kind_name(e.kind())}, {"message", e.what()}};
    std::cout << out.dump(2) << "\n";
    return e.kind() == ErrorKind::Parse ? 2 : 1;
  }
  return emit(report, start);
}
