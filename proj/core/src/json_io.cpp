#include "nctheta/json_io.hpp"

#include <sstream>

#include <json.hpp>

namespace nctheta {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::Parse, "malformed JSON");
  return j;
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, "complex scalar must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json rmatrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix rmatrix_from(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "matrix must be a nested array");
  const auto rows = j.size();
  const auto cols = j[0].size();
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error(ErrorKind::Parse, "ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw Error(ErrorKind::Parse, "matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix cmatrix_from(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "matrix must be a nested array");
  const auto rows = j.size();
  const auto cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error(ErrorKind::Parse, "ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector cvector_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "vector must be an array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

IMatrix imatrix_from(const json& j) {
  RMatrix real = rmatrix_from(j);
  IMatrix m(real.rows(), real.cols());
  for (Eigen::Index i = 0; i < real.rows(); ++i)
    for (Eigen::Index k = 0; k < real.cols(); ++k) {
      double v = real(i, k);
      long long r = std::llround(v);
      if (std::abs(v - static_cast<double>(r)) > 1e-9)
        throw Error(ErrorKind::Parse, "expected integer matrix entries");
      m(i, k) = r;
    }
  return m;
}

}  // namespace

std::string to_json(const RMatrix& m) { return rmatrix_to_json(m).dump(); }
std::string to_json(const CMatrix& m) { return cmatrix_to_json(m).dump(); }
std::string to_json(const CVector& v) { return cvector_to_json(v).dump(); }
RMatrix rmatrix_from_json(const std::string& text) { return rmatrix_from(parse(text)); }
CMatrix cmatrix_from_json(const std::string& text) { return cmatrix_from(parse(text)); }
CVector cvector_from_json(const std::string& text) { return cvector_from(parse(text)); }

std::string to_json(const NcElement& f) {
  json terms = json::array();
  for (const auto& [n, c] : f.coeffs()) {
    json t;
    t["n"] = n;
    t["c"] = complex_to_json(c);
    terms.push_back(std::move(t));
  }
  json out;
  out["d"] = f.d();
  out["terms"] = std::move(terms);
  return out.dump();
}

NcElement nc_element_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("d") || !j.contains("terms"))
    throw Error(ErrorKind::Parse, "element needs 'd' and 'terms'");
  NcElement f(j["d"].get<int>());
  for (const auto& t : j["terms"]) {
    std::vector<long long> n = t.at("n").get<std::vector<long long>>();
    f.add_term(n, complex_from_json(t.at("c")));
  }
  return f;
}

std::string to_json(const PolyGaussianVector& v) {
  json terms = json::array();
  for (const auto& t : v.terms()) {
    json poly = json::array();
    for (const auto& [m, c] : t.poly.terms()) {
      json mono;
      mono["k"] = m;
      mono["c"] = complex_to_json(c);
      poly.push_back(std::move(mono));
    }
    json term;
    term["poly"] = std::move(poly);
    term["Q"] = cmatrix_to_json(t.quadratic);
    term["b"] = cvector_to_json(t.linear);
    terms.push_back(std::move(term));
  }
  json out;
  out["g"] = v.g();
  out["terms"] = std::move(terms);
  return out.dump();
}

PolyGaussianVector poly_gaussian_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("g") || !j.contains("terms"))
    throw Error(ErrorKind::Parse, "vector needs 'g' and 'terms'");
  const int g = j["g"].get<int>();
  PolyGaussianVector v(g);
  for (const auto& term : j["terms"]) {
    Poly poly(g);
    for (const auto& mono : term.at("poly")) {
      std::vector<int> k = mono.at("k").get<std::vector<int>>();
      poly.add_term(k, complex_from_json(mono.at("c")));
    }
    v.append(PolyGaussianTerm::checked(std::move(poly), cmatrix_from(term.at("Q")),
                                       cvector_from(term.at("b"))));
  }
  return v;
}

ThetaQuery theta_query_from_json(const std::string& text) {
  json j = parse(text);
  for (const char* key : {"g", "z", "omega", "tol"})
    if (!j.contains(key)) throw Error(ErrorKind::Parse, "theta query is missing a field");
  int g = j["g"].get<int>();
  CVector z = cvector_from(j["z"]);
  CMatrix omega = cmatrix_from(j["omega"]);
  if (z.size() != g || omega.rows() != g)
    throw Error(ErrorKind::Parse, "theta query dimensions disagree");
  return ThetaQuery::checked(std::move(z), SiegelPoint::checked(std::move(omega)),
                             j["tol"].get<double>());
}

std::string to_json(const ThetaResult& r) {
  json out;
  out["value"] = complex_to_json(r.value);
  out["radius"] = r.radius;
  out["tail_bound"] = r.tail_bound;
  return out.dump();
}

std::vector<MetaplecticGenerator> metaplectic_word_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_array()) throw Error(ErrorKind::Parse, "word must be an array of generators");
  std::vector<MetaplecticGenerator> word;
  for (const auto& gen : j) {
    std::string kind = gen.at("kind").get<std::string>();
    if (kind == "fourier") {
      word.push_back(MetaplecticGenerator::fourier(gen.at("g").get<int>()));
    } else if (kind == "shear") {
      word.push_back(MetaplecticGenerator::shear(imatrix_from(gen.at("B"))));
    } else if (kind == "linear") {
      word.push_back(MetaplecticGenerator::linear(imatrix_from(gen.at("A"))));
    } else {
      throw Error(ErrorKind::Parse, "unknown generator kind: " + kind);
    }
  }
  return word;
}

std::vector<DualityGenerator> duality_word_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_array()) throw Error(ErrorKind::Parse, "word must be an array of generators");
  std::vector<DualityGenerator> word;
  for (const auto& gen : j) {
    std::string kind = gen.at("kind").get<std::string>();
    if (kind == "gl") {
      word.push_back(DualityGenerator::gl(imatrix_from(gen.at("A"))));
    } else if (kind == "shear") {
      word.push_back(DualityGenerator::shear(imatrix_from(gen.at("N"))));
    } else if (kind == "flip") {
      word.push_back(DualityGenerator::flip(gen.at("d").get<int>(), gen.at("i").get<int>()));
    } else {
      throw Error(ErrorKind::Parse, "unknown generator kind: " + kind);
    }
  }
  return word;
}

std::string to_json(const CorrespondenceReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    json row;
    row["rho"] = std::vector<double>(s.rho.data(), s.rho.data() + s.rho.size());
    row["sigma"] = std::vector<double>(s.sigma.data(), s.sigma.data() + s.sigma.size());
    row["lhs"] = complex_to_json(s.lhs);
    row["rhs"] = complex_to_json(s.rhs);
    row["residual"] = s.residual;
    samples.push_back(std::move(row));
  }
  json out;
  out["samples"] = std::move(samples);
  out["max_residual"] = report.max_residual;
  return out.dump();
}

std::string to_csv(const CorrespondenceReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "rho,sigma,lhs_re,lhs_im,rhs_re,rhs_im,residual\n";
  auto join = [](const RVector& v) {
    std::ostringstream o;
    o.precision(17);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) o << ';';
      o << v(i);
    }
    return o.str();
  };
  for (const auto& s : report.samples) {
    os << join(s.rho) << ',' << join(s.sigma) << ',' << s.lhs.real() << ',' << s.lhs.imag()
       << ',' << s.rhs.real() << ',' << s.rhs.imag() << ',' << s.residual << '\n';
  }
  return os.str();
}

}  // namespace nctheta
