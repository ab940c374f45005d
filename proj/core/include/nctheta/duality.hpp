#ifndef NCTHETA_DUALITY_HPP
#define NCTHETA_DUALITY_HPP

#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "nctheta/nc_algebra.hpp"

namespace nctheta {

using Rational = boost::rational<long long>;

// Element of the Grassmann algebra on d generators, stored as a map from
// generator subsets (bitmask, bit i = generator i+1) to exact rational
// coefficients. Basis monomials are ordered with increasing generator index.
class GrassmannElement {
 public:
  using Coeffs = std::map<std::uint32_t, Rational>;

  explicit GrassmannElement(int d);

  static GrassmannElement one(int d);
  static GrassmannElement generator(int d, int index);  // 1-based

  int d() const { return d_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Rational coeff(std::uint32_t mask) const;
  Rational scalar_part() const { return coeff(0); }

  void add_term(std::uint32_t mask, const Rational& c);

  GrassmannElement operator+(const GrassmannElement& other) const;
  GrassmannElement operator-(const GrassmannElement& other) const;
  GrassmannElement scaled(const Rational& s) const;

 private:
  int d_;
  Coeffs coeffs_;
};

GrassmannElement grassmann_multiply(const GrassmannElement& a, const GrassmannElement& b);
// exp of a nilpotent element (zero scalar part); terminates at degree d.
GrassmannElement grassmann_exp(const GrassmannElement& a);
// Coefficient of the top monomial a^1 a^2 ... a^d.
Rational berezin_top(const GrassmannElement& mu);

// Split-form integer matrix: g^t q g = q with q = [[0, I], [I, 0]].
struct SODDMatrix {
  int d = 0;
  IMatrix entries;

  IMatrix blockM() const { return entries.topLeftCorner(d, d); }
  IMatrix blockN() const { return entries.topRightCorner(d, d); }
  IMatrix blockR() const { return entries.bottomLeftCorner(d, d); }
  IMatrix blockS() const { return entries.bottomRightCorner(d, d); }

  static SODDMatrix checked(IMatrix entries);
  static SODDMatrix identity(int d);
};

// Partial fractional-linear action theta -> (M theta + N)(R theta + S)^{-1}.
ThetaMatrix fractional_transform(const SODDMatrix& g, const ThetaMatrix& theta);

// Standard generator families of the split orthogonal group.
struct DualityGenerator {
  enum class Kind { GL, Shear, Flip };

  Kind kind = Kind::Flip;
  int d = 0;
  IMatrix parameter;  // A for GL, antisymmetric N for Shear
  int flip_index = 0; // 1-based, Flip only

  static DualityGenerator gl(IMatrix a);
  static DualityGenerator shear(IMatrix n);
  static DualityGenerator flip(int d, int index);

  SODDMatrix matrix() const;
};

// Spinor action on the Grassmann algebra:
//   GL(A):   exterior-power map of A (plain functor, no determinant factor),
//   Shear:   left multiplication by exp(sum_{i<j} N_{ij} a^i a^j),
//   Flip(i): creation/annihilation swap on generator i.
GrassmannElement spinor_action(const DualityGenerator& g, const GrassmannElement& mu);
GrassmannElement spinor_action_word(const std::vector<DualityGenerator>& word,
                                    const GrassmannElement& mu);

// Basic bimodule data: theta, its image theta_hat, and the group element as a
// word of standard generators (applied left to right).
struct BimoduleTriple {
  ThetaMatrix theta;
  ThetaMatrix theta_hat;
  std::vector<DualityGenerator> word;
  SODDMatrix g;

  static BimoduleTriple from_word(ThetaMatrix theta, std::vector<DualityGenerator> word);
};

// Top Berezin coefficient of S(g) 1; sign is reported as computed.
long long theta_vector_dimension(const BimoduleTriple& triple);

BimoduleTriple compose_triples(const BimoduleTriple& t1, const BimoduleTriple& t2);

}  // namespace nctheta

#endif
