#ifndef NCTHETA_METAPLECTIC_HPP
#define NCTHETA_METAPLECTIC_HPP

#include <vector>

#include "nctheta/schwartz.hpp"

namespace nctheta {

// Unitary generators acting on the symbolic Schwartz space:
//   Linear(A):  (V f)(x) = |det A|^{1/2} f(A^t x),        A in GL(g, Z)
//   Shear(B):   (V f)(x) = exp(pi i x^t B x) f(x),        B integer symmetric
//   Fourier:    (V f)(x) = integral f(y) exp(2 pi i x^t y) dy
// Each generator carries the integer symplectic matrix whose fractional-linear
// action matches its effect on Gaussian exponents:
//   Linear(A)  -> [[A, 0], [0, (A^{-1})^t]]   (Omega -> A Omega A^t)
//   Shear(B)   -> [[I, B], [0, I]]            (Omega -> Omega + B)
//   Fourier    -> [[0, -I], [I, 0]]           (Omega -> -Omega^{-1})
// Odd-diagonal shears are allowed; they generate matrices outside the theta
// subgroup and serve as its distinguishing probes.
struct MetaplecticGenerator {
  enum class Kind { Linear, Shear, Fourier };

  Kind kind = Kind::Fourier;
  int g = 0;
  IMatrix parameter;  // A for Linear, B for Shear, unused for Fourier

  static MetaplecticGenerator linear(IMatrix a);
  static MetaplecticGenerator shear(IMatrix b);
  static MetaplecticGenerator fourier(int g);

  SymplecticIntMatrix symplectic() const;
  // G with V nabla_a V^{-1} = sum_b G_{ab} nabla_b in the literal frame.
  IMatrix conjugation_matrix() const;
};

PolyGaussianVector apply_v_gamma(const MetaplecticGenerator& gen,
                                 const PolyGaussianVector& v);
PolyGaussianVector apply_v_word(const std::vector<MetaplecticGenerator>& word,
                                const PolyGaussianVector& v);
SymplecticIntMatrix word_symplectic(const std::vector<MetaplecticGenerator>& word, int g);

// Ray deviation of V_word(theta vector of Omega) from the theta vector of the
// transformed Omega: min over scalars c of |w - c t| / |w|.
double check_theta_covariance(const std::vector<MetaplecticGenerator>& word,
                              const SiegelPoint& omega);

// Reordering phases c_a = exp(pi i sum_{l<m} gamma_{al} theta^{lm} gamma_{am});
// the row-of-gamma convention matches the increasing-index generator product
// in check_transformed_generators.
std::vector<Complex> c_alpha(const SymplecticIntMatrix& gamma, const ThetaMatrix& theta);

// Pointwise residual of exp(sum_l gamma_{al} K_l) v against
// c_a U_1^{gamma_{a1}} ... U_d^{gamma_{ad}} v, maximized over rows a.
// Dropping the phase (include_phase = false) isolates its necessity.
double check_transformed_generators(const SymplecticIntMatrix& gamma,
                                    const ThetaMatrix& theta,
                                    const PolyGaussianVector& v,
                                    bool include_phase = true);

// Product formula for exponentials with central commutators:
//   exp(K_1 + ... + K_n) = exp(-1/2 sum_{i<j} [K_i, K_j]) e^{K_1} ... e^{K_n}.
// Returns the pointwise discrepancy of the two sides on a probe Gaussian.
double bch_phase_check(const std::vector<WeylExponent>& exponents);

struct Gamma12ScanReport {
  long long words_checked = 0;
  long long distinct_matrices = 0;
  std::vector<IMatrix> counterexamples;
};

// Breadth-first scan over generator words (theta-subgroup generators plus
// odd-shear probes) verifying: all c_a = 1 iff the matrix passes the
// even-diagonal membership test.
Gamma12ScanReport gamma12_criterion_scan(int g, int max_word_len);

}  // namespace nctheta

#endif
