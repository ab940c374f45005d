#ifndef NCTHETA_LINALG_HPP
#define NCTHETA_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

#include "nctheta/errors.hpp"

namespace nctheta {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using IMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using IVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

// Standard symplectic form [[0, I], [-I, 0]] of size 2g x 2g.
IMatrix standard_symplectic_int(int g);
RMatrix standard_symplectic_real(int g);

double max_abs(const CMatrix& m);
double max_abs(const RMatrix& m);

bool is_symmetric(const CMatrix& m, double tol);
bool is_antisymmetric(const RMatrix& m, double tol);

// Smallest eigenvalue of a (symmetrized) real matrix.
double min_eigenvalue_sym(const RMatrix& m);

// Cholesky succeeds with strictly positive pivots.
bool is_positive_definite_sym(const RMatrix& m);

// Ratio of extreme singular values; infinity when singular.
double condition_number(const CMatrix& m);

CMatrix solve_right(const CMatrix& a, const CMatrix& rhs);  // a^{-1} * rhs
CMatrix inverse(const CMatrix& a);
RMatrix inverse(const RMatrix& a);

// Exact inverse of an integer matrix with |det| = 1 (adjugate method).
IMatrix unimodular_inverse(const IMatrix& a);
long long integer_determinant(const IMatrix& a);

inline Complex principal_sqrt(Complex z) { return std::sqrt(z); }

// Bilinear (non-conjugating) dot product u^t v.
inline Complex bdot(const CVector& u, const CVector& v) {
  return (u.transpose() * v)(0, 0);
}

}  // namespace nctheta

#endif
