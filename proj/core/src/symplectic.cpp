#include "nctheta/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace nctheta {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSubspaceTol = 1e-10;

}  // namespace

IMatrix standard_symplectic_int(int g) {
  IMatrix j = IMatrix::Zero(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

RMatrix standard_symplectic_real(int g) {
  return standard_symplectic_int(g).cast<double>();
}

double max_abs(const CMatrix& m) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

double max_abs(const RMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(CMatrix(m - m.transpose())) <= tol;
}

bool is_antisymmetric(const RMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(RMatrix(m + m.transpose())) <= tol;
}

double min_eigenvalue_sym(const RMatrix& m) {
  RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_positive_definite_sym(const RMatrix& m) {
  RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::LLT<RMatrix> llt(sym);
  return llt.info() == Eigen::Success && min_eigenvalue_sym(sym) > 0.0;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

CMatrix solve_right(const CMatrix& a, const CMatrix& rhs) {
  return a.partialPivLu().solve(rhs);
}

CMatrix inverse(const CMatrix& a) {
  return a.partialPivLu().solve(CMatrix::Identity(a.rows(), a.cols()));
}

RMatrix inverse(const RMatrix& a) {
  return a.partialPivLu().solve(RMatrix::Identity(a.rows(), a.cols()));
}

long long integer_determinant(const IMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::Dimension, "determinant of non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  long long det = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    long long sign = (j % 2 == 0) ? 1 : -1;
    det += sign * a(0, j) * integer_determinant(minor);
  }
  return det;
}

IMatrix unimodular_inverse(const IMatrix& a) {
  const Eigen::Index n = a.rows();
  long long det = integer_determinant(a);
  if (det != 1 && det != -1)
    throw Error(ErrorKind::Precondition, "matrix is not unimodular");
  IMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      IMatrix minor(n - 1, n - 1);
      Eigen::Index rr = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (r == j) continue;
        Eigen::Index cc = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      long long sign = ((i + j) % 2 == 0) ? 1 : -1;
      long long cof = (n == 1) ? 1 : sign * integer_determinant(minor);
      inv(i, j) = cof * det;  // det = +-1, so this divides exactly
    }
  }
  return inv;
}

SiegelPoint SiegelPoint::checked(CMatrix omega) {
  if (omega.rows() != omega.cols() || omega.rows() == 0)
    throw Error(ErrorKind::Dimension, "Siegel point must be square and nonempty");
  if (!is_symmetric(omega, kSymmetryTol))
    throw Error(ErrorKind::Precondition, "Siegel point must be symmetric");
  if (!is_positive_definite_sym(omega.imag()))
    throw Error(ErrorKind::Positivity, "imaginary part must be positive definite");
  SiegelPoint p;
  p.g = static_cast<int>(omega.rows());
  p.omega = std::move(omega);
  return p;
}

SymplecticIntMatrix SymplecticIntMatrix::checked(IMatrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 || entries.rows() == 0)
    throw Error(ErrorKind::Dimension, "symplectic matrix must be square of even size");
  if (!is_symplectic(entries))
    throw Error(ErrorKind::Precondition, "matrix does not preserve the symplectic form");
  SymplecticIntMatrix m;
  m.g = static_cast<int>(entries.rows() / 2);
  m.entries = std::move(entries);
  return m;
}

SymplecticIntMatrix SymplecticIntMatrix::identity(int g) {
  return checked(IMatrix::Identity(2 * g, 2 * g));
}

LagrangianBasis LagrangianBasis::checked(CMatrix basis) {
  if (basis.rows() == 0 || basis.rows() % 2 != 0 || basis.cols() != basis.rows() / 2)
    throw Error(ErrorKind::Dimension, "Lagrangian basis must be 2g x g");
  const int g = static_cast<int>(basis.cols());
  CMatrix j = standard_symplectic_real(g).cast<Complex>();
  CMatrix gram = basis.transpose() * j * basis;  // bilinear, no conjugation
  if (max_abs(gram) > kSubspaceTol)
    throw Error(ErrorKind::Precondition, "columns are not symplectically orthogonal");
  Eigen::JacobiSVD<CMatrix> svd(basis);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= kSubspaceTol * std::max(1.0, smax))
    throw Error(ErrorKind::Precondition, "basis is rank deficient");
  LagrangianBasis b;
  b.g = g;
  b.basis = std::move(basis);
  return b;
}

AntisymmetricRealMatrix AntisymmetricRealMatrix::checked(RMatrix entries, bool require_nondegenerate) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw Error(ErrorKind::Dimension, "antisymmetric matrix must be square");
  if (!is_antisymmetric(entries, kSymmetryTol))
    throw Error(ErrorKind::Precondition, "matrix is not antisymmetric");
  if (require_nondegenerate) {
    double det = entries.determinant();
    if (std::abs(det) <= 1e-10)
      throw Error(ErrorKind::Singularity, "antisymmetric form is degenerate");
  }
  AntisymmetricRealMatrix a;
  a.d = static_cast<int>(entries.rows());
  a.entries = std::move(entries);
  return a;
}

bool is_symplectic(const IMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Dimension, "matrix must be square");
  if (m.rows() % 2 != 0) throw Error(ErrorKind::Dimension, "matrix must have even size");
  const int g = static_cast<int>(m.rows() / 2);
  IMatrix j = standard_symplectic_int(g);
  return (m.transpose() * j * m - j).isZero(0);
}

SiegelPoint mobius_action(const SymplecticIntMatrix& gamma, const SiegelPoint& omega) {
  if (gamma.g != omega.g)
    throw Error(ErrorKind::Dimension, "matrix and Siegel point dimensions differ");
  CMatrix a = gamma.blockA().cast<double>().cast<Complex>();
  CMatrix b = gamma.blockB().cast<double>().cast<Complex>();
  CMatrix c = gamma.blockC().cast<double>().cast<Complex>();
  CMatrix d = gamma.blockD().cast<double>().cast<Complex>();
  CMatrix denom = c * omega.omega + d;
  if (condition_number(denom) > 1e12)
    throw Error(ErrorKind::Singularity, "C Omega + D is numerically singular");
  CMatrix num = a * omega.omega + b;
  // (A Omega + B)(C Omega + D)^{-1} via X = num * denom^{-1}, i.e. solve X denom = num.
  CMatrix result = denom.transpose().partialPivLu().solve(num.transpose()).transpose();
  return SiegelPoint::checked(std::move(result));
}

bool is_in_gamma12(const SymplecticIntMatrix& gamma) {
  IMatrix ab = gamma.blockA() * gamma.blockB().transpose();
  IMatrix cd = gamma.blockC() * gamma.blockD().transpose();
  for (int i = 0; i < gamma.g; ++i) {
    if (ab(i, i) % 2 != 0) return false;
    if (cd(i, i) % 2 != 0) return false;
  }
  return true;
}

bool is_positive_lagrangian(const CMatrix& omega) {
  if (omega.rows() != omega.cols())
    throw Error(ErrorKind::Dimension, "matrix must be square");
  if (!is_symmetric(omega, 1e-10))
    throw Error(ErrorKind::Precondition, "matrix must be symmetric");
  return min_eigenvalue_sym(omega.imag()) > 0.0;
}

namespace {

// Apply the partial Fourier swap on the listed 1-based indices to a stacked
// [X; P] basis: row a <- old row g+a, row g+a <- -old row a.
CMatrix apply_swaps(const CMatrix& basis, const std::vector<int>& swaps, int g) {
  CMatrix out = basis;
  for (int a : swaps) {
    out.row(a - 1) = basis.row(g + a - 1);
    out.row(g + a - 1) = -basis.row(a - 1);
  }
  return out;
}

}  // namespace

LagrangianNormalForm normalize_lagrangian(const LagrangianBasis& basis) {
  const int g = basis.g;
  // Deterministic chart search: subsets ordered by size then lexicographically,
  // first one whose x-projection is well conditioned wins.
  std::vector<std::vector<int>> subsets;
  for (int size = 0; size <= g; ++size) {
    std::vector<int> idx(size);
    std::function<void(int, int)> rec = [&](int start, int k) {
      if (k == size) {
        subsets.push_back(idx);
        return;
      }
      for (int i = start; i <= g; ++i) {
        idx[k] = i;
        rec(i + 1, k + 1);
      }
    };
    rec(1, 0);
  }

  for (const auto& swaps : subsets) {
    CMatrix swapped = apply_swaps(basis.basis, swaps, g);
    CMatrix x = swapped.topRows(g);
    CMatrix p = swapped.bottomRows(g);
    Eigen::JacobiSVD<CMatrix> svd(x);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (smin <= 1e-6 * std::max(1.0, smax)) continue;
    // Graph form p = -Omega x, so Omega = -P X^{-1}.
    CMatrix omega = -(x.transpose().partialPivLu().solve(p.transpose())).transpose();
    omega = 0.5 * (omega + omega.transpose().eval());
    double residual = max_abs(CMatrix(p + omega * x));
    if (residual > kSubspaceTol) continue;
    LagrangianNormalForm nf;
    nf.omega = std::move(omega);
    nf.swaps = swaps;
    nf.residual = residual;
    return nf;
  }
  throw Error(ErrorKind::Degeneracy,
              "no coordinate swap yields an invertible x-projection");
}

RMatrix darboux_standardize(const AntisymmetricRealMatrix& omega) {
  const int d = omega.d;
  if (d % 2 != 0) throw Error(ErrorKind::Dimension, "dimension must be even");
  const int g = d / 2;
  const RMatrix& w = omega.entries;
  auto pairing = [&](const RVector& u, const RVector& v) { return u.dot(w * v); };

  // Symplectic Gram-Schmidt: build pairs (a_i, b_i) with w(a_i, b_j) = delta_ij,
  // w(a_i, a_j) = w(b_i, b_j) = 0.
  std::vector<RVector> pool;
  for (int i = 0; i < d; ++i) pool.push_back(RVector::Unit(d, i));
  std::vector<RVector> avecs, bvecs;

  for (int k = 0; k < g; ++k) {
    // Largest remaining vector, then the partner with the largest pairing.
    std::size_t ia = 0;
    for (std::size_t i = 1; i < pool.size(); ++i)
      if (pool[i].norm() > pool[ia].norm()) ia = i;
    if (pool[ia].norm() <= 1e-12)
      throw Error(ErrorKind::Singularity, "form is degenerate");
    RVector a = pool[ia] / pool[ia].norm();

    std::size_t ib = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ia) continue;
      double p = std::abs(pairing(a, pool[i]));
      if (p > best) {
        best = p;
        ib = i;
      }
    }
    if (best <= 1e-12) throw Error(ErrorKind::Singularity, "form is degenerate");
    RVector b = pool[ib] / pairing(a, pool[ib]);  // w(a, b) = 1

    std::vector<RVector> next;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ia || i == ib) continue;
      const RVector& u = pool[i];
      // u' = u + w(b,u) a - w(a,u) b kills both pairings.
      next.push_back(u + pairing(b, u) * a - pairing(a, u) * b);
    }
    pool = std::move(next);
    avecs.push_back(std::move(a));
    bvecs.push_back(std::move(b));
  }

  RMatrix t(d, d);
  for (int i = 0; i < g; ++i) {
    t.col(i) = avecs[i];
    t.col(g + i) = bvecs[i];
  }
  RMatrix check = t.transpose() * w * t - standard_symplectic_real(g);
  if (max_abs(check) > kSubspaceTol)
    throw Error(ErrorKind::Singularity, "Darboux standardization failed");
  return t;
}

}  // namespace nctheta
