#ifndef SPECNET_MATRIX_HPP
#define SPECNET_MATRIX_HPP

// Dense symmetric linear algebra: top-d eigenpairs, rank-d truncation,
// adjacency spectral embedding, norms and Procrustes alignment.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "specnet/error.hpp"

namespace specnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Dense real symmetric matrix. Entries (i,j) and (j,i) are always bit-identical
/// and finite.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  explicit SymmetricMatrix(Index n) : m_(Matrix::Zero(n, n)) {}

  /// Accepts `m` when |m(i,j) - m(j,i)| <= tol * (1 + max(|m(i,j)|, |m(j,i)|)) for all
  /// pairs; the stored matrix takes the average of each mirrored pair. Throws
  /// SymmetryError naming the first offending entry otherwise.
  static SymmetricMatrix from_dense(const Matrix& m, double tol = 1e-9) {
    if (m.rows() != m.cols()) {
      throw InvalidArgument("symmetric matrix must be square, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
    }
    SymmetricMatrix out(m.rows());
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i <= j; ++i) {
        const double a = m(i, j);
        const double b = m(j, i);
        if (!std::isfinite(a) || !std::isfinite(b)) {
          throw InvalidArgument("non-finite entry at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
        }
        if (std::abs(a - b) > tol * (1.0 + std::max(std::abs(a), std::abs(b)))) {
          throw SymmetryError(i, j, a, b);
        }
        const double v = (a == b) ? a : 0.5 * (a + b);
        out.m_(i, j) = v;
        out.m_(j, i) = v;
      }
    }
    return out;
  }

  /// Builds from the upper triangle of `m`, ignoring the strict lower triangle.
  static SymmetricMatrix from_upper(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("symmetric matrix must be square");
    SymmetricMatrix out(m.rows());
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i <= j; ++i) {
        if (!std::isfinite(m(i, j))) throw InvalidArgument("non-finite entry");
        out.m_(i, j) = m(i, j);
        out.m_(j, i) = m(i, j);
      }
    }
    return out;
  }

  static SymmetricMatrix identity(Index n, double scale = 1.0) {
    SymmetricMatrix out(n);
    out.m_.diagonal().setConstant(scale);
    return out;
  }

  Index size() const noexcept { return m_.rows(); }
  const Matrix& dense() const noexcept { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  void set(Index i, Index j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Top eigenpairs: values descending, vectors as orthonormal columns.
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

/// Latent-position estimate, one row per vertex.
struct Embedding {
  Matrix coords;
};

enum class NormKind { frobenius, spectral, two_inf };

inline std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::frobenius:
      return "frobenius";
    case NormKind::spectral:
      return "spectral";
    case NormKind::two_inf:
      return "two_inf";
  }
  return "?";
}

inline NormKind parse_norm(std::string_view s) {
  if (s == "frobenius") return NormKind::frobenius;
  if (s == "spectral") return NormKind::spectral;
  if (s == "two_inf") return NormKind::two_inf;
  throw InvalidArgument("unknown norm '" + std::string(s) + "'");
}

namespace detail {

// Flip each column so its first clearly nonzero component is positive.
inline void fix_signs(Matrix& vectors) {
  for (Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    const double cutoff = 1e-10 * col.cwiseAbs().maxCoeff();
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > cutoff) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
  }
}

inline void check_rank(Index n, int d) {
  if (d < 1 || d > n) {
    throw InvalidArgument("rank d=" + std::to_string(d) + " outside [1, " + std::to_string(n) + "]");
  }
}

inline double kept_tolerance(double lambda1) { return 1e-8 * (1.0 + std::abs(lambda1)); }

}  // namespace detail

/// Full dense decomposition (Householder tridiagonalization + implicit QR),
/// reduced to the d algebraically largest pairs.
inline EigenPairs sym_eigen_topd(const SymmetricMatrix& a, int d) {
  const Index n = a.size();
  detail::check_rank(n, d);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.dense(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver did not converge (n=" + std::to_string(n) + ")");
  }
  EigenPairs out;
  out.values.resize(d);
  out.vectors.resize(n, d);
  // Eigen returns ascending order.
  for (int k = 0; k < d; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  detail::fix_signs(out.vectors);
  return out;
}

/// All eigenvalues, descending.
inline Vector sym_eigenvalues(const SymmetricMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

namespace detail {

inline SymmetricMatrix reconstruct(const Matrix& vectors, const Vector& values) {
  const Matrix m = vectors * values.asDiagonal() * vectors.transpose();
  return SymmetricMatrix::from_upper(m);
}

}  // namespace detail

inline SymmetricMatrix rank_d_truncate(const SymmetricMatrix& a, int d) {
  const EigenPairs e = sym_eigen_topd(a, d);
  return detail::reconstruct(e.vectors, e.values);
}

/// Kept eigenvalues in [-1e-8 (1 + |lambda_1|), 0) are clamped to zero; anything
/// lower throws KeptEigenvalueNegative.
inline Vector clamp_kept_eigenvalues(const Vector& values) {
  Vector out = values;
  const double tol = detail::kept_tolerance(values(0));
  for (Index k = 0; k < out.size(); ++k) {
    if (out(k) < 0) {
      if (out(k) < -tol) throw KeptEigenvalueNegative(out(k), static_cast<int>(k) + 1);
      out(k) = 0.0;
    }
  }
  return out;
}

/// Adjacency spectral embedding U_A S_A^{1/2} on the top-d algebraic spectrum.
inline Embedding ase(const SymmetricMatrix& a, int d) {
  const EigenPairs e = sym_eigen_topd(a, d);
  const Vector kept = clamp_kept_eigenvalues(e.values);
  return Embedding{e.vectors * kept.cwiseSqrt().asDiagonal()};
}

inline double frobenius_norm(const Matrix& m) { return m.norm(); }

/// Maximum row Euclidean norm.
inline double two_to_infty_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.rowwise().norm().maxCoeff();
}

/// Largest singular value. Exactly symmetric inputs go through the symmetric
/// eigensolver; everything else through a bidiagonal SVD.
inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && m == m.transpose()) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("spectral norm: eigensolver failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double matrix_norm(const Matrix& m, NormKind kind) {
  switch (kind) {
    case NormKind::frobenius:
      return frobenius_norm(m);
    case NormKind::spectral:
      return spectral_norm(m);
    case NormKind::two_inf:
      return two_to_infty_norm(m);
  }
  return 0.0;
}

struct ProcrustesResult {
  Matrix rotation;
  /// X^T Y singular: the minimizer is not unique.
  bool rank_deficient = false;
};

/// Orthogonal W minimizing ||Y - X W||_F, the polar factor of X^T Y.
inline ProcrustesResult procrustes_align(const Matrix& y, const Matrix& x) {
  if (y.rows() != x.rows() || y.cols() != x.cols()) {
    throw InvalidArgument("procrustes_align: shape mismatch");
  }
  if (!y.allFinite() || !x.allFinite()) throw InvalidArgument("procrustes_align: non-finite entries");
  const Matrix cross = x.transpose() * y;
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesResult out;
  out.rotation = svd.matrixU() * svd.matrixV().transpose();
  const Vector& s = svd.singularValues();
  out.rank_deficient = s.size() > 0 && s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0));
  return out;
}

/// Throws KeptEigenvalueNegative unless lambda_d clears the kept-eigenvalue
/// tolerance, i.e. is positive beyond rounding.
inline void require_positive_lambda_d(const Vector& values) {
  const Index d = values.size();
  if (values(d - 1) <= detail::kept_tolerance(values(0))) {
    throw KeptEigenvalueNegative(values(d - 1), static_cast<int>(d));
  }
}

/// lambda_1 / lambda_d.
inline double condition_kappa(const SymmetricMatrix& p, int d) {
  const EigenPairs e = sym_eigen_topd(p, d);
  require_positive_lambda_d(e.values);
  return e.values(0) / e.values(d - 1);
}

}  // namespace specnet

#endif  // SPECNET_MATRIX_HPP
