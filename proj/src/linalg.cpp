#include "qtda/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace qtda::linalg {

Vector symmetric_eigenvalues(const Matrix& sym) {
  if (sym.rows() == 0) return Vector{};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(sym), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double nullity_threshold(const Vector& eigenvalues) {
  double top = 1.0;
  if (eigenvalues.size() > 0) top = std::max(top, eigenvalues.cwiseAbs().maxCoeff());
  return kNullityRelTol * top;
}

std::size_t nullity(const Matrix& sym) {
  const Vector ev = symmetric_eigenvalues(sym);
  const double tol = nullity_threshold(ev);
  return static_cast<std::size_t>((ev.array() < tol).count());
}

std::optional<double> smallest_nonzero_eigenvalue(const Matrix& sym) {
  const Vector ev = symmetric_eigenvalues(sym);
  const double tol = nullity_threshold(ev);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] >= tol) return ev[i];
  }
  return std::nullopt;
}

Matrix kernel_projector(const Matrix& sym) {
  const Eigen::Index n = sym.rows();
  Matrix proj = Matrix::Zero(n, n);
  if (n == 0) return proj;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(sym));
  const Vector& ev = solver.eigenvalues();
  const double tol = nullity_threshold(ev);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev[i] < tol) {
      const Vector v = solver.eigenvectors().col(i);
      proj.noalias() += v * v.transpose();
    }
  }
  return proj;
}

Matrix pseudo_inverse(const Matrix& m) {
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return out;
  const double cutoff = kPinvRelCutoff * s[0];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] <= cutoff) break;
    out.noalias() += svd.matrixV().col(i) * (1.0 / s[i]) * svd.matrixU().col(i).transpose();
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, s[0]);
  return static_cast<std::size_t>((s.array() > tol).count());
}

Matrix null_space(const Matrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double tol = rel_tol * std::max(1.0, s.size() ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > tol) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    }
  }
  return out;
}

}  // namespace qtda::linalg
