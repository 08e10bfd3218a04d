#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qtda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bit i set <=> vertex i present. Bit strings in the quantum picture use the same layout.
using VertexMask = std::uint64_t;

namespace linalg {

/// Eigenvalue below kNullityRelTol * max(1, lambda_max) counts as zero.
inline constexpr double kNullityRelTol = 1e-8;
/// Singular values below kPinvRelCutoff * sigma_max are dropped by the pseudo-inverse.
inline constexpr double kPinvRelCutoff = 1e-10;
/// Slack used when checking PSD-ness of computed Laplacians.
inline constexpr double kPsdSlack = 1e-10;

/// Ascending eigenvalues of a symmetric matrix (empty for 0x0).
Vector symmetric_eigenvalues(const Matrix& sym);

double nullity_threshold(const Vector& eigenvalues);

std::size_t nullity(const Matrix& sym);

/// Smallest eigenvalue above the nullity threshold, if any.
std::optional<double> smallest_nonzero_eigenvalue(const Matrix& sym);

/// Orthogonal projector onto the numerical kernel of a symmetric matrix.
Matrix kernel_projector(const Matrix& sym);

/// Moore-Penrose pseudo-inverse via SVD with the kPinvRelCutoff cutoff.
Matrix pseudo_inverse(const Matrix& m);

double spectral_norm(const Matrix& m);

/// Rank via SVD; singular values <= rel_tol * max(1, sigma_max) are zero.
std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-9);

/// Orthonormal basis (as columns) of the numerical null space of m.
Matrix null_space(const Matrix& m, double rel_tol = 1e-9);

/// Submatrix M(rows, cols).
Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

/// Symmetric part (M + M^T)/2; guards eigensolvers against rounding asymmetry.
inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace linalg
}  // namespace qtda
