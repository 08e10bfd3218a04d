#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qtda/complex.hpp"
#include "qtda/linalg.hpp"

namespace qtda {

/// Dense eigensolves beyond this many simplices in one dimension are refused.
inline constexpr std::size_t kMaxDenseSimplices = 4000;

/// Signed incidence matrix of the boundary map from q-chains to (q-1)-chains.
struct BoundaryMatrix {
  int q = 0;
  Eigen::SparseMatrix<int> entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
  Matrix dense() const { return Matrix(entries.cast<double>()); }
};

/// Boundary matrix with explicit row/column bases. Every face of a column must appear among the rows.
BoundaryMatrix boundary_matrix(std::span<const VertexMask> rows, std::span<const VertexMask> cols, int q);

/// Boundary matrix in the complex's canonical order. q = 0 gives a 0-row matrix.
BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int q);

enum class LaplacianKind { Down, Up, Combinatorial, PersistentUp, Persistent };

std::string to_string(LaplacianKind kind);

struct LaplacianMatrix {
  LaplacianKind kind = LaplacianKind::Combinatorial;
  Matrix values;

  Eigen::Index size() const { return values.rows(); }
};

LaplacianMatrix down_laplacian(const SimplicialComplex& complex, int q);
LaplacianMatrix up_laplacian(const SimplicialComplex& complex, int q);
LaplacianMatrix combinatorial_laplacian(const SimplicialComplex& complex, int q);

std::size_t betti_number(const SimplicialComplex& complex, int q);

/// dim ker B_q - rank B_{q+1}, from SVD ranks.
std::size_t betti_number_by_ranks(const SimplicialComplex& complex, int q);

/// M/M(I,I) with the Moore-Penrose pseudo-inverse; rows/cols of the result follow the kept indices in order.
Matrix schur_complement(const Matrix& m, std::span<const std::size_t> index_set);

/// Up-Laplacian of L at q in the pair ordering (K's q-simplices first).
Matrix large_up_laplacian(const SimplicialPair& pair, int q);

/// Boundary of L from q+1 to q with rows in the pair ordering.
BoundaryMatrix large_boundary(const SimplicialPair& pair, int q);

LaplacianMatrix persistent_up_laplacian(const SimplicialPair& pair, int q);

/// Same operator through a kernel basis Z of the (q+1)-chains whose boundary lies in K.
LaplacianMatrix persistent_up_laplacian_zbasis(const SimplicialPair& pair, int q);

LaplacianMatrix persistent_laplacian(const SimplicialPair& pair, int q);

std::size_t persistent_betti(const SimplicialPair& pair, int q);

/// dim ker B_q^K - dim(im B_{q+1}^L intersected with ker B_q^K), by column-space ranks.
std::size_t persistent_betti_by_ranks(const SimplicialPair& pair, int q);

/// Gap bounds for the projector and inverse stages.
struct SpectralGapBounds {
  /// Smallest nonzero eigenvalue of the tail block of L's up-Laplacian; empty if none.
  std::optional<double> gamma_min;
  /// Smallest nonzero eigenvalue of the persistent Laplacian; empty if none.
  std::optional<double> lambda_min;
  /// False when the tail block is empty (K and L share all q-simplices).
  bool gamma_applicable = false;
  double gamma_q = 1.0;
  double lambda_q = 1.0;
};

/// Bounds at half the measured minima; 1 when the spectrum has no nonzero part.
SpectralGapBounds spectral_bounds(const SimplicialPair& pair, int q);

}  // namespace qtda
