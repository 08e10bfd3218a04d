#include "qtda/homology.hpp"

#include <unordered_map>

#include <Eigen/LU>

#include "qtda/errors.hpp"

namespace qtda {
namespace {

void require_materialized(const SimplicialComplex& c, int q) {
  if (q < 0) throw InputError("dimension must be >= 0");
  if (!c.materialized(q)) {
    throw InputError("dimension " + std::to_string(q) + " exceeds the materialized cap " +
                     std::to_string(c.dim_cap().value_or(-1)));
  }
}

void require_dense_size(std::size_t count) {
  if (count > kMaxDenseSimplices) {
    throw ResourceError("dense eigensolve over " + std::to_string(count) + " simplices exceeds the cap of " +
                        std::to_string(kMaxDenseSimplices));
  }
}

}  // namespace

std::string to_string(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::Down: return "down";
    case LaplacianKind::Up: return "up";
    case LaplacianKind::Combinatorial: return "combinatorial";
    case LaplacianKind::PersistentUp: return "persistent-up";
    case LaplacianKind::Persistent: return "persistent";
  }
  return "unknown";
}

BoundaryMatrix boundary_matrix(std::span<const VertexMask> rows, std::span<const VertexMask> cols, int q) {
  BoundaryMatrix b;
  b.q = q;
  b.entries.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  if (q == 0 || rows.empty()) {
    if (q > 0 && !cols.empty()) throw InvariantError("q-simplices present without any (q-1)-simplices");
    return b;
  }
  std::unordered_map<VertexMask, Eigen::Index> row_of;
  row_of.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], static_cast<Eigen::Index>(i));
  std::vector<Eigen::Triplet<int>> trips;
  trips.reserve(cols.size() * static_cast<std::size_t>(q + 1));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    int i = 0;
    for (VertexMask r = cols[j]; r; r &= r - 1, ++i) {
      const VertexMask face = cols[j] & ~(r & (~r + 1));
      const auto it = row_of.find(face);
      if (it == row_of.end()) throw InvariantError("face " + format_simplex(face) + " missing from row basis");
      trips.emplace_back(it->second, static_cast<Eigen::Index>(j), (i % 2 == 0) ? 1 : -1);
    }
  }
  b.entries.setFromTriplets(trips.begin(), trips.end());
  return b;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int q) {
  require_materialized(complex, q);
  return boundary_matrix(complex.simplices(q - 1), complex.simplices(q), q);
}

LaplacianMatrix down_laplacian(const SimplicialComplex& complex, int q) {
  require_dense_size(complex.count(q));
  const Matrix b = boundary_matrix(complex, q).dense();
  return {LaplacianKind::Down, b.transpose() * b};
}

LaplacianMatrix up_laplacian(const SimplicialComplex& complex, int q) {
  require_materialized(complex, q + 1);
  require_dense_size(complex.count(q));
  const Matrix b = boundary_matrix(complex, q + 1).dense();
  return {LaplacianKind::Up, b * b.transpose()};
}

LaplacianMatrix combinatorial_laplacian(const SimplicialComplex& complex, int q) {
  LaplacianMatrix up = up_laplacian(complex, q);
  up.values += down_laplacian(complex, q).values;
  up.kind = LaplacianKind::Combinatorial;
  return up;
}

std::size_t betti_number(const SimplicialComplex& complex, int q) {
  return linalg::nullity(combinatorial_laplacian(complex, q).values);
}

std::size_t betti_number_by_ranks(const SimplicialComplex& complex, int q) {
  require_materialized(complex, q + 1);
  const std::size_t nq = complex.count(q);
  const std::size_t rank_q = linalg::numerical_rank(boundary_matrix(complex, q).dense());
  const std::size_t rank_q1 = linalg::numerical_rank(boundary_matrix(complex, q + 1).dense());
  return nq - rank_q - rank_q1;
}

Matrix schur_complement(const Matrix& m, std::span<const std::size_t> index_set) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols()) throw InputError("Schur complement needs a square matrix");
  std::vector<bool> in_set(n, false);
  for (std::size_t i : index_set) {
    if (i >= n) throw InputError("Schur index out of range");
    if (in_set[i]) throw InputError("duplicate Schur index");
    in_set[i] = true;
  }
  if (index_set.empty() || index_set.size() == n) throw InputError("Schur index set must be a nonempty proper subset");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_set[i]) kept.push_back(i);
  }
  const Matrix a = linalg::submatrix(m, kept, kept);
  const Matrix b = linalg::submatrix(m, kept, index_set);
  const Matrix c = linalg::submatrix(m, index_set, kept);
  const Matrix d = linalg::submatrix(m, index_set, index_set);
  return a - b * linalg::pseudo_inverse(d) * c;
}

BoundaryMatrix large_boundary(const SimplicialPair& pair, int q) {
  require_materialized(pair.large(), q + 1);
  require_materialized(pair.small(), q);
  const auto rows = pair.large_ordered(q);
  return boundary_matrix(rows, pair.large().simplices(q + 1), q + 1);
}

Matrix large_up_laplacian(const SimplicialPair& pair, int q) {
  require_dense_size(pair.large().count(q));
  const Matrix b = large_boundary(pair, q).dense();
  return b * b.transpose();
}

LaplacianMatrix persistent_up_laplacian(const SimplicialPair& pair, int q) {
  const Matrix up = large_up_laplacian(pair, q);
  const auto tail = pair.complement_indices(q);
  const auto nk = static_cast<Eigen::Index>(pair.small().count(q));
  if (tail.empty()) return {LaplacianKind::PersistentUp, up};
  if (nk == 0) return {LaplacianKind::PersistentUp, Matrix(0, 0)};
  return {LaplacianKind::PersistentUp, schur_complement(up, tail)};
}

LaplacianMatrix persistent_up_laplacian_zbasis(const SimplicialPair& pair, int q) {
  const Matrix b = large_boundary(pair, q).dense();
  const auto nk = static_cast<Eigen::Index>(pair.small().count(q));
  const Eigen::Index nl = b.rows(), m = b.cols();
  const Matrix b_small = b.topRows(nk);
  const Matrix b_tail = b.bottomRows(nl - nk);
  if (m == 0 || nk == 0) return {LaplacianKind::PersistentUp, Matrix::Zero(nk, nk)};
  Matrix z;
  if (b_tail.rows() == 0) {
    z = Matrix::Identity(m, m);
  } else {
    Eigen::FullPivLU<Matrix> lu(b_tail);
    if (lu.rank() == m) {
      z = Matrix(m, 0);
    } else {
      z = lu.kernel();
    }
  }
  if (z.cols() == 0) return {LaplacianKind::PersistentUp, Matrix::Zero(nk, nk)};
  const Matrix gram = z.transpose() * z;
  Eigen::FullPivLU<Matrix> glu(gram);
  if (glu.rank() < gram.rows() || glu.rcond() < 1e-12) {
    throw NumericalError("kernel basis Gram matrix is singular; Z is not a basis");
  }
  const Matrix blk = b_small * z;
  return {LaplacianKind::PersistentUp, blk * glu.solve(blk.transpose())};
}

LaplacianMatrix persistent_laplacian(const SimplicialPair& pair, int q) {
  LaplacianMatrix up = persistent_up_laplacian(pair, q);
  up.values += down_laplacian(pair.small(), q).values;
  up.kind = LaplacianKind::Persistent;
  return up;
}

std::size_t persistent_betti(const SimplicialPair& pair, int q) {
  return linalg::nullity(persistent_laplacian(pair, q).values);
}

std::size_t persistent_betti_by_ranks(const SimplicialPair& pair, int q) {
  const Matrix bk = boundary_matrix(pair.small(), q).dense();
  const Matrix bl = large_boundary(pair, q).dense();
  const Eigen::Index nk = bk.cols(), nl = bl.rows();
  const Matrix ker = linalg::null_space(bk.rows() == 0 ? Matrix::Zero(1, nk) : bk);
  const Eigen::Index dim_ker = ker.cols();
  if (dim_ker == 0) return 0;
  Matrix ker_embedded = Matrix::Zero(nl, dim_ker);
  ker_embedded.topRows(nk) = ker;
  const auto rank_im = static_cast<Eigen::Index>(linalg::numerical_rank(bl));
  Matrix joined(nl, bl.cols() + dim_ker);
  joined << bl, ker_embedded;
  const auto rank_sum = static_cast<Eigen::Index>(linalg::numerical_rank(joined));
  const Eigen::Index intersection = rank_im + dim_ker - rank_sum;
  return static_cast<std::size_t>(dim_ker - intersection);
}

SpectralGapBounds spectral_bounds(const SimplicialPair& pair, int q) {
  SpectralGapBounds out;
  const auto tail = pair.complement_indices(q);
  out.gamma_applicable = !tail.empty();
  if (out.gamma_applicable) {
    const Matrix up = large_up_laplacian(pair, q);
    out.gamma_min = linalg::smallest_nonzero_eigenvalue(linalg::submatrix(up, tail, tail));
  }
  out.lambda_min = linalg::smallest_nonzero_eigenvalue(persistent_laplacian(pair, q).values);
  out.gamma_q = out.gamma_min ? 0.5 * *out.gamma_min : 1.0;
  out.lambda_q = out.lambda_min ? 0.5 * *out.lambda_min : 1.0;
  return out;
}

}  // namespace qtda
