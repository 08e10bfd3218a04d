#include "qtda/blockenc.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qtda/errors.hpp"

namespace qtda {
namespace {

int ceil_log2(std::size_t x) {
  int r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

void require_same(const LogicalSpace& a, const LogicalSpace& b, const std::string& what) {
  if (!(a == b)) {
    throw ContractError(what + ": logical spaces differ (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
  }
}

}  // namespace

LogicalSpace LogicalSpace::hamming(std::size_t n, int k) {
  LogicalSpace s;
  s.bits = n;
  s.weight = k;
  s.basis = hamming_space(n, k);
  return s;
}

LogicalSpace LogicalSpace::generic(std::size_t dim) {
  LogicalSpace s;
  s.basis.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) s.basis[i] = i;
  return s;
}

double VirtualBlockEncoding::encodability_excess() const {
  return linalg::spectral_norm(block) / alpha - 1.0 - eps / alpha;
}

void VirtualBlockEncoding::validate(double tol) const {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw InvariantError(label + ": scale must be positive and finite");
  if (block.rows() != static_cast<Eigen::Index>(rows.dim()) || block.cols() != static_cast<Eigen::Index>(cols.dim())) {
    throw InvariantError(label + ": block shape does not match its logical spaces");
  }
  const double excess = encodability_excess();
  if (excess > tol) {
    throw InvariantError(label + ": not encodable, ||A||/alpha exceeds 1 + eps/alpha by " + std::to_string(excess));
  }
}

int boundary_ancillas(std::size_t n, int q) {
  return ceil_log2(static_cast<std::size_t>(q) + 1) + ceil_log2(n) + ceil_log2(n + 1) + 3;
}

VirtualBlockEncoding encode_boundary(const SimplicialComplex& complex, int q, const MembershipFunction& membership) {
  if (q < 0) throw InputError("boundary encoding needs q >= 0");
  if (!complex.materialized(q)) throw InputError("dimension " + std::to_string(q) + " is not materialized");
  const std::size_t n = complex.vertex_count();
  VirtualBlockEncoding u;
  u.rows = LogicalSpace::hamming(n, q);
  u.cols = LogicalSpace::hamming(n, q + 1);
  u.block = Matrix::Zero(static_cast<Eigen::Index>(u.rows.dim()), static_cast<Eigen::Index>(u.cols.dim()));
  std::unordered_map<VertexMask, Eigen::Index> row_of;
  for (std::size_t i = 0; i < u.rows.dim(); ++i) row_of.emplace(u.rows.basis[i], static_cast<Eigen::Index>(i));
  for (std::size_t j = 0; j < u.cols.dim(); ++j) {
    const VertexMask x = u.cols.basis[j];
    const bool member = membership(x, q);
    if (member != complex.contains(x)) {
      throw InvariantError("membership predicate disagrees with the complex at " + format_simplex(x));
    }
    if (!member || q == 0) continue;
    int i = 0;
    for (VertexMask r = x; r; r &= r - 1, ++i) {
      const VertexMask face = x & ~(r & (~r + 1));
      u.block(row_of.at(face), static_cast<Eigen::Index>(j)) = (i % 2 == 0) ? 1.0 : -1.0;
    }
  }
  // Strings of the neighbouring weights must never be flagged as q-simplices.
  for (int w : {q - 1, q + 1}) {
    if (w < 0 || static_cast<std::size_t>(w) + 1 > n) continue;
    for (VertexMask x : hamming_space(n, w + 1)) {
      if (membership(x, q)) throw InvariantError("membership flags a string of the wrong Hamming weight");
    }
  }
  u.alpha = static_cast<double>(n) * (q + 1);
  u.ancillas = boundary_ancillas(n, q);
  u.eps = 0.0;
  u.label = "boundary_" + std::to_string(q);
  return u;
}

VirtualBlockEncoding adjoint(const VirtualBlockEncoding& u) {
  VirtualBlockEncoding v = u;
  v.block = u.block.transpose();
  std::swap(v.rows, v.cols);
  v.label = u.label + "^T";
  return v;
}

VirtualBlockEncoding identity_encoding(const LogicalSpace& space) {
  VirtualBlockEncoding u;
  const auto d = static_cast<Eigen::Index>(space.dim());
  u.block = Matrix::Identity(d, d);
  u.rows = u.cols = space;
  u.label = "identity";
  return u;
}

VirtualBlockEncoding encode_matrix(const Matrix& a, double alpha, int ancillas, double eps, std::string label) {
  VirtualBlockEncoding u;
  u.block = a;
  u.alpha = alpha;
  u.ancillas = ancillas;
  u.eps = eps;
  u.rows = LogicalSpace::generic(static_cast<std::size_t>(a.rows()));
  u.cols = LogicalSpace::generic(static_cast<std::size_t>(a.cols()));
  u.label = std::move(label);
  return u;
}

VirtualBlockEncoding product(const VirtualBlockEncoding& u, const VirtualBlockEncoding& v) {
  require_same(u.cols, v.rows, "product " + u.label + " * " + v.label);
  VirtualBlockEncoding w;
  w.block = u.block * v.block;
  w.alpha = u.alpha * v.alpha;
  w.ancillas = u.ancillas + v.ancillas;
  w.eps = u.alpha * v.eps + v.alpha * u.eps;
  w.rows = u.rows;
  w.cols = v.cols;
  w.label = "(" + u.label + "*" + v.label + ")";
  return w;
}

VirtualBlockEncoding restrict_submatrix(const VirtualBlockEncoding& u, const SpaceFilter& row_filter,
                                        const SpaceFilter& col_filter) {
  VirtualBlockEncoding w = u;
  if (row_filter) {
    for (std::size_t i = 0; i < u.rows.dim(); ++i) {
      if (!row_filter(u.rows.basis[i])) w.block.row(static_cast<Eigen::Index>(i)).setZero();
    }
  }
  if (col_filter) {
    for (std::size_t j = 0; j < u.cols.dim(); ++j) {
      if (!col_filter(u.cols.basis[j])) w.block.col(static_cast<Eigen::Index>(j)).setZero();
    }
  }
  w.ancillas = u.ancillas + 2;
  w.label = "restrict(" + u.label + ")";
  return w;
}

double LcuPlan::beta() const {
  double b = 0.0;
  for (const auto& t : terms) b += t.alpha;
  return b;
}

VirtualBlockEncoding linear_combine(const LcuPlan& plan) {
  if (plan.terms.empty()) throw ContractError("linear combination of an empty plan");
  if (plan.signs.size() != plan.terms.size()) throw ContractError("one sign per LCU term is required");
  VirtualBlockEncoding w;
  w.rows = plan.terms.front().rows;
  w.cols = plan.terms.front().cols;
  w.block = Matrix::Zero(plan.terms.front().block.rows(), plan.terms.front().block.cols());
  int max_anc = 0;
  std::string label = "lcu(";
  for (std::size_t i = 0; i < plan.terms.size(); ++i) {
    const auto& t = plan.terms[i];
    if (plan.signs[i] != 1 && plan.signs[i] != -1) throw ContractError("LCU signs must be +1 or -1");
    require_same(t.rows, w.rows, "LCU term " + t.label);
    require_same(t.cols, w.cols, "LCU term " + t.label);
    w.block += plan.signs[i] * t.block;
    w.eps += t.eps;
    max_anc = std::max(max_anc, t.ancillas);
    label += (i ? (plan.signs[i] > 0 ? "+" : "-") : (plan.signs[i] > 0 ? "" : "-")) + t.label;
  }
  w.alpha = plan.beta();
  w.ancillas = max_anc + 2;
  w.label = label + ")";
  return w;
}

Matrix dilate_to_unitary(const VirtualBlockEncoding& u) {
  const Eigen::Index r = u.block.rows(), c = u.block.cols();
  const Eigen::Index s = std::max<Eigen::Index>({r, c, 1});
  if (2 * s > kMaxDilationDim) {
    throw ResourceError("dilation of a " + std::to_string(s) + "-dimensional block exceeds the size cap");
  }
  Matrix cm = Matrix::Zero(s, s);
  cm.topLeftCorner(r, c) = u.normalized();
  Eigen::JacobiSVD<Matrix> svd(cm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vector sigma = svd.singularValues();
  if (sigma.size() > 0 && sigma[0] > 1.0 + 1e-10) {
    throw InvariantError(u.label + ": norm " + std::to_string(sigma[0]) + " > 1, cannot dilate");
  }
  const Vector comp = (1.0 - sigma.array().min(1.0).square()).sqrt().matrix();
  const Matrix& w = svd.matrixU();
  const Matrix& v = svd.matrixV();
  // Rebuild C from its SVD so the four blocks share one basis exactly.
  const Matrix c_exact = w * sigma.asDiagonal() * v.transpose();
  Matrix out(2 * s, 2 * s);
  out.topLeftCorner(s, s) = c_exact;
  out.topRightCorner(s, s) = w * comp.asDiagonal() * w.transpose();
  out.bottomLeftCorner(s, s) = v * comp.asDiagonal() * v.transpose();
  out.bottomRightCorner(s, s) = -c_exact.transpose();
  return out;
}

Matrix extract_block(const Matrix& unitary, Eigen::Index rows, Eigen::Index cols) {
  return unitary.topLeftCorner(rows, cols);
}

Matrix compose_dilations(const Matrix& ua, const Matrix& ub, Eigen::Index s) {
  if (ua.rows() != 2 * s || ub.rows() != 2 * s) throw ContractError("dilations must both be 2s x 2s");
  // Index layout: (ancilla_a, ancilla_b, system) -> a*2s + b*s + x.
  const Eigen::Index d = 4 * s;
  Matrix first = Matrix::Zero(d, d);   // U_b on (b, system), a spectator
  Matrix second = Matrix::Zero(d, d);  // U_a on (a, system), b spectator
  for (Eigen::Index a = 0; a < 2; ++a) first.block(a * 2 * s, a * 2 * s, 2 * s, 2 * s) = ub;
  for (Eigen::Index b = 0; b < 2; ++b) {
    for (Eigen::Index a = 0; a < 2; ++a) {
      for (Eigen::Index a2 = 0; a2 < 2; ++a2) {
        second.block(a * 2 * s + b * s, a2 * 2 * s + b * s, s, s) = ua.block(a * s, a2 * s, s, s);
      }
    }
  }
  return second * first;
}

}  // namespace qtda
