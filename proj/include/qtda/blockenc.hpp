#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtda/complex.hpp"
#include "qtda/linalg.hpp"

namespace qtda {

/// Logical register space of an encoding: either the weight-k strings over n bits
/// (lex order), or a plain index space where basis element i is labelled by i.
struct LogicalSpace {
  std::size_t bits = 0;
  int weight = -1;
  std::vector<VertexMask> basis;

  std::size_t dim() const { return basis.size(); }
  bool is_hamming() const { return weight >= 0; }
  bool operator==(const LogicalSpace& other) const = default;

  static LogicalSpace hamming(std::size_t n, int k);
  static LogicalSpace generic(std::size_t dim);
};

/// Matrix-level stand-in for an (alpha, a, eps) block-encoding.
/// `block` holds the encoded operator itself; the unitary's top-left corner is block / alpha.
struct VirtualBlockEncoding {
  Matrix block;
  double alpha = 1.0;
  int ancillas = 0;
  double eps = 0.0;
  LogicalSpace rows;
  LogicalSpace cols;
  std::string label;

  Matrix normalized() const { return block / alpha; }

  /// ||block||/alpha - (1 + eps/alpha); positive means not encodable.
  double encodability_excess() const;

  /// Throws InvariantError naming `label` if the encoding is not encodable.
  void validate(double tol = 1e-9) const;
};

/// Ancilla bookkeeping of the boundary encoding: index, counter, and adder registers plus flags.
int boundary_ancillas(std::size_t n, int q);

/// Boundary map from weight-(q+1) to weight-q strings; columns outside the complex vanish.
VirtualBlockEncoding encode_boundary(const SimplicialComplex& complex, int q, const MembershipFunction& membership);

VirtualBlockEncoding adjoint(const VirtualBlockEncoding& u);

/// Trivial (1, 0, 0)-encoding of the identity.
VirtualBlockEncoding identity_encoding(const LogicalSpace& space);

/// Encoding of an explicit matrix with scale alpha, over plain index spaces.
VirtualBlockEncoding encode_matrix(const Matrix& a, double alpha, int ancillas = 1, double eps = 0.0,
                                   std::string label = "matrix");

/// u * v with scale alpha_u*alpha_v, ancillas a_u+a_v, error alpha_u*eps_v + alpha_v*eps_u.
VirtualBlockEncoding product(const VirtualBlockEncoding& u, const VirtualBlockEncoding& v);

using SpaceFilter = std::function<bool(VertexMask)>;

/// Pi_row * A * Pi_col. An empty filter passes everything. Same scale and error, two more ancillas.
VirtualBlockEncoding restrict_submatrix(const VirtualBlockEncoding& u, const SpaceFilter& row_filter,
                                        const SpaceFilter& col_filter);

struct LcuPlan {
  std::vector<VirtualBlockEncoding> terms;
  std::vector<int> signs;

  double beta() const;
};

/// Signed sum; scale sum(alpha_i), error sum(eps_i), ancillas max + 2.
VirtualBlockEncoding linear_combine(const LcuPlan& plan);

/// Largest total dimension accepted by the dilation (2 * padded system size).
inline constexpr Eigen::Index kMaxDilationDim = 4096;

/// Orthogonal 2s x 2s matrix [[C, (I-CC^T)^1/2], [(I-C^TC)^1/2, -C^T]] with C = block/alpha
/// zero-padded to s x s. One ancilla qubit selects the half.
Matrix dilate_to_unitary(const VirtualBlockEncoding& u);

/// Top-left rows x cols corner of a dilation.
Matrix extract_block(const Matrix& unitary, Eigen::Index rows, Eigen::Index cols);

/// Circuit (I (x) U_a)(I (x) U_b) on two ancilla qubits for two dilations over an s-dimensional
/// system. Its all-zero-ancilla block is the product of the encoded blocks.
Matrix compose_dilations(const Matrix& ua, const Matrix& ub, Eigen::Index system_dim);

}  // namespace qtda
