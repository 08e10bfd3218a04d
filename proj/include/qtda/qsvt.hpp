#pragma once

#include <string>

#include "qtda/blockenc.hpp"
#include "qtda/polynomial.hpp"

namespace qtda {

/// P applied to the singular values of a contraction: sum P(s_i) u_i v_i^T for odd P,
/// sum P(s_i) v_i v_i^T over a full right basis (s_i = 0 past the rank) for even P.
Matrix singular_value_transform(const Matrix& a, const BoundedPolynomial& p);

/// (1, a+1, 4 d sqrt(eps/alpha) + synthesis_delta)-encoding of P(block/alpha).
VirtualBlockEncoding apply_svt(const VirtualBlockEncoding& u, const BoundedPolynomial& p, double synthesis_delta = 0.0);

struct PseudoInverseResult {
  VirtualBlockEncoding encoding;
  BoundedPolynomial polynomial;
  double kappa = 0.0;
  double eps_prime = 0.0;
  /// Smallest nonzero eigenvalue found by the eigensolve (0 if the matrix is zero).
  double measured_gap = 0.0;
};

/// Encoding of A^+ at scale 2 kappa / alpha = 2 / gamma with error eps_inv, for a PSD block.
PseudoInverseResult pseudo_inverse_encoding(const VirtualBlockEncoding& u, double gamma, double eps_inv,
                                            const PolynomialLimits& limits = {});

struct RobustnessCheck {
  bool preconditions_met = false;
  std::string skipped_reason;
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// ||P(A) - P(A~)|| against 4 d sqrt(||A - A~||) for contractions A, A~.
RobustnessCheck robustness_gap(const BoundedPolynomial& p, const Matrix& a, const Matrix& a_tilde);

}  // namespace qtda
