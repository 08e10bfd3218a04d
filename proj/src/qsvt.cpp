#include "qtda/qsvt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qtda/errors.hpp"

namespace qtda {
namespace {

constexpr double kContractionSlack = 1e-9;

}  // namespace

Matrix singular_value_transform(const Matrix& a, const BoundedPolynomial& p) {
  if (p.parity == Parity::Undeclared) throw ContractError("singular value transform needs a declared parity");
  const Eigen::Index r = a.rows(), c = a.cols();
  if (p.parity == Parity::Odd) {
    Matrix out = Matrix::Zero(r, c);
    if (a.size() == 0) return out;
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double f = p(std::min(s[i], 1.0));
      if (f != 0.0) out.noalias() += f * svd.matrixU().col(i) * svd.matrixV().col(i).transpose();
    }
    return out;
  }
  Matrix out = Matrix::Zero(c, c);
  if (c == 0) return out;
  if (r == 0) return p(0.0) * Matrix::Identity(c, c);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  for (Eigen::Index i = 0; i < c; ++i) {
    const double sigma = i < s.size() ? std::min(s[i], 1.0) : 0.0;
    out.noalias() += p(sigma) * svd.matrixV().col(i) * svd.matrixV().col(i).transpose();
  }
  return out;
}

VirtualBlockEncoding apply_svt(const VirtualBlockEncoding& u, const BoundedPolynomial& p, double synthesis_delta) {
  if (p.parity == Parity::Undeclared) throw ContractError("apply_svt: polynomial parity is undeclared");
  const Matrix a = u.normalized();
  const double norm = linalg::spectral_norm(a);
  if (norm > 1.0 + kContractionSlack) {
    throw InvariantError(u.label + ": SVT input is not a contraction (norm " + std::to_string(norm) + ")");
  }
  VirtualBlockEncoding out;
  out.block = singular_value_transform(a, p);
  out.alpha = 1.0;
  out.ancillas = u.ancillas + 1;
  const double inherited = u.eps > 0 ? 4.0 * p.degree() * std::sqrt(u.eps / u.alpha) : 0.0;
  out.eps = inherited + synthesis_delta;
  out.rows = p.parity == Parity::Odd ? u.rows : u.cols;
  out.cols = u.cols;
  out.label = p.family + "(" + u.label + ")";
  return out;
}

PseudoInverseResult pseudo_inverse_encoding(const VirtualBlockEncoding& u, double gamma, double eps_inv,
                                            const PolynomialLimits& limits) {
  if (u.block.rows() != u.block.cols()) throw ContractError("pseudo-inverse needs a square block");
  if (!(gamma > 0)) throw InputError("gap bound gamma must be positive");
  if (!(eps_inv > 0)) throw InputError("pseudo-inverse accuracy must be positive");
  PseudoInverseResult res;
  const auto gap = linalg::smallest_nonzero_eigenvalue(u.block);
  res.measured_gap = gap.value_or(0.0);
  if (gap && gamma >= *gap) {
    throw InvariantError(u.label + ": gap bound " + std::to_string(gamma) + " is not below the smallest nonzero eigenvalue " +
                         std::to_string(*gap));
  }
  res.kappa = u.alpha / gamma;
  if (!(res.kappa > 1.0)) throw InputError("kappa = alpha/gamma must exceed 1");
  // Half of the budget goes to the polynomial; the rest covers grid-to-continuum slack.
  res.eps_prime = std::min(0.5, 0.5 * u.alpha * eps_inv);
  res.encoding.rows = u.cols;
  res.encoding.cols = u.rows;
  res.encoding.alpha = 2.0 * res.kappa / u.alpha;
  res.encoding.ancillas = u.ancillas + 1;
  res.encoding.label = "pinv(" + u.label + ")";
  if (!gap) {
    res.polynomial = chebyshev_polynomial({0.0}, Parity::Odd, "inverse");
    res.encoding.block = Matrix::Zero(u.block.cols(), u.block.rows());
    res.encoding.eps = 0.0;
    return res;
  }
  res.polynomial = inverse_polynomial(res.kappa, res.eps_prime, limits);
  const VirtualBlockEncoding svt = apply_svt(u, res.polynomial);
  res.encoding.block = res.encoding.alpha * svt.block;
  res.encoding.eps = eps_inv + res.encoding.alpha * svt.eps;
  return res;
}

RobustnessCheck robustness_gap(const BoundedPolynomial& p, const Matrix& a, const Matrix& a_tilde) {
  RobustnessCheck r;
  if (p.parity == Parity::Undeclared) {
    r.skipped_reason = "parity undeclared";
    return r;
  }
  const Certificate cert = certify(p);
  if (!cert.parity_exact || cert.sup_norm > 1.0) {
    r.skipped_reason = "polynomial not bounded by 1 with exact parity";
    return r;
  }
  if (a.rows() != a_tilde.rows() || a.cols() != a_tilde.cols()) {
    r.skipped_reason = "shape mismatch";
    return r;
  }
  if (linalg::spectral_norm(a) > 1.0 + kContractionSlack || linalg::spectral_norm(a_tilde) > 1.0 + kContractionSlack) {
    r.skipped_reason = "inputs are not contractions";
    return r;
  }
  r.preconditions_met = true;
  r.measured = linalg::spectral_norm(singular_value_transform(a, p) - singular_value_transform(a_tilde, p));
  r.bound = 4.0 * p.degree() * std::sqrt(linalg::spectral_norm(a - a_tilde));
  r.holds = r.measured <= r.bound + 1e-12;
  return r;
}

}  // namespace qtda
