#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qtda/linalg.hpp"

namespace qtda {

enum class Parity { Undeclared, Even, Odd };

std::string to_string(Parity p);

/// A guarantee on x in [x_lo, x_hi] (x >= 0; the negative side follows from parity).
struct Band {
  double x_lo = 0.0;
  double x_hi = 1.0;
  /// Range band: P(x) in [value_lo, value_hi].
  double value_lo = -1.0;
  double value_hi = 1.0;
  /// Reference band when set: |P(x) - reference(x)| <= tolerance.
  std::function<double(double)> reference;
  double tolerance = 0.0;
  std::string description;
};

/// Real polynomial on [-1, 1] in the Chebyshev basis, with declared parity and certified bands.
struct BoundedPolynomial {
  std::string family;
  Parity parity = Parity::Undeclared;
  std::vector<double> coefficients;
  std::vector<Band> bands;
  std::map<std::string, double> parameters;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  /// Clenshaw recurrence.
  double operator()(double x) const;
  Vector operator()(const Vector& x) const;
};

BoundedPolynomial chebyshev_polynomial(std::vector<double> coefficients, Parity parity, std::string family);

/// p(x) = x^k for k in {0, 1, 2, 3}; handy exact transforms.
BoundedPolynomial monomial(int k);

struct PolynomialLimits {
  int max_degree = 100000;
};

struct Certificate {
  std::size_t grid_points = 0;
  double sup_norm = 0.0;
  /// Smallest band slack seen (negative means violation).
  double worst_slack = 0.0;
  bool parity_exact = false;
  bool passed = false;
  std::string failure;
};

/// Grid check of |P| <= 1, exact parity, and every band. The grid is the Chebyshev grid with
/// max(min_points, 4*degree) points plus all band endpoints.
Certificate certify(const BoundedPolynomial& p, std::size_t min_points = 20000);

/// Chebyshev interpolant of f truncated so the dropped coefficients sum to at most `tail`.
/// Coefficients of the wrong parity are zeroed. Throws ResourceError beyond the degree cap.
std::vector<double> chebyshev_fit(const std::function<double(double)>& f, Parity parity, double tail,
                                  const PolynomialLimits& limits, const std::string& what);

/// Odd; |P - sign(x)| <= eps for |x| in [delta, 1]; |P| <= 1.
BoundedPolynomial sign_polynomial(double delta, double eps, const PolynomialLimits& limits = {});

/// Odd; |P(x) - 1/(2 kappa x)| <= eps_prime/(2 kappa) for |x| in [1/kappa, 1]; |P| <= 1; P(0) = 0.
BoundedPolynomial inverse_polynomial(double kappa, double eps_prime, const PolynomialLimits& limits = {});

/// Even; P in [1-eps, 1] on [0, t-delta] and in [0, eps] on [t+delta, 1]. P(0) is lifted to within
/// 1e-13 of 1 whenever the lifted polynomial still certifies.
BoundedPolynomial rectangle_polynomial(double t, double delta, double eps, const PolynomialLimits& limits = {});

}  // namespace qtda
