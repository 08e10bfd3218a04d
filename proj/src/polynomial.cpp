#include "qtda/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <fftw3.h>

#include "qtda/errors.hpp"

namespace qtda {
namespace {

// DCT-I: out_j = in_0 + (-1)^j in_N + 2 sum_{k=1}^{N-1} in_k cos(pi j k / N), N+1 points.
std::vector<double> dct1(std::vector<double> in) {
  const int size = static_cast<int>(in.size());
  std::vector<double> out(in.size());
  if (size == 1) {
    out[0] = in[0];
    return out;
  }
  fftw_plan plan = fftw_plan_r2r_1d(size, in.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

bool wrong_parity(Parity p, std::size_t j) {
  return (p == Parity::Even && j % 2 == 1) || (p == Parity::Odd && j % 2 == 0);
}

// Headroom kept below 1 so grid certification leaves room between grid points.
double headroom(double eps) { return std::min(1e-6, eps / 100.0); }

// Distance kept between the lifted rectangle plateau and 1, above Clenshaw rounding at high degree.
constexpr double kPlateauSlack = 1e-13;

std::string binding_parameter(double gap, double eps) {
  return (1.0 / gap >= std::log(1.0 / eps)) ? "gap" : "accuracy";
}

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw InputError(std::string(name) + " must lie in (0, 1)");
}

std::vector<double> fit_or_explain(const std::function<double(double)>& f, Parity parity, double tail,
                                   const PolynomialLimits& limits, const std::string& what, double gap, double eps) {
  try {
    return chebyshev_fit(f, parity, tail, limits, what);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(e.what()) + "; binding parameter: " + binding_parameter(gap, eps) +
                        " (gap " + std::to_string(gap) + ", accuracy " + std::to_string(eps) + ")");
  }
}

BoundedPolynomial finish(BoundedPolynomial p) {
  const Certificate c = certify(p);
  if (!c.passed) throw InvariantError(p.family + " polynomial failed certification: " + c.failure);
  return p;
}

}  // namespace

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Undeclared: return "undeclared";
  }
  return "undeclared";
}

double BoundedPolynomial::operator()(double x) const {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = coefficients.size(); j-- > 1;) {
    const double b0 = coefficients[j] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const double c0 = coefficients.empty() ? 0.0 : coefficients[0];
  return c0 + x * b1 - b2;
}

Vector BoundedPolynomial::operator()(const Vector& x) const {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = (*this)(x[i]);
  return out;
}

BoundedPolynomial chebyshev_polynomial(std::vector<double> coefficients, Parity parity, std::string family) {
  BoundedPolynomial p;
  p.coefficients = std::move(coefficients);
  p.parity = parity;
  p.family = std::move(family);
  return p;
}

BoundedPolynomial monomial(int k) {
  switch (k) {
    case 0: return chebyshev_polynomial({1.0}, Parity::Even, "x^0");
    case 1: return chebyshev_polynomial({0.0, 1.0}, Parity::Odd, "x^1");
    case 2: return chebyshev_polynomial({0.5, 0.0, 0.5}, Parity::Even, "x^2");
    case 3: return chebyshev_polynomial({0.0, 0.75, 0.0, 0.25}, Parity::Odd, "x^3");
    default: throw InputError("monomial degree must be 0..3");
  }
}

std::vector<double> chebyshev_fit(const std::function<double(double)>& f, Parity parity, double tail,
                                  const PolynomialLimits& limits, const std::string& what) {
  if (!(tail > 0)) throw InputError("truncation tolerance must be positive");
  const auto cap = static_cast<std::size_t>(limits.max_degree);
  std::vector<double> c;
  for (std::size_t n = 256;; n *= 2) {
    std::vector<double> samples(n + 1);
    for (std::size_t k = 0; k <= n; ++k) samples[k] = f(std::cos(std::numbers::pi * double(k) / double(n)));
    c = dct1(std::move(samples));
    for (auto& v : c) v /= double(n);
    c.front() *= 0.5;
    c.back() *= 0.5;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (wrong_parity(parity, j)) c[j] = 0.0;
    }
    double upper_half = 0.0;
    for (std::size_t j = n / 2 + 1; j <= n; ++j) upper_half += std::abs(c[j]);
    if (upper_half <= tail / 16.0) break;
    if (n / 2 >= cap) {
      double beyond = 0.0;
      for (std::size_t j = cap + 1; j <= n; ++j) beyond += std::abs(c[j]);
      if (beyond > tail) {
        throw ResourceError(what + " needs degree above the cap of " + std::to_string(limits.max_degree));
      }
      break;
    }
  }
  // Smallest degree whose dropped tail is within budget.
  double dropped = 0.0;
  std::size_t d = c.size() - 1;
  while (d > 0 && dropped + std::abs(c[d]) <= tail) {
    dropped += std::abs(c[d]);
    --d;
  }
  if (d > cap) throw ResourceError(what + " needs degree " + std::to_string(d) + " above the cap of " + std::to_string(cap));
  c.resize(d + 1);
  return c;
}

Certificate certify(const BoundedPolynomial& p, std::size_t min_points) {
  Certificate cert;
  cert.parity_exact = p.parity != Parity::Undeclared;
  for (std::size_t j = 0; j < p.coefficients.size() && cert.parity_exact; ++j) {
    if (wrong_parity(p.parity, j) && p.coefficients[j] != 0.0) cert.parity_exact = false;
  }
  const std::size_t m = std::max(min_points, 4 * p.coefficients.size());
  // Values at x_k = cos(pi k / m) from one DCT of the (halved) coefficients.
  std::vector<double> in(m + 1, 0.0);
  for (std::size_t j = 0; j < p.coefficients.size() && j <= m; ++j) {
    in[j] = (j == 0 || j == m) ? p.coefficients[j] : 0.5 * p.coefficients[j];
  }
  const std::vector<double> vals = dct1(std::move(in));
  std::vector<std::pair<double, double>> points;
  points.reserve(m + 1 + 4 * p.bands.size());
  for (std::size_t k = 0; k <= m; ++k) points.emplace_back(std::cos(std::numbers::pi * double(k) / double(m)), vals[k]);
  for (const auto& b : p.bands) {
    for (double x : {b.x_lo, b.x_hi, -b.x_lo, -b.x_hi}) points.emplace_back(x, p(x));
  }
  cert.grid_points = points.size();
  cert.worst_slack = std::numeric_limits<double>::infinity();
  double sup = 0.0;
  for (const auto& [x, v] : points) {
    sup = std::max(sup, std::abs(v));
    const double ax = std::abs(x);
    // Map the negative side onto the positive one through the parity.
    const double folded = (x < 0 && p.parity == Parity::Odd) ? -v : v;
    for (const auto& b : p.bands) {
      if (ax < b.x_lo || ax > b.x_hi) continue;
      const double slack = b.reference ? b.tolerance - std::abs(folded - b.reference(ax))
                                       : std::min(folded - b.value_lo, b.value_hi - folded);
      if (slack < cert.worst_slack) {
        cert.worst_slack = slack;
        if (slack < 0 && cert.failure.empty()) {
          cert.failure = "band '" + b.description + "' violated at x=" + std::to_string(x);
        }
      }
    }
  }
  cert.sup_norm = sup;
  if (!cert.parity_exact && cert.failure.empty()) cert.failure = "parity pattern does not match the declared parity";
  if (sup > 1.0 && cert.failure.empty()) cert.failure = "sup norm " + std::to_string(sup) + " exceeds 1";
  cert.passed = cert.failure.empty();
  return cert;
}

BoundedPolynomial sign_polynomial(double delta, double eps, const PolynomialLimits& limits) {
  require_open_unit(delta, "sign gap");
  require_open_unit(eps, "sign accuracy");
  const double tau = eps / 4.0;
  const double k = boost::math::erfc_inv(eps / 4.0) / delta;
  const double scale = 1.0 - tau - headroom(eps);
  const auto f = [=](double x) { return scale * std::erf(k * x); };
  BoundedPolynomial p = chebyshev_polynomial(fit_or_explain(f, Parity::Odd, tau, limits, "sign polynomial", delta, eps),
                                             Parity::Odd, "sign");
  p.bands.push_back({delta, 1.0, 1.0 - eps, 1.0, {}, 0.0, "sign on [delta, 1]"});
  p.parameters = {{"delta", delta}, {"eps", eps}, {"k", k}, {"truncation", tau}};
  return finish(std::move(p));
}

BoundedPolynomial inverse_polynomial(double kappa, double eps_prime, const PolynomialLimits& limits) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw InputError("condition bound kappa must exceed 1");
  require_open_unit(eps_prime, "inverse accuracy");
  const double c = 0.75;
  const double s = 4.0 * boost::math::erfc_inv(eps_prime / (1.01 * kappa));
  const double r0 = std::erf(s * c);
  // (R(0) - R(u)) / R(0) with R(u) = (erf(s(c+u)) + erf(s(c-u)))/2, assembled from erfc
  // differences so small u does not cancel catastrophically.
  const auto high_pass = [=](double u) {
    const double a = std::erfc(s * (c + u)) - std::erfc(s * c);
    const double b = (c - u > 0) ? std::erfc(s * (c - u)) - std::erfc(s * c) : (std::erf(s * c) - std::erf(s * (c - u)));
    return 0.5 * (a + b) / r0;
  };
  const auto f = [=](double x) {
    if (x == 0.0) return 0.0;
    const double u = kappa * x;
    return high_pass(u) / (2.0 * u);
  };
  const double tau = eps_prime / (4.0 * kappa);
  BoundedPolynomial p = chebyshev_polynomial(
      fit_or_explain(f, Parity::Odd, tau, limits, "inverse polynomial", 1.0 / kappa, eps_prime), Parity::Odd, "inverse");
  Band band{1.0 / kappa, 1.0, 0.0, 0.0, [kappa](double x) { return 1.0 / (2.0 * kappa * x); },
            eps_prime / (2.0 * kappa), "1/(2 kappa x) on [1/kappa, 1]"};
  p.bands.push_back(std::move(band));
  p.parameters = {{"kappa", kappa}, {"eps_prime", eps_prime}, {"s", s}, {"truncation", tau}};
  return finish(std::move(p));
}

BoundedPolynomial rectangle_polynomial(double t, double delta, double eps, const PolynomialLimits& limits) {
  if (!(delta > 0 && delta < t)) throw InputError("rectangle needs 0 < delta < t");
  if (t + delta > 1.0) throw InputError("rectangle needs t + delta <= 1");
  if (!(eps > 0 && eps < 0.5)) throw InputError("rectangle accuracy must lie in (0, 1/2)");
  const double tau = eps / 8.0;
  const double k = boost::math::erfc_inv(eps / 5.0) / delta;
  // Plateau at 1 - 6 tau: the lift below then dominates the truncation ripple near 0.
  const double scale = 1.0 - 7.0 * tau - headroom(eps);
  const auto f = [=](double x) {
    // Window (erf(k(x+t)) - erf(k(x-t)))/2 from erfc on the far side to keep the tails accurate.
    const double w = (x >= 0) ? 0.5 * (std::erfc(k * (x - t)) - std::erfc(k * (x + t)))
                              : 0.5 * (std::erfc(-k * (x + t)) - std::erfc(-k * (x - t)));
    return scale * w + tau;
  };
  BoundedPolynomial p = chebyshev_polynomial(
      fit_or_explain(f, Parity::Even, tau, limits, "rectangle polynomial", delta, eps), Parity::Even, "rectangle");
  if (t - delta > 0) p.bands.push_back({0.0, t - delta, 1.0 - eps, 1.0, {}, 0.0, "pass band [0, t-delta]"});
  p.bands.push_back({t + delta, 1.0, 0.0, eps, {}, 0.0, "stop band [t+delta, 1]"});
  p.parameters = {{"t", t}, {"delta", delta}, {"eps", eps}, {"k", k}, {"truncation", tau}, {"plateau_lift", 0.0}};
  // Lift P(0) to 1 with an even Fejer bump of at most the same degree, so the kernel sees no deficit.
  const double lift = 1.0 - p(0.0) - kPlateauSlack;
  for (const int m : {p.degree() / 2, p.degree()}) {
    if (m < 2 || lift <= 0) break;
    BoundedPolynomial lifted = p;
    double at_zero = 0.0;
    std::vector<double> bump(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; j += 2) {
      bump[std::size_t(j)] = (1.0 - double(j) / m) * (j ? 2.0 : 1.0) * ((j / 2) % 2 ? -1.0 : 1.0);
      at_zero += (1.0 - double(j) / m) * (j ? 2.0 : 1.0);
    }
    for (std::size_t j = 0; j < bump.size(); ++j) lifted.coefficients[j] += lift * bump[j] / at_zero;
    lifted.parameters["plateau_lift"] = lift;
    lifted.parameters["lift_order"] = m;
    if (certify(lifted).passed) return lifted;
  }
  return finish(std::move(p));
}

}  // namespace qtda
