#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtda/blockenc.hpp"
#include "qtda/complex.hpp"
#include "qtda/homology.hpp"
#include "qtda/polynomial.hpp"
#include "qtda/qsvt.hpp"

namespace qtda {

/// State-vector simulation limit.
inline constexpr std::size_t kMaxQuantumVertices = 14;
/// Largest Hamming-weight space the dense simulator accepts.
inline constexpr std::size_t kMaxLogicalDim = 2048;

/// Uniform superposition over weight-(q+1) strings of n bits, as a 2^n amplitude vector.
Vector dicke_state(std::size_t n, int q);

/// Diagonal mixed states over the weight-(q+1) strings (lex order).
struct SimplexStateEnsemble {
  LogicalSpace space;
  Vector ideal;
  Vector prepared;
  double density = 0.0;
  /// Amplitude on the marked (simplex) part after amplification, and on the rest.
  double a = 1.0;
  double b = 0.0;
  double eps_sign = 0.0;
  double trace_distance = 0.0;
  double trace_bound = 0.0;
  int sign_degree = 0;
  /// Uses of the membership oracle by the amplification.
  std::size_t oracle_queries = 0;

  /// a|phi> + b|phi_perp> over the space (phi uniform on simplices, phi_perp on the rest).
  Vector amplified_state() const;
};

SimplexStateEnsemble prepare_simplex_ensemble(const SimplicialComplex& complex, int q, double eps_sign,
                                              const PolynomialLimits& limits = {});

/// Ideal ensemble (exact uniform mixture over the simplices).
SimplexStateEnsemble ideal_simplex_ensemble(const SimplicialComplex& complex, int q);

struct AssembledLaplacian {
  VirtualBlockEncoding encoding;
  /// Exact persistent Laplacian embedded in the weight-(q+1) space.
  Matrix exact;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta = 0.0;
  bool has_tail = false;
  double kappa = 0.0;
  int inverse_degree = 0;
  double eps_inv = 0.0;
  double measured_error = 0.0;
  double error_bound = 0.0;
  std::vector<VirtualBlockEncoding> stages;
};

/// Delta_1 - Delta_2 Delta_4^+ Delta_3 + Delta_down as an LCU of block-encodings.
/// With `exact_inverse` the pseudo-inverse stage is a dense Moore-Penrose inverse.
AssembledLaplacian assemble_persistent_laplacian_encoding(const SimplicialPair& pair, int q,
                                                          const SpectralGapBounds& bounds, double eps_inv,
                                                          const PolynomialLimits& limits = {},
                                                          bool exact_inverse = false);

struct ProjectorStage {
  VirtualBlockEncoding encoding;
  /// Kernel projector of the exact Laplacian, on the span of K's simplices.
  Matrix exact_projector;
  /// Indicator of K's simplices in the logical space.
  std::vector<bool> in_small;
  std::optional<BoundedPolynomial> rectangle;
  double t = 0.0;
  double delta = 0.0;
  double eps_rect = 0.0;
  /// ||block - Pi|| on the span of K's simplices.
  double measured_error = 0.0;
  /// ||P(Delta/beta) - Pi|| with the exact Laplacian.
  double exact_input_error = 0.0;
  /// ||P(Delta/beta) - P(Delta~/beta)||.
  double robustness_measured = 0.0;
  double robustness_bound = 0.0;
  bool robustness_checked = false;
  bool robustness_holds = true;
  /// eps_rect + 4 d sqrt(n^4 (q+2)^4 eps_inv / beta).
  double formula_error = 0.0;
};

ProjectorStage projector_encoding(const AssembledLaplacian& laplacian, const SimplicialPair& pair, int q,
                                  const SpectralGapBounds& bounds, double eps_rect, const PolynomialLimits& limits = {});

/// Exact eigenprojector standing in for the rectangle stage.
ProjectorStage exact_projector_encoding(const AssembledLaplacian& laplacian, const SimplicialPair& pair, int q);

struct MeasurementOutcome {
  double p1_ideal = 0.0;
  double p1_tilde = 0.0;
  double bound = 0.0;
  bool within_bound = false;
};

/// p1 = Tr[Pi rho], p1~ = Tr[A^T A rho~] with A the projector block.
MeasurementOutcome block_measurement_probability(const ProjectorStage& projector, const SimplexStateEnsemble& ensemble);

struct SampleResult {
  std::size_t samples = 0;
  std::size_t successes = 0;
  double estimate = 0.0;
  double eps = 0.0;
  double eta = 0.0;
  std::uint64_t seed = 0;
};

/// ceil(ln(2/eta) / (2 eps^2)).
std::size_t hoeffding_samples(double eps, double eta);

SampleResult sample_estimate(double p1_tilde, double eps, double eta, std::uint64_t seed);

struct PromiseReport {
  double density = 0.0;
  bool simplex_dense = false;
  std::optional<double> gamma_min;
  bool gamma_applicable = false;
  std::optional<double> lambda_min;
};

PromiseReport check_promises(const SimplicialPair& pair, int q);

struct ErrorBudget {
  double target = 0.0;
  double eps_sign = 0.0;
  double eps_inv = 0.0;
  double eps_rect = 0.0;
  /// eps_rect plus the measured robustness term.
  double eps_pi = 0.0;
  /// Directly measured projector error.
  double eps_pi_measured = 0.0;
  /// The symbolic form eps_rect + 4 d sqrt(n^4 (q+2)^4 eps_inv / beta).
  double eps_pi_formula = 0.0;

  double total_bound() const;
};

/// Default split for a target eps: eps_sign = sqrt(eps/8), eps_rect = eps_pi_target/2 where
/// 8 sqrt(2) eps_pi_target + 2 eps_sign^2 = eps.
ErrorBudget default_budget(double eps);

struct CostReport {
  double oracle_small = 0.0;
  double oracle_large = 0.0;
  double gates = 0.0;
  std::size_t qubits = 0;
  int ancillas = 0;
};

CostReport cost_report(const SimplicialPair& pair, int q, const ErrorBudget& budget, double gamma_q, double lambda_q,
                       double density);

struct EstimationConfig {
  double eps = 0.05;
  double eta = 0.05;
  std::uint64_t seed = 1;
  std::optional<double> gamma_q;
  std::optional<double> lambda_q;
  PolynomialLimits limits;
  /// Dense exact stages instead of polynomial approximations.
  bool exact_surrogate = false;
  /// Upper limit on eps_inv refinement rounds.
  int inverse_rounds = 5;
};

struct EncodingSummary {
  std::string stage;
  double alpha = 0.0;
  int ancillas = 0;
  double eps = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct EstimationReport {
  std::size_t vertices = 0;
  int q = 0;
  std::size_t small_count = 0;
  std::size_t large_count = 0;
  std::size_t persistent_betti = 0;
  double exact_ratio = 0.0;
  bool quantum = false;
  double p1_ideal = 0.0;
  double p1_tilde = 0.0;
  double discrepancy = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  ErrorBudget budget;
  SpectralGapBounds bounds;
  PromiseReport promises;
  CostReport costs;
  SampleResult sampling;
  double beta = 0.0;
  double alpha0 = 0.0, alpha1 = 0.0, alpha2 = 0.0;
  double kappa = 0.0;
  int sign_degree = 0;
  int inverse_degree = 0;
  int rectangle_degree = 0;
  double rect_t = 0.0;
  double rect_delta = 0.0;
  double laplacian_error = 0.0;
  double laplacian_error_bound = 0.0;
  double robustness_measured = 0.0;
  double robustness_bound = 0.0;
  bool robustness_checked = false;
  double trace_distance = 0.0;
  std::size_t amplification_queries = 0;
  std::vector<EncodingSummary> encodings;
  std::optional<double> runtime_seconds;
};

/// Classical persistent Betti number with the promise values; no quantum stages.
EstimationReport classical_report(const SimplicialPair& pair, int q);

/// Full simulated estimate, including the classical oracle values.
EstimationReport estimate_persistent_betti(const SimplicialPair& pair, int q, const EstimationConfig& config);

}  // namespace qtda
