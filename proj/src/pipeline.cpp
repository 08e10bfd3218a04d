#include "qtda/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "qtda/errors.hpp"

namespace qtda {
namespace {

void require_quantum_size(const SimplicialComplex& c, int q) {
  const std::size_t n = c.vertex_count();
  if (n > kMaxQuantumVertices) {
    throw ResourceError("quantum simulation supports at most " + std::to_string(kMaxQuantumVertices) + " vertices, got " +
                        std::to_string(n));
  }
  for (int k : {q, q + 1, q + 2}) {
    if (k < 0 || static_cast<std::size_t>(k) > n) continue;
    if (binomial(n, static_cast<std::size_t>(k)) > double(kMaxLogicalDim)) {
      throw ResourceError("weight-" + std::to_string(k) + " space over " + std::to_string(n) +
                          " bits exceeds the simulator's dimension cap of " + std::to_string(kMaxLogicalDim));
    }
  }
}

std::vector<std::size_t> small_positions(const LogicalSpace& space, const SimplicialComplex& small) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (small.contains(space.basis[i])) out.push_back(i);
  }
  return out;
}

Matrix embed(const Matrix& m, const std::vector<std::size_t>& positions, std::size_t dim) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      out(Eigen::Index(positions[i]), Eigen::Index(positions[j])) = m(Eigen::Index(i), Eigen::Index(j));
    }
  }
  return out;
}

double restricted_norm(const Matrix& m, const std::vector<std::size_t>& positions) {
  return linalg::spectral_norm(linalg::submatrix(m, positions, positions));
}

double log_clamped(double x) { return std::max(1.0, std::log(x)); }

EncodingSummary summarize(const VirtualBlockEncoding& u) {
  return {u.label, u.alpha, u.ancillas, u.eps, u.rows.dim(), u.cols.dim()};
}

}  // namespace

Vector dicke_state(std::size_t n, int q) {
  if (n > kMaxQuantumVertices) throw ResourceError("Dicke state over more than 14 qubits");
  if (q < 0 || static_cast<std::size_t>(q) >= n) throw InputError("Dicke state needs 0 <= q < n");
  Vector psi = Vector::Zero(Eigen::Index(1) << n);
  const double amp = 1.0 / std::sqrt(binomial(n, static_cast<std::size_t>(q) + 1));
  for (Eigen::Index x = 0; x < psi.size(); ++x) {
    if (weight(static_cast<VertexMask>(x)) == q + 1) psi[x] = amp;
  }
  return psi;
}

Vector SimplexStateEnsemble::amplified_state() const {
  Vector psi = Vector::Zero(ideal.size());
  const auto marked = (ideal.array() > 0).count();
  const auto rest = ideal.size() - marked;
  for (Eigen::Index i = 0; i < ideal.size(); ++i) {
    if (ideal[i] > 0) {
      psi[i] = a / std::sqrt(double(marked));
    } else if (rest > 0) {
      psi[i] = b / std::sqrt(double(rest));
    }
  }
  return psi;
}

SimplexStateEnsemble ideal_simplex_ensemble(const SimplicialComplex& complex, int q) {
  if (!complex.materialized(q)) throw InputError("dimension " + std::to_string(q) + " is not materialized");
  require_quantum_size(complex, q);
  SimplexStateEnsemble e;
  e.space = LogicalSpace::hamming(complex.vertex_count(), q + 1);
  e.density = simplex_density(complex, q);
  if (complex.count(q) == 0) throw InputError("no " + std::to_string(q) + "-simplices: the estimate is undefined");
  e.ideal = Vector::Zero(static_cast<Eigen::Index>(e.space.dim()));
  const double w = 1.0 / double(complex.count(q));
  for (std::size_t i = 0; i < e.space.dim(); ++i) {
    if (complex.contains(e.space.basis[i])) e.ideal[Eigen::Index(i)] = w;
  }
  e.prepared = e.ideal;
  return e;
}

SimplexStateEnsemble prepare_simplex_ensemble(const SimplicialComplex& complex, int q, double eps_sign,
                                              const PolynomialLimits& limits) {
  if (!(eps_sign > 0 && eps_sign < 1)) throw InputError("eps_sign must lie in (0, 1)");
  SimplexStateEnsemble e = ideal_simplex_ensemble(complex, q);
  e.eps_sign = eps_sign;
  e.trace_bound = 2.0 * eps_sign * eps_sign;
  if (e.density < 1.0) {
    // Sign polynomial at gap sqrt(d) with accuracy eps^2/2 keeps |b|^2 = 1 - a^2 <= eps^2.
    const BoundedPolynomial sign = sign_polynomial(std::sqrt(e.density), 0.5 * eps_sign * eps_sign, limits);
    e.a = std::min(1.0, sign(std::sqrt(e.density)));
    e.b = std::sqrt(std::max(0.0, 1.0 - e.a * e.a));
    e.sign_degree = sign.degree();
    e.oracle_queries = static_cast<std::size_t>(sign.degree()) + 1;
  }
  const auto marked = double(complex.count(q));
  const double rest = double(e.space.dim()) - marked;
  for (Eigen::Index i = 0; i < e.prepared.size(); ++i) {
    e.prepared[i] = e.ideal[i] > 0 ? e.a * e.a / marked : (rest > 0 ? e.b * e.b / rest : 0.0);
  }
  e.trace_distance = (e.ideal - e.prepared).cwiseAbs().sum();
  return e;
}

AssembledLaplacian assemble_persistent_laplacian_encoding(const SimplicialPair& pair, int q,
                                                          const SpectralGapBounds& bounds, double eps_inv,
                                                          const PolynomialLimits& limits, bool exact_inverse) {
  const auto& small = pair.small();
  const auto& large = pair.large();
  if (!large.materialized(q + 1)) throw InputError("L must be materialized up to dimension q+1");
  require_quantum_size(large, q);
  const double n = double(small.vertex_count());
  AssembledLaplacian out;
  out.eps_inv = eps_inv;

  const auto d_small = encode_boundary(small, q, small.membership());
  auto down = product(adjoint(d_small), d_small);
  down.label = "down";
  down.validate();
  const auto d_large = encode_boundary(large, q + 1, large.membership());
  auto up = product(d_large, adjoint(d_large));
  up.label = "up_L";
  up.validate();

  const auto in_small = small.membership();
  const SpaceFilter keep = [in_small, q](VertexMask m) { return in_small(m, q); };
  const SpaceFilter drop = [in_small, q](VertexMask m) { return !in_small(m, q); };
  auto d1 = restrict_submatrix(up, keep, keep);
  d1.label = "delta1";
  auto d2 = restrict_submatrix(up, keep, drop);
  d2.label = "delta2";
  auto d3 = restrict_submatrix(up, drop, keep);
  d3.label = "delta3";
  auto d4 = restrict_submatrix(up, drop, drop);
  d4.label = "delta4";
  for (const auto* s : {&d1, &d2, &d3, &d4}) s->validate();

  out.alpha0 = up.alpha;
  out.alpha2 = down.alpha;
  out.has_tail = !pair.complement_indices(q).empty();
  out.stages = {down, up, d1, d2, d3, d4};
  LcuPlan plan;
  if (out.has_tail) {
    VirtualBlockEncoding pinv;
    if (exact_inverse) {
      pinv = d4;
      pinv.block = linalg::pseudo_inverse(d4.block);
      pinv.alpha = 2.0 / bounds.gamma_q;
      pinv.ancillas = d4.ancillas + 1;
      pinv.eps = 0.0;
      pinv.label = "pinv(delta4)";
      out.kappa = d4.alpha / bounds.gamma_q;
    } else {
      const auto res = pseudo_inverse_encoding(d4, bounds.gamma_q, eps_inv, limits);
      pinv = res.encoding;
      pinv.label = "pinv(delta4)";
      out.kappa = res.kappa;
      out.inverse_degree = res.polynomial.degree();
    }
    pinv.validate();
    auto middle = product(product(d2, pinv), d3);
    middle.label = "delta2*pinv*delta3";
    middle.validate();
    out.alpha1 = middle.alpha;
    out.stages.push_back(pinv);
    out.stages.push_back(middle);
    plan = {{d1, middle, down}, {1, -1, 1}};
  } else {
    plan = {{d1, down}, {1, 1}};
  }
  out.encoding = linear_combine(plan);
  out.encoding.label = "persistent_laplacian";
  out.encoding.validate();
  out.stages.push_back(out.encoding);
  out.beta = out.encoding.alpha;

  const auto positions = small_positions(out.encoding.rows, small);
  out.exact = embed(persistent_laplacian(pair, q).values, positions, out.encoding.rows.dim());
  out.measured_error = linalg::spectral_norm(out.encoding.block - out.exact);
  out.error_bound = out.encoding.eps;
  (void)n;
  return out;
}

ProjectorStage projector_encoding(const AssembledLaplacian& lap, const SimplicialPair& pair, int q,
                                  const SpectralGapBounds& bounds, double eps_rect, const PolynomialLimits& limits) {
  ProjectorStage st;
  const auto& space = lap.encoding.rows;
  const auto positions = small_positions(space, pair.small());
  st.in_small.assign(space.dim(), false);
  for (std::size_t p : positions) st.in_small[p] = true;
  st.exact_projector = embed(linalg::kernel_projector(persistent_laplacian(pair, q).values), positions, space.dim());
  const double beta = lap.beta;
  if (bounds.lambda_min) {
    if (!(bounds.lambda_q > 0 && bounds.lambda_q < *bounds.lambda_min)) {
      throw InputError("lambda bound must lie strictly between 0 and the smallest nonzero eigenvalue " +
                       std::to_string(*bounds.lambda_min));
    }
    st.t = *bounds.lambda_min / (2.0 * beta);
  } else {
    st.t = bounds.lambda_q / beta;
  }
  st.delta = bounds.lambda_q / (2.0 * beta);
  st.eps_rect = eps_rect;
  const BoundedPolynomial rect = rectangle_polynomial(st.t, st.delta, eps_rect, limits);
  st.rectangle = rect;
  st.encoding = apply_svt(lap.encoding, rect);
  st.encoding.eps += eps_rect;
  st.encoding.label = "projector";
  st.measured_error = restricted_norm(st.encoding.block - st.exact_projector, positions);
  const Matrix exact_svt = singular_value_transform(lap.exact / beta, rect);
  st.exact_input_error = restricted_norm(exact_svt - st.exact_projector, positions);
  const RobustnessCheck rc = robustness_gap(rect, lap.exact / beta, lap.encoding.normalized());
  st.robustness_checked = rc.preconditions_met;
  st.robustness_measured = rc.preconditions_met ? rc.measured : linalg::spectral_norm(exact_svt - st.encoding.block);
  st.robustness_bound = rc.bound;
  st.robustness_holds = !rc.preconditions_met || rc.holds;
  st.formula_error = eps_rect + 4.0 * rect.degree() * std::sqrt(lap.encoding.eps / beta);
  return st;
}

ProjectorStage exact_projector_encoding(const AssembledLaplacian& lap, const SimplicialPair& pair, int q) {
  ProjectorStage st;
  const auto& space = lap.encoding.rows;
  const auto positions = small_positions(space, pair.small());
  st.in_small.assign(space.dim(), false);
  for (std::size_t p : positions) st.in_small[p] = true;
  st.exact_projector = embed(linalg::kernel_projector(persistent_laplacian(pair, q).values), positions, space.dim());
  const Matrix assembled = linalg::submatrix(lap.encoding.block, positions, positions);
  st.encoding = lap.encoding;
  st.encoding.block = embed(linalg::kernel_projector(assembled), positions, space.dim());
  st.encoding.alpha = 1.0;
  st.encoding.eps = 0.0;
  st.encoding.ancillas = lap.encoding.ancillas + 1;
  st.encoding.label = "projector(exact)";
  st.measured_error = restricted_norm(st.encoding.block - st.exact_projector, positions);
  return st;
}

MeasurementOutcome block_measurement_probability(const ProjectorStage& projector, const SimplexStateEnsemble& ensemble) {
  const Matrix& a = projector.encoding.block;
  if (static_cast<std::size_t>(a.cols()) != ensemble.space.dim() || !(projector.encoding.cols == ensemble.space)) {
    throw ContractError("projector and ensemble live on different logical spaces");
  }
  MeasurementOutcome m;
  const Vector ata = (a.transpose() * a).diagonal();
  m.p1_ideal = ensemble.ideal.dot(projector.exact_projector.diagonal());
  m.p1_tilde = ensemble.prepared.dot(ata);
  m.bound = 8.0 * std::sqrt(2.0) * projector.measured_error + ensemble.trace_bound;
  m.within_bound = std::abs(m.p1_ideal - m.p1_tilde) <= m.bound + 1e-12;
  return m;
}

std::size_t hoeffding_samples(double eps, double eta) {
  if (!(eps > 0)) throw InputError("sampling accuracy must be positive");
  if (!(eta > 0 && eta < 1)) throw InputError("confidence parameter eta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(2.0 / eta) / (2.0 * eps * eps)));
}

SampleResult sample_estimate(double p1_tilde, double eps, double eta, std::uint64_t seed) {
  SampleResult r;
  r.samples = hoeffding_samples(eps, eta);
  r.eps = eps;
  r.eta = eta;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  const double p = std::clamp(p1_tilde, 0.0, 1.0);
  for (std::size_t i = 0; i < r.samples; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) ++r.successes;
  }
  r.estimate = double(r.successes) / double(r.samples);
  return r;
}

PromiseReport check_promises(const SimplicialPair& pair, int q) {
  PromiseReport p;
  p.density = simplex_density(pair.small(), q);
  p.simplex_dense = p.density > 0;
  const auto b = spectral_bounds(pair, q);
  p.gamma_min = b.gamma_min;
  p.gamma_applicable = b.gamma_applicable;
  p.lambda_min = b.lambda_min;
  return p;
}

double ErrorBudget::total_bound() const { return 8.0 * std::sqrt(2.0) * eps_pi + 2.0 * eps_sign * eps_sign; }

ErrorBudget default_budget(double eps) {
  if (!(eps > 0 && eps < 1)) throw InputError("target accuracy must lie in (0, 1)");
  ErrorBudget b;
  b.target = eps;
  b.eps_sign = std::sqrt(eps / 8.0);
  const double eps_pi_target = 3.0 * eps / (32.0 * std::sqrt(2.0));
  b.eps_rect = eps_pi_target / 2.0;
  b.eps_inv = 1e-6;
  b.eps_pi = eps_pi_target;
  return b;
}

CostReport cost_report(const SimplicialPair& pair, int q, const ErrorBudget& budget, double gamma_q, double lambda_q,
                       double density) {
  CostReport c;
  const double n = double(pair.small().vertex_count());
  const double qf = std::max(q, 1);
  const double amp = std::sqrt(1.0 / std::max(density, 1e-300)) * log_clamped(1.0 / budget.eps_sign);
  const double logs = log_clamped(1.0 / budget.eps_rect) * log_clamped(1.0 / (gamma_q * budget.eps_inv));
  const double core = std::pow(qf, 4) / (gamma_q * gamma_q * lambda_q) * logs;
  c.oracle_small = amp + core * std::pow(n, 6);
  c.oracle_large = core * std::pow(n, 6);
  c.gates = qf * n * n * amp + core * std::pow(n, 8);
  const int b = std::max(boundary_ancillas(pair.small().vertex_count(), q),
                         boundary_ancillas(pair.small().vertex_count(), q + 1));
  c.ancillas = 6 * b + 10;
  c.qubits = 2 * pair.small().vertex_count() + 1 + static_cast<std::size_t>(c.ancillas) + 1;
  return c;
}

EstimationReport classical_report(const SimplicialPair& pair, int q) {
  EstimationReport r;
  r.vertices = pair.small().vertex_count();
  r.q = q;
  r.small_count = pair.small().count(q);
  r.large_count = pair.large().count(q);
  r.persistent_betti = persistent_betti(pair, q);
  r.exact_ratio = r.small_count ? double(r.persistent_betti) / double(r.small_count) : 0.0;
  r.bounds = spectral_bounds(pair, q);
  r.promises = check_promises(pair, q);
  return r;
}

EstimationReport estimate_persistent_betti(const SimplicialPair& pair, int q, const EstimationConfig& config) {
  EstimationReport r = classical_report(pair, q);
  r.quantum = true;
  if (r.small_count == 0) throw InputError("K has no " + std::to_string(q) + "-simplices: the estimate is undefined");
  SpectralGapBounds bounds = r.bounds;
  if (config.gamma_q) {
    if (bounds.gamma_min && !(*config.gamma_q > 0 && *config.gamma_q < *bounds.gamma_min)) {
      throw InputError("gamma override must lie in (0, " + std::to_string(*bounds.gamma_min) + ")");
    }
    bounds.gamma_q = *config.gamma_q;
  }
  if (config.lambda_q) bounds.lambda_q = *config.lambda_q;
  r.bounds = bounds;

  ErrorBudget budget = default_budget(config.eps);
  const double eps_pi_target = 3.0 * config.eps / (32.0 * std::sqrt(2.0));
  SimplexStateEnsemble ensemble;
  AssembledLaplacian lap;
  ProjectorStage proj;
  if (config.exact_surrogate) {
    ensemble = ideal_simplex_ensemble(pair.small(), q);
    lap = assemble_persistent_laplacian_encoding(pair, q, bounds, budget.eps_inv, config.limits, true);
    proj = exact_projector_encoding(lap, pair, q);
    budget.eps_sign = 0.0;
    budget.eps_inv = 0.0;
    budget.eps_rect = 0.0;
  } else {
    ensemble = prepare_simplex_ensemble(pair.small(), q, budget.eps_sign, config.limits);
    for (int round = 0;; ++round) {
      lap = assemble_persistent_laplacian_encoding(pair, q, bounds, budget.eps_inv, config.limits);
      proj = projector_encoding(lap, pair, q, bounds, budget.eps_rect, config.limits);
      if (!lap.has_tail || proj.robustness_measured <= eps_pi_target / 2.0 || round + 1 >= config.inverse_rounds) break;
      budget.eps_inv *= 0.01;
    }
  }
  budget.eps_pi = budget.eps_rect + proj.robustness_measured;
  budget.eps_pi_measured = proj.measured_error;
  budget.eps_pi_formula = proj.formula_error;
  r.budget = budget;

  const MeasurementOutcome m = block_measurement_probability(proj, ensemble);
  r.p1_ideal = m.p1_ideal;
  r.p1_tilde = m.p1_tilde;
  r.discrepancy = std::abs(m.p1_tilde - r.exact_ratio);
  r.bound = m.bound;
  r.within_bound = r.discrepancy <= m.bound + 1e-12;
  r.sampling = sample_estimate(m.p1_tilde, config.eps, config.eta, config.seed);
  r.beta = lap.beta;
  r.alpha0 = lap.alpha0;
  r.alpha1 = lap.alpha1;
  r.alpha2 = lap.alpha2;
  r.kappa = lap.kappa;
  r.sign_degree = ensemble.sign_degree;
  r.inverse_degree = lap.inverse_degree;
  r.rectangle_degree = proj.rectangle ? proj.rectangle->degree() : 0;
  r.rect_t = proj.t;
  r.rect_delta = proj.delta;
  r.laplacian_error = lap.measured_error;
  r.laplacian_error_bound = lap.error_bound;
  r.robustness_measured = proj.robustness_measured;
  r.robustness_bound = proj.robustness_bound;
  r.robustness_checked = proj.robustness_checked;
  r.trace_distance = ensemble.trace_distance;
  r.amplification_queries = ensemble.oracle_queries;
  for (const auto& s : lap.stages) r.encodings.push_back(summarize(s));
  r.encodings.push_back(summarize(proj.encoding));
  const double eps_sign_cost = budget.eps_sign > 0 ? budget.eps_sign : default_budget(config.eps).eps_sign;
  ErrorBudget cost_budget = budget;
  if (config.exact_surrogate) cost_budget = default_budget(config.eps);
  cost_budget.eps_sign = eps_sign_cost;
  r.costs = cost_report(pair, q, cost_budget, bounds.gamma_q, bounds.lambda_q, r.promises.density);
  r.costs.ancillas = proj.encoding.ancillas;
  if (!r.within_bound) {
    throw InvariantError("block-measurement error " + std::to_string(r.discrepancy) + " exceeds the certified bound " +
                         std::to_string(m.bound));
  }
  return r;
}

}  // namespace qtda
