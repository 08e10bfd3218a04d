#include "qtda/report.hpp"

#include <cmath>
#include <optional>

#include <json.hpp>

namespace qtda::report {
namespace {

using Json = nlohmann::ordered_json;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

std::string to_json(const EstimationReport& r, Sections sections) {
  const bool include_classical = sections != Sections::Quantum;
  const bool include_quantum = sections != Sections::Classical;
  const bool include_comparison = sections == Sections::Both;
  Json j;
  j["vertices"] = r.vertices;
  j["q"] = r.q;
  j["simplices_small"] = r.small_count;
  j["simplices_large"] = r.large_count;
  if (include_classical) j["classical"] = {{"persistent_betti", r.persistent_betti}, {"normalized", number(r.exact_ratio)}};
  j["promises"] = {{"density", number(r.promises.density)},
                   {"simplex_dense", r.promises.simplex_dense},
                   {"gamma_min", optional_number(r.promises.gamma_min)},
                   {"gamma_applicable", r.promises.gamma_applicable},
                   {"lambda_min", optional_number(r.promises.lambda_min)}};
  if (include_quantum && r.quantum) {
    Json q;
    q["p1_ideal"] = number(r.p1_ideal);
    q["p1_simulated"] = number(r.p1_tilde);
    q["bound"] = number(r.bound);
    if (include_comparison) {
      q["discrepancy"] = number(r.discrepancy);
      q["within_bound"] = r.within_bound;
    }
    q["sampling"] = {{"samples", r.sampling.samples}, {"successes", r.sampling.successes},
                     {"estimate", number(r.sampling.estimate)}, {"eps", number(r.sampling.eps)},
                     {"eta", number(r.sampling.eta)},          {"seed", r.sampling.seed}};
    if (include_comparison) q["sampled_discrepancy"] = number(std::abs(r.sampling.estimate - r.exact_ratio));
    q["budget"] = {{"target", number(r.budget.target)},
                   {"eps_sign", number(r.budget.eps_sign)},
                   {"eps_inv", number(r.budget.eps_inv)},
                   {"eps_rect", number(r.budget.eps_rect)},
                   {"eps_pi", number(r.budget.eps_pi)},
                   {"eps_pi_measured", number(r.budget.eps_pi_measured)},
                   {"eps_pi_formula", number(r.budget.eps_pi_formula)},
                   {"total_bound", number(r.budget.total_bound())}};
    q["gaps"] = {{"gamma_q", number(r.bounds.gamma_q)}, {"lambda_q", number(r.bounds.lambda_q)}};
    q["scales"] = {{"beta", number(r.beta)},   {"alpha0", number(r.alpha0)}, {"alpha1", number(r.alpha1)},
                   {"alpha2", number(r.alpha2)}, {"kappa", number(r.kappa)}};
    q["polynomials"] = {{"sign_degree", r.sign_degree},
                        {"inverse_degree", r.inverse_degree},
                        {"rectangle_degree", r.rectangle_degree},
                        {"rectangle_t", number(r.rect_t)},
                        {"rectangle_delta", number(r.rect_delta)}};
    q["laplacian_error"] = {{"measured", number(r.laplacian_error)}, {"bound", number(r.laplacian_error_bound)}};
    q["robustness"] = {{"checked", r.robustness_checked},
                       {"measured", number(r.robustness_measured)},
                       {"bound", number(r.robustness_bound)}};
    q["state_preparation"] = {{"trace_distance", number(r.trace_distance)},
                              {"oracle_queries", r.amplification_queries}};
    q["costs"] = {{"oracle_calls_small", number(r.costs.oracle_small)},
                  {"oracle_calls_large", number(r.costs.oracle_large)},
                  {"gates", number(r.costs.gates)},
                  {"qubits", r.costs.qubits},
                  {"ancillas", r.costs.ancillas}};
    Json enc = Json::array();
    for (const auto& e : r.encodings) {
      enc.push_back({{"stage", e.stage},
                     {"alpha", number(e.alpha)},
                     {"ancillas", e.ancillas},
                     {"eps", number(e.eps)},
                     {"rows", e.rows},
                     {"cols", e.cols}});
    }
    q["encodings"] = enc;
    j["quantum_simulation"] = q;
  }
  if (r.runtime_seconds) j["runtime_seconds"] = *r.runtime_seconds;
  return j.dump(2) + "\n";
}

std::string polynomial_json(const BoundedPolynomial& p) {
  Json j;
  j["family"] = p.family;
  j["basis"] = "chebyshev";
  j["parity"] = to_string(p.parity);
  j["degree"] = p.degree();
  Json params = Json::object();
  for (const auto& [k, v] : p.parameters) params[k] = number(v);
  j["parameters"] = params;
  Json bands = Json::array();
  for (const auto& b : p.bands) {
    Json band{{"x_lo", number(b.x_lo)}, {"x_hi", number(b.x_hi)}, {"description", b.description}};
    if (b.reference) {
      band["tolerance"] = number(b.tolerance);
    } else {
      band["value_lo"] = number(b.value_lo);
      band["value_hi"] = number(b.value_hi);
    }
    bands.push_back(band);
  }
  j["bands"] = bands;
  j["coefficients"] = p.coefficients;
  return j.dump(2) + "\n";
}

}  // namespace qtda::report
