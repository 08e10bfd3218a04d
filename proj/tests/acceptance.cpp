// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtda/blockenc.hpp"
#include "qtda/cli.hpp"
#include "qtda/errors.hpp"
#include "qtda/homology.hpp"
#include "qtda/pipeline.hpp"
#include "qtda/polynomial.hpp"
#include "qtda/qsvt.hpp"
#include "qtda/report.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qtda;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures) + "/" + std::to_string(checks) +
                       " checks failed, first: " + first_failure};
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

struct Instance {
  std::string name;
  SimplicialPair pair;
  int q;
};

std::vector<Instance> random_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    const int n = 3 + i % 6;
    const auto l = oracle::random_complex(rng, n, 2 + i % 5, std::min(n, 4));
    const auto k = oracle::random_subcomplex(rng, l, 0.5);
    out.push_back({"random #" + std::to_string(i), SimplicialPair(oracle::to_complex(n, k), oracle::to_complex(n, l)), 0});
  }
  return out;
}

// Fixtures for the end-to-end criteria: the known-topology set plus a two-component pair.
std::vector<fixture::Named> end_to_end_fixtures() {
  auto out = fixture::known_topology();
  out.push_back({"two triangles, one filled in L",
                 SimplicialPair(fixture::two_hollow_triangles(), fixture::two_triangles_one_filled()), 1, 1});
  out.push_back({"square with diagonal, one triangle filled in L",
                 SimplicialPair(fixture::square_with_diagonal(), fixture::square_one_triangle()), 1, 1});
  return out;
}

SimplicialComplex hollow_square() {
  const std::vector<VertexMask> s{oracle::simplex({0, 1}), oracle::simplex({1, 2}), oracle::simplex({2, 3}),
                                  oracle::simplex({0, 3})};
  return SimplicialComplex::from_simplices(4, s);
}

SimplicialComplex filled_square() {
  const std::vector<VertexMask> s{oracle::simplex({0, 1, 2}), oracle::simplex({0, 2, 3})};
  return SimplicialComplex::from_simplices(4, s);
}

// Pairs whose L has q-simplices outside K, so the Schur step is live.
std::vector<fixture::Named> tail_fixtures() {
  return {{"path into filled triangle", SimplicialPair(fixture::path3(), fixture::filled_triangle()), 1, 0},
          {"hollow square into filled square", SimplicialPair(hollow_square(), filled_square()), 1, 0}};
}

constexpr int kRaisedDegreeCap = 4'000'000;

// 1
Outcome hodge_nullity() {
  Tally t;
  std::size_t pairs = 0, levels = 0;
  for (const auto& inst : random_instances(2024, 64)) {
    ++pairs;
    const auto k = oracle::to_set(inst.pair.small());
    const auto l = oracle::to_set(inst.pair.large());
    for (int q = 0; q <= inst.pair.large().dimension(); ++q) {
      ++levels;
      const std::size_t nullity = linalg::nullity(persistent_laplacian(inst.pair, q).values);
      const std::size_t expected = oracle::persistent_betti(k, l, q);
      t.expect(nullity == expected, inst.name + " q=" + std::to_string(q) + ": nullity " + std::to_string(nullity) +
                                        " vs " + std::to_string(expected));
    }
  }
  return t.outcome(std::to_string(pairs) + " random pairs, " + std::to_string(levels) + " (pair, q) levels");
}

// 2
Outcome schur_vs_zbasis() {
  Tally t;
  double worst = 0.0;
  std::size_t levels = 0;
  for (const auto& inst : random_instances(2024, 64)) {
    for (int q = 0; q <= inst.pair.large().dimension(); ++q) {
      ++levels;
      const Matrix s = persistent_up_laplacian(inst.pair, q).values;
      const Matrix z = persistent_up_laplacian_zbasis(inst.pair, q).values;
      if (s.rows() != z.rows() || s.cols() != z.cols()) {
        t.expect(false, inst.name + " q=" + std::to_string(q) + ": shape mismatch");
        continue;
      }
      const double diff = s.size() ? (s - z).cwiseAbs().maxCoeff() : 0.0;
      worst = std::max(worst, diff);
      t.expect(diff <= 1e-9, inst.name + " q=" + std::to_string(q) + ": max entry difference " + fmt(diff));
    }
  }
  return t.outcome(std::to_string(levels) + " levels, max entry difference " + fmt(worst));
}

// 3
Outcome known_topology() {
  Tally t;
  for (const auto& f : fixture::known_topology()) {
    const std::size_t got = persistent_betti(f.pair, f.q);
    t.expect(got == f.expected_betti, f.name + ": got " + std::to_string(got));
  }
  const auto circle = fixture::circle8_pair();
  t.expect(betti_number(circle.small(), 1) == 1 && betti_number(circle.large(), 1) == 1,
           "circle-8 endpoints do not both carry the cycle");
  return t.outcome(std::to_string(fixture::known_topology().size()) + " fixtures exact");
}

// 4
Outcome block_encoding_algebra() {
  Tally t;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> dim(1, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index s = dim(rng);
    const Matrix a = random_matrix(rng, s, s), b = random_matrix(rng, s, s);
    const auto ea = encode_matrix(a, 1.3 * linalg::spectral_norm(a), 1 + trial % 3, 1e-3);
    const auto eb = encode_matrix(b, 1.1 * linalg::spectral_norm(b), 2, 2e-3);
    const auto ab = product(ea, eb);
    const bool bookkeeping = std::abs(ab.alpha - ea.alpha * eb.alpha) <= 1e-12 * ab.alpha &&
                             ab.ancillas == ea.ancillas + eb.ancillas &&
                             std::abs(ab.eps - (ea.alpha * eb.eps + eb.alpha * ea.eps)) <= 1e-12 * ab.alpha;
    t.expect(bookkeeping, "trial " + std::to_string(trial) + ": (alpha, a, eps) bookkeeping");
    const Matrix ua = dilate_to_unitary(ea), ub = dilate_to_unitary(eb);
    const Matrix circuit = compose_dilations(ua, ub, s);
    const double orth = (circuit.transpose() * circuit - Matrix::Identity(circuit.rows(), circuit.cols())).cwiseAbs().maxCoeff();
    const double via_circuit = (ab.alpha * extract_block(circuit, s, s) - a * b).cwiseAbs().maxCoeff() / ab.alpha;
    const double via_dilation = (ab.alpha * extract_block(dilate_to_unitary(ab), s, s) - a * b).cwiseAbs().maxCoeff() / ab.alpha;
    const double err = std::max({orth, via_circuit, via_dilation});
    worst = std::max(worst, err);
    t.expect(err <= 1e-10, "trial " + std::to_string(trial) + " (dim " + std::to_string(s) + "): deviation " + fmt(err));
  }
  return t.outcome("100 random products up to dimension 64, max deviation " + fmt(worst));
}

// 5
Outcome polynomial_certificates() {
  Tally t;
  struct Range {
    double lo = 1e300, hi = 0.0;
    void add(double r) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    double spread() const { return hi / lo; }
  } sign_r, rect_r, inv_r;
  for (double delta : {1e-1, 1e-2}) {
    for (double eps : {1e-2, 1e-4}) {
      const std::string tag = "delta=" + fmt(delta) + " eps=" + fmt(eps);
      const auto sign = sign_polynomial(delta, eps);
      const auto rect = rectangle_polynomial(0.5, delta, eps);
      const double kappa = 1.0 / delta;
      const auto inv = inverse_polynomial(kappa, eps);
      for (const auto* p : {&sign, &rect, &inv}) {
        const auto c = certify(*p, 10000);
        t.expect(c.passed, p->family + " " + tag + ": " + c.failure);
      }
      t.expect(rect(0.0) >= 1.0 - eps && rect(1.0) <= eps, "rectangle " + tag + ": range at 0 or 1");
      sign_r.add(sign.degree() / (std::log(1.0 / eps) / delta));
      rect_r.add(rect.degree() / (std::log(1.0 / eps) / delta));
      inv_r.add(inv.degree() / (kappa * std::log(kappa / eps)));
    }
  }
  t.expect(sign_r.spread() <= 4.0, "sign degree ratio spread " + fmt(sign_r.spread()));
  t.expect(rect_r.spread() <= 4.0, "rectangle degree ratio spread " + fmt(rect_r.spread()));
  t.expect(inv_r.spread() <= 4.0, "inverse degree ratio spread " + fmt(inv_r.spread()));
  return t.outcome("12 certificates on >= 1e4-point grids; degree/form spread sign " + fmt(sign_r.spread()) +
                   ", rectangle " + fmt(rect_r.spread()) + ", inverse " + fmt(inv_r.spread()));
}

// 6
Outcome robustness() {
  Tally t;
  std::size_t pipeline_checked = 0;
  for (const auto& f : end_to_end_fixtures()) {
    const auto r = estimate_persistent_betti(f.pair, f.q, {});
    if (!r.robustness_checked) continue;
    ++pipeline_checked;
    t.expect(r.robustness_measured <= r.robustness_bound + 1e-15,
             f.name + ": " + fmt(r.robustness_measured) + " > " + fmt(r.robustness_bound));
  }
  for (const auto& f : tail_fixtures()) {
    EstimationConfig cfg;
    cfg.limits.max_degree = kRaisedDegreeCap;
    const auto r = estimate_persistent_betti(f.pair, f.q, cfg);
    t.expect(r.robustness_checked, f.name + ": preconditions not met");
    ++pipeline_checked;
    t.expect(r.robustness_measured <= r.robustness_bound,
             f.name + ": " + fmt(r.robustness_measured) + " > " + fmt(r.robustness_bound));
  }
  std::mt19937_64 rng(606);
  const std::vector<BoundedPolynomial> polys{rectangle_polynomial(0.3, 0.05, 1e-3), sign_polynomial(0.1, 1e-3),
                                             inverse_polynomial(10.0, 1e-2)};
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_real_distribution<double> log_scale(-9.0, -2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index r = dim(rng), c = dim(rng);
    Matrix a = random_matrix(rng, r, c);
    a /= 1.05 * linalg::spectral_norm(a);
    Matrix at = a + std::pow(10.0, log_scale(rng)) * random_matrix(rng, r, c);
    at /= std::max(1.0, linalg::spectral_norm(at));
    const auto& p = polys[std::size_t(trial) % polys.size()];
    const auto check = robustness_gap(p, a, at);
    t.expect(check.preconditions_met, "perturbation " + std::to_string(trial) + ": " + check.skipped_reason);
    t.expect(check.holds, "perturbation " + std::to_string(trial) + ": " + fmt(check.measured) + " > " + fmt(check.bound));
  }
  return t.outcome(std::to_string(pipeline_checked) + " pipeline instances and 100 random perturbations");
}

// 7
Outcome end_to_end() {
  Tally t;
  std::size_t runs = 0;
  double worst_fraction = 1.0;
  for (double eps : {0.05, 0.01}) {
    for (const auto& f : end_to_end_fixtures()) {
      EstimationConfig cfg;
      cfg.eps = eps;
      const auto r = estimate_persistent_betti(f.pair, f.q, cfg);
      const double exact = double(f.expected_betti) / double(r.small_count);
      const double gap = std::abs(r.p1_tilde - exact);
      t.expect(gap <= r.bound, f.name + " eps=" + fmt(eps) + ": |p1~ - ratio| " + fmt(gap) + " > " + fmt(r.bound));
      std::size_t hits = 0;
      for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto s = sample_estimate(r.p1_tilde, eps, 0.05, seed);
        if (s.samples != hoeffding_samples(eps, 0.05)) t.expect(false, "sample count mismatch");
        if (std::abs(s.estimate - exact) <= eps) ++hits;
        ++runs;
      }
      worst_fraction = std::min(worst_fraction, hits / 100.0);
      t.expect(hits >= 95, f.name + " eps=" + fmt(eps) + ": " + std::to_string(hits) + "/100 within eps");
    }
  }
  return t.outcome(std::to_string(end_to_end_fixtures().size()) + " fixtures x eps {0.05, 0.01}, " +
                   std::to_string(runs) + " sampled runs, worst coverage " + fmt(worst_fraction));
}

// 8
Outcome exact_surrogate() {
  Tally t;
  auto fixtures = end_to_end_fixtures();
  for (auto& f : tail_fixtures()) fixtures.push_back(std::move(f));
  double worst = 0.0;
  for (const auto& f : fixtures) {
    EstimationConfig cfg;
    cfg.exact_surrogate = true;
    const auto r = estimate_persistent_betti(f.pair, f.q, cfg);
    const double exact = double(f.expected_betti) / double(r.small_count);
    const double err = std::max(std::abs(r.p1_tilde - exact), std::abs(r.p1_ideal - exact));
    worst = std::max(worst, err);
    t.expect(err <= 1e-9, f.name + ": deviation " + fmt(err));
  }
  return t.outcome(std::to_string(fixtures.size()) + " fixtures, max deviation " + fmt(worst));
}

// 9
Outcome betti_specialization() {
  Tally t;
  std::size_t runs = 0;
  for (const auto& f : end_to_end_fixtures()) {
    for (const auto* c : {&f.pair.small(), &f.pair.large()}) {
      if (c->count(f.q) == 0) continue;
      const SimplicialPair same(*c, *c);
      const auto r = estimate_persistent_betti(same, f.q, {});
      const double exact = double(betti_number(*c, f.q)) / double(c->count(f.q));
      const double gap = std::abs(r.p1_tilde - exact);
      ++runs;
      t.expect(gap <= r.bound, f.name + " (K = L): " + fmt(gap) + " > " + fmt(r.bound));
    }
  }
  return t.outcome(std::to_string(runs) + " K = L runs within budget");
}

// 10
Outcome determinism() {
  Tally t;
  cli::RunConfig c;
  c.input = std::string(QTDA_TEST_DATA) + "/circle8.csv";
  c.t = 0.8;
  c.s = 0.9;
  c.q = 1;
  c.mode = cli::Mode::Both;
  c.seed = 11;
  t.expect(cli::run_report(c) == cli::run_report(c), "circle-8 report differs between runs");
  for (const auto& f : end_to_end_fixtures()) {
    EstimationConfig cfg;
    cfg.seed = 5;
    const auto a = report::to_json(estimate_persistent_betti(f.pair, f.q, cfg), report::Sections::Both);
    const auto b = report::to_json(estimate_persistent_betti(f.pair, f.q, cfg), report::Sections::Both);
    t.expect(a == b, f.name + ": report differs between runs");
  }
  return t.outcome("CLI report and " + std::to_string(end_to_end_fixtures().size()) + " fixture reports byte-identical");
}

// Beyond the numbered list: the bound with a live Schur step.
Outcome tail_block_end_to_end() {
  Tally t;
  for (const auto& f : tail_fixtures()) {
    try {
      (void)estimate_persistent_betti(f.pair, f.q, {});
      t.expect(false, f.name + ": default degree cap unexpectedly sufficed");
    } catch (const ResourceError&) {
    }
    EstimationConfig cfg;
    cfg.limits.max_degree = kRaisedDegreeCap;
    const auto r = estimate_persistent_betti(f.pair, f.q, cfg);
    const double exact = double(f.expected_betti) / double(r.small_count);
    t.expect(std::abs(r.p1_tilde - exact) <= r.bound, f.name + ": outside bound");
    t.expect(r.laplacian_error <= r.laplacian_error_bound, f.name + ": assembly error above its bound");
  }
  return t.outcome("nonempty tail block at degree cap " + std::to_string(kRaisedDegreeCap) +
                   " (default cap raises a resource error)");
}

}  // namespace

int main() {
  struct Criterion {
    std::string id;
    std::string name;
    std::function<Outcome()> run;
    double time_limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {"1", "Hodge/nullity identity", hodge_nullity, 60.0},
      {"2", "Schur complement vs kernel-basis route", schur_vs_zbasis, 0.0},
      {"3", "known-topology fixtures", known_topology, 0.0},
      {"4", "block-encoding algebra and dilations", block_encoding_algebra, 0.0},
      {"5", "polynomial certificates and degree scaling", polynomial_certificates, 0.0},
      {"6", "robustness inequality", robustness, 0.0},
      {"7", "end-to-end bound and sampled accuracy", end_to_end, 300.0},
      {"8", "exact-surrogate path", exact_surrogate, 0.0},
      {"9", "Betti specialization K = L", betti_specialization, 0.0},
      {"10", "determinism", determinism, 0.0},
      {"+", "live Schur step end to end", tail_block_end_to_end, 0.0},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_seconds > 0 && secs > c.time_limit_seconds) {
      o.pass = false;
      o.detail += "; exceeded " + fmt(c.time_limit_seconds) + " s";
    }
    all = all && o.pass;
    std::printf("%s  %-2s %-44s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
