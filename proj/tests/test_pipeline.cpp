#include <doctest.h>

#include <cmath>

#include "qtda/errors.hpp"
#include "qtda/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace qtda;

namespace {

SimplicialComplex path4() {
  const std::vector<VertexMask> s{oracle::simplex({0, 1}), oracle::simplex({1, 2}), oracle::simplex({2, 3})};
  return SimplicialComplex::from_simplices(4, s);
}

// Copy |psi> into a second register with CNOTs and trace out the first one.
Matrix copied_and_traced(const Vector& psi) {
  const Eigen::Index m = psi.size();
  Vector joint = Vector::Zero(m * m);
  for (Eigen::Index x = 0; x < m; ++x) joint[x * m + x] = psi[x];
  const Matrix rho = joint * joint.transpose();
  Matrix reduced = Matrix::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) reduced(i, j) += rho(a * m + i, a * m + j);
    }
  }
  return reduced;
}

double trace_norm(const Matrix& m) { return linalg::symmetric_eigenvalues(linalg::symmetrized(m)).cwiseAbs().sum(); }

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("dicke state is uniform on the right weight") {
    const Vector psi = dicke_state(4, 1);
    CHECK(psi.size() == 16);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(psi[0b0011] == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(psi[0b0111] == 0.0);
    CHECK_THROWS_AS(dicke_state(3, 3), InputError);
    CHECK_THROWS_AS(dicke_state(15, 1), ResourceError);
  }

  TEST_CASE("prepared ensemble matches a copy-register density matrix") {
    const auto k = path4();
    const double eps_sign = std::sqrt(0.05 / 8.0);
    const auto e = prepare_simplex_ensemble(k, 1, eps_sign);
    CHECK(e.density == doctest::Approx(0.5));
    CHECK(e.sign_degree > 0);
    const Matrix reduced = copied_and_traced(e.amplified_state());
    CHECK((reduced - Matrix(e.prepared.asDiagonal())).norm() < 1e-12);
    const Matrix ideal = e.ideal.asDiagonal();
    const double td = trace_norm(reduced - ideal);
    CHECK(td == doctest::Approx(e.trace_distance).epsilon(1e-9));
    CHECK(td == doctest::Approx(2.0 * e.b * e.b).epsilon(1e-9));
    CHECK(td <= e.trace_bound);
  }

  TEST_CASE("full-density ensemble needs no amplification") {
    const auto e = prepare_simplex_ensemble(fixture::hollow_triangle(), 1, 0.1);
    CHECK(e.density == 1.0);
    CHECK(e.oracle_queries == 0);
    CHECK(e.trace_distance == 0.0);
  }

  TEST_CASE("empty simplex set is an input error") {
    CHECK_THROWS_AS(prepare_simplex_ensemble(fixture::hollow_triangle(), 2, 0.1), InputError);
  }

  TEST_CASE("hoeffding sample count") {
    CHECK(hoeffding_samples(0.1, 0.05) == 185);
    CHECK_THROWS_AS(hoeffding_samples(0.1, 1.0), InputError);
  }

  TEST_CASE("sampling is deterministic under a seed") {
    const auto a = sample_estimate(0.3, 0.05, 0.05, 42);
    const auto b = sample_estimate(0.3, 0.05, 0.05, 42);
    CHECK(a.successes == b.successes);
    CHECK(std::abs(a.estimate - 0.3) < 0.1);
    CHECK(sample_estimate(0.0, 0.1, 0.1, 1).successes == 0);
    CHECK(sample_estimate(1.0, 0.1, 0.1, 1).successes == hoeffding_samples(0.1, 0.1));
  }

  TEST_CASE("promises on the hollow triangle") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::hollow_triangle());
    const auto p = check_promises(pair, 1);
    CHECK(p.density == 1.0);
    REQUIRE(p.lambda_min);
    CHECK(*p.lambda_min == doctest::Approx(3.0));
    CHECK_FALSE(p.gamma_applicable);
  }

  TEST_CASE("budget splits add up and shrink with eps") {
    const auto b1 = default_budget(0.05);
    const auto b2 = default_budget(0.01);
    CHECK(b1.total_bound() == doctest::Approx(0.05));
    CHECK(b2.total_bound() == doctest::Approx(0.01));
    CHECK(b2.eps_sign < b1.eps_sign);
    CHECK(b2.eps_rect < b1.eps_rect);
    CHECK_THROWS_AS(default_budget(0.0), InputError);
  }

  TEST_CASE("halving gamma quadruples the gap factor of the cost") {
    const SimplicialPair pair(fixture::path3(), fixture::filled_triangle());
    const auto b = default_budget(0.05);
    const auto c1 = cost_report(pair, 1, b, 0.5, 1.0, 1.0);
    const auto c2 = cost_report(pair, 1, b, 0.25, 1.0, 1.0);
    const double l1 = std::log(1.0 / (0.5 * b.eps_inv));
    const double l2 = std::log(1.0 / (0.25 * b.eps_inv));
    CHECK(c2.oracle_large / c1.oracle_large == doctest::Approx(4.0 * l2 / l1));
    CHECK(c1.qubits > 2 * 3);
  }

  TEST_CASE("assembled laplacian without a tail is exact") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::filled_triangle());
    const auto bounds = spectral_bounds(pair, 1);
    const auto lap = assemble_persistent_laplacian_encoding(pair, 1, bounds, 1e-6);
    CHECK_FALSE(lap.has_tail);
    CHECK(lap.measured_error < 1e-10);
    CHECK(lap.beta == doctest::Approx(lap.alpha0 + lap.alpha2));
  }

  TEST_CASE("assembled laplacian with a tail stays inside its error bound") {
    const SimplicialPair pair(fixture::path3(), fixture::filled_triangle());
    const auto bounds = spectral_bounds(pair, 1);
    const auto lap = assemble_persistent_laplacian_encoding(pair, 1, bounds, 1e-6);
    CHECK(lap.has_tail);
    CHECK(lap.inverse_degree > 0);
    CHECK(lap.measured_error <= lap.error_bound);
    const auto dense = assemble_persistent_laplacian_encoding(pair, 1, bounds, 1e-6, {}, true);
    CHECK(dense.measured_error < 1e-9);
  }

  TEST_CASE("block measurement agrees with an explicit dilation circuit") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::hollow_triangle());
    const auto bounds = spectral_bounds(pair, 1);
    const auto lap = assemble_persistent_laplacian_encoding(pair, 1, bounds, 1e-6);
    const auto proj = projector_encoding(lap, pair, 1, bounds, default_budget(0.05).eps_rect);
    const auto ens = ideal_simplex_ensemble(pair.small(), 1);
    const auto m = block_measurement_probability(proj, ens);
    const Matrix u = dilate_to_unitary(proj.encoding);
    const Eigen::Index s = u.rows() / 2;
    double p = 0.0;
    for (Eigen::Index x = 0; x < ens.prepared.size(); ++x) {
      p += ens.prepared[x] * u.col(x).head(s).squaredNorm();
    }
    CHECK(p == doctest::Approx(m.p1_tilde).epsilon(1e-12));
    CHECK(m.p1_ideal == doctest::Approx(1.0 / 3.0));
    CHECK(m.within_bound);
  }

  TEST_CASE("hollow triangle estimates one third") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::hollow_triangle());
    const auto r = estimate_persistent_betti(pair, 1, {});
    CHECK(r.persistent_betti == 1);
    CHECK(r.exact_ratio == doctest::Approx(1.0 / 3.0));
    CHECK(r.within_bound);
    CHECK(std::abs(r.p1_tilde - 1.0 / 3.0) <= 0.05);
  }

  TEST_CASE("hollow into filled triangle estimates zero") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::filled_triangle());
    const auto r = estimate_persistent_betti(pair, 1, {});
    CHECK(r.persistent_betti == 0);
    CHECK(r.p1_tilde <= 0.05);
    CHECK(r.within_bound);
  }

  TEST_CASE("exact surrogate recovers the ratio") {
    for (const auto& f : fixture::known_topology()) {
      CAPTURE(f.name);
      EstimationConfig cfg;
      cfg.exact_surrogate = true;
      const auto r = estimate_persistent_betti(f.pair, f.q, cfg);
      CHECK(r.p1_tilde == doctest::Approx(double(f.expected_betti) / double(r.small_count)).epsilon(1e-9));
    }
  }

  TEST_CASE("exact surrogate handles a nonempty tail") {
    const SimplicialPair pair(fixture::square_with_diagonal(), fixture::square_one_triangle());
    EstimationConfig cfg;
    cfg.exact_surrogate = true;
    const auto r = estimate_persistent_betti(pair, 1, cfg);
    CHECK(r.p1_tilde == doctest::Approx(r.exact_ratio).epsilon(1e-9));
  }

  TEST_CASE("estimates are reproducible") {
    const SimplicialPair pair(fixture::hollow_triangle(), fixture::hollow_triangle());
    EstimationConfig cfg;
    cfg.seed = 7;
    const auto a = estimate_persistent_betti(pair, 1, cfg);
    const auto b = estimate_persistent_betti(pair, 1, cfg);
    CHECK(a.sampling.successes == b.sampling.successes);
    CHECK(a.p1_tilde == b.p1_tilde);
  }

  TEST_CASE("nonempty tail under the default degree cap is a resource error") {
    const SimplicialPair pair(fixture::path3(), fixture::filled_triangle());
    CHECK_THROWS_AS(estimate_persistent_betti(pair, 1, {}), ResourceError);
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("tighter accuracies never worsen the measured error") {
    const std::vector<double> sign_eps{0.1, 0.03, 0.01};
    const std::vector<double> rect_eps{1e-2, 1e-3, 1e-4};
    auto fixtures = fixture::known_topology();
    fixtures.push_back({"two triangles", SimplicialPair(fixture::two_hollow_triangles(), fixture::two_triangles_one_filled()), 1, 1});
    for (const auto& f : fixtures) {
      CAPTURE(f.name);
      const auto bounds = spectral_bounds(f.pair, f.q);
      const auto lap = assemble_persistent_laplacian_encoding(f.pair, f.q, bounds, 1e-6);
      std::vector<std::vector<double>> err(sign_eps.size(), std::vector<double>(rect_eps.size()));
      for (std::size_t i = 0; i < sign_eps.size(); ++i) {
        const auto ens = prepare_simplex_ensemble(f.pair.small(), f.q, sign_eps[i]);
        for (std::size_t j = 0; j < rect_eps.size(); ++j) {
          const auto proj = projector_encoding(lap, f.pair, f.q, bounds, rect_eps[j]);
          const auto m = block_measurement_probability(proj, ens);
          err[i][j] = std::abs(m.p1_ideal - m.p1_tilde);
        }
      }
      for (std::size_t i = 0; i < sign_eps.size(); ++i) {
        for (std::size_t j = 0; j < rect_eps.size(); ++j) {
          if (i + 1 < sign_eps.size()) CHECK(err[i + 1][j] <= err[i][j] + 1e-9);
          if (j + 1 < rect_eps.size()) CHECK(err[i][j + 1] <= err[i][j] + 1e-9);
        }
      }
    }
  }
}
