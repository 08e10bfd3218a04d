#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtda/complex.hpp"
#include "qtda/pipeline.hpp"

namespace qtda::cli {

inline constexpr std::size_t kMaxClassicalVertices = 25;

enum class InputKind { Points, Graph, Complex };
enum class ComplexKind { VietorisRips, Witness };
enum class Mode { Classical, QuantumSim, Both };

struct RunConfig {
  std::string input;
  InputKind kind = InputKind::Points;
  ComplexKind complex = ComplexKind::VietorisRips;
  std::vector<std::size_t> landmarks;
  double t = 0.0;
  double s = 0.0;
  int q = 0;
  Mode mode = Mode::Classical;
  double eps = 0.05;
  double eta = 0.05;
  std::uint64_t seed = 1;
  std::optional<double> gamma;
  std::optional<double> lambda;
  int max_degree = PolynomialLimits{}.max_degree;
  bool timing = false;
  std::string out;

  /// Range checks; InputError on failure.
  void validate() const;
};

/// Fields of a run-configuration JSON file, over `base`.
RunConfig load_config(const std::string& json_text, RunConfig base = {});

/// K at scale t and L at scale s.
SimplicialPair build_pair(const RunConfig& config);

/// Report JSON for one run.
std::string run_report(const RunConfig& config);

/// CSV rows `t,s,betti,normalized[,p1_simulated,estimate]` for every t <= s on the grid,
/// evaluated on `threads` workers. Rows are in grid order regardless of scheduling.
std::string curve_csv(const RunConfig& config, const std::vector<double>& grid, unsigned threads);

/// Boundary matrices, persistent Laplacian, spectra and both complexes, written into `dir`.
std::vector<std::string> export_artifacts(const RunConfig& config, const std::string& dir);

/// Entry point of the `qtda` executable; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace qtda::cli
