#include "qtda/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qtda/errors.hpp"
#include "qtda/homology.hpp"
#include "qtda/io.hpp"
#include "qtda/report.hpp"

namespace qtda::cli {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const auto instance = [] {
    auto l = spdlog::stderr_color_mt("qtda");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("QTDA_LOG_LEVEL")) l->set_level(spdlog::level::from_str(env));
    return l;
  }();
  return instance;
}

template <typename E>
E parse_enum(const std::string& value, const std::vector<std::pair<std::string, E>>& table, const std::string& what) {
  for (const auto& [name, e] : table) {
    if (name == value) return e;
  }
  throw InputError("unknown " + what + " '" + value + "'");
}

const std::vector<std::pair<std::string, InputKind>> kKinds{
    {"points", InputKind::Points}, {"graph", InputKind::Graph}, {"complex", InputKind::Complex}};
const std::vector<std::pair<std::string, ComplexKind>> kComplexes{{"vr", ComplexKind::VietorisRips},
                                                                  {"witness", ComplexKind::Witness}};
const std::vector<std::pair<std::string, Mode>> kModes{
    {"classical", Mode::Classical}, {"quantum-sim", Mode::QuantumSim}, {"both", Mode::Both}};

void check_vertex_cap(std::size_t n, const RunConfig& config) {
  if (n > kMaxClassicalVertices) {
    throw ResourceError("classical mode supports at most " + std::to_string(kMaxClassicalVertices) +
                        " vertices, input has " + std::to_string(n));
  }
  if (config.mode != Mode::Classical && n > kMaxQuantumVertices) {
    throw ResourceError("quantum simulation supports at most " + std::to_string(kMaxQuantumVertices) +
                        " vertices, input has " + std::to_string(n));
  }
}

EstimationConfig estimation_config(const RunConfig& c) {
  EstimationConfig e;
  e.eps = c.eps;
  e.eta = c.eta;
  e.seed = c.seed;
  e.gamma_q = c.gamma;
  e.lambda_q = c.lambda;
  e.limits.max_degree = c.max_degree;
  return e;
}

EstimationReport evaluate(const SimplicialPair& pair, const RunConfig& c) {
  if (c.mode == Mode::Classical) return classical_report(pair, c.q);
  return estimate_persistent_betti(pair, c.q, estimation_config(c));
}

report::Sections sections(Mode m) {
  switch (m) {
    case Mode::Classical:
      return report::Sections::Classical;
    case Mode::QuantumSim:
      return report::Sections::Quantum;
    case Mode::Both:
      return report::Sections::Both;
  }
  return report::Sections::Both;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Parsed input, reused across the scales of a curve.
struct Source {
  std::optional<PointCloud> cloud;
  std::optional<WeightedGraph> graph;
  std::optional<io::ExplicitFiltration> filtration;
};

Source load_source(const RunConfig& c) {
  Source s;
  switch (c.kind) {
    case InputKind::Points:
      s.cloud = io::read_point_csv(c.input);
      break;
    case InputKind::Graph:
      s.graph = io::read_graph_csv(c.input);
      break;
    case InputKind::Complex:
      s.filtration = io::read_complex_json(c.input);
      break;
  }
  return s;
}

SimplicialComplex complex_at(const Source& src, const RunConfig& c, double scale) {
  const int max_dim = c.q + 1;
  if (src.cloud) {
    if (c.complex == ComplexKind::Witness) {
      return build_lazy_witness(*src.cloud, c.landmarks, scale, max_dim);
    }
    return build_vietoris_rips(*src.cloud, scale, max_dim);
  }
  if (src.graph) return build_vr_from_graph(*src.graph, scale, max_dim);
  return src.filtration->at(scale);
}

std::size_t source_vertices(const Source& src, const RunConfig& c) {
  if (src.cloud) {
    if (c.complex == ComplexKind::Witness) {
      for (std::size_t l : c.landmarks) {
        if (l >= src.cloud->size()) throw InputError("landmark index " + std::to_string(l) + " out of range");
      }
      return c.landmarks.size();
    }
    return src.cloud->size();
  }
  if (src.graph) return src.graph->size();
  return src.filtration->vertices;
}

SimplicialPair pair_from(const Source& src, const RunConfig& c, double t, double s) {
  check_vertex_cap(source_vertices(src, c), c);
  return SimplicialPair(complex_at(src, c, t), complex_at(src, c, s));
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad grid value '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty scale grid");
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (input.empty()) throw InputError("no input file given");
  if (!(t <= s)) throw InputError("filtration scales need t <= s");
  if (t < 0) throw InputError("scales must be non-negative");
  if (q < 0) throw InputError("q must be non-negative");
  if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0, 1)");
  if (!(eta > 0 && eta < 1)) throw InputError("eta must lie in (0, 1)");
  if (max_degree < 1) throw InputError("max degree must be positive");
  if (complex == ComplexKind::Witness) {
    if (kind != InputKind::Points) throw InputError("witness complexes need a point cloud");
    if (landmarks.empty()) throw InputError("witness complexes need an explicit landmark list");
  }
  if (gamma && !(*gamma > 0)) throw InputError("gamma must be positive");
  if (lambda && !(*lambda > 0)) throw InputError("lambda must be positive");
}

RunConfig load_config(const std::string& json_text, RunConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config JSON must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "input") base.input = value.get<std::string>();
      else if (key == "kind") base.kind = parse_enum(value.get<std::string>(), kKinds, "input kind");
      else if (key == "complex") base.complex = parse_enum(value.get<std::string>(), kComplexes, "complex type");
      else if (key == "landmarks") base.landmarks = value.get<std::vector<std::size_t>>();
      else if (key == "t") base.t = value.get<double>();
      else if (key == "s") base.s = value.get<double>();
      else if (key == "q") base.q = value.get<int>();
      else if (key == "mode") base.mode = parse_enum(value.get<std::string>(), kModes, "mode");
      else if (key == "eps") base.eps = value.get<double>();
      else if (key == "eta") base.eta = value.get<double>();
      else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "gamma") base.gamma = value.get<double>();
      else if (key == "lambda") base.lambda = value.get<double>();
      else if (key == "max_degree") base.max_degree = value.get<int>();
      else if (key == "out") base.out = value.get<std::string>();
      else throw InputError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config JSON: ") + e.what());
  }
  return base;
}

SimplicialPair build_pair(const RunConfig& config) {
  config.validate();
  return pair_from(load_source(config), config, config.t, config.s);
}

std::string run_report(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SimplicialPair pair = build_pair(config);
  logger()->info("K: {} simplices, L: {} simplices", pair.small().total_count(), pair.large().total_count());
  EstimationReport r = evaluate(pair, config);
  if (config.timing) {
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report::to_json(r, sections(config.mode));
}

std::string curve_csv(const RunConfig& config, const std::vector<double>& grid, unsigned threads) {
  RunConfig base = config;
  base.t = base.s = 0.0;
  base.validate();
  const Source src = load_source(base);
  std::vector<std::pair<double, double>> cells;
  for (double t : grid) {
    for (double s : grid) {
      if (t <= s) cells.emplace_back(t, s);
    }
  }
  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto [t, s] = cells[i];
        const SimplicialPair pair = pair_from(src, base, t, s);
        const EstimationReport r = evaluate(pair, base);
        std::ostringstream row;
        row.precision(17);
        row << t << ',' << s << ',' << r.persistent_betti << ',' << r.exact_ratio;
        if (base.mode != Mode::Classical) row << ',' << r.p1_tilde << ',' << r.sampling.estimate;
        rows[i] = row.str();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::max(1u, threads); ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  std::string out = base.mode == Mode::Classical ? "t,s,betti,normalized\n"
                                                 : "t,s,betti,normalized,p1_simulated,estimate\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::vector<std::string> export_artifacts(const RunConfig& config, const std::string& dir) {
  const SimplicialPair pair = build_pair(config);
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::path(dir) / name).string();
    write_output(path, text);
    written.push_back(path);
  };
  const int q = config.q;
  for (const auto& [tag, complex] : {std::pair{"K", &pair.small()}, std::pair{"L", &pair.large()}}) {
    for (int k : {q, q + 1}) {
      if (!complex->materialized(k)) continue;
      std::ostringstream mtx;
      io::write_matrix_market(mtx, boundary_matrix(*complex, k));
      write(std::string(tag) + "_boundary_" + std::to_string(k) + ".mtx", mtx.str());
    }
    write(std::string(tag) + "_complex.json", io::complex_json(*complex));
  }
  const Matrix persistent = persistent_laplacian(pair, q).values;
  std::ostringstream csv;
  io::write_dense_csv(csv, persistent);
  write("persistent_laplacian_" + std::to_string(q) + ".csv", csv.str());
  write("spectra.json",
        io::spectra_json({{"combinatorial_K", linalg::symmetric_eigenvalues(combinatorial_laplacian(pair.small(), q).values)},
                          {"combinatorial_L", linalg::symmetric_eigenvalues(combinatorial_laplacian(pair.large(), q).values)},
                          {"persistent", linalg::symmetric_eigenvalues(persistent)}}));
  return written;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Persistent Betti numbers: classical computation and simulated quantum estimation"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string kind = "points", complex = "vr", mode = "classical", config_path;
  std::optional<double> t, s, eps, eta, gamma, lambda;
  std::optional<int> q, max_degree;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> input, out;
  std::vector<std::size_t> landmarks;
  bool timing = false;
  std::string grid_text;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration JSON (flags override it)");
    sub->add_option("--input", input, "Input file");
    sub->add_option("--kind", kind, "Input kind")->check(CLI::IsMember({"points", "graph", "complex"}));
    sub->add_option("--complex", complex, "Complex built from points")->check(CLI::IsMember({"vr", "witness"}));
    sub->add_option("--landmarks", landmarks, "Landmark point indices for witness complexes")->delimiter(',');
    sub->add_option("--q", q, "Homology dimension");
    sub->add_option("--mode", mode, "Computation mode")->check(CLI::IsMember({"classical", "quantum-sim", "both"}));
    sub->add_option("--eps", eps, "Target additive error");
    sub->add_option("--eta", eta, "Failure probability of the sampled estimate");
    sub->add_option("--seed", seed, "Sampler seed");
    sub->add_option("--gamma", gamma, "Override of the tail-block gap bound");
    sub->add_option("--lambda", lambda, "Override of the persistent-Laplacian gap bound");
    sub->add_option("--max-degree", max_degree, "Polynomial degree cap");
    sub->add_option("--out", out, "Output path (stdout if omitted)");
  };
  CLI::App* run = app.add_subcommand("run", "Persistent Betti number of one pair of scales");
  add_common(run);
  run->add_option("--t", t, "Scale of K");
  run->add_option("--s", s, "Scale of L");
  run->add_flag("--timing", timing, "Include wall-clock runtime in the report");
  CLI::App* curve = app.add_subcommand("curve", "Persistent Betti numbers over a grid of scale pairs (CSV)");
  add_common(curve);
  curve->add_option("--grid", grid_text, "Comma-separated scales")->required();
  curve->add_option("--threads", threads, "Worker threads");
  CLI::App* exp = app.add_subcommand("export", "Boundary matrices, Laplacians, spectra and complexes");
  add_common(exp);
  exp->add_option("--t", t, "Scale of K");
  exp->add_option("--s", s, "Scale of L");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::Input);
  }

  std::string stage = "configuration";
  try {
    const bool kind_given = run->count("--kind") + curve->count("--kind") + exp->count("--kind") > 0;
    const bool complex_given = run->count("--complex") + curve->count("--complex") + exp->count("--complex") > 0;
    const bool mode_given = run->count("--mode") + curve->count("--mode") + exp->count("--mode") > 0;
    if (!config_path.empty()) {
      cfg = load_config(io::read_file(config_path));
      // Relative input paths in a config file are relative to that file.
      const std::filesystem::path in(cfg.input);
      if (!cfg.input.empty() && in.is_relative()) {
        cfg.input = (std::filesystem::path(config_path).parent_path() / in).string();
      }
    }
    if (input) cfg.input = *input;
    if (kind_given) cfg.kind = parse_enum(kind, kKinds, "input kind");
    if (complex_given) cfg.complex = parse_enum(complex, kComplexes, "complex type");
    if (!landmarks.empty()) cfg.landmarks = landmarks;
    if (mode_given) cfg.mode = parse_enum(mode, kModes, "mode");
    if (t) cfg.t = *t;
    if (s) cfg.s = *s;
    if (q) cfg.q = *q;
    if (eps) cfg.eps = *eps;
    if (eta) cfg.eta = *eta;
    if (seed) cfg.seed = *seed;
    if (gamma) cfg.gamma = gamma;
    if (lambda) cfg.lambda = lambda;
    if (max_degree) cfg.max_degree = *max_degree;
    if (out) cfg.out = *out;
    cfg.timing = timing;

    if (*run) {
      stage = "run";
      logger()->info("run: input {} q={} t={} s={}", cfg.input, cfg.q, cfg.t, cfg.s);
      const std::string text = run_report(cfg);
      stage = "write report";
      write_output(cfg.out, text);
    } else if (*curve) {
      stage = "curve";
      const std::string text = curve_csv(cfg, parse_grid(grid_text), threads);
      stage = "write curve";
      write_output(cfg.out, text);
    } else {
      stage = "export";
      if (cfg.out.empty()) throw InputError("export needs --out DIRECTORY");
      for (const auto& path : export_artifacts(cfg, cfg.out)) logger()->info("wrote {}", path);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << stage << "): " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error (" << stage << "): " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Input);
  }
}

}  // namespace qtda::cli
