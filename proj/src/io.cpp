#include "qtda/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qtda/errors.hpp"

namespace qtda::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Yields (line number, content) for non-blank, non-comment lines.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::string_view rest(text);
  std::size_t lineno = 0;
  while (!rest.empty()) {
    ++lineno;
    const auto nl = rest.find('\n');
    std::string_view line = trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(lineno, line);
  }
  return out;
}

[[noreturn]] void fail_line(std::size_t lineno, const std::string& what) {
  throw InputError("line " + std::to_string(lineno) + ": " + what);
}

VertexMask mask_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array() || j.empty()) throw InputError("simplex must be a non-empty array of vertex indices");
  VertexMask m = 0;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError("vertex indices must be integers");
    const auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw InputError("vertex index " + std::to_string(i) + " out of range");
    const VertexMask bit = VertexMask{1} << i;
    if (m & bit) throw InputError("repeated vertex " + std::to_string(i) + " in simplex");
    m |= bit;
  }
  return m;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointCloud parse_point_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& [lineno, line] : data_lines(text)) {
    std::vector<double> row;
    for (auto field : split(line, ',')) {
      double x = 0;
      if (!parse_double(field, x)) fail_line(lineno, "not a number: '" + std::string(trim(field)) + "'");
      if (!std::isfinite(x)) fail_line(lineno, "non-finite coordinate");
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail_line(lineno, "expected " + std::to_string(rows.front().size()) + " coordinates, got " +
                            std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("point cloud is empty");
  PointCloud c;
  c.points.resize(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) c.points(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  return c;
}

PointCloud read_point_csv(const std::string& path) { return parse_point_csv(read_file(path)); }

WeightedGraph parse_graph_csv(const std::string& text) {
  struct Edge {
    std::size_t u, v;
    double w;
  };
  std::vector<Edge> edges;
  std::size_t n = 0;
  bool first = true;
  for (const auto& [lineno, line] : data_lines(text)) {
    const auto fields = split(line, ',');
    if (fields.size() != 3) fail_line(lineno, "expected u,v,weight");
    double u = 0, v = 0, w = 0;
    const bool numeric = parse_double(fields[0], u) && parse_double(fields[1], v) && parse_double(fields[2], w);
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      fail_line(lineno, "malformed edge");
    }
    first = false;
    if (u < 0 || v < 0 || u != std::floor(u) || v != std::floor(v)) fail_line(lineno, "vertices must be non-negative integers");
    if (!(w >= 0) || !std::isfinite(w)) fail_line(lineno, "weight must be finite and non-negative");
    if (u == v) fail_line(lineno, "self-loop");
    edges.push_back({std::size_t(u), std::size_t(v), w});
    n = std::max({n, std::size_t(u) + 1, std::size_t(v) + 1});
  }
  if (n == 0) throw InputError("graph has no edges");
  WeightedGraph g;
  g.weights = Matrix::Constant(Eigen::Index(n), Eigen::Index(n), std::numeric_limits<double>::infinity());
  for (const auto& e : edges) {
    double& slot = g.weights(Eigen::Index(e.u), Eigen::Index(e.v));
    if (std::isfinite(slot) && slot != e.w) {
      throw InputError("conflicting weights for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    slot = e.w;
    g.weights(Eigen::Index(e.v), Eigen::Index(e.u)) = e.w;
  }
  for (std::size_t i = 0; i < n; ++i) g.weights(Eigen::Index(i), Eigen::Index(i)) = 0.0;
  return g;
}

WeightedGraph read_graph_csv(const std::string& path) { return parse_graph_csv(read_file(path)); }

SimplicialComplex ExplicitFiltration::at(double scale) const {
  std::vector<VertexMask> keep;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    if (values[i] <= scale) keep.push_back(simplices[i]);
  }
  return SimplicialComplex::from_simplices(vertices, keep);
}

ExplicitFiltration parse_complex_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("complex JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("simplices")) {
    throw InputError("complex JSON needs \"vertices\" and \"simplices\"");
  }
  ExplicitFiltration f;
  if (!j["vertices"].is_number_integer() || j["vertices"].get<long long>() <= 0 ||
      j["vertices"].get<long long>() > 63) {
    throw InputError("\"vertices\" must be an integer in [1, 63]");
  }
  f.vertices = j["vertices"].get<std::size_t>();
  if (!j["simplices"].is_array()) throw InputError("\"simplices\" must be an array");
  for (const auto& s : j["simplices"]) {
    if (s.is_object()) {
      if (!s.contains("simplex")) throw InputError("tagged simplex needs a \"simplex\" field");
      f.simplices.push_back(mask_from_json(s["simplex"], f.vertices));
      double v = 0.0;
      if (s.contains("value")) {
        if (!s["value"].is_number()) throw InputError("\"value\" must be a number");
        v = s["value"].get<double>();
      }
      f.values.push_back(v);
    } else {
      f.simplices.push_back(mask_from_json(s, f.vertices));
      f.values.push_back(0.0);
    }
  }
  return f;
}

ExplicitFiltration read_complex_json(const std::string& path) { return parse_complex_json(read_file(path)); }

void write_matrix_market(std::ostream& out, const BoundaryMatrix& b) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << "% boundary map of dimension " << b.q << "\n";
  out << b.entries.rows() << ' ' << b.entries.cols() << ' ' << b.entries.nonZeros() << '\n';
  for (int k = 0; k < b.entries.outerSize(); ++k) {
    for (Eigen::SparseMatrix<int>::InnerIterator it(b.entries, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
    }
  }
}

void write_dense_csv(std::ostream& out, const Matrix& m) {
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

std::string complex_json(const SimplicialComplex& complex) {
  nlohmann::json j;
  j["vertices"] = complex.vertex_count();
  if (complex.dim_cap()) j["dim_cap"] = *complex.dim_cap();
  nlohmann::json dims = nlohmann::json::array();
  for (int q = 0; q <= complex.dimension(); ++q) {
    nlohmann::json level = nlohmann::json::array();
    for (VertexMask s : complex.simplices(q)) level.push_back(vertices_of(s));
    dims.push_back(level);
  }
  j["simplices_by_dim"] = dims;
  return j.dump(2) + "\n";
}

std::string spectra_json(const std::vector<std::pair<std::string, Vector>>& spectra) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, values] : spectra) {
    j[name] = std::vector<double>(values.data(), values.data() + values.size());
  }
  return j.dump(2) + "\n";
}

}  // namespace qtda::io
