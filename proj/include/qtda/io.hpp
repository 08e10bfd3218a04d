#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtda/complex.hpp"
#include "qtda/homology.hpp"

namespace qtda::io {

/// Whole file as a string; InputError if it cannot be opened.
std::string read_file(const std::string& path);

/// One point per row, comma-separated coordinates. Blank lines and '#' comments are skipped.
PointCloud parse_point_csv(const std::string& text);
PointCloud read_point_csv(const std::string& path);

/// Edge list `u,v,weight` with 0-based vertices. An optional non-numeric header row is skipped.
WeightedGraph parse_graph_csv(const std::string& text);
WeightedGraph read_graph_csv(const std::string& path);

/// Simplices tagged with the scale at which they appear.
struct ExplicitFiltration {
  std::size_t vertices = 0;
  std::vector<VertexMask> simplices;
  std::vector<double> values;

  /// Downward closure of the simplices with value <= scale.
  SimplicialComplex at(double scale) const;
};

/// {"vertices": n, "simplices": [[0,1], ...]} or [{"simplex": [0,1], "value": 0.5}, ...].
/// Untagged simplices get value 0.
ExplicitFiltration parse_complex_json(const std::string& text);
ExplicitFiltration read_complex_json(const std::string& path);

/// MatrixMarket coordinate format, 1-based.
void write_matrix_market(std::ostream& out, const BoundaryMatrix& b);
/// Dense CSV with 17 significant digits.
void write_dense_csv(std::ostream& out, const Matrix& m);
/// Simplices by dimension in canonical order.
std::string complex_json(const SimplicialComplex& complex);
/// Eigenvalues (ascending) of each Laplacian, keyed by name.
std::string spectra_json(const std::vector<std::pair<std::string, Vector>>& spectra);

}  // namespace qtda::io
