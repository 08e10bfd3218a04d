#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qtda/complex.hpp"
#include "qtda/errors.hpp"

namespace qtda {
namespace {

void require_finite(const PointCloud& cloud) {
  if (!cloud.points.allFinite()) throw InputError("point cloud has non-finite coordinates");
  if (cloud.size() > kMaxVertices) throw ResourceError("at most 64 points are supported");
}

void require_dims(double scale, int max_dim, const char* what) {
  if (!std::isfinite(scale) || scale < 0) throw InputError(std::string(what) + " must be finite and >= 0");
  if (max_dim < 0) throw InputError("max_dim must be >= 0");
}

// Clique complex of a graph given by neighbour masks, truncated at max_dim.
// Extending each simplex by higher common neighbours keeps every level in lex order.
std::vector<std::vector<VertexMask>> clique_levels(const std::vector<VertexMask>& nbrs, int max_dim) {
  const std::size_t n = nbrs.size();
  std::vector<std::vector<VertexMask>> levels;
  if (n == 0) return levels;
  levels.emplace_back();
  for (std::size_t v = 0; v < n; ++v) levels[0].push_back(VertexMask{1} << v);
  for (int q = 1; q <= max_dim; ++q) {
    std::vector<VertexMask> next;
    for (VertexMask s : levels.back()) {
      VertexMask common = ~VertexMask{0};
      for (VertexMask r = s; r; r &= r - 1) common &= nbrs[static_cast<std::size_t>(std::countr_zero(r))];
      const int top = 63 - std::countl_zero(s);
      common &= top >= 63 ? 0 : ~((VertexMask{1} << (top + 1)) - 1);
      for (VertexMask c = common; c; c &= c - 1) next.push_back(s | (c & (~c + 1)));
    }
    if (next.empty()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

bool is_clique(const std::vector<VertexMask>& nbrs, VertexMask s) {
  for (VertexMask r = s; r; r &= r - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(r));
    if (v >= nbrs.size()) return false;
    if ((s & ~(VertexMask{1} << v) & ~nbrs[v]) != 0) return false;
  }
  return true;
}

}  // namespace

Matrix distance_matrix(const PointCloud& cloud) {
  const Eigen::Index n = cloud.points.rows();
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (cloud.points.row(i) - cloud.points.row(j)).norm();
    }
  }
  return d;
}

SimplicialComplex build_vietoris_rips(const PointCloud& cloud, double epsilon, int max_dim) {
  require_finite(cloud);
  require_dims(epsilon, max_dim, "epsilon");
  const std::size_t n = cloud.size();
  const Matrix dist = distance_matrix(cloud);
  const double diameter = 2.0 * epsilon;
  std::vector<VertexMask> nbrs(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dist(Eigen::Index(i), Eigen::Index(j)) <= diameter) nbrs[i] |= VertexMask{1} << j;
    }
  }
  // Direct predicate from the distances, independent of the enumerated lists.
  MembershipFunction pred(MembershipFunction::Provenance::VietorisRips, [dist, diameter, max_dim](VertexMask s, int q) {
    if (q > max_dim) return false;
    const auto v = vertices_of(s);
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (static_cast<Eigen::Index>(v[a]) >= dist.rows()) return false;
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        if (static_cast<Eigen::Index>(v[b]) >= dist.rows() || dist(v[a], v[b]) > diameter) return false;
      }
    }
    return true;
  });
  return SimplicialComplex(VertexSet::range(n), clique_levels(nbrs, max_dim), max_dim, std::move(pred));
}

SimplicialComplex build_vr_from_graph(const WeightedGraph& graph, double threshold, int max_dim) {
  if (!std::isfinite(threshold)) throw InputError("graph threshold must be finite");
  if (max_dim < 0) throw InputError("max_dim must be >= 0");
  const std::size_t n = graph.size();
  if (graph.weights.cols() != graph.weights.rows()) throw InputError("adjacency matrix is not square");
  if (n > kMaxVertices) throw ResourceError("at most 64 vertices are supported");
  std::vector<VertexMask> nbrs(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = graph.weights(Eigen::Index(i), Eigen::Index(j));
      const double wt = graph.weights(Eigen::Index(j), Eigen::Index(i));
      if (std::isnan(w)) throw InputError("NaN edge weight");
      if (w != wt) {
        throw InputError("asymmetric adjacency at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (i != j && w <= threshold) nbrs[i] |= VertexMask{1} << j;
    }
  }
  MembershipFunction pred(MembershipFunction::Provenance::VietorisRips, [nbrs, max_dim](VertexMask s, int q) {
    return q <= max_dim && is_clique(nbrs, s);
  });
  return SimplicialComplex(VertexSet::range(n), clique_levels(nbrs, max_dim), max_dim, std::move(pred));
}

SimplicialComplex build_lazy_witness(const PointCloud& cloud, std::span<const std::size_t> landmarks, double slack,
                                     int max_dim) {
  require_finite(cloud);
  require_dims(slack, max_dim, "witness slack");
  if (landmarks.empty()) throw InputError("landmark set is empty");
  const std::size_t m = landmarks.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (landmarks[i] >= cloud.size()) throw InputError("landmark index " + std::to_string(landmarks[i]) + " out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (landmarks[i] == landmarks[j]) throw InputError("duplicate landmark " + std::to_string(landmarks[i]));
    }
  }
  const Matrix dist = distance_matrix(cloud);
  const auto d = [&](std::size_t s, std::size_t landmark_pos) {
    return dist(Eigen::Index(s), Eigen::Index(landmarks[landmark_pos]));
  };
  std::vector<VertexMask> nbrs(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t s = 0; s < cloud.size(); ++s) {
        double others = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < m; ++c) {
          if (c != a && c != b) others = std::min(others, d(s, c));
        }
        if (std::max(d(s, a), d(s, b)) <= others + slack) {
          nbrs[a] |= VertexMask{1} << b;
          nbrs[b] |= VertexMask{1} << a;
          break;
        }
      }
    }
  }
  MembershipFunction pred(MembershipFunction::Provenance::Witness, [nbrs, max_dim](VertexMask s, int q) {
    return q <= max_dim && is_clique(nbrs, s);
  });
  VertexSet vs;
  vs.labels.assign(landmarks.begin(), landmarks.end());
  return SimplicialComplex(std::move(vs), clique_levels(nbrs, max_dim), max_dim, std::move(pred));
}

}  // namespace qtda
