#pragma once

#include <bit>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtda/linalg.hpp"

namespace qtda {

/// Vertices are referred to by position 0..n-1; labels keep the caller's identifiers.
struct VertexSet {
  std::vector<std::size_t> labels;
  std::size_t size() const { return labels.size(); }
  static VertexSet range(std::size_t n);
};

inline constexpr std::size_t kMaxVertices = 64;

inline int weight(VertexMask m) { return std::popcount(m); }

/// Strict lexicographic order on sorted vertex tuples; shorter tuples sort first.
inline bool lex_less(VertexMask a, VertexMask b) {
  const int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  const VertexMask d = a ^ b;
  if (d == 0) return false;
  return (a & (d & (~d + 1))) != 0;
}

std::vector<int> vertices_of(VertexMask m);
VertexMask mask_of(std::span<const int> vertices);
std::string format_simplex(VertexMask m);

/// Bit-string predicate deciding q-simplex membership.
class MembershipFunction {
 public:
  enum class Provenance { VietorisRips, Witness, Explicit };

  MembershipFunction(Provenance provenance, std::function<bool(VertexMask, int)> predicate)
      : provenance_(provenance), predicate_(std::move(predicate)) {}

  /// False (not an error) when the Hamming weight differs from q+1.
  bool operator()(VertexMask sigma, int q) const {
    if (q < 0 || weight(sigma) != q + 1) return false;
    return predicate_(sigma, q);
  }

  Provenance provenance() const { return provenance_; }

  /// Logical negation restricted to weight q+1 (the complement filter).
  MembershipFunction complement() const;

 private:
  Provenance provenance_;
  std::function<bool(VertexMask, int)> predicate_;
};

std::string to_string(MembershipFunction::Provenance p);

class SimplicialComplex {
 public:
  /// Takes per-dimension lists (any order); sorts them and checks closure and weights.
  /// `dim_cap` marks truncation: simplices above it were never materialized.
  SimplicialComplex(VertexSet vertices, std::vector<std::vector<VertexMask>> by_dim,
                    std::optional<int> dim_cap, std::optional<MembershipFunction> membership = std::nullopt);

  /// Downward closure of the given simplices; complete (no cap).
  static SimplicialComplex from_simplices(std::size_t n, std::span<const VertexMask> simplices);

  std::size_t vertex_count() const { return vertices_.size(); }
  const VertexSet& vertex_set() const { return vertices_; }

  /// Highest dimension with at least one simplex, -1 if empty.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::optional<int> dim_cap() const { return dim_cap_; }

  /// True if dimension q is fully known (below or at the cap).
  bool materialized(int q) const { return q >= 0 && (!dim_cap_ || q <= *dim_cap_); }

  std::span<const VertexMask> simplices(int q) const;
  std::size_t count(int q) const { return simplices(q).size(); }
  std::size_t total_count() const;

  std::optional<std::size_t> index_of(VertexMask sigma) const;
  bool contains(VertexMask sigma) const { return index_of(sigma).has_value(); }

  /// Membership predicate; explicit-list lookup unless a builder supplied a direct one.
  MembershipFunction membership() const;

  /// True if every simplex of this complex is in `other` (same vertex count).
  bool is_subcomplex_of(const SimplicialComplex& other) const;

 private:
  VertexSet vertices_;
  std::vector<std::vector<VertexMask>> by_dim_;
  std::optional<int> dim_cap_;
  std::optional<MembershipFunction> membership_;
  std::shared_ptr<const std::unordered_map<VertexMask, std::size_t>> index_;
};

/// K included in L over one vertex set. L's q-simplices are reindexed so that K's come first.
class SimplicialPair {
 public:
  SimplicialPair(SimplicialComplex small, SimplicialComplex large);

  const SimplicialComplex& small() const { return small_; }
  const SimplicialComplex& large() const { return large_; }

  /// L's q-simplices: K's list in K order, then the rest lexicographically.
  std::vector<VertexMask> large_ordered(int q) const;

  /// Positions in large_ordered(q) of simplices outside K (the tail block).
  std::vector<std::size_t> complement_indices(int q) const;

 private:
  SimplicialComplex small_;
  SimplicialComplex large_;
};

/// Rows are points. Euclidean metric.
struct PointCloud {
  Matrix points;
  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(points.cols()); }
};

/// Symmetric weights; +inf means no edge. Diagonal ignored.
struct WeightedGraph {
  Matrix weights;
  std::size_t size() const { return static_cast<std::size_t>(weights.rows()); }
};

Matrix distance_matrix(const PointCloud& cloud);

SimplicialComplex build_vietoris_rips(const PointCloud& cloud, double epsilon, int max_dim);
SimplicialComplex build_vr_from_graph(const WeightedGraph& graph, double threshold, int max_dim);

/// Witness relaxation `slack` >= 0 enters as d(s,a) <= d(s,b) + slack; 0 is the strict inequality.
SimplicialComplex build_lazy_witness(const PointCloud& cloud, std::span<const std::size_t> landmarks,
                                     double slack, int max_dim);

bool membership(const SimplicialComplex& complex, VertexMask sigma, int q);

double simplex_density(const SimplicialComplex& complex, int q);

double binomial(std::size_t n, std::size_t k);

/// All masks of weight k over n bits in lexicographic order.
std::vector<VertexMask> hamming_space(std::size_t n, int k);

}  // namespace qtda
