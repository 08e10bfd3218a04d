#include "qtda/complex.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "qtda/errors.hpp"

namespace qtda {

VertexSet VertexSet::range(std::size_t n) {
  VertexSet v;
  v.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) v.labels[i] = i;
  return v;
}

std::vector<int> vertices_of(VertexMask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(weight(m)));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

VertexMask mask_of(std::span<const int> vertices) {
  VertexMask m = 0;
  for (int v : vertices) {
    if (v < 0 || v >= static_cast<int>(kMaxVertices)) throw InputError("vertex index out of range: " + std::to_string(v));
    const VertexMask bit = VertexMask{1} << v;
    if (m & bit) throw InputError("repeated vertex " + std::to_string(v) + " in simplex");
    m |= bit;
  }
  return m;
}

std::string format_simplex(VertexMask m) {
  std::string s = "[";
  bool first = true;
  for (int v : vertices_of(m)) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + "]";
}

MembershipFunction MembershipFunction::complement() const {
  auto inner = predicate_;
  return MembershipFunction(provenance_, [inner](VertexMask s, int q) { return !inner(s, q); });
}

std::string to_string(MembershipFunction::Provenance p) {
  switch (p) {
    case MembershipFunction::Provenance::VietorisRips: return "vietoris-rips";
    case MembershipFunction::Provenance::Witness: return "lazy-witness";
    case MembershipFunction::Provenance::Explicit: return "explicit";
  }
  return "unknown";
}

SimplicialComplex::SimplicialComplex(VertexSet vertices, std::vector<std::vector<VertexMask>> by_dim,
                                     std::optional<int> dim_cap, std::optional<MembershipFunction> membership)
    : vertices_(std::move(vertices)), by_dim_(std::move(by_dim)), dim_cap_(dim_cap), membership_(std::move(membership)) {
  const std::size_t n = vertices_.size();
  if (n > kMaxVertices) throw ResourceError("at most 64 vertices are supported, got " + std::to_string(n));
  while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
  if (dim_cap_ && static_cast<int>(by_dim_.size()) - 1 > *dim_cap_) {
    throw InvariantError("complex has simplices above its dimension cap");
  }
  const VertexMask universe = n == 64 ? ~VertexMask{0} : ((VertexMask{1} << n) - 1);
  auto index = std::make_shared<std::unordered_map<VertexMask, std::size_t>>();
  for (std::size_t q = 0; q < by_dim_.size(); ++q) {
    auto& list = by_dim_[q];
    std::sort(list.begin(), list.end(), lex_less);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const VertexMask s = list[i];
      if (static_cast<std::size_t>(weight(s)) != q + 1) {
        throw InvariantError("simplex " + format_simplex(s) + " filed under dimension " + std::to_string(q));
      }
      if ((s & ~universe) != 0) throw InvariantError("simplex " + format_simplex(s) + " uses an unknown vertex");
      if (!index->emplace(s, i).second) throw InvariantError("duplicate simplex " + format_simplex(s));
    }
  }
  for (std::size_t q = 1; q < by_dim_.size(); ++q) {
    for (VertexMask s : by_dim_[q]) {
      for (VertexMask rest = s; rest; rest &= rest - 1) {
        const VertexMask face = s & ~(rest & (~rest + 1));
        if (!index->contains(face)) {
          throw InvariantError("closure violated: face " + format_simplex(face) + " of " + format_simplex(s) + " missing");
        }
      }
    }
  }
  index_ = std::move(index);
}

SimplicialComplex SimplicialComplex::from_simplices(std::size_t n, std::span<const VertexMask> simplices) {
  if (n > kMaxVertices) throw ResourceError("at most 64 vertices are supported");
  std::unordered_set<VertexMask> all;
  std::vector<VertexMask> stack;
  for (VertexMask s : simplices) {
    if (s == 0) throw InputError("empty simplex");
    if (n < 64 && (s >> n) != 0) throw InputError("simplex " + format_simplex(s) + " uses a vertex >= " + std::to_string(n));
    stack.push_back(s);
  }
  while (!stack.empty()) {
    const VertexMask s = stack.back();
    stack.pop_back();
    if (!all.insert(s).second) continue;
    if (weight(s) == 1) continue;
    for (VertexMask rest = s; rest; rest &= rest - 1) stack.push_back(s & ~(rest & (~rest + 1)));
  }
  std::vector<std::vector<VertexMask>> by_dim;
  for (VertexMask s : all) {
    const auto q = static_cast<std::size_t>(weight(s) - 1);
    if (by_dim.size() <= q) by_dim.resize(q + 1);
    by_dim[q].push_back(s);
  }
  return SimplicialComplex(VertexSet::range(n), std::move(by_dim), std::nullopt);
}

std::span<const VertexMask> SimplicialComplex::simplices(int q) const {
  if (q < 0 || q >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[static_cast<std::size_t>(q)];
}

std::size_t SimplicialComplex::total_count() const {
  std::size_t total = 0;
  for (const auto& l : by_dim_) total += l.size();
  return total;
}

std::optional<std::size_t> SimplicialComplex::index_of(VertexMask sigma) const {
  const auto it = index_->find(sigma);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

MembershipFunction SimplicialComplex::membership() const {
  if (membership_) return *membership_;
  auto index = index_;
  return MembershipFunction(MembershipFunction::Provenance::Explicit,
                            [index](VertexMask s, int) { return index->contains(s); });
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  if (other.vertex_count() != vertex_count()) return false;
  for (const auto& list : by_dim_) {
    for (VertexMask s : list) {
      if (!other.contains(s)) return false;
    }
  }
  return true;
}

SimplicialPair::SimplicialPair(SimplicialComplex small, SimplicialComplex large)
    : small_(std::move(small)), large_(std::move(large)) {
  if (small_.vertex_count() != large_.vertex_count()) {
    throw InvariantError("pair complexes have different vertex sets");
  }
  if (!small_.is_subcomplex_of(large_)) throw InvariantError("K is not a subcomplex of L");
}

std::vector<VertexMask> SimplicialPair::large_ordered(int q) const {
  const auto k = small_.simplices(q);
  std::vector<VertexMask> out(k.begin(), k.end());
  for (VertexMask s : large_.simplices(q)) {
    if (!small_.contains(s)) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> SimplicialPair::complement_indices(int q) const {
  std::vector<std::size_t> out;
  const std::size_t nk = small_.count(q), nl = large_.count(q);
  for (std::size_t i = nk; i < nl; ++i) out.push_back(i);
  return out;
}

bool membership(const SimplicialComplex& complex, VertexMask sigma, int q) {
  if (q < 0 || weight(sigma) != q + 1) return false;
  return complex.contains(sigma);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  return std::round(std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1)));
}

double simplex_density(const SimplicialComplex& complex, int q) {
  const std::size_t n = complex.vertex_count();
  if (q < 0 || static_cast<std::size_t>(q) >= n) throw InputError("simplex density needs 0 <= q < n");
  return static_cast<double>(complex.count(q)) / binomial(n, static_cast<std::size_t>(q) + 1);
}

std::vector<VertexMask> hamming_space(std::size_t n, int k) {
  std::vector<VertexMask> out;
  if (k < 0 || static_cast<std::size_t>(k) > n) return out;
  if (n > 30) throw ResourceError("Hamming-weight space over more than 30 bits");
  if (k == 0) return {VertexMask{0}};
  VertexMask m = (VertexMask{1} << k) - 1;
  const VertexMask limit = VertexMask{1} << n;
  while (m < limit) {
    out.push_back(m);
    const VertexMask c = m & (~m + 1);
    const VertexMask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace qtda
