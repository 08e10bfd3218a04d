#pragma once

// Test-only reference implementations. Nothing here calls into the code under test
// except for the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qtda/complex.hpp"

namespace oracle {

using qtda::VertexMask;

inline constexpr std::int64_t kPrime = 2147483647;

/// Rank over the prime field F_p by Gaussian elimination on integer entries.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  auto mod = [](std::int64_t x) { x %= kPrime; return x < 0 ? x + kPrime : x; };
  auto power = [&](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b = mod(b);
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % kPrime);
      b = static_cast<std::int64_t>((__int128)b * b % kPrime);
      e >>= 1;
    }
    return r;
  };
  for (auto& row : a) for (auto& x : row) x = mod(x);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t inv = power(a[rank][c], kPrime - 2);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::int64_t f = static_cast<std::int64_t>((__int128)a[r][c] * inv % kPrime);
      for (std::size_t k = c; k < cols; ++k) {
        a[r][k] = mod(a[r][k] - static_cast<std::int64_t>((__int128)f * a[rank][k] % kPrime));
      }
    }
    ++rank;
  }
  return rank;
}

inline std::vector<int> verts(VertexMask m) {
  std::vector<int> v;
  for (int i = 0; i < 64; ++i) if (m >> i & 1) v.push_back(i);
  return v;
}

/// Boundary from `cols` (q-simplices) into `rows`, written out longhand.
inline std::vector<std::vector<std::int64_t>> boundary(const std::vector<VertexMask>& rows,
                                                        const std::vector<VertexMask>& cols) {
  std::vector<std::vector<std::int64_t>> b(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto v = verts(cols[j]);
    if (v.size() < 2) continue;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const VertexMask face = cols[j] & ~(VertexMask{1} << v[i]);
      const auto it = std::find(rows.begin(), rows.end(), face);
      if (it != rows.end()) b[static_cast<std::size_t>(it - rows.begin())][j] = (i % 2 == 0) ? 1 : -1;
    }
  }
  return b;
}

inline std::vector<VertexMask> level(const std::set<VertexMask>& simplices, int q) {
  std::vector<VertexMask> out;
  for (VertexMask s : simplices) if (__builtin_popcountll(s) == q + 1) out.push_back(s);
  return out;
}

/// Exact persistent Betti number: (n_K - rank B_q^K) - (rank B_{q+1}^L - rank of its non-K rows).
inline std::size_t persistent_betti(const std::set<VertexMask>& k, const std::set<VertexMask>& l, int q) {
  const auto kq = level(k, q), kq1 = level(k, q - 1);
  std::vector<VertexMask> lq = kq;
  for (VertexMask s : level(l, q)) if (!k.count(s)) lq.push_back(s);
  const auto lq1 = level(l, q + 1);
  const std::size_t rank_k = q == 0 ? 0 : rank_mod_p(boundary(kq1, kq));
  const auto bl = boundary(lq, lq1);
  const std::size_t rank_l = rank_mod_p(bl);
  std::vector<std::vector<std::int64_t>> tail(bl.begin() + static_cast<std::ptrdiff_t>(kq.size()), bl.end());
  const std::size_t rank_tail = rank_mod_p(tail);
  return (kq.size() - rank_k) - (rank_l - rank_tail);
}

inline std::set<VertexMask> closure(const std::vector<VertexMask>& tops) {
  std::set<VertexMask> out;
  for (VertexMask t : tops) {
    for (VertexMask s = t; s; s = (s - 1) & t) out.insert(s);
  }
  return out;
}

/// Random complex on n vertices: closure of `tops` random simplices with up to max_size vertices.
inline std::set<VertexMask> random_complex(std::mt19937_64& rng, int n, int tops, int max_size) {
  std::vector<VertexMask> gens;
  std::uniform_int_distribution<int> size_dist(1, max_size), vert(0, n - 1);
  for (int i = 0; i < tops; ++i) {
    const int sz = size_dist(rng);
    VertexMask m = 0;
    while (__builtin_popcountll(m) < sz) m |= VertexMask{1} << vert(rng);
    gens.push_back(m);
  }
  for (int v = 0; v < n; ++v) gens.push_back(VertexMask{1} << v);
  return closure(gens);
}

/// Random subcomplex: closure of a random subset of l's simplices, plus all vertices.
inline std::set<VertexMask> random_subcomplex(std::mt19937_64& rng, const std::set<VertexMask>& l, double keep) {
  std::bernoulli_distribution pick(keep);
  std::vector<VertexMask> gens;
  for (VertexMask s : l) if (__builtin_popcountll(s) == 1 || pick(rng)) gens.push_back(s);
  return closure(gens);
}

/// Brute-force clique complex: every subset whose pairs are all adjacent.
inline std::set<VertexMask> brute_cliques(int n, const std::vector<std::vector<bool>>& adj, int max_dim) {
  std::set<VertexMask> out;
  for (VertexMask m = 1; m < (VertexMask{1} << n); ++m) {
    const auto v = verts(m);
    if (static_cast<int>(v.size()) > max_dim + 1) continue;
    bool ok = true;
    for (std::size_t a = 0; a < v.size() && ok; ++a)
      for (std::size_t b = a + 1; b < v.size() && ok; ++b) ok = adj[v[a]][v[b]];
    if (ok) out.insert(m);
  }
  return out;
}

inline qtda::SimplicialComplex to_complex(int n, const std::set<VertexMask>& s) {
  std::vector<VertexMask> v(s.begin(), s.end());
  return qtda::SimplicialComplex::from_simplices(static_cast<std::size_t>(n), v);
}

inline std::set<VertexMask> to_set(const qtda::SimplicialComplex& c) {
  std::set<VertexMask> out;
  for (int q = 0; q <= c.dimension(); ++q) for (VertexMask s : c.simplices(q)) out.insert(s);
  return out;
}

inline VertexMask simplex(std::initializer_list<int> v) {
  VertexMask m = 0;
  for (int i : v) m |= VertexMask{1} << i;
  return m;
}

}  // namespace oracle
