#pragma once

// Brute-force reference computations used to freeze expected values. They
// deliberately avoid the library's algorithms and only read raw tables.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"

namespace oracle {

using siftcat::FinCat;
using siftcat::MorId;
using siftcat::ObjId;

inline std::vector<MorId> all_morphisms(const FinCat& c) {
  std::vector<MorId> out;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) out.emplace_back(i);
  return out;
}

// Connected components of an undirected graph given by edge list; plain
// repeated relaxation on labels.
inline std::size_t component_count(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : edges) {
      std::size_t m = std::min(label[a], label[b]);
      if (label[a] != m || label[b] != m) {
        label[a] = label[b] = m;
        changed = true;
      }
    }
  }
  return std::set<std::size_t>(label.begin(), label.end()).size();
}

// Sifted by definition: nonempty, every pair's cospan category nonempty and
// connected. Cospans are enumerated as triples over the whole morphism list.
inline bool sifted(const FinCat& c) {
  if (c.num_objects() == 0) return false;
  auto ms = all_morphisms(c);
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      std::vector<std::pair<MorId, MorId>> cos;
      for (MorId a : ms)
        for (MorId b : ms)
          if (c.src(a) == ObjId(x) && c.src(b) == ObjId(y) && c.dst(a) == c.dst(b)) cos.emplace_back(a, b);
      if (cos.empty()) return false;
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 0; i < cos.size(); ++i)
        for (std::size_t j = 0; j < cos.size(); ++j)
          for (MorId u : ms)
            if (c.src(u) == c.dst(cos[i].first) && c.dst(u) == c.dst(cos[j].first) &&
                c.compose(u, cos[i].first) == cos[j].first && c.compose(u, cos[i].second) == cos[j].second)
              edges.emplace_back(i, j);
      if (component_count(cos.size(), edges) != 1) return false;
    }
  return true;
}

inline bool filtered(const FinCat& c) {
  if (c.num_objects() == 0) return false;
  auto ms = all_morphisms(c);
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      bool any = false;
      for (MorId a : ms)
        for (MorId b : ms)
          any |= c.src(a) == ObjId(x) && c.src(b) == ObjId(y) && c.dst(a) == c.dst(b);
      if (!any) return false;
    }
  for (MorId f : ms)
    for (MorId g : ms) {
      if (c.src(f) != c.src(g) || c.dst(f) != c.dst(g)) continue;
      bool ok = false;
      for (MorId k : ms)
        if (c.src(k) == c.dst(f) && c.compose(k, f) == c.compose(k, g)) ok = true;
      if (!ok) return false;
    }
  return true;
}

// Colimit size of a set diagram by labels on the disjoint union.
inline std::size_t colimit_size(const siftcat::SetDiagram& d) {
  const FinCat& c = d.shape();
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    off.push_back(n);
    n += d.at(ObjId(x)).size();
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (MorId f : all_morphisms(c))
    for (std::size_t e = 0; e < d.map(f).size(); ++e)
      edges.emplace_back(off[c.src(f).index()] + e, off[c.dst(f).index()] + d.map(f)[e]);
  return component_count(n, edges);
}

// Equivalence closure by Warshall on a boolean matrix.
inline std::vector<std::vector<char>> equivalence_closure(std::size_t n,
                                                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (auto [a, b] : pairs) m[a][b] = m[b][a] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = 1;
  return m;
}

}  // namespace oracle
