#include "siftcat/gen.hpp"

#include <algorithm>
#include <numeric>

#include "siftcat/union_find.hpp"

namespace siftcat {

Mapping random_mapping(Rng& rng, std::size_t n, std::size_t k) {
  Mapping m(n);
  for (auto& v : m) v = uniform(rng, 0, k - 1);
  return m;
}

std::optional<ConcreteCategory> random_concrete_category(Rng& rng, const ConcreteParams& p) {
  const std::size_t n = uniform(rng, 1, p.max_objects);
  std::vector<std::string> objects;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i) {
    objects.push_back(std::string(1, static_cast<char>('A' + i)));
    sizes.push_back(uniform(rng, 1, p.max_carrier));
  }
  std::vector<ConcreteGenerator> gens;
  for (std::size_t k = uniform(rng, 1, p.max_generators); k > 0; --k) {
    std::size_t s = uniform(rng, 0, n - 1), t = uniform(rng, 0, n - 1);
    gens.push_back({s, t, random_mapping(rng, sizes[s], sizes[t])});
  }
  try {
    return concrete_category(objects, sizes, gens, p.max_morphisms);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) return std::nullopt;
    throw;
  }
}

FinCat random_poset(Rng& rng, std::size_t n, double density) {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) el.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> le;
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) le.emplace_back(el[i], el[j]);
  return poset_category(el, le);
}

FinCat random_lattice(Rng& rng, std::size_t inner) {
  while (true) {
    std::vector<std::string> el{"bot"};
    std::vector<std::pair<std::string, std::string>> le;
    for (std::size_t i = 0; i < inner; ++i) {
      el.push_back("p" + std::to_string(i));
      le.emplace_back("bot", el.back());
      le.emplace_back(el.back(), "top");
    }
    el.push_back("top");
    if (inner == 0) le.emplace_back("bot", "top");
    std::bernoulli_distribution coin(0.35);
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = i + 1; j < inner; ++j)
        if (coin(rng)) le.emplace_back(el[i + 1], el[j + 1]);
    FinCat c = poset_category(el, le);
    if (has_pullbacks(c).all_exist && has_pullbacks(opposite(c)).all_exist) return c;
  }
}

SetDiagram random_diagram(Rng& rng, const CatRef& cref, std::size_t max_set_size,
                          std::size_t max_generators) {
  const FinCat& c = *cref;
  const std::size_t n = c.num_objects();
  std::vector<ObjId> gens;
  for (std::size_t k = uniform(rng, n ? 1 : 0, n ? max_generators : 0); k > 0; --k)
    gens.emplace_back(uniform(rng, 0, n - 1));
  // Elements at y: (generator index, morphism gen → y).
  std::vector<std::vector<std::pair<std::size_t, MorId>>> elems(n);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t y = 0; y < n; ++y)
      for (MorId f : c.hom(gens[g], ObjId(y))) elems[y].emplace_back(g, f);
  auto position = [&](std::size_t y, std::size_t g, MorId f) {
    auto it = std::find(elems[y].begin(), elems[y].end(), std::make_pair(g, f));
    return static_cast<std::size_t>(it - elems[y].begin());
  };
  std::vector<std::size_t> off(n + 1, 0);
  for (std::size_t y = 0; y < n; ++y) off[y + 1] = off[y] + elems[y].size();
  // action tables on the flat index
  std::vector<Mapping> act(c.num_morphisms());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);
    std::size_t y = c.src(h).index(), z = c.dst(h).index();
    for (const auto& [g, f] : elems[y]) act[i].push_back(position(z, g, c.compose_unchecked(h, f)));
  }
  UnionFind uf(off[n]);
  auto close = [&]() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
        MorId h(i);
        std::size_t y = c.src(h).index(), z = c.dst(h).index();
        for (std::size_t a = 0; a < elems[y].size(); ++a)
          for (std::size_t b = a + 1; b < elems[y].size(); ++b)
            if (uf.same(off[y] + a, off[y] + b))
              changed |= uf.unite(off[z] + act[i][a], off[z] + act[i][b]);
      }
    }
  };
  auto classes_at = [&](std::size_t y) {
    std::vector<std::size_t> roots;
    for (std::size_t a = 0; a < elems[y].size(); ++a) roots.push_back(uf.find(off[y] + a));
    std::sort(roots.begin(), roots.end());
    return static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
  };
  auto merge_random_at = [&](std::size_t y) {
    if (elems[y].size() < 2) return;
    std::size_t a = uniform(rng, 0, elems[y].size() - 1), b = uniform(rng, 0, elems[y].size() - 1);
    uf.unite(off[y] + a, off[y] + b);
    close();
  };
  for (std::size_t k = uniform(rng, 0, 2); k > 0 && n; --k) merge_random_at(uniform(rng, 0, n - 1));
  for (std::size_t y = 0; y < n; ++y)
    while (classes_at(y) > max_set_size) merge_random_at(y);

  std::vector<FinSet> sets;
  std::vector<Mapping> slot(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<std::size_t> root_of_class;
    slot[y].resize(elems[y].size());
    for (std::size_t a = 0; a < elems[y].size(); ++a) {
      std::size_t r = uf.find(off[y] + a);
      auto it = std::find(root_of_class.begin(), root_of_class.end(), r);
      slot[y][a] = static_cast<std::size_t>(it - root_of_class.begin());
      if (it == root_of_class.end()) root_of_class.push_back(r);
    }
    sets.push_back(FinSet::numbered(root_of_class.size(), "e"));
  }
  std::vector<Mapping> maps(c.num_morphisms());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);
    std::size_t y = c.src(h).index(), z = c.dst(h).index();
    maps[i].assign(sets[y].size(), 0);
    for (std::size_t a = 0; a < elems[y].size(); ++a) maps[i][slot[y][a]] = slot[z][act[i][a]];
  }
  return SetDiagram(cref, std::move(sets), std::move(maps));
}

Presheaf random_presheaf(Rng& rng, const CatRef& base, const CatRef& op, std::size_t max_set_size,
                         std::size_t max_generators) {
  return from_diagram(base, random_diagram(rng, op, max_set_size, max_generators));
}

std::optional<RandomGraph> random_graph(Rng& rng, const FinCat& c) {
  std::vector<std::pair<ObjId, ObjId>> pairs;
  for (std::size_t g = 0; g < c.num_objects(); ++g)
    for (std::size_t x = 0; x < c.num_objects(); ++x)
      if (!c.hom(ObjId(g), ObjId(x)).empty()) pairs.emplace_back(ObjId(g), ObjId(x));
  if (pairs.empty()) return std::nullopt;
  auto [g, x] = pairs[uniform(rng, 0, pairs.size() - 1)];
  auto hom = c.hom(g, x);
  return RandomGraph{g, x, hom[uniform(rng, 0, hom.size() - 1)], hom[uniform(rng, 0, hom.size() - 1)]};
}

RandomReflexivePair random_reflexive_pair(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t nx = uniform(rng, 1, max_vertices);
  const std::size_t ne = uniform(rng, nx, std::max(nx, max_edges));
  // section at a random subset of positions
  std::vector<std::size_t> order(ne);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  Mapping p = random_mapping(rng, ne, nx), q = random_mapping(rng, ne, nx);
  for (std::size_t v = 0; v < nx; ++v) p[order[v]] = q[order[v]] = v;
  FinSet X = FinSet::numbered(nx, "x"), E = FinSet::numbered(ne, "e");
  return {{E, X, std::move(p)}, {E, X, std::move(q)}};
}

}  // namespace siftcat
