#include "siftcat/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace siftcat {

FinCat arrow_category() {
  CategoryBuilder b;
  ObjId a = b.add_object("a");
  ObjId c = b.add_object("b");
  b.add_morphism("f", a, c);
  return std::move(b).build();
}

FinCat reflexive_pair_category() {
  CategoryBuilder b;
  ObjId x0 = b.add_object("0");
  ObjId x1 = b.add_object("1");
  MorId d0 = b.add_morphism("d0", x0, x1);
  MorId d1 = b.add_morphism("d1", x0, x1);
  MorId s = b.add_morphism("s", x1, x0);
  MorId sd0 = b.add_morphism("sd0", x0, x0);
  MorId sd1 = b.add_morphism("sd1", x0, x0);
  MorId id1 = *b.find_morphism("id_1");
  const MorId d[2] = {d0, d1};
  const MorId sd[2] = {sd0, sd1};
  for (int i = 0; i < 2; ++i) {
    b.set_composite(d[i], s, id1);
    b.set_composite(s, d[i], sd[i]);
    b.set_composite(sd[i], s, s);
    for (int j = 0; j < 2; ++j) {
      b.set_composite(d[j], sd[i], d[i]);
      b.set_composite(sd[j], sd[i], sd[i]);
    }
  }
  return std::move(b).build();
}

namespace {

std::vector<std::vector<char>> order_closure(const std::vector<std::string>& elements,
                                             const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = elements.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[elements[i]] = i;
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = 1;
  for (const auto& [x, y] : leq) {
    auto ix = pos.find(x), iy = pos.find(y);
    if (ix == pos.end() || iy == pos.end())
      throw Error(ErrorKind::UnknownObject, "order pair (" + x + ", " + y + ")");
    le[ix->second][iy->second] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  return le;
}

FinCat thin_category(const std::vector<std::string>& elements, const std::vector<std::vector<char>>& le) {
  const std::size_t n = elements.size();
  CategoryBuilder b;
  std::vector<ObjId> obj;
  for (const auto& e : elements) obj.push_back(b.add_object(e));
  std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n));
  for (std::size_t i = 0; i < n; ++i) {
    arrow[i][i] = *b.find_morphism(identity_name(elements[i]));
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && le[i][j]) arrow[i][j] = b.add_morphism(elements[i] + "<" + elements[j], obj[i], obj[j]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && le[i][j] && le[j][k]) b.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
  return std::move(b).build();
}

}  // namespace

FinCat poset_category(const std::vector<std::string>& elements,
                      const std::vector<std::pair<std::string, std::string>>& leq) {
  auto le = order_closure(elements, leq);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (le[i][j] && le[j][i])
        throw Error(ErrorKind::ValidationError,
                    "order is not antisymmetric on " + elements[i] + ", " + elements[j]);
  return thin_category(elements, le);
}

FinCat preorder_category(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& leq) {
  return thin_category(elements, order_closure(elements, leq));
}

FinCat codiscrete_category(std::size_t n) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i < n; ++i) el.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq.emplace_back(el[i], el[j]);
  return preorder_category(el, leq);
}

FinCat chain_category(std::size_t n) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i < n; ++i) {
    el.push_back(std::to_string(i));
    if (i) le.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return poset_category(el, le);
}

FinCat boolean_lattice_category(std::size_t k) {
  auto label = [&](std::size_t mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
    return s + "}";
  };
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
    el.push_back(label(m));
    for (std::size_t i = 0; i < k; ++i)
      if (!(m >> i & 1)) le.emplace_back(label(m), label(m | (std::size_t{1} << i)));
  }
  return poset_category(el, le);
}

FinCat diamond_lattice_category() {
  return poset_category({"bot", "x", "y", "z", "top"}, {{"bot", "x"},
                                                      {"bot", "y"},
                                                      {"bot", "z"},
                                                      {"x", "top"},
                                                      {"y", "top"},
                                                      {"z", "top"}});
}

FinCat pentagon_lattice_category() {
  return poset_category({"bot", "a", "b", "c", "top"},
                        {{"bot", "a"}, {"a", "b"}, {"b", "top"}, {"bot", "c"}, {"c", "top"}});
}

FinCat divisor_lattice_category(std::size_t n) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> le;
  std::vector<std::size_t> divs;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  for (std::size_t a : divs) {
    el.push_back(std::to_string(a));
    for (std::size_t c : divs)
      if (c != a && c % a == 0) le.emplace_back(std::to_string(a), std::to_string(c));
  }
  return poset_category(el, le);
}

FinCat monoid_category(const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& table, std::string object) {
  if (elements.empty() || table.size() != elements.size())
    throw Error(ErrorKind::ValidationError, "monoid table does not match its elements");
  CategoryBuilder b;
  ObjId o = b.add_object(object);
  std::vector<MorId> m{*b.find_morphism(identity_name(object))};
  for (std::size_t i = 1; i < elements.size(); ++i) m.push_back(b.add_morphism(elements[i], o, o));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (table[i].size() != elements.size())
      throw Error(ErrorKind::ValidationError, "monoid table row has the wrong length");
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (table[i][j] >= elements.size())
        throw Error(ErrorKind::ValidationError, "monoid table entry out of range");
      b.set_composite(m[i], m[j], m[table[i][j]]);
    }
  }
  return std::move(b).build();
}

FinCat idempotent_monoid_category() {
  return monoid_category({"1", "e"}, {{0, 1}, {1, 1}});
}

FinCat cyclic_group_category(std::size_t n) {
  std::vector<std::string> el{"0"};
  for (std::size_t i = 1; i < n; ++i) el.push_back("g" + std::to_string(i));
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return monoid_category(el, t);
}

namespace {

std::string image_string(const Mapping& m) {
  bool small = std::all_of(m.begin(), m.end(), [](std::size_t v) { return v < 10; });
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!small && i) s += ",";
    s += std::to_string(m[i]);
  }
  return s;
}

}  // namespace

ConcreteCategory concrete_category(const std::vector<std::string>& objects,
                                   const std::vector<std::size_t>& sizes,
                                   const std::vector<ConcreteGenerator>& generators,
                                   std::size_t max_morphisms) {
  if (objects.size() != sizes.size())
    throw Error(ErrorKind::ValidationError, "object and carrier lists differ in length");
  struct Arrow {
    std::size_t src, dst;
    Mapping map;
    auto operator<=>(const Arrow&) const = default;
  };
  std::vector<Arrow> arrows;
  std::map<Arrow, std::size_t> seen;
  auto add = [&](Arrow a) {
    if (seen.count(a)) return;
    if (arrows.size() >= max_morphisms)
      throw Error(ErrorKind::BudgetExceeded, "concrete closure exceeds " + std::to_string(max_morphisms) +
                                                 " morphisms");
    seen.emplace(a, arrows.size());
    arrows.push_back(std::move(a));
  };
  for (std::size_t x = 0; x < objects.size(); ++x) {
    Mapping id(sizes[x]);
    std::iota(id.begin(), id.end(), std::size_t{0});
    add({x, x, std::move(id)});
  }
  for (const auto& g : generators) {
    if (g.src >= objects.size() || g.dst >= objects.size() || g.map.size() != sizes[g.src])
      throw Error(ErrorKind::CarrierMismatch, "generator does not fit its carriers");
    for (std::size_t v : g.map)
      if (v >= sizes[g.dst]) throw Error(ErrorKind::CarrierMismatch, "generator leaves its codomain");
    add({g.src, g.dst, g.map});
  }
  auto composite = [&](const Arrow& g, const Arrow& f) {
    Mapping m(f.map.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
    return Arrow{f.src, g.dst, std::move(m)};
  };
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = arrows.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (arrows[j].dst == arrows[i].src) {
          const std::size_t before = arrows.size();
          add(composite(arrows[i], arrows[j]));
          grew |= arrows.size() != before;
        }
  }

  CategoryBuilder b;
  std::vector<ObjId> obj;
  for (const auto& o : objects) obj.push_back(b.add_object(o));
  std::vector<MorId> ids(arrows.size());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Arrow& a = arrows[i];
    if (i < objects.size()) {
      ids[i] = *b.find_morphism(identity_name(objects[i]));
      continue;
    }
    ids[i] = b.add_morphism(objects[a.src] + ">" + objects[a.dst] + ":" + image_string(a.map),
                            obj[a.src], obj[a.dst]);
  }
  for (std::size_t i = 0; i < arrows.size(); ++i)
    for (std::size_t j = 0; j < arrows.size(); ++j)
      if (arrows[j].dst == arrows[i].src) b.set_composite(ids[i], ids[j], ids[seen.at(composite(arrows[i], arrows[j]))]);

  ConcreteCategory out{std::move(b).build(), sizes, {}};
  out.maps.resize(out.category.num_morphisms());
  for (std::size_t i = 0; i < arrows.size(); ++i) out.maps[ids[i].index()] = arrows[i].map;
  return out;
}

FinCat injections_category(std::size_t n) {
  std::vector<std::string> objects;
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k <= n; ++k) {
    objects.push_back(std::to_string(k));
    sizes.push_back(k);
  }
  std::vector<ConcreteGenerator> gens;
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t l = k; l <= n; ++l) {
      // every injection k → l
      Mapping m(k);
      auto rec = [&](auto&& self, std::size_t i, std::vector<char>& used) -> void {
        if (i == k) {
          gens.push_back({k, l, m});
          return;
        }
        for (std::size_t v = 0; v < l; ++v)
          if (!used[v]) {
            used[v] = 1;
            m[i] = v;
            self(self, i + 1, used);
            used[v] = 0;
          }
      };
      std::vector<char> used(l, 0);
      rec(rec, 0, used);
    }
  return concrete_category(objects, sizes, gens, 4096).category;
}

SetDiagram forgetful_diagram(const ConcreteCategory& data) {
  auto c = std::make_shared<const FinCat>(data.category);
  std::vector<FinSet> sets;
  for (std::size_t s : data.sizes) sets.push_back(FinSet::numbered(s));
  return SetDiagram(c, std::move(sets), data.maps);
}

}  // namespace siftcat
