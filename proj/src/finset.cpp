#include "siftcat/finset.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "siftcat/union_find.hpp"

namespace siftcat {

// ---------------------------------------------------------------------------
// FinSet / FinFunction

FinSet::FinSet() : data_(std::make_shared<const Data>()) {}

FinSet::FinSet(std::vector<std::string> elements) {
  auto d = std::make_shared<Data>();
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (!d->index.emplace(elements[i], i).second)
      throw Error(ErrorKind::DuplicateIdentifier, "duplicate element '" + elements[i] + "'");
  d->names = std::move(elements);
  data_ = std::move(d);
}

FinSet FinSet::numbered(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return FinSet(std::move(names));
}

std::optional<std::size_t> FinSet::find(std::string_view element) const {
  auto it = data_->index.find(std::string(element));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSet::index(std::string_view element) const {
  if (auto i = find(element)) return *i;
  throw Error(ErrorKind::CarrierMismatch, "no element '" + std::string(element) + "'");
}

bool FinFunction::is_injective() const {
  std::vector<char> hit(codomain.size(), 0);
  for (std::size_t v : map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool FinFunction::is_surjective() const {
  std::vector<char> hit(codomain.size(), 0);
  for (std::size_t v : map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

FinFunction FinFunction::identity(const FinSet& s) {
  Mapping m(s.size());
  std::iota(m.begin(), m.end(), std::size_t{0});
  return {s, s, std::move(m)};
}

FinFunction FinFunction::make(FinSet domain, FinSet codomain, Mapping map) {
  if (map.size() != domain.size())
    throw Error(ErrorKind::CarrierMismatch, "mapping is not total on its domain");
  for (std::size_t v : map)
    if (v >= codomain.size()) throw Error(ErrorKind::CarrierMismatch, "value outside codomain");
  return {std::move(domain), std::move(codomain), std::move(map)};
}

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.codomain == g.domain))
    throw Error(ErrorKind::CarrierMismatch, "composite of functions with mismatched carriers");
  Mapping m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
  return {f.domain, g.codomain, std::move(m)};
}

// ---------------------------------------------------------------------------
// Relations

Relation::Relation(FinSet left, FinSet right)
    : left_(std::move(left)), right_(std::move(right)), bits_(left_.size() * right_.size(), 0) {}

Relation Relation::diagonal(const FinSet& s) {
  Relation r(s, s);
  for (std::size_t i = 0; i < s.size(); ++i) r.insert(i, i);
  return r;
}

std::size_t Relation::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

bool Relation::includes(const Relation& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (other.bits_[i] && !bits_[i]) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < left_.size(); ++a)
    for (std::size_t b = 0; b < right_.size(); ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

bool Relation::is_reflexive() const {
  if (!(left_ == right_)) return false;
  for (std::size_t i = 0; i < left_.size(); ++i)
    if (!contains(i, i)) return false;
  return true;
}

bool Relation::is_symmetric() const {
  if (!(left_ == right_)) return false;
  for (auto [a, b] : pairs())
    if (!contains(b, a)) return false;
  return true;
}

bool Relation::is_transitive() const {
  if (!(left_ == right_)) return false;
  const std::size_t n = left_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (contains(a, b))
        for (std::size_t c = 0; c < n; ++c)
          if (contains(b, c) && !contains(a, c)) return false;
  return true;
}

Relation rel_compose(const Relation& s, const Relation& r) {
  if (!(r.right() == s.left()))
    throw Error(ErrorKind::CarrierMismatch, "relation composite over mismatched carriers");
  Relation out(r.left(), s.right());
  for (std::size_t x = 0; x < r.left().size(); ++x)
    for (std::size_t y = 0; y < r.right().size(); ++y)
      if (r.contains(x, y))
        for (std::size_t z = 0; z < s.right().size(); ++z)
          if (s.contains(y, z)) out.insert(x, z);
  return out;
}

Relation rel_op(const Relation& r) {
  Relation out(r.right(), r.left());
  for (auto [a, b] : r.pairs()) out.insert(b, a);
  return out;
}

Relation rel_of_graph(const FinFunction& fp, const FinFunction& fq) {
  if (!(fp.domain == fq.domain) || !(fp.codomain == fq.codomain))
    throw Error(ErrorKind::CarrierMismatch, "graph legs are not parallel");
  Relation out(fp.codomain, fp.codomain);
  for (std::size_t e = 0; e < fp.domain.size(); ++e) out.insert(fp(e), fq(e));
  return out;
}

ClosureResult equiv_closure_iterate(const Relation& r) {
  if (!r.is_reflexive())
    throw Error(ErrorKind::NotReflexive, "relation does not contain the diagonal");
  Relation current = r;
  std::size_t steps = 0;
  while (true) {
    Relation next = rel_compose(current, rel_compose(rel_op(current), current));
    for (auto [a, b] : current.pairs()) next.insert(a, b);
    if (next == current) break;
    current = std::move(next);
    ++steps;
  }
  return {std::move(current), steps};
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

Quotient quotient_from_classes(const FinSet& s, UnionFind& uf) {
  const std::size_t n = s.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) rep[i] = i;
  // Least element identifier per class.
  std::vector<std::size_t> best(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = uf.find(i);
    if (best[root] == n || s.name(i) < s.name(best[root])) best[root] = i;
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (uf.find(i) == i) reps.push_back(best[i]);
  std::sort(reps.begin(), reps.end(),
            [&](std::size_t a, std::size_t b) { return s.name(a) < s.name(b); });
  std::vector<std::string> names;
  std::vector<std::size_t> slot(n, 0);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    names.push_back(s.name(reps[k]));
    slot[uf.find(reps[k])] = k;
  }
  FinSet q(std::move(names));
  Mapping m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = slot[uf.find(i)];
  return {q, {s, q, std::move(m)}};
}

}  // namespace

Quotient quotient_by(const FinSet& s, const Relation& equivalence) {
  if (!(equivalence.left() == s) || !(equivalence.right() == s))
    throw Error(ErrorKind::CarrierMismatch, "relation is not on the quotiented set");
  UnionFind uf(s.size());
  for (auto [a, b] : equivalence.pairs()) uf.unite(a, b);
  return quotient_from_classes(s, uf);
}

Quotient coequalizer(const FinFunction& f, const FinFunction& g) {
  if (!(f.domain == g.domain) || !(f.codomain == g.codomain))
    throw Error(ErrorKind::NotParallel, "coequalizer of a non-parallel pair");
  UnionFind uf(f.codomain.size());
  for (std::size_t e = 0; e < f.domain.size(); ++e) uf.unite(f(e), g(e));
  return quotient_from_classes(f.codomain, uf);
}

std::optional<FinFunction> common_section(const FinFunction& fp, const FinFunction& fq) {
  if (!(fp.domain == fq.domain) || !(fp.codomain == fq.codomain)) return std::nullopt;
  const std::size_t none = fp.domain.size();
  Mapping h(fp.codomain.size(), none);
  for (std::size_t e = 0; e < fp.domain.size(); ++e)
    if (fp(e) == fq(e) && h[fp(e)] == none) h[fp(e)] = e;
  for (std::size_t v : h)
    if (v == none) return std::nullopt;
  return FinFunction{fp.codomain, fp.domain, std::move(h)};
}

Quotient reflexive_coeq_via_relations(const FinFunction& fp, const FinFunction& fq) {
  if (!(fp.domain == fq.domain) || !(fp.codomain == fq.codomain))
    throw Error(ErrorKind::NotParallel, "reflexive pair legs are not parallel");
  if (!common_section(fp, fq))
    throw Error(ErrorKind::NotReflexive, "pair has no common section");
  auto closure = equiv_closure_iterate(rel_of_graph(fp, fq));
  return quotient_by(fp.codomain, closure.equivalence);
}

ImageFactorization image_factorization(const FinFunction& f) {
  std::vector<char> hit(f.codomain.size(), 0);
  for (std::size_t v : f.map) hit[v] = 1;
  std::vector<std::string> names;
  std::vector<std::size_t> slot(f.codomain.size(), 0);
  Mapping inj;
  for (std::size_t v = 0; v < f.codomain.size(); ++v) {
    if (!hit[v]) continue;
    slot[v] = names.size();
    names.push_back(f.codomain.name(v));
    inj.push_back(v);
  }
  FinSet image(std::move(names));
  Mapping surj(f.map.size());
  for (std::size_t i = 0; i < surj.size(); ++i) surj[i] = slot[f(i)];
  return {{f.domain, image, std::move(surj)}, {image, f.codomain, std::move(inj)}};
}

Relation kernel_pair(const FinFunction& f) {
  Relation r(f.domain, f.domain);
  for (std::size_t a = 0; a < f.domain.size(); ++a)
    for (std::size_t b = 0; b < f.domain.size(); ++b)
      if (f(a) == f(b)) r.insert(a, b);
  return r;
}

// ---------------------------------------------------------------------------
// Diagrams

SetDiagram::SetDiagram(CatRef shape, std::vector<FinSet> sets, std::vector<Mapping> maps)
    : shape_(std::move(shape)), sets_(std::move(sets)), maps_(std::move(maps)) {
  const FinCat& c = *shape_;
  if (sets_.size() != c.num_objects() || maps_.size() != c.num_morphisms())
    throw Error(ErrorKind::NotFunctorial, "diagram does not cover the shape");
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const Mapping& m = maps_[i];
    if (m.size() != at(c.src(f)).size())
      throw Error(ErrorKind::CarrierMismatch, "function for " + c.name(f) + " is not total");
    for (std::size_t v : m)
      if (v >= at(c.dst(f)).size())
        throw Error(ErrorKind::CarrierMismatch, "function for " + c.name(f) + " leaves its codomain");
  }
  for (std::size_t i = 0; i < c.num_objects(); ++i) {
    const Mapping& m = maps_[c.identity(ObjId(i)).index()];
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] != k)
        throw Error(ErrorKind::NotFunctorial, "identity of " + c.name(ObjId(i)) + " not preserved");
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    for (MorId g : c.out(c.dst(f))) {
      const Mapping& gf = maps_[c.compose_unchecked(g, f).index()];
      const Mapping& mf = maps_[i];
      const Mapping& mg = maps_[g.index()];
      for (std::size_t k = 0; k < mf.size(); ++k)
        if (gf[k] != mg[mf[k]])
          throw Error(ErrorKind::NotFunctorial,
                      "composite " + c.name(g) + " after " + c.name(f) + " not preserved");
    }
  }
}

FinFunction SetDiagram::function(MorId f) const {
  return {at(shape_->src(f)), at(shape_->dst(f)), maps_[f.index()]};
}

namespace {

struct DisjointUnion {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

DisjointUnion disjoint_union(const SetDiagram& d) {
  DisjointUnion u;
  for (std::size_t i = 0; i < d.shape().num_objects(); ++i) {
    u.offset.push_back(u.total);
    u.total += d.at(ObjId(i)).size();
  }
  return u;
}

}  // namespace

Cocone colimit(const SetDiagram& d) {
  const FinCat& c = d.shape();
  auto du = disjoint_union(d);
  UnionFind uf(du.total);
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const Mapping& m = d.map(f);
    for (std::size_t k = 0; k < m.size(); ++k)
      uf.unite(du.offset[c.src(f).index()] + k, du.offset[c.dst(f).index()] + m[k]);
  }
  // Representative: least (object identifier, element identifier).
  std::vector<std::pair<std::size_t, std::size_t>> owner(du.total);
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t k = 0; k < d.at(ObjId(x)).size(); ++k) owner[du.offset[x] + k] = {x, k};
  auto key = [&](std::size_t e) {
    auto [x, k] = owner[e];
    return std::tie(c.name(ObjId(x)), d.at(ObjId(x)).name(k));
  };
  std::vector<std::size_t> best(du.total, du.total);
  for (std::size_t e = 0; e < du.total; ++e) {
    std::size_t r = uf.find(e);
    if (best[r] == du.total || key(e) < key(best[r])) best[r] = e;
  }
  std::vector<std::size_t> reps;
  for (std::size_t e = 0; e < du.total; ++e)
    if (uf.find(e) == e) reps.push_back(best[e]);
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<std::size_t> slot(du.total, 0);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    auto [x, e] = owner[reps[k]];
    names.push_back("(" + c.name(ObjId(x)) + "," + d.at(ObjId(x)).name(e) + ")");
    slot[uf.find(reps[k])] = k;
  }
  Cocone out{FinSet(std::move(names)), {}};
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    Mapping leg(d.at(ObjId(x)).size());
    for (std::size_t k = 0; k < leg.size(); ++k) leg[k] = slot[uf.find(du.offset[x] + k)];
    out.legs.push_back(std::move(leg));
  }
  return out;
}

Cone limit(const SetDiagram& d) {
  const FinCat& c = d.shape();
  const std::size_t n = c.num_objects();
  // Constraints checked once both endpoints are assigned.
  std::vector<std::vector<MorId>> checks(n);
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    std::size_t hi = std::max(c.src(f).index(), c.dst(f).index());
    checks[hi].push_back(f);
  }
  std::vector<std::size_t> choice(n, 0);
  std::vector<std::vector<std::size_t>> families;
  auto consistent = [&](std::size_t upto) {
    for (MorId f : checks[upto])
      if (d.map(f)[choice[c.src(f).index()]] != choice[c.dst(f).index()]) return false;
    return true;
  };
  auto search = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      families.push_back(choice);
      return;
    }
    for (std::size_t e = 0; e < d.at(ObjId(x)).size(); ++e) {
      choice[x] = e;
      if (consistent(x)) self(self, x + 1);
    }
  };
  search(search, 0);
  std::vector<std::string> names;
  for (const auto& fam : families) {
    std::string s = "(";
    for (std::size_t x = 0; x < n; ++x) {
      if (x) s += ",";
      s += d.at(ObjId(x)).name(fam[x]);
    }
    names.push_back(s + ")");
  }
  Cone out{FinSet(std::move(names)), {}};
  for (std::size_t x = 0; x < n; ++x) {
    Mapping leg(families.size());
    for (std::size_t k = 0; k < families.size(); ++k) leg[k] = families[k][x];
    out.legs.push_back(std::move(leg));
  }
  return out;
}

bool is_cocone(const SetDiagram& d, const Cocone& co) {
  const FinCat& c = d.shape();
  if (co.legs.size() != c.num_objects()) return false;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (co.legs[x].size() != d.at(ObjId(x)).size()) return false;
    for (std::size_t v : co.legs[x])
      if (v >= co.apex.size()) return false;
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const Mapping& m = d.map(f);
    for (std::size_t k = 0; k < m.size(); ++k)
      if (co.legs[c.src(f).index()][k] != co.legs[c.dst(f).index()][m[k]]) return false;
  }
  return true;
}

bool is_cone(const SetDiagram& d, const Cone& cone) {
  const FinCat& c = d.shape();
  if (cone.legs.size() != c.num_objects()) return false;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (cone.legs[x].size() != cone.apex.size()) return false;
    for (std::size_t v : cone.legs[x])
      if (v >= d.at(ObjId(x)).size()) return false;
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    for (std::size_t w = 0; w < cone.apex.size(); ++w)
      if (d.map(f)[cone.legs[c.src(f).index()][w]] != cone.legs[c.dst(f).index()][w]) return false;
  }
  return true;
}

bool verify_colimit(const SetDiagram& d, const Cocone& co, std::size_t max_test_size) {
  if (!is_cocone(d, co)) return false;
  const FinCat& c = d.shape();
  auto du = disjoint_union(d);
  for (std::size_t k = 0; k <= max_test_size; ++k) {
    FinSet test = FinSet::numbered(k, "t");
    bool ok = for_each_function(du.total, k, [&](const Mapping& all) {
      Cocone cand{test, {}};
      for (std::size_t x = 0; x < c.num_objects(); ++x)
        cand.legs.emplace_back(all.begin() + static_cast<long>(du.offset[x]),
                               all.begin() + static_cast<long>(du.offset[x] + d.at(ObjId(x)).size()));
      if (!is_cocone(d, cand)) return true;
      std::size_t mediators = 0;
      for_each_function(co.apex.size(), k, [&](const Mapping& u) {
        for (std::size_t x = 0; x < c.num_objects(); ++x)
          for (std::size_t e = 0; e < cand.legs[x].size(); ++e)
            if (u[co.legs[x][e]] != cand.legs[x][e]) return true;
        ++mediators;
        return true;
      });
      return mediators == 1;
    });
    if (!ok) return false;
  }
  return true;
}

bool verify_limit(const SetDiagram& d, const Cone& cone, std::size_t max_test_size) {
  if (!is_cone(d, cone)) return false;
  const FinCat& c = d.shape();
  const std::size_t n = c.num_objects();
  std::size_t product = 1;
  for (std::size_t x = 0; x < n; ++x) product *= d.at(ObjId(x)).size();
  auto decode = [&](std::size_t code, std::size_t x) {
    for (std::size_t y = 0; y < x; ++y) code /= d.at(ObjId(y)).size();
    return code % d.at(ObjId(x)).size();
  };
  for (std::size_t k = 0; k <= max_test_size; ++k) {
    FinSet test = FinSet::numbered(k, "t");
    bool ok = for_each_function(k, product, [&](const Mapping& pick) {
      Cone cand{test, std::vector<Mapping>(n, Mapping(k))};
      for (std::size_t w = 0; w < k; ++w)
        for (std::size_t x = 0; x < n; ++x) cand.legs[x][w] = decode(pick[w], x);
      if (!is_cone(d, cand)) return true;
      std::size_t mediators = 0;
      for_each_function(k, cone.apex.size(), [&](const Mapping& u) {
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t w = 0; w < k; ++w)
            if (cone.legs[x][u[w]] != cand.legs[x][w]) return true;
        ++mediators;
        return true;
      });
      return mediators == 1;
    });
    if (!ok) return false;
  }
  return true;
}

SetDiagram pointwise_product(const SetDiagram& f, const SetDiagram& g) {
  if (f.shape_ref() != g.shape_ref() && !(f.shape() == g.shape()))
    throw Error(ErrorKind::CarrierMismatch, "diagrams over different shapes");
  const FinCat& c = f.shape();
  std::vector<FinSet> sets;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    std::vector<std::string> names;
    for (const auto& a : f.at(ObjId(x)).elements())
      for (const auto& b : g.at(ObjId(x)).elements()) names.push_back("(" + a + "," + b + ")");
    sets.emplace_back(std::move(names));
  }
  std::vector<Mapping> maps;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId m(i);
    const std::size_t gs = g.at(c.src(m)).size(), gt = g.at(c.dst(m)).size();
    Mapping out(f.at(c.src(m)).size() * gs);
    for (std::size_t a = 0; a < f.at(c.src(m)).size(); ++a)
      for (std::size_t b = 0; b < gs; ++b) out[a * gs + b] = f.map(m)[a] * gt + g.map(m)[b];
    maps.push_back(std::move(out));
  }
  return SetDiagram(f.shape_ref(), std::move(sets), std::move(maps));
}

ProductComparison compare_product_colimit(const SetDiagram& f, const SetDiagram& g) {
  SetDiagram fg = pointwise_product(f, g);
  Cocone cf = colimit(f), cg = colimit(g), cfg = colimit(fg);
  const FinCat& c = f.shape();
  const std::size_t target = cf.apex.size() * cg.apex.size();
  std::vector<std::size_t> image(cfg.apex.size(), target);
  bool well_defined = true;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const std::size_t gs = g.at(ObjId(x)).size();
    for (std::size_t a = 0; a < f.at(ObjId(x)).size(); ++a)
      for (std::size_t b = 0; b < gs; ++b) {
        std::size_t cls = cfg.legs[x][a * gs + b];
        std::size_t val = cf.legs[x][a] * cg.apex.size() + cg.legs[x][b];
        if (image[cls] == target) image[cls] = val;
        else if (image[cls] != val) well_defined = false;
      }
  }
  std::vector<char> hit(target, 0);
  bool injective = well_defined;
  for (std::size_t v : image) {
    if (v == target || hit[v]) injective = false;
    else hit[v] = 1;
  }
  bool surjective = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  return {cfg.apex.size(), target, injective && surjective};
}

}  // namespace siftcat
