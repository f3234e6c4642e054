#include "siftcat/presheaf.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "siftcat/catalog.hpp"

namespace siftcat {

// ---------------------------------------------------------------------------
// Presheaf

Presheaf::Presheaf(CatRef base, std::vector<FinSet> sets, std::vector<Mapping> actions)
    : base_(std::move(base)), sets_(std::move(sets)), actions_(std::move(actions)) {
  const FinCat& c = *base_;
  if (sets_.size() != c.num_objects() || actions_.size() != c.num_morphisms())
    throw Error(ErrorKind::NotFunctorial, "presheaf does not cover its base");
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const Mapping& a = actions_[i];
    if (a.size() != at(c.dst(f)).size())
      throw Error(ErrorKind::CarrierMismatch, "action of " + c.name(f) + " is not total");
    for (std::size_t v : a)
      if (v >= at(c.src(f)).size())
        throw Error(ErrorKind::CarrierMismatch, "action of " + c.name(f) + " leaves its codomain");
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const Mapping& a = actions_[c.identity(ObjId(x)).index()];
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] != k)
        throw Error(ErrorKind::NotFunctorial, "identity of " + c.name(ObjId(x)) + " acts nontrivially");
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    for (MorId g : c.out(c.dst(f))) {
      const Mapping& gf = actions_[c.compose_unchecked(g, f).index()];
      const Mapping& af = actions_[i];
      const Mapping& ag = actions_[g.index()];
      for (std::size_t z = 0; z < gf.size(); ++z)
        if (gf[z] != af[ag[z]])
          throw Error(ErrorKind::NotFunctorial,
                      "action of " + c.name(g) + " after " + c.name(f) + " is not contravariant");
    }
  }
}

std::size_t Presheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& s : sets_) n += s.size();
  return n;
}

SetDiagram Presheaf::as_diagram(const CatRef& op) const {
  std::vector<FinSet> sets;
  for (std::size_t x = 0; x < op->num_objects(); ++x) sets.push_back(at(base_->object(op->name(ObjId(x)))));
  std::vector<Mapping> maps;
  for (std::size_t i = 0; i < op->num_morphisms(); ++i) maps.push_back(action(base_->morphism(op->name(MorId(i)))));
  return SetDiagram(op, std::move(sets), std::move(maps));
}

Presheaf from_diagram(const CatRef& base, const SetDiagram& d) {
  const FinCat& op = d.shape();
  std::vector<FinSet> sets(base->num_objects());
  std::vector<Mapping> actions(base->num_morphisms());
  for (std::size_t x = 0; x < op.num_objects(); ++x) sets[base->object(op.name(ObjId(x))).index()] = d.at(ObjId(x));
  for (std::size_t i = 0; i < op.num_morphisms(); ++i)
    actions[base->morphism(op.name(MorId(i))).index()] = d.map(MorId(i));
  return Presheaf(base, std::move(sets), std::move(actions));
}

// ---------------------------------------------------------------------------
// Natural transformations

bool is_natural(const Presheaf& from, const Presheaf& to, const NatTrans& a) {
  const FinCat& c = from.base();
  if (a.size() != c.num_objects()) return false;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (a[x].size() != from.at(ObjId(x)).size()) return false;
    for (std::size_t v : a[x])
      if (v >= to.at(ObjId(x)).size()) return false;
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    std::size_t x = c.src(f).index(), y = c.dst(f).index();
    for (std::size_t e = 0; e < from.at(ObjId(y)).size(); ++e)
      if (a[x][from.action(f)[e]] != to.action(f)[a[y][e]]) return false;
  }
  return true;
}

NatTrans identity_nat(const Presheaf& p) {
  NatTrans out;
  for (const auto& s : p.sets()) {
    Mapping m(s.size());
    std::iota(m.begin(), m.end(), std::size_t{0});
    out.push_back(std::move(m));
  }
  return out;
}

NatTrans compose_nat(const NatTrans& b, const NatTrans& a) {
  NatTrans out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    out[x].resize(a[x].size());
    for (std::size_t e = 0; e < a[x].size(); ++e) out[x][e] = b[x][a[x][e]];
  }
  return out;
}

namespace {

class NatSearch {
 public:
  NatSearch(const Presheaf& from, const Presheaf& to, bool bijective)
      : from_(from), to_(to), c_(from.base()), bijective_(bijective) {
    const std::size_t n = c_.num_objects();
    off_.assign(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) off_[x + 1] = off_[x] + from.at(ObjId(x)).size();
    value_.assign(off_[n], kUnset);
    obj_of_.resize(off_[n]);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t e = off_[x]; e < off_[x + 1]; ++e) obj_of_[e] = x;
    used_.resize(n);
    for (std::size_t x = 0; x < n; ++x) used_[x].assign(to.at(ObjId(x)).size(), 0);
  }

  void run(const std::function<bool(const NatTrans&)>& visit) {
    const std::size_t n = c_.num_objects();
    for (std::size_t x = 0; x < n; ++x) {
      if (bijective_ && from_.at(ObjId(x)).size() != to_.at(ObjId(x)).size()) return;
      if (!from_.at(ObjId(x)).empty() && to_.at(ObjId(x)).empty()) return;
    }
    stop_ = false;
    search(0, visit);
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool assign(std::size_t var, std::size_t val) {
    std::vector<std::pair<std::size_t, std::size_t>> queue{{var, val}};
    while (!queue.empty()) {
      auto [v, w] = queue.back();
      queue.pop_back();
      if (value_[v] != kUnset) {
        if (value_[v] != w) return false;
        continue;
      }
      std::size_t y = obj_of_[v];
      if (bijective_ && used_[y][w]) return false;
      value_[v] = w;
      if (bijective_) used_[y][w] = 1;
      trail_.push_back(v);
      std::size_t e = v - off_[y];
      for (MorId f : c_.in(ObjId(y))) {
        std::size_t x = c_.src(f).index();
        queue.emplace_back(off_[x] + from_.action(f)[e], to_.action(f)[w]);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      std::size_t v = trail_.back();
      trail_.pop_back();
      if (bijective_) used_[obj_of_[v]][value_[v]] = 0;
      value_[v] = kUnset;
    }
  }

  void search(std::size_t var, const std::function<bool(const NatTrans&)>& visit) {
    while (var < value_.size() && value_[var] != kUnset) ++var;
    if (var == value_.size()) {
      NatTrans out(c_.num_objects());
      for (std::size_t x = 0; x < out.size(); ++x) out[x].assign(value_.begin() + static_cast<long>(off_[x]), value_.begin() + static_cast<long>(off_[x + 1]));
      if (!visit(out)) stop_ = true;
      return;
    }
    const std::size_t y = obj_of_[var];
    for (std::size_t w = 0; w < to_.at(ObjId(y)).size() && !stop_; ++w) {
      std::size_t mark = trail_.size();
      if (assign(var, w)) search(var + 1, visit);
      undo(mark);
    }
  }

  const Presheaf& from_;
  const Presheaf& to_;
  const FinCat& c_;
  bool bijective_;
  bool stop_ = false;
  std::vector<std::size_t> off_, value_, obj_of_, trail_;
  std::vector<std::vector<char>> used_;
};

}  // namespace

void for_each_nat(const Presheaf& from, const Presheaf& to,
                  const std::function<bool(const NatTrans&)>& visit, bool bijective) {
  NatSearch(from, to, bijective).run(visit);
}

std::size_t count_nat(const Presheaf& from, const Presheaf& to) {
  std::size_t n = 0;
  for_each_nat(from, to, [&](const NatTrans&) {
    ++n;
    return true;
  });
  return n;
}

std::vector<std::size_t> fingerprint(const Presheaf& p) {
  const FinCat& c = p.base();
  std::vector<std::size_t> out;
  for (const auto& s : p.sets()) out.push_back(s.size());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    const Mapping& a = p.action(MorId(i));
    std::vector<char> hit(p.at(c.src(MorId(i))).size(), 0);
    for (std::size_t v : a) hit[v] = 1;
    out.push_back(static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)));
    if (c.src(MorId(i)) == c.dst(MorId(i))) {
      std::size_t fixed = 0;
      for (std::size_t k = 0; k < a.size(); ++k) fixed += a[k] == k;
      out.push_back(fixed);
    }
  }
  return out;
}

std::optional<NatTrans> find_iso(const Presheaf& a, const Presheaf& b) {
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  std::optional<NatTrans> found;
  for_each_nat(a, b, [&](const NatTrans& t) {
    found = t;
    return false;
  }, true);
  return found;
}

bool isomorphic(const Presheaf& a, const Presheaf& b) { return find_iso(a, b).has_value(); }

std::optional<std::size_t> find_isomorphic(const std::vector<Presheaf>& pool, const Presheaf& p) {
  auto fp = fingerprint(p);
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (fingerprint(pool[i]) == fp && find_iso(pool[i], p)) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Yoneda and friends

Presheaf yoneda(const CatRef& c, ObjId x) {
  if (!x.valid() || x.index() >= c->num_objects())
    throw Error(ErrorKind::UnknownObject, "object index out of range");
  std::vector<FinSet> sets;
  for (std::size_t w = 0; w < c->num_objects(); ++w) {
    std::vector<std::string> names;
    for (MorId f : c->hom(ObjId(w), x)) names.push_back(c->name(f));
    sets.emplace_back(std::move(names));
  }
  std::vector<Mapping> actions(c->num_morphisms());
  for (std::size_t i = 0; i < c->num_morphisms(); ++i) {
    MorId f(i);  // f : W → V acts hom(V, X) → hom(W, X) by precomposition
    auto from = c->hom(c->dst(f), x);
    auto to = c->hom(c->src(f), x);
    for (MorId g : from) {
      MorId gf = c->compose_unchecked(g, f);
      actions[i].push_back(static_cast<std::size_t>(std::find(to.begin(), to.end(), gf) - to.begin()));
    }
  }
  return Presheaf(c, std::move(sets), std::move(actions));
}

Presheaf yoneda(const CatRef& c, std::string_view object) { return yoneda(c, c->object(object)); }

Presheaf empty_presheaf(const CatRef& c) {
  return Presheaf(c, std::vector<FinSet>(c->num_objects()), std::vector<Mapping>(c->num_morphisms()));
}

Presheaf terminal_presheaf(const CatRef& c) {
  return Presheaf(c, std::vector<FinSet>(c->num_objects(), FinSet({"*"})),
                  std::vector<Mapping>(c->num_morphisms(), Mapping{0}));
}

ElementsCategory category_of_elements(const Presheaf& p) {
  const FinCat& c = p.base();
  CategoryBuilder b;
  ElementsCategory out;
  std::vector<std::vector<ObjId>> obj(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t e = 0; e < p.at(ObjId(x)).size(); ++e) {
      obj[x].push_back(b.add_object("(" + c.name(ObjId(x)) + "," + p.at(ObjId(x)).name(e) + ")"));
      out.element.emplace_back(ObjId(x), e);
    }
  // mor[f][y]: the morphism (f, y) ending at (dst f, y)
  std::vector<std::vector<MorId>> mor(c.num_morphisms());
  std::vector<MorId> base_of;
  for (std::size_t x = 0; x < c.num_objects(); ++x)
    for (std::size_t e = 0; e < p.at(ObjId(x)).size(); ++e) base_of.push_back(c.identity(ObjId(x)));
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    std::size_t x = c.src(f).index(), y = c.dst(f).index();
    for (std::size_t e = 0; e < p.at(ObjId(y)).size(); ++e) {
      if (c.is_identity(f)) {
        mor[i].push_back(*b.find_morphism(identity_name(
            "(" + c.name(ObjId(y)) + "," + p.at(ObjId(y)).name(e) + ")")));
      } else {
        mor[i].push_back(b.add_morphism("(" + c.name(f) + "," + p.at(ObjId(y)).name(e) + ")",
                                        obj[x][p.action(f)[e]], obj[y][e]));
        base_of.push_back(f);
      }
    }
  }
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    if (c.is_identity(f)) continue;
    std::size_t y = c.dst(f).index();
    for (MorId g : c.out(ObjId(y))) {
      if (c.is_identity(g)) continue;
      MorId gf = c.compose_unchecked(g, f);
      for (std::size_t z = 0; z < p.at(c.dst(g)).size(); ++z) {
        // (g, z) ∘ (f, g*z) = (gf, z)
        b.set_composite(mor[g.index()][z], mor[i][p.action(g)[z]], mor[gf.index()][z]);
      }
    }
  }
  out.category = std::make_shared<const FinCat>(std::move(b).build());
  out.projection.source = out.category;
  out.projection.target = p.base_ref();
  for (const auto& [x, e] : out.element) out.projection.on_objects.push_back(x);
  out.projection.on_morphisms = std::move(base_of);
  return out;
}

SiftedVerdict sind_verdict(const Presheaf& p) { return is_sifted(*category_of_elements(p).category); }
FilteredVerdict ind_verdict(const Presheaf& p) { return is_filtered(*category_of_elements(p).category); }
bool is_in_Sind(const Presheaf& p) { return sind_verdict(p).sifted; }
bool is_in_Ind(const Presheaf& p) { return ind_verdict(p).filtered; }

// ---------------------------------------------------------------------------
// Pointwise constructions

Presheaf restrict(const Presheaf& p, const FunctorData& inc) {
  const FinCat& d = *inc.source;
  std::vector<FinSet> sets;
  for (std::size_t x = 0; x < d.num_objects(); ++x) sets.push_back(p.at(inc(ObjId(x))));
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < d.num_morphisms(); ++i) actions.push_back(p.action(inc(MorId(i))));
  return Presheaf(inc.source, std::move(sets), std::move(actions));
}

Presheaf product(const Presheaf& a, const Presheaf& b) {
  const FinCat& c = a.base();
  std::vector<FinSet> sets;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    std::vector<std::string> names;
    for (const auto& u : a.at(ObjId(x)).elements())
      for (const auto& v : b.at(ObjId(x)).elements()) names.push_back("(" + u + "," + v + ")");
    sets.emplace_back(std::move(names));
  }
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const std::size_t bs = b.at(c.dst(f)).size(), bt = b.at(c.src(f)).size();
    Mapping m(a.at(c.dst(f)).size() * bs);
    for (std::size_t u = 0; u < a.at(c.dst(f)).size(); ++u)
      for (std::size_t v = 0; v < bs; ++v) m[u * bs + v] = a.action(f)[u] * bt + b.action(f)[v];
    actions.push_back(std::move(m));
  }
  return Presheaf(a.base_ref(), std::move(sets), std::move(actions));
}

Presheaf equalizer(const Presheaf& a, const Presheaf& b, const NatTrans& f, const NatTrans& g) {
  (void)b;
  const FinCat& c = a.base();
  std::vector<FinSet> sets;
  std::vector<std::vector<std::size_t>> keep(c.num_objects()), slot(c.num_objects());
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    std::vector<std::string> names;
    slot[x].assign(a.at(ObjId(x)).size(), 0);
    for (std::size_t e = 0; e < a.at(ObjId(x)).size(); ++e)
      if (f[x][e] == g[x][e]) {
        slot[x][e] = keep[x].size();
        keep[x].push_back(e);
        names.push_back(a.at(ObjId(x)).name(e));
      }
    sets.emplace_back(std::move(names));
  }
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);
    Mapping m;
    for (std::size_t e : keep[c.dst(h).index()]) m.push_back(slot[c.src(h).index()][a.action(h)[e]]);
    actions.push_back(std::move(m));
  }
  return Presheaf(a.base_ref(), std::move(sets), std::move(actions));
}

PresheafQuotient coequalizer(const Presheaf& a, const Presheaf& b, const NatTrans& f, const NatTrans& g) {
  const FinCat& c = a.base();
  std::vector<FinSet> sets;
  NatTrans map;
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    auto q = coequalizer(FinFunction{a.at(ObjId(x)), b.at(ObjId(x)), f[x]},
                         FinFunction{a.at(ObjId(x)), b.at(ObjId(x)), g[x]});
    sets.push_back(q.quotient);
    map.push_back(q.map.map);
  }
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);
    std::size_t x = c.src(h).index(), y = c.dst(h).index();
    Mapping m(sets[y].size(), 0);
    for (std::size_t e = 0; e < b.at(ObjId(y)).size(); ++e) m[map[y][e]] = map[x][b.action(h)[e]];
    actions.push_back(std::move(m));
  }
  return {Presheaf(b.base_ref(), std::move(sets), std::move(actions)), std::move(map)};
}

PresheafColimit colimit(const PresheafDiagram& d) {
  const FinCat& j = *d.shape;
  if (d.objects.size() != j.num_objects())
    throw Error(ErrorKind::NotFunctorial, "presheaf diagram does not cover its shape");
  if (j.num_objects() == 0)
    throw Error(ErrorKind::ValidationError, "presheaf colimit over the empty shape needs a base");
  const CatRef& base = d.objects[0].base_ref();
  const FinCat& c = *base;
  std::vector<FinSet> sets;
  std::vector<Cocone> cocones;
  for (std::size_t w = 0; w < c.num_objects(); ++w) {
    std::vector<FinSet> vs;
    std::vector<Mapping> ms;
    for (std::size_t k = 0; k < j.num_objects(); ++k) vs.push_back(d.objects[k].at(ObjId(w)));
    for (std::size_t k = 0; k < j.num_morphisms(); ++k) ms.push_back(d.maps[k][w]);
    cocones.push_back(colimit(SetDiagram(d.shape, std::move(vs), std::move(ms))));
    sets.push_back(cocones.back().apex);
  }
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);
    std::size_t x = c.src(h).index(), y = c.dst(h).index();
    Mapping m(sets[y].size(), 0);
    for (std::size_t k = 0; k < j.num_objects(); ++k) {
      const Presheaf& p = d.objects[k];
      for (std::size_t e = 0; e < p.at(ObjId(y)).size(); ++e)
        m[cocones[y].legs[k][e]] = cocones[x].legs[k][p.action(h)[e]];
    }
    actions.push_back(std::move(m));
  }
  PresheafColimit out{Presheaf(base, std::move(sets), std::move(actions)), {}};
  for (std::size_t k = 0; k < j.num_objects(); ++k) {
    NatTrans leg;
    for (std::size_t w = 0; w < c.num_objects(); ++w) leg.push_back(cocones[w].legs[k]);
    out.legs.push_back(std::move(leg));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left Kan extension

Presheaf left_kan_extend(const Presheaf& psi, const FunctorData& inc) {
  if (!is_full_and_faithful(inc))
    throw Error(ErrorKind::NotFullyFaithful, "Kan extension requires a full and faithful inclusion");
  const FinCat& d = *inc.source;
  const FinCat& c = *inc.target;
  struct Comma {
    std::vector<std::pair<ObjId, MorId>> objects;  // (d, u : W → I d)
    Cocone colim;
    std::size_t find(ObjId x, MorId u) const {
      return static_cast<std::size_t>(std::find(objects.begin(), objects.end(), std::make_pair(x, u)) -
                                      objects.begin());
    }
  };
  std::vector<Comma> commas(c.num_objects());
  for (std::size_t w = 0; w < c.num_objects(); ++w) {
    Comma& k = commas[w];
    CategoryBuilder b;  // (W ↓ I)^op
    std::vector<ObjId> obj;
    for (std::size_t x = 0; x < d.num_objects(); ++x)
      for (MorId u : c.hom(ObjId(w), inc(ObjId(x)))) {
        k.objects.emplace_back(ObjId(x), u);
        obj.push_back(b.add_object("(" + d.name(ObjId(x)) + "," + c.name(u) + ")"));
      }
    // g : (x, u) → (x', I g ∘ u) in the comma; reversed here.
    std::map<std::pair<int, std::size_t>, MorId> arrow;
    for (std::size_t i = 0; i < d.num_morphisms(); ++i) {
      MorId g(i);
      for (std::size_t a = 0; a < k.objects.size(); ++a) {
        if (k.objects[a].first != d.src(g)) continue;
        MorId u = k.objects[a].second;
        std::size_t t = k.find(d.dst(g), c.compose_unchecked(inc(g), u));
        arrow[{g.value, a}] = d.is_identity(g) ? *b.find_morphism(identity_name(
                                                     "(" + d.name(d.src(g)) + "," + c.name(u) + ")"))
                                               : b.add_morphism("(" + d.name(g) + "," + c.name(u) + ")", obj[t], obj[a]);
      }
    }
    for (const auto& [key, m1] : arrow) {
      MorId g(key.first);
      std::size_t a = key.second;
      std::size_t t = k.find(d.dst(g), c.compose_unchecked(inc(g), k.objects[a].second));
      for (MorId h : d.out(d.dst(g))) {
        // op: (g, u)^op ∘ (h, I g ∘ u)^op = (h ∘ g, u)^op
        b.set_composite(arrow.at({g.value, a}), arrow.at({h.value, t}),
                        arrow.at({d.compose_unchecked(h, g).value, a}));
      }
      (void)m1;
    }
    auto shape = std::make_shared<const FinCat>(std::move(b).build());
    std::vector<FinSet> sets;
    for (const auto& [x, u] : k.objects) sets.push_back(psi.at(x));
    std::vector<Mapping> maps(shape->num_morphisms());
    for (const auto& [key, m] : arrow) maps[m.index()] = psi.action(MorId(key.first));
    k.colim = colimit(SetDiagram(shape, std::move(sets), std::move(maps)));
  }
  std::vector<FinSet> values;
  for (const auto& k : commas) values.push_back(k.colim.apex);
  std::vector<Mapping> actions;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId h(i);  // h : W' → W, value(W) → value(W')
    const Comma& from = commas[c.dst(h).index()];
    const Comma& to = commas[c.src(h).index()];
    Mapping m(from.colim.apex.size(), 0);
    for (std::size_t a = 0; a < from.objects.size(); ++a) {
      auto [x, u] = from.objects[a];
      std::size_t t = to.find(x, c.compose_unchecked(u, h));
      for (std::size_t e = 0; e < psi.at(x).size(); ++e) m[from.colim.legs[a][e]] = to.colim.legs[t][e];
    }
    actions.push_back(std::move(m));
  }
  return Presheaf(inc.target, std::move(values), std::move(actions));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Checks φ(g∘f) = φ(f)∘φ(g) once all three actions are assigned; constraints
// are filed under the largest morphism index they mention.
struct CompositionConstraints {
  struct Entry {
    MorId f, g, gf;
  };
  std::vector<std::vector<Entry>> at;

  CompositionConstraints(const FinCat& c, const std::vector<MorId>& order) {
    std::vector<std::size_t> pos(c.num_morphisms(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k].index()] = k;
    at.resize(order.size());
    for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
      MorId f(i);
      if (c.is_identity(f)) continue;
      for (MorId g : c.out(c.dst(f))) {
        if (c.is_identity(g)) continue;
        MorId gf = c.compose_unchecked(g, f);
        std::size_t last = std::max(pos[f.index()], pos[g.index()]);
        if (!c.is_identity(gf)) last = std::max(last, pos[gf.index()]);
        at[last].push_back({f, g, gf});
      }
    }
  }
};

}  // namespace

std::vector<Presheaf> enumerate_presheaves(const CatRef& cref, std::size_t n, std::size_t max_results) {
  const FinCat& c = *cref;
  std::vector<MorId> order;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i)
    if (!c.is_identity(MorId(i))) order.emplace_back(i);
  CompositionConstraints cons(c, order);
  std::vector<Presheaf> found;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  std::vector<std::size_t> sizes(c.num_objects(), 0);
  std::vector<Mapping> act(c.num_morphisms());

  auto emit = [&]() {
    std::vector<FinSet> sets;
    for (std::size_t s : sizes) sets.push_back(FinSet::numbered(s));
    Presheaf p(cref, std::move(sets), act);
    auto& bucket = buckets[fingerprint(p)];
    for (std::size_t idx : bucket)
      if (find_iso(found[idx], p)) return;
    if (found.size() >= max_results)
      throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(max_results) + " presheaves");
    bucket.push_back(found.size());
    found.push_back(std::move(p));
  };

  auto ok_at = [&](std::size_t k) {
    for (const auto& e : cons.at[k]) {
      const Mapping& af = act[e.f.index()];
      const Mapping& ag = act[e.g.index()];
      const Mapping& agf = act[e.gf.index()];
      for (std::size_t z = 0; z < agf.size(); ++z)
        if (agf[z] != af[ag[z]]) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      emit();
      return;
    }
    MorId f = order[k];
    std::size_t dom = sizes[c.dst(f).index()], cod = sizes[c.src(f).index()];
    for_each_function(dom, cod, [&](const Mapping& m) {
      act[f.index()] = m;
      if (ok_at(k)) self(self, k + 1);
      return true;
    });
  };

  // size vectors in lexicographic order
  std::function<void(std::size_t)> sizes_rec = [&](std::size_t x) {
    if (x == c.num_objects()) {
      for (std::size_t y = 0; y < c.num_objects(); ++y) {
        Mapping id(sizes[y]);
        std::iota(id.begin(), id.end(), std::size_t{0});
        act[c.identity(ObjId(y)).index()] = id;
      }
      search(search, 0);
      return;
    }
    for (std::size_t s = 0; s <= n; ++s) {
      sizes[x] = s;
      sizes_rec(x + 1);
    }
  };
  sizes_rec(0);
  return found;
}

// ---------------------------------------------------------------------------
// Saturation oracle

std::vector<Presheaf> SaturationResult::within_bound() const {
  std::vector<Presheaf> out;
  for (const auto& p : members)
    if (std::all_of(p.sets().begin(), p.sets().end(), [&](const FinSet& s) { return s.size() <= bound; }))
      out.push_back(p);
  return out;
}

std::vector<CatRef> sifted_shape_catalog(std::size_t max_objects) {
  std::vector<FinCat> all{terminal_category(), arrow_category(), idempotent_monoid_category(),
                          reflexive_pair_category()};
  std::vector<CatRef> out;
  for (auto& s : all)
    if (s.num_objects() <= max_objects && is_sifted(s)) out.push_back(std::make_shared<const FinCat>(std::move(s)));
  return out;
}

SaturationResult sind_closure_bruteforce(const CatRef& c, std::size_t n, std::size_t shape_bound,
                                         const SaturationBudget& budget) {
  SaturationResult res;
  res.bound = n;
  std::size_t work = budget.working_bound;
  if (work == 0) {
    work = n;
    for (std::size_t x = 0; x < c->num_objects(); ++x)
      for (std::size_t w = 0; w < c->num_objects(); ++w) work = std::max(work, c->hom(ObjId(w), ObjId(x)).size());
  }
  auto fits = [&](const Presheaf& p) {
    for (const auto& s : p.sets())
      if (s.size() > work) return false;
    return true;
  };
  auto admit = [&](Presheaf p, bool seed) {
    if ((!seed && !fits(p)) || find_isomorphic(res.members, p)) return false;
    if (res.members.size() >= budget.max_members)
      throw Error(ErrorKind::BudgetExceeded, "saturation exceeds " + std::to_string(budget.max_members) + " members");
    res.members.push_back(std::move(p));
    return true;
  };
  for (std::size_t x = 0; x < c->num_objects(); ++x) admit(yoneda(c, ObjId(x)), true);

  auto shapes = sifted_shape_catalog(shape_bound);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<NatTrans>> nat_cache;
  auto nats = [&](std::size_t a, std::size_t b) -> const std::vector<NatTrans>& {
    auto key = std::make_pair(a, b);
    auto it = nat_cache.find(key);
    if (it != nat_cache.end()) return it->second;
    std::vector<NatTrans> all;
    for_each_nat(res.members[a], res.members[b], [&](const NatTrans& t) {
      all.push_back(t);
      return true;
    });
    return nat_cache.emplace(key, std::move(all)).first->second;
  };

  for (bool grew = true; grew;) {
    grew = false;
    ++res.rounds;
    const std::size_t frozen = res.members.size();
    std::vector<Presheaf> fresh;
    for (const auto& shape : shapes) {
      const FinCat& j = *shape;
      // Greedy generating set in index order; every other morphism is
      // recorded with a decomposition into earlier-determined ones.
      std::vector<MorId> order;
      std::vector<std::optional<std::pair<MorId, MorId>>> split(j.num_morphisms());
      std::vector<MorId> derived;
      std::vector<char> known(j.num_morphisms(), 0);
      std::vector<MorId> known_list;
      for (std::size_t y = 0; y < j.num_objects(); ++y) known[j.identity(ObjId(y)).index()] = 1;
      auto saturate = [&]() {
        for (bool more = true; more;) {
          more = false;
          for (std::size_t a = 0; a < known_list.size(); ++a)
            for (std::size_t b = 0; b < known_list.size(); ++b) {
              MorId f = known_list[a], g = known_list[b];
              if (!j.composable(g, f)) continue;
              MorId h = j.compose_unchecked(g, f);
              if (known[h.index()]) continue;
              known[h.index()] = 1;
              split[h.index()] = std::make_pair(g, f);
              derived.push_back(h);
              known_list.push_back(h);
              more = true;
            }
        }
      };
      for (std::size_t i = 0; i < j.num_morphisms(); ++i) {
        if (known[i]) continue;
        known[i] = 1;
        order.emplace_back(i);
        known_list.emplace_back(i);
        saturate();
      }
      std::vector<std::size_t> assign(j.num_objects(), 0);
      std::vector<NatTrans> maps(j.num_morphisms());

      auto finish = [&]() {
        for (MorId h : derived) {
          auto [g, f] = *split[h.index()];
          maps[h.index()] = compose_nat(maps[g.index()], maps[f.index()]);
        }
        // full functoriality
        for (std::size_t i = 0; i < j.num_morphisms(); ++i)
          for (MorId g : j.out(j.dst(MorId(i))))
            if (maps[j.compose_unchecked(g, MorId(i)).index()] != compose_nat(maps[g.index()], maps[i])) return;
        if (++res.diagrams > budget.max_diagrams)
          throw Error(ErrorKind::BudgetExceeded, "saturation exceeds its diagram budget");
        PresheafDiagram d{shape, {}, maps};
        for (std::size_t k : assign) d.objects.push_back(res.members[k]);
        Presheaf v = colimit(d).value;
        if (fits(v) && !find_isomorphic(res.members, v) && !find_isomorphic(fresh, v)) fresh.push_back(std::move(v));
      };

      auto morphs = [&](auto&& self, std::size_t k) -> void {
        if (k == order.size()) {
          finish();
          return;
        }
        MorId h = order[k];
        for (const auto& t : nats(assign[j.src(h).index()], assign[j.dst(h).index()])) {
          maps[h.index()] = t;
          self(self, k + 1);
        }
      };
      auto objs = [&](auto&& self, std::size_t x) -> void {
        if (x == j.num_objects()) {
          for (std::size_t y = 0; y < j.num_objects(); ++y)
            maps[j.identity(ObjId(y)).index()] = identity_nat(res.members[assign[y]]);
          morphs(morphs, 0);
          return;
        }
        for (std::size_t m = 0; m < frozen; ++m) {
          assign[x] = m;
          self(self, x + 1);
        }
      };
      objs(objs, 0);
    }
    for (auto& p : fresh)
      if (admit(std::move(p), false)) grew = true;
  }
  return res;
}

}  // namespace siftcat
