#include "siftcat/rec.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "siftcat/union_find.hpp"

namespace siftcat {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

RecObject make_rec_object(const FinCat& c, const GraphOnObject& g) {
  auto r = is_reflexive(c, g);
  if (!r) throw Error(ErrorKind::SectionMissing, "graph " + describe(c, g) + " is not reflexive");
  return {g, *r};
}

RecObject identity_rec_object(const FinCat& c, ObjId x) { return {identity_graph(c, x), c.identity(x)}; }

HomClasses::HomClasses(const FinCat& c, ObjId w, const GraphOnObject& g)
    : hom_(c.hom(w, g.vertex)), position_(c.num_morphisms(), npos) {
  for (std::size_t i = 0; i < hom_.size(); ++i) position_[hom_[i].index()] = i;
  UnionFind uf(hom_.size());
  for (MorId k : c.hom(w, g.edge))
    uf.unite(position_[c.compose_unchecked(g.p, k).index()], position_[c.compose_unchecked(g.q, k).index()]);
  // hom_ is in identifier order, so the first member met is the least.
  std::vector<std::size_t> least(hom_.size(), npos);
  canonical_.resize(hom_.size());
  for (std::size_t i = 0; i < hom_.size(); ++i) {
    std::size_t root = uf.find(i);
    if (least[root] == npos) least[root] = i;
    canonical_[i] = hom_[least[root]];
  }
}

MorId HomClasses::canonical(MorId f) const {
  std::size_t i = f.index() < position_.size() ? position_[f.index()] : npos;
  if (i == npos) throw Error(ErrorKind::NotComposable, "morphism outside the hom-set");
  return canonical_[i];
}

std::vector<MorId> HomClasses::representatives() const {
  std::vector<MorId> out;
  for (std::size_t i = 0; i < hom_.size(); ++i)
    if (canonical_[i] == hom_[i]) out.push_back(hom_[i]);
  return out;
}

bool descends(const FinCat& c, const RecObject& u, const RecObject& v, MorId f) {
  if (c.src(f) != u.graph.vertex || c.dst(f) != v.graph.vertex) return false;
  HomClasses classes(c, u.graph.edge, v.graph);
  return classes.same(c.compose_unchecked(f, u.graph.p), c.compose_unchecked(f, u.graph.q));
}

RecHom make_rec_hom(const FinCat& c, const RecObject& u, const RecObject& v, MorId f) {
  if (!descends(c, u, v, f))
    throw Error(ErrorKind::CheckFailed, c.name(f) + " does not descend to " + describe(c, u.graph) + " -> " +
                                            describe(c, v.graph));
  return {u, v, HomClasses(c, u.graph.vertex, v.graph).canonical(f)};
}

std::vector<RecHom> rec_hom(const FinCat& c, const RecObject& u, const RecObject& v) {
  std::vector<RecHom> out;
  HomClasses vertex(c, u.graph.vertex, v.graph);
  HomClasses edge(c, u.graph.edge, v.graph);
  for (MorId f : vertex.representatives())
    if (edge.same(c.compose_unchecked(f, u.graph.p), c.compose_unchecked(f, u.graph.q))) out.push_back({u, v, f});
  return out;
}

RecHom rec_id(const FinCat& c, const RecObject& u) {
  return {u, u, HomClasses(c, u.graph.vertex, u.graph).canonical(c.identity(u.graph.vertex))};
}

RecHom rec_compose(const FinCat& c, const RecHom& g, const RecHom& f) {
  if (!(f.target == g.source))
    throw Error(ErrorKind::NotComposable, "target " + describe(c, f.target.graph) + " differs from source " +
                                              describe(c, g.source.graph));
  MorId gf = c.compose(g.representative, f.representative);
  return {f.source, g.target, HomClasses(c, f.source.graph.vertex, g.target.graph).canonical(gf)};
}

namespace {

// Pointwise quotient data of a graph's coequalizer.
struct PointwiseClasses {
  std::vector<HomClasses> classes;             // per object W
  std::vector<std::vector<MorId>> elements;    // per W, canonical members

  PointwiseClasses(const FinCat& c, const GraphOnObject& g) {
    for (std::size_t w = 0; w < c.num_objects(); ++w) {
      classes.emplace_back(c, ObjId(w), g);
      elements.push_back(classes.back().representatives());
    }
  }

  std::size_t index(ObjId w, MorId f) const {
    MorId rep = classes[w.index()].canonical(f);
    const auto& e = elements[w.index()];
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] == rep) return i;
    throw Error(ErrorKind::CheckFailed, "class without representative");
  }
};

Presheaf build_presheaf(const CatRef& cref, const PointwiseClasses& pc) {
  const FinCat& c = *cref;
  std::vector<FinSet> sets;
  for (const auto& e : pc.elements) {
    std::vector<std::string> names;
    for (MorId f : e) names.push_back(c.name(f));
    sets.emplace_back(std::move(names));
  }
  std::vector<Mapping> actions(c.num_morphisms());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    ObjId from = c.dst(f), to = c.src(f);
    for (MorId a : pc.elements[from.index()]) actions[i].push_back(pc.index(to, c.compose_unchecked(a, f)));
  }
  return Presheaf(cref, std::move(sets), std::move(actions));
}

}  // namespace

Presheaf as_presheaf(const CatRef& c, const RecObject& u) { return build_presheaf(c, PointwiseClasses(*c, u.graph)); }

NatTrans as_presheaf_map(const CatRef& cref, const RecHom& f) {
  const FinCat& c = *cref;
  PointwiseClasses src(c, f.source.graph), dst(c, f.target.graph);
  NatTrans out(c.num_objects());
  for (std::size_t w = 0; w < c.num_objects(); ++w)
    for (MorId a : src.elements[w]) out[w].push_back(dst.index(ObjId(w), c.compose_unchecked(f.representative, a)));
  return out;
}

std::optional<Homotopy> homotopy_search(const FinCat& c, MorId f, MorId g, const RecObject& v) {
  const GraphOnObject& h = v.graph;
  if (c.src(f) != c.src(g) || c.dst(f) != h.vertex || c.dst(g) != h.vertex)
    throw Error(ErrorKind::NotParallel, c.name(f) + " and " + c.name(g) + " are not parallel into the vertex");
  const ObjId x = c.src(f);
  struct Back {
    MorId prev;
    HomotopyStep step;
  };
  std::vector<std::optional<Back>> seen(c.num_morphisms());
  std::vector<bool> visited(c.num_morphisms(), false);
  std::deque<MorId> queue{f};
  visited[f.index()] = true;
  while (!queue.empty() && !visited[g.index()]) {
    MorId cur = queue.front();
    queue.pop_front();
    for (MorId k : c.hom(x, h.edge)) {
      MorId sk = c.compose_unchecked(h.p, k), tk = c.compose_unchecked(h.q, k);
      for (bool forward : {true, false}) {
        MorId from = forward ? sk : tk, to = forward ? tk : sk;
        if (from != cur || visited[to.index()]) continue;
        visited[to.index()] = true;
        seen[to.index()] = Back{cur, {k, forward}};
        queue.push_back(to);
      }
    }
  }
  if (!visited[g.index()]) return std::nullopt;
  Homotopy out{f, g, {}};
  for (MorId cur = g; cur != f; cur = seen[cur.index()]->prev) out.steps.push_back(seen[cur.index()]->step);
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

bool verify_homotopy(const FinCat& c, const Homotopy& h, const RecObject& v) {
  MorId cur = h.from;
  for (const auto& step : h.steps) {
    if (c.dst(step.k) != v.graph.edge || c.src(step.k) != c.src(cur)) return false;
    MorId sk = c.compose_unchecked(v.graph.p, step.k), tk = c.compose_unchecked(v.graph.q, step.k);
    if ((step.forward ? sk : tk) != cur) return false;
    cur = step.forward ? tk : sk;
  }
  return cur == h.to;
}

namespace {

// Graph factor with the morphism Y → edge carried by the section path.
struct Factor {
  GraphOnObject graph;
  MorId component;
};

void append_homotopy(std::vector<Factor>& out, const Homotopy& h, const GraphOnObject& g) {
  for (const auto& step : h.steps) out.push_back({step.forward ? g : opposite_graph(g), step.k});
}

}  // namespace

ReflexiveCoeqClosure rec_reflexive_coeq_closure(PullbackTable& pb, const RecHom& f, const RecHom& g,
                                                const RecHom& h) {
  const FinCat& c = pb.category();
  const CatRef& cref = pb.category_ref();
  if (!(f.source == g.source) || !(f.target == g.target) || !(h.source == f.target) || !(h.target == f.source))
    throw Error(ErrorKind::NotComposable, "f, g, h do not form a reflexive pair");
  const RecObject& v = f.target;
  if (!(rec_compose(c, f, h) == rec_id(c, v)) || !(rec_compose(c, g, h) == rec_id(c, v)))
    throw Error(ErrorKind::SectionMissing, "h is not a common section of f and g");
  const ObjId y = v.graph.vertex;
  const MorId one = c.identity(y);
  const MorId fh = c.compose(f.representative, h.representative);
  const MorId gh = c.compose(g.representative, h.representative);

  ReflexiveCoeqClosure out;
  auto left = homotopy_search(c, one, fh, v);
  auto right = homotopy_search(c, gh, one, v);
  if (!left || !right) throw Error(ErrorKind::SectionMissing, "no homotopy to the identity");
  out.to_fh = *left;
  out.from_gh = *right;

  std::vector<Factor> factors;
  append_homotopy(factors, out.to_fh, v.graph);
  factors.push_back({make_graph(c, f.representative, g.representative), h.representative});
  append_homotopy(factors, out.from_gh, v.graph);

  GraphOnObject k = factors.front().graph;
  MorId r = factors.front().component;
  for (std::size_t i = 1; i < factors.size(); ++i) {
    auto cat = concatenate(pb, k, factors[i].graph);
    auto m = mediate(c, cat.square, r, factors[i].component);
    if (!m) throw Error(ErrorKind::CheckFailed, "section does not extend across factor " + std::to_string(i));
    k = cat.graph;
    r = *m;
  }
  if (c.compose(k.p, r) != one || c.compose(k.q, r) != one)
    throw Error(ErrorKind::CheckFailed, "pasted concatenation is not reflexive");
  out.k = k;
  out.k_section = r;

  auto lcat = concatenate(pb, k, v.graph);
  out.l = {lcat.graph, concatenation_section(c, lcat, r, v.section)};

  Presheaf pu = as_presheaf(cref, f.source);
  Presheaf pv = as_presheaf(cref, v);
  out.coequalizer = coequalizer(pu, pv, as_presheaf_map(cref, f), as_presheaf_map(cref, g));

  // Explicit comparison: the class of b : W → Y under L goes to the image of
  // its class under V.
  PointwiseClasses lc(c, out.l.graph), vc(c, v.graph);
  Presheaf pl = build_presheaf(cref, lc);
  out.iso.resize(c.num_objects());
  for (std::size_t w = 0; w < c.num_objects(); ++w) {
    const ObjId wo(w);
    const Mapping& q = out.coequalizer.map[w];
    Mapping& m = out.iso[w];
    m.assign(lc.elements[w].size(), npos);
    for (MorId b : lc.classes[w].members()) {
      std::size_t from = lc.index(wo, b), to = q[vc.index(wo, b)];
      if (m[from] != npos && m[from] != to)
        throw Error(ErrorKind::CheckFailed, "comparison not well defined at " + c.name(wo));
      m[from] = to;
    }
    std::vector<bool> hit(out.coequalizer.value.at(wo).size(), false);
    for (std::size_t e : m) {
      if (hit[e]) throw Error(ErrorKind::CheckFailed, "comparison not injective at " + c.name(wo));
      hit[e] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw Error(ErrorKind::CheckFailed, "comparison not surjective at " + c.name(wo));
  }
  if (!is_natural(pl, out.coequalizer.value, out.iso))
    throw Error(ErrorKind::CheckFailed, "comparison not natural");
  return out;
}

RecCospan rec_cospan(PullbackTable& pb, const RecObject& u, const RecObject& v) {
  const FinCat& c = pb.category();
  const ObjId x = u.graph.vertex, y = v.graph.vertex;
  Cospan base{x, c.identity(x), c.identity(y)};
  if (x != y) {
    CospanCategory k(pb.category_ref(), x, y);
    if (k.size() == 0) throw Error(ErrorKind::NotSifted, "no cospan on " + c.name(x) + ", " + c.name(y));
    base = k.cospan(0);
  }
  auto pushed = [&](const RecObject& o, MorId a) {
    return reflexivize(pb, make_graph(c, c.compose(a, o.graph.p), c.compose(a, o.graph.q)));
  };
  Reflexivization r1 = pushed(u, base.left), r2 = pushed(v, base.right);
  auto cat = concatenate(pb, r1.graph, r2.graph);
  RecObject w{cat.graph, concatenation_section(c, cat, r1.section, r2.section)};
  return {w, make_rec_hom(c, u, w, base.left), make_rec_hom(c, v, w, base.right)};
}

RecCoequalizer rec_coequalize(PullbackTable& pb, const RecHom& f, const RecHom& g) {
  const FinCat& c = pb.category();
  if (!(f.source == g.source) || !(f.target == g.target))
    throw Error(ErrorKind::NotParallel, "RecHoms are not parallel");
  const RecObject& v = f.target;
  Reflexivization x = reflexivize(pb, make_graph(c, f.representative, g.representative));
  auto cat = concatenate(pb, x.graph, v.graph);
  RecObject w{cat.graph, concatenation_section(c, cat, x.section, v.section)};
  RecHom map = make_rec_hom(c, v, w, c.identity(v.graph.vertex));
  if (!(rec_compose(c, map, f) == rec_compose(c, map, g)))
    throw Error(ErrorKind::CheckFailed, "coequalizing morphism does not coequalize");
  return {w, map};
}

RecEnumeration enumerate_rec(const CatRef& cref, std::size_t depth, const RecBudget& budget) {
  const FinCat& c = *cref;
  if (depth > 0 && budget.require_pullbacks) {
    auto report = has_pullbacks(c);
    if (!report.all_exist)
      throw Error(ErrorKind::PullbackAbsent, "no pullback of " + c.name(report.missing->first) + " and " +
                                                 c.name(report.missing->second));
  }
  RecEnumeration out;
  auto add = [&](const RecObject& o, std::size_t round) {
    Presheaf p = as_presheaf(cref, o);
    if (find_isomorphic(out.presheaves, p)) return;
    if (out.objects.size() >= budget.max_objects)
      throw Error(ErrorKind::BudgetExceeded, "Rec frontier exceeds " + std::to_string(budget.max_objects) + " objects");
    out.objects.push_back(o);
    out.presheaves.push_back(std::move(p));
    out.depth.push_back(round);
  };
  auto skippable = [](const Error& e) {
    return e.kind() == ErrorKind::PullbackAbsent || e.kind() == ErrorKind::NotSifted;
  };

  for (ObjId x : c.objects_by_name()) add(identity_rec_object(c, x), 0);
  PullbackTable pb(cref);
  for (std::size_t round = 1; round <= depth; ++round) {
    const std::size_t n = out.objects.size();
    if (round == 1)
      for (ObjId g : c.objects_by_name())
        for (ObjId x : c.objects_by_name())
          for (MorId p : c.hom(g, x))
            for (MorId q : c.hom(g, x)) {
              auto gr = GraphOnObject{g, x, p, q};
              if (auto r = is_reflexive(c, gr)) add({gr, *r}, round);
            }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const RecObject a = out.objects[i], b = out.objects[j];
        if (a.graph.vertex != b.graph.vertex) continue;
        try {
          auto cat = concatenate(pb, a.graph, b.graph);
          add({cat.graph, concatenation_section(c, cat, a.section, b.section)}, round);
        } catch (const Error& e) {
          if (!skippable(e)) throw;
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      const RecObject a = out.objects[i];
      for (MorId m : c.out(a.graph.vertex)) {
        if (c.is_identity(m)) continue;
        try {
          auto r = reflexivize(pb, make_graph(c, c.compose(m, a.graph.p), c.compose(m, a.graph.q)));
          add({r.graph, r.section}, round);
        } catch (const Error& e) {
          if (!skippable(e)) throw;
        }
      }
    }
  }
  return out;
}

}  // namespace siftcat
