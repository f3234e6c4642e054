#include "siftcat/exactness.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <sstream>

#include "siftcat/catalog.hpp"
#include "siftcat/error.hpp"
#include "siftcat/gen.hpp"

namespace siftcat {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

// Comparison map given as source element → target element (kNone when
// unassigned); records conflicting assignments.
struct MapBuilder {
  Mapping map;
  bool consistent = true;

  explicit MapBuilder(std::size_t n) : map(n, kNone) {}
  void set(std::size_t from, std::size_t to) {
    if (map[from] == kNone) map[from] = to;
    else if (map[from] != to) consistent = false;
  }
};

ComparisonReport finish(const MapBuilder& b, std::size_t target_size) {
  ComparisonReport r;
  r.source_size = b.map.size();
  r.target_size = target_size;
  r.well_defined = b.consistent;
  std::vector<char> hit(target_size, 0);
  for (std::size_t v : b.map) {
    if (v == kNone) r.well_defined = false;
    else hit[v]++;
  }
  r.bijective = r.well_defined && b.map.size() == target_size;
  for (char h : hit)
    if (h != 1) r.bijective = false;
  return r;
}

// Looks up the limit element with the given component tuple.
std::map<std::vector<std::size_t>, std::size_t> index_cone(const Cone& c) {
  std::map<std::vector<std::size_t>, std::size_t> out;
  for (std::size_t k = 0; k < c.apex.size(); ++k) {
    std::vector<std::size_t> t;
    for (const auto& leg : c.legs) t.push_back(leg[k]);
    out.emplace(std::move(t), k);
  }
  return out;
}

std::string show_category(const FinCat& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.num_objects(); ++i) os << (i ? "," : "") << c.name(ObjId(i));
  os << "; " << c.num_morphisms() << " morphisms}";
  return os.str();
}

std::string show_mapping(const Mapping& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << "]";
  return os.str();
}

Mapping random_surjection(Rng& rng, std::size_t n, std::size_t k) {
  // Hit every target once, then fill at random, then shuffle the domain.
  Mapping m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i < k ? i : uniform(rng, 0, k - 1);
  std::shuffle(m.begin(), m.end(), rng);
  return m;
}

// Finite filtered shapes: chains, lattices, the idempotent monoid and
// generated concrete categories that pass the filteredness check.
CatRef random_filtered_shape(Rng& rng, std::size_t max_objects) {
  while (true) {
    switch (uniform(rng, 0, 4)) {
      case 0:
        return share(chain_category(uniform(rng, 1, std::max<std::size_t>(1, max_objects))));
      case 1:
        if (max_objects >= 3) return share(random_lattice(rng, uniform(rng, 0, max_objects - 2)));
        break;
      case 2:
        return share(idempotent_monoid_category());
      case 3:
        return share(terminal_category());
      default: {
        ConcreteParams p;
        p.max_objects = std::min<std::size_t>(max_objects, 3);
        p.max_morphisms = 12;
        auto cc = random_concrete_category(rng, p);
        if (cc && is_filtered(cc->category).filtered) return share(std::move(cc->category));
      }
    }
  }
}

// Equivalence relations are kernel pairs of their quotients; surjections
// are stable under pullback.
ExactnessCheck check_effective_and_stable(Rng& rng, const ExactnessParams& p) {
  ExactnessCheck out{"effective-equivalences: kernel pairs of quotients, pullback-stable surjections", 0, {}};
  const CatRef cospan = share(cospan_shape());
  const std::size_t bound = std::max<std::size_t>(p.max_set_size, 1) + 3;
  for (std::size_t s = 0; s < p.samples; ++s) {
    ++out.samples;
    // Equivalence relation from a random labelling.
    const std::size_t n = uniform(rng, 0, bound);
    Mapping label = random_mapping(rng, n, std::max<std::size_t>(n, 1));
    FinSet x = FinSet::numbered(n);
    Relation eq(x, x);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (label[a] == label[b]) eq.insert(a, b);
    Quotient q = quotient_by(x, eq);
    if (!(kernel_pair(q.map) == eq))
      out.counterexamples.push_back("kernel pair differs from relation with labels " + show_mapping(label));

    // Pullback of a surjection e : A ↠ B along f : C → B.
    const std::size_t nb = uniform(rng, 1, bound);
    const std::size_t na = uniform(rng, nb, bound + 1);
    const std::size_t nc = uniform(rng, 0, bound);
    Mapping e = random_surjection(rng, na, nb);
    Mapping f = random_mapping(rng, nc, nb);
    const FinCat& cs = *cospan;
    std::vector<FinSet> sets(3);
    std::vector<Mapping> maps(cs.num_morphisms());
    sets[cs.object("a").index()] = FinSet::numbered(nc);
    sets[cs.object("b").index()] = FinSet::numbered(na);
    sets[cs.object("c").index()] = FinSet::numbered(nb);
    for (std::size_t m = 0; m < cs.num_morphisms(); ++m) {
      MorId id(m);
      if (cs.is_identity(id)) {
        Mapping ident(sets[cs.src(id).index()].size());
        for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
        maps[m] = std::move(ident);
      } else {
        maps[m] = cs.src(id) == cs.object("a") ? f : e;
      }
    }
    Cone pb = limit(SetDiagram(cospan, std::move(sets), std::move(maps)));
    FinFunction proj = FinFunction::make(pb.apex, FinSet::numbered(nc), pb.legs[cs.object("a").index()]);
    if (!proj.is_surjective())
      out.counterexamples.push_back("pullback of surjection " + show_mapping(e) + " along " + show_mapping(f) +
                                    " is not surjective");
  }
  return out;
}

ExactnessCheck check_filtered_limits(Rng& rng, const ExactnessParams& p) {
  ExactnessCheck out{"filtered-limits: filtered colimits commute with finite limits", 0, {}};
  const std::vector<std::pair<std::string, CatRef>> limit_shapes = {
      {"pullback", share(cospan_shape())},
      {"product", share(discrete_category({"a", "b"}))},
      {"equalizer", share(parallel_pair_shape())}};
  for (std::size_t s = 0; s < p.samples; ++s) {
    ++out.samples;
    CatRef j = random_filtered_shape(rng, 4);
    const auto& [lname, l] = limit_shapes[s % limit_shapes.size()];
    ProductShape jl = product_shape(j, l);
    SetDiagram d = random_diagram(rng, jl.shape, std::max<std::size_t>(p.max_set_size, 1), 2);
    ComparisonReport r = colim_lim_comparison(jl, d);
    if (!r.ok())
      out.counterexamples.push_back(lname + " over J=" + show_category(*j) + ": " + std::to_string(r.source_size) +
                                    " -> " + std::to_string(r.target_size));
  }
  return out;
}

// Finite products of surjections are surjective, hence regular epis:
// each is the coequalizer of its kernel pair.
ExactnessCheck check_product_surjections(Rng& rng, const ExactnessParams& p) {
  ExactnessCheck out{"product-surjections: finite products of surjections are regular epis", 0, {}};
  const std::size_t bound = std::max<std::size_t>(p.max_set_size, 1) + 1;
  for (std::size_t s = 0; s < p.samples; ++s) {
    ++out.samples;
    const std::size_t k = uniform(rng, 1, 3);
    std::vector<Mapping> maps;
    std::vector<std::size_t> dom, cod;
    for (std::size_t i = 0; i < k; ++i) {
      cod.push_back(uniform(rng, 0, bound));
      dom.push_back(cod.back() == 0 ? 0 : uniform(rng, cod.back(), bound + 1));
      maps.push_back(cod.back() == 0 ? Mapping{} : random_surjection(rng, dom.back(), cod.back()));
    }
    std::size_t nd = 1, nc = 1;
    for (std::size_t i = 0; i < k; ++i) nd *= dom[i], nc *= cod[i];
    Mapping prod(nd);
    for (std::size_t x = 0; x < nd; ++x) {
      std::size_t rest = x, y = 0, scale = 1;
      for (std::size_t i = k; i-- > 0;) {
        y += maps[i][rest % dom[i]] * scale;
        rest /= dom[i];
        scale *= cod[i];
      }
      prod[x] = y;
    }
    FinFunction f = FinFunction::make(FinSet::numbered(nd), FinSet::numbered(nc), prod);
    std::string tag;
    for (const auto& m : maps) tag += show_mapping(m);
    if (!f.is_surjective()) {
      out.counterexamples.push_back("product of " + tag + " is not surjective");
      continue;
    }
    if (quotient_by(f.domain, kernel_pair(f)).quotient.size() != nc)
      out.counterexamples.push_back("product of " + tag + " is not the coequalizer of its kernel pair");
  }
  return out;
}

ExactnessCheck check_product_colimits(Rng& rng, const ExactnessParams& p) {
  ExactnessCheck out{"product-colimits: finite products distribute over filtered colimits", 0, {}};
  for (std::size_t s = 0; s < p.samples; ++s) {
    ++out.samples;
    const std::size_t k = uniform(rng, 1, 3);
    std::vector<SetDiagram> family;
    std::string tag;
    for (std::size_t i = 0; i < k; ++i) {
      CatRef j = random_filtered_shape(rng, k == 3 ? 2 : 3);
      family.push_back(random_diagram(rng, j, std::max<std::size_t>(p.max_set_size, 1), 2));
      tag += show_category(*j);
    }
    ComparisonReport r = product_colimit_comparison(family);
    if (!r.ok())
      out.counterexamples.push_back("family " + tag + ": " + std::to_string(r.source_size) + " -> " +
                                    std::to_string(r.target_size));
  }
  return out;
}

}  // namespace

ProductShape product_shape(const CatRef& a, const CatRef& b) {
  ProductShape ps;
  ps.left = a;
  ps.right = b;
  ps.shape = share(product(*a, *b));
  const FinCat& p = *ps.shape;
  for (std::size_t i = 0; i < a->num_objects(); ++i)
    for (std::size_t j = 0; j < b->num_objects(); ++j) ps.objects.emplace_back(ObjId(i), ObjId(j));
  ps.components.resize(p.num_morphisms());
  ps.table.resize(a->num_morphisms() * b->num_morphisms());
  for (std::size_t f = 0; f < a->num_morphisms(); ++f)
    for (std::size_t g = 0; g < b->num_morphisms(); ++g) {
      MorId mf(f), mg(g), m;
      if (a->is_identity(mf) && b->is_identity(mg))
        m = p.identity(ps.object(a->src(mf), b->src(mg)));
      else
        m = p.morphism("(" + a->name(mf) + "," + b->name(mg) + ")");
      ps.table[f * b->num_morphisms() + g] = m;
      ps.components[m.index()] = {mf, mg};
    }
  return ps;
}

SetDiagram pull_back_left(const ProductShape& ps, const SetDiagram& d) {
  std::vector<FinSet> sets;
  std::vector<Mapping> maps;
  for (const auto& [x, y] : ps.objects) sets.push_back(d.at(x));
  for (const auto& [f, g] : ps.components) maps.push_back(d.map(f));
  return SetDiagram(ps.shape, std::move(sets), std::move(maps));
}

SetDiagram pull_back_right(const ProductShape& ps, const SetDiagram& d) {
  std::vector<FinSet> sets;
  std::vector<Mapping> maps;
  for (const auto& [x, y] : ps.objects) sets.push_back(d.at(y));
  for (const auto& [f, g] : ps.components) maps.push_back(d.map(g));
  return SetDiagram(ps.shape, std::move(sets), std::move(maps));
}

ComparisonReport colim_lim_comparison(const ProductShape& jl, const SetDiagram& d) {
  const FinCat& j = *jl.left;
  const FinCat& l = *jl.right;
  const std::size_t nj = j.num_objects(), nl = l.num_objects();

  // lim over L at each j, then the J-diagram of those limits.
  std::vector<Cone> lims;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> lim_index;
  for (std::size_t x = 0; x < nj; ++x) {
    std::vector<FinSet> sets;
    std::vector<Mapping> maps;
    for (std::size_t y = 0; y < nl; ++y) sets.push_back(d.at(jl.object(ObjId(x), ObjId(y))));
    for (std::size_t g = 0; g < l.num_morphisms(); ++g)
      maps.push_back(d.map(jl.morphism(j.identity(ObjId(x)), MorId(g))));
    lims.push_back(limit(SetDiagram(jl.right, std::move(sets), std::move(maps))));
    lims.back().apex = FinSet::numbered(lims.back().apex.size());
    lim_index.push_back(index_cone(lims.back()));
  }
  std::vector<FinSet> lim_sets;
  std::vector<Mapping> lim_maps;
  for (const auto& c : lims) lim_sets.push_back(c.apex);
  for (std::size_t f = 0; f < j.num_morphisms(); ++f) {
    MorId mf(f);
    const std::size_t s = j.src(mf).index(), t = j.dst(mf).index();
    Mapping m(lims[s].apex.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
      std::vector<std::size_t> tuple;
      for (std::size_t y = 0; y < nl; ++y)
        tuple.push_back(d.map(jl.morphism(mf, l.identity(ObjId(y))))[lims[s].legs[y][k]]);
      auto it = lim_index[t].find(tuple);
      if (it == lim_index[t].end()) throw Error(ErrorKind::CheckFailed, "limit transition leaves the cone");
      m[k] = it->second;
    }
    lim_maps.push_back(std::move(m));
  }
  Cocone source = colimit(SetDiagram(jl.left, std::move(lim_sets), std::move(lim_maps)));

  // colim over J at each l, then the L-diagram of those colimits.
  std::vector<Cocone> cols;
  for (std::size_t y = 0; y < nl; ++y) {
    std::vector<FinSet> sets;
    std::vector<Mapping> maps;
    for (std::size_t x = 0; x < nj; ++x) sets.push_back(d.at(jl.object(ObjId(x), ObjId(y))));
    for (std::size_t f = 0; f < j.num_morphisms(); ++f)
      maps.push_back(d.map(jl.morphism(MorId(f), l.identity(ObjId(y)))));
    cols.push_back(colimit(SetDiagram(jl.left, std::move(sets), std::move(maps))));
    cols.back().apex = FinSet::numbered(cols.back().apex.size());
  }
  std::vector<FinSet> col_sets;
  std::vector<Mapping> col_maps;
  for (const auto& c : cols) col_sets.push_back(c.apex);
  bool induced = true;
  for (std::size_t g = 0; g < l.num_morphisms(); ++g) {
    MorId mg(g);
    const std::size_t s = l.src(mg).index(), t = l.dst(mg).index();
    MapBuilder b(cols[s].apex.size());
    for (std::size_t x = 0; x < nj; ++x) {
      const Mapping& dm = d.map(jl.morphism(j.identity(ObjId(x)), mg));
      for (std::size_t e = 0; e < dm.size(); ++e) b.set(cols[s].legs[x][e], cols[t].legs[x][dm[e]]);
    }
    for (auto& v : b.map)
      if (v == kNone) v = 0;
    induced = induced && b.consistent;
    col_maps.push_back(std::move(b.map));
  }
  if (!induced) return ComparisonReport{source.apex.size(), 0, false, false};
  Cone target = limit(SetDiagram(jl.right, std::move(col_sets), std::move(col_maps)));
  auto target_index = index_cone(target);

  MapBuilder cmp(source.apex.size());
  for (std::size_t x = 0; x < nj; ++x)
    for (std::size_t k = 0; k < lims[x].apex.size(); ++k) {
      std::vector<std::size_t> tuple;
      for (std::size_t y = 0; y < nl; ++y) tuple.push_back(cols[y].legs[x][lims[x].legs[y][k]]);
      auto it = target_index.find(tuple);
      if (it == target_index.end()) cmp.consistent = false;
      else cmp.set(source.legs[x][k], it->second);
    }
  return finish(cmp, target.apex.size());
}

ComparisonReport product_colimit_comparison(const std::vector<SetDiagram>& family) {
  if (family.empty()) throw Error(ErrorKind::ValidationError, "empty family");
  const std::size_t k = family.size();
  // Fold the product shape, tracking each object's components.
  CatRef shape = family[0].shape_ref();
  SetDiagram acc = family[0];
  std::vector<std::vector<ObjId>> comps;
  for (std::size_t x = 0; x < shape->num_objects(); ++x) comps.push_back({ObjId(x)});
  for (std::size_t i = 1; i < k; ++i) {
    ProductShape ps = product_shape(shape, family[i].shape_ref());
    acc = pointwise_product(pull_back_left(ps, acc), pull_back_right(ps, family[i]));
    std::vector<std::vector<ObjId>> next;
    for (const auto& [a, b] : ps.objects) {
      next.push_back(comps[a.index()]);
      next.back().push_back(b);
    }
    comps = std::move(next);
    shape = ps.shape;
  }
  Cocone source = colimit(acc);
  std::vector<Cocone> cols;
  std::size_t target_size = 1;
  for (const auto& f : family) {
    cols.push_back(colimit(f));
    target_size *= cols.back().apex.size();
  }
  MapBuilder cmp(source.apex.size());
  for (std::size_t p = 0; p < shape->num_objects(); ++p) {
    for (std::size_t e = 0; e < acc.at(ObjId(p)).size(); ++e) {
      // Decode the mixed-radix element, last factor least significant.
      std::size_t rest = e, target = 0, scale = 1;
      for (std::size_t i = k; i-- > 0;) {
        const std::size_t n = family[i].at(comps[p][i]).size();
        target += cols[i].legs[comps[p][i].index()][rest % n] * scale;
        rest /= n;
        scale *= cols[i].apex.size();
      }
      cmp.set(source.legs[p][e], target);
    }
  }
  return finish(cmp, target_size);
}

FinCat cospan_shape() { return poset_category({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}); }

FinCat parallel_pair_shape() {
  CategoryBuilder b;
  ObjId a = b.add_object("a");
  ObjId c = b.add_object("b");
  b.add_morphism("u", a, c);
  b.add_morphism("v", a, c);
  return std::move(b).build();
}

bool ExactnessReport::ok() const {
  if (checks.size() != 4) return false;
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

ExactnessReport exactness_suite(const ExactnessParams& params) {
  using Check = ExactnessCheck (*)(Rng&, const ExactnessParams&);
  const Check checks[] = {check_effective_and_stable, check_filtered_limits, check_product_surjections,
                          check_product_colimits};
  std::vector<std::future<ExactnessCheck>> running;
  for (std::size_t i = 0; i < 4; ++i) {
    running.push_back(std::async(std::launch::async, [&params, i, c = checks[i]] {
      Rng rng(params.seed * 4 + i);
      return c(rng, params);
    }));
  }
  ExactnessReport report;
  report.seed = params.seed;
  for (auto& r : running) report.checks.push_back(r.get());
  return report;
}

std::string describe(const ExactnessReport& report) {
  std::ostringstream os;
  os << "exactness seed=" << report.seed << "\n";
  for (const auto& c : report.checks) {
    os << (c.ok() ? "PASS " : "FAIL ") << c.name << ": " << c.samples << " samples, "
       << c.counterexamples.size() << " counterexamples\n";
    for (const auto& ce : c.counterexamples) os << "  " << ce << "\n";
  }
  return os.str();
}

}  // namespace siftcat
