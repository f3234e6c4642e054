#include "siftcat/decompose.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "siftcat/io.hpp"
#include "siftcat/union_find.hpp"

namespace siftcat {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

std::string stage_name(std::size_t i) { return "U" + std::to_string(i); }

namespace {

// Frontier of Rec(J) deduplicated by presheaf isomorphism.
struct Frontier {
  CatRef c;
  std::vector<RecObject> stages;
  std::vector<Presheaf> presheaves;
  std::size_t max_stages;

  // Identity stages are always kept (one per object, even for isomorphic
  // objects); later stages are deduplicated up to presheaf isomorphism.
  bool integrate(const RecObject& w, bool identity_stage = false) {
    if (std::find(stages.begin(), stages.end(), w) != stages.end()) return false;
    Presheaf p = as_presheaf(c, w);
    if (!identity_stage && find_isomorphic(presheaves, p)) return false;
    if (stages.size() >= max_stages)
      throw Error(ErrorKind::BudgetExceeded, "stage frontier exceeds " + std::to_string(max_stages) + " objects");
    stages.push_back(w);
    presheaves.push_back(std::move(p));
    return true;
  }
};

// The full subcategory of Rec(J) on the frontier, with stage values.
struct StageData {
  std::vector<RecHom> homs;  // per connection, ordered by (from, to, representative)
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> lookup;  // (from, to, rep) → index
  std::vector<CertStage> stages;
  std::vector<CertConnection> connections;
  CatRef category;
  SetDiagram diagram;
  Cocone colimit;
};

StageData build_stages(const FinCat& j, const SetDiagram& f, const std::vector<RecObject>& stages) {
  StageData out;
  const std::size_t n = stages.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (auto& h : rec_hom(j, stages[a], stages[b])) {
        out.lookup[{a, b, h.representative.index()}] = out.homs.size();
        out.homs.push_back(std::move(h));
      }
  for (std::size_t a = 0; a < n; ++a) {
    const GraphOnObject& g = stages[a].graph;
    Quotient q = reflexive_coeq_via_relations(f.function(g.p), f.function(g.q));
    out.stages.push_back({g, stages[a].section, q.quotient, q.map.map});
  }
  auto from_index = [&](const RecHom& h) {
    for (std::size_t a = 0; a < n; ++a)
      if (stages[a] == h.source) return a;
    throw Error(ErrorKind::CheckFailed, "connection leaves the frontier");
  };
  auto to_index = [&](const RecHom& h) {
    for (std::size_t a = 0; a < n; ++a)
      if (stages[a] == h.target) return a;
    throw Error(ErrorKind::CheckFailed, "connection leaves the frontier");
  };
  for (const auto& h : out.homs) {
    std::size_t a = from_index(h), b = to_index(h);
    const CertStage& s = out.stages[a];
    const CertStage& t = out.stages[b];
    const Mapping& fx = f.map(h.representative);
    Mapping fn(s.value.size(), t.value.size());
    for (std::size_t x = 0; x < s.quotient.size(); ++x) {
      std::size_t image = t.quotient[fx[x]];
      std::size_t& slot = fn[s.quotient[x]];
      if (slot != t.value.size() && slot != image)
        throw Error(ErrorKind::CheckFailed, "connection " + j.name(h.representative) + " does not descend on values");
      slot = image;
    }
    out.connections.push_back({a, b, h.representative, std::move(fn)});
  }

  CategoryBuilder builder;
  for (std::size_t a = 0; a < n; ++a) builder.add_object(stage_name(a));
  std::vector<MorId> mor(out.homs.size());
  for (std::size_t k = 0; k < out.homs.size(); ++k) {
    const auto& h = out.homs[k];
    const auto& conn = out.connections[k];
    if (conn.from == conn.to && h == rec_id(j, h.source)) {
      mor[k] = *builder.find_morphism(identity_name(stage_name(conn.from)));
    } else {
      mor[k] = builder.add_morphism(stage_name(conn.from) + ">" + stage_name(conn.to) + ":" + j.name(h.representative),
                                    ObjId(conn.from), ObjId(conn.to));
    }
  }
  // Composites among non-identity connections.
  for (std::size_t k = 0; k < out.homs.size(); ++k)
    for (std::size_t l = 0; l < out.homs.size(); ++l) {
      const auto& ck = out.connections[k];
      const auto& cl = out.connections[l];
      if (ck.to != cl.from) continue;
      bool k_id = ck.from == ck.to && out.homs[k] == rec_id(j, out.homs[k].source);
      bool l_id = cl.from == cl.to && out.homs[l] == rec_id(j, out.homs[l].source);
      if (k_id || l_id) continue;
      RecHom gf = rec_compose(j, out.homs[l], out.homs[k]);
      builder.set_composite(mor[l], mor[k], mor[out.lookup.at({ck.from, cl.to, gf.representative.index()})]);
    }
  out.category = std::make_shared<const FinCat>(std::move(builder).build());
  std::vector<FinSet> values;
  for (const auto& s : out.stages) values.push_back(s.value);
  std::vector<Mapping> maps(out.category->num_morphisms());
  for (std::size_t k = 0; k < out.homs.size(); ++k) maps[mor[k].index()] = out.connections[k].function;
  out.diagram = SetDiagram(out.category, std::move(values), std::move(maps));
  out.colimit = colimit(out.diagram);
  return out;
}

bool has_cospan(const StageData& d, std::size_t a, std::size_t b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    bool left = false, right = false;
    for (const auto& c : d.connections) {
      left |= c.from == a && c.to == k;
      right |= c.from == b && c.to == k;
    }
    if (left && right) return true;
  }
  return false;
}

std::optional<std::size_t> coequalizing(const FinCat& j, const StageData& d, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < d.homs.size(); ++c) {
    if (d.connections[c].from != d.connections[a].to) continue;
    if (rec_compose(j, d.homs[c], d.homs[a]) == rec_compose(j, d.homs[c], d.homs[b])) return c;
  }
  return std::nullopt;
}

// Labels of the base elements ⊔ F(X) in the running colimit.
std::vector<std::size_t> base_partition(const FinCat& j, const SetDiagram& f, const StageData& d) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < j.num_objects(); ++x) {
    // identity stages come first, in identifier order of objects
    std::size_t stage = j.rank(ObjId(x));
    for (std::size_t e = 0; e < f.at(ObjId(x)).size(); ++e)
      out.push_back(d.colimit.legs[stage][d.stages[stage].quotient[e]]);
  }
  return out;
}

bool coarsens(const std::vector<std::size_t>& prev, const std::vector<std::size_t>& cur) {
  for (std::size_t a = 0; a < prev.size(); ++a)
    for (std::size_t b = a + 1; b < prev.size(); ++b)
      if (prev[a] == prev[b] && cur[a] != cur[b]) return false;
  return true;
}

bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return coarsens(a, b) && coarsens(b, a);
}

}  // namespace

DecompositionResult sifted_colimit_via_decomposition(const CatRef& shape, const SetDiagram& f,
                                                     const DecompositionBudget& budget) {
  const FinCat& j = *shape;
  if (f.shape_ref() != shape && !(to_raw(f.shape()).objects == to_raw(j).objects))
    throw Error(ErrorKind::CarrierMismatch, "diagram is not over the given shape");
  if (auto v = is_sifted(j); !v) throw Error(ErrorKind::NotSifted, describe(j, v));
  if (auto pb = has_pullbacks(j); !pb.all_exist)
    throw Error(ErrorKind::PullbackAbsent,
                "no pullback of " + j.name(pb.missing->first) + " and " + j.name(pb.missing->second));

  Frontier frontier{shape, {}, {}, budget.max_stages};
  for (ObjId x : j.objects_by_name()) frontier.integrate(identity_rec_object(j, x), true);
  PullbackTable pb(shape);

  DecompositionResult out;
  std::optional<std::vector<std::size_t>> prev;
  StageData data;
  bool stabilized = false;
  for (std::size_t round = 0; round < budget.max_rounds; ++round) {
    data = build_stages(j, f, frontier.stages);
    const std::size_t n = frontier.stages.size();
    DecompositionRound report;
    report.stages = n;
    report.connections = data.connections.size();
    report.colimit_size = data.colimit.apex.size();
    auto partition = base_partition(j, f, data);
    if (prev) {
      if (!coarsens(*prev, partition))
        throw Error(ErrorKind::CheckFailed, "running colimit split a class in round " + std::to_string(round));
      report.new_identifications = !same_partition(*prev, partition);
    }
    // Filteredness demands: a cospan per pair, a coequalizing morphism per
    // parallel pair; missing witnesses are produced and integrated.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (!has_cospan(data, a, b, n))
          report.added_stages |= frontier.integrate(rec_cospan(pb, frontier.stages[a], frontier.stages[b]).apex);
    for (std::size_t a = 0; a < data.homs.size(); ++a)
      for (std::size_t b = a + 1; b < data.homs.size(); ++b) {
        const auto& ca = data.connections[a];
        const auto& cb = data.connections[b];
        if (ca.from != cb.from || ca.to != cb.to || coequalizing(j, data, a, b)) continue;
        report.added_stages |= frontier.integrate(rec_coequalize(pb, data.homs[a], data.homs[b]).apex);
      }
    out.rounds.push_back(report);
    if (prev && !report.added_stages && !report.new_identifications) {
      stabilized = true;
      break;
    }
    prev = partition;
    if (report.added_stages) prev.reset();
  }
  if (!stabilized)
    throw Error(ErrorKind::BudgetExceeded,
                "decomposition did not stabilize within " + std::to_string(budget.max_rounds) + " rounds");

  DecompositionCertificate& cert = out.certificate;
  cert.digest = input_digest(f);
  cert.shape = shape;
  cert.diagram = f;
  cert.stages = data.stages;
  cert.connections = data.connections;
  const std::size_t n = cert.stages.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::optional<CertCospan> best;
      for (std::size_t k = 0; k < n && !best; ++k) {
        std::optional<std::size_t> l, r;
        for (std::size_t c = 0; c < cert.connections.size(); ++c) {
          if (!l && cert.connections[c].from == a && cert.connections[c].to == k) l = c;
          if (!r && cert.connections[c].from == b && cert.connections[c].to == k) r = c;
        }
        if (l && r) best = CertCospan{a, b, k, *l, *r};
      }
      if (!best) throw Error(ErrorKind::CheckFailed, "no cospan for stages " + std::to_string(a) + ", " + std::to_string(b));
      cert.cospans.push_back(*best);
    }
  for (std::size_t a = 0; a < cert.connections.size(); ++a)
    for (std::size_t b = a + 1; b < cert.connections.size(); ++b) {
      if (cert.connections[a].from != cert.connections[b].from || cert.connections[a].to != cert.connections[b].to)
        continue;
      auto c = coequalizing(j, data, a, b);
      if (!c) throw Error(ErrorKind::CheckFailed, "no coequalizing connection for " + std::to_string(a) + ", " + std::to_string(b));
      cert.coequalizers.push_back({a, b, *c});
    }
  if (!is_filtered(*data.category)) throw Error(ErrorKind::CheckFailed, "stage category is not filtered");

  cert.colimit = data.colimit.apex;
  cert.legs = data.colimit.legs;
  Cocone oracle = colimit(f);
  cert.oracle = oracle.apex;
  if (oracle.apex.size() != cert.colimit.size())
    throw Error(ErrorKind::CheckFailed, "stage colimit has " + std::to_string(cert.colimit.size()) +
                                            " elements, direct colimit " + std::to_string(oracle.apex.size()));
  cert.bijection.assign(cert.colimit.size(), oracle.apex.size());
  for (std::size_t s = 0; s < n; ++s) {
    ObjId x = cert.stages[s].graph.vertex;
    for (std::size_t e = 0; e < f.at(x).size(); ++e) {
      std::size_t from = cert.legs[s][cert.stages[s].quotient[e]], to = oracle.legs[x.index()][e];
      if (cert.bijection[from] != oracle.apex.size() && cert.bijection[from] != to)
        throw Error(ErrorKind::CheckFailed, "comparison with the direct colimit is not well defined");
      cert.bijection[from] = to;
    }
  }
  std::vector<bool> hit(oracle.apex.size(), false);
  for (std::size_t v : cert.bijection) {
    if (v == oracle.apex.size() || hit[v]) throw Error(ErrorKind::CheckFailed, "comparison is not a bijection");
    hit[v] = true;
  }
  out.colimit = cert.colimit;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CommaCategory {
  CatRef category;
  std::vector<std::pair<std::size_t, std::size_t>> objects;  // (frontier index, element of φ(X))
  std::vector<RecHom> homs;                                  // per morphism
};

CommaCategory comma_category(const FinCat& c, const Presheaf& phi, const RecEnumeration& e) {
  CommaCategory out;
  for (std::size_t i = 0; i < e.objects.size(); ++i) {
    const GraphOnObject& g = e.objects[i].graph;
    for (std::size_t x = 0; x < phi.at(g.vertex).size(); ++x)
      if (phi.action(g.p)[x] == phi.action(g.q)[x]) out.objects.push_back({i, x});
  }
  CategoryBuilder b;
  auto name = [&](std::size_t o) {
    auto [i, x] = out.objects[o];
    return "(" + stage_name(i) + "," + phi.at(e.objects[i].graph.vertex).name(x) + ")";
  };
  for (std::size_t o = 0; o < out.objects.size(); ++o) b.add_object(name(o));
  struct Edge {
    std::size_t from, to;
    RecHom hom;
    MorId id;
  };
  std::vector<Edge> edges;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, MorId> lookup;
  for (std::size_t o = 0; o < out.objects.size(); ++o)
    for (std::size_t p = 0; p < out.objects.size(); ++p) {
      auto [i, x] = out.objects[o];
      auto [k, y] = out.objects[p];
      for (auto& h : rec_hom(c, e.objects[i], e.objects[k])) {
        if (phi.action(h.representative)[y] != x) continue;
        MorId id;
        if (o == p && h == rec_id(c, h.source)) {
          id = *b.find_morphism(identity_name(name(o)));
        } else {
          id = b.add_morphism(name(o) + ">" + name(p) + ":" + c.name(h.representative), ObjId(o), ObjId(p));
        }
        lookup[{o, p, h.representative.index()}] = id;
        edges.push_back({o, p, h, id});
      }
    }
  for (const auto& f : edges)
    for (const auto& g : edges) {
      if (f.to != g.from) continue;
      if (f.id == *b.find_morphism(identity_name(name(f.from))) || g.id == *b.find_morphism(identity_name(name(g.from))))
        continue;
      RecHom gf = rec_compose(c, g.hom, f.hom);
      b.set_composite(g.id, f.id, lookup.at({f.from, g.to, gf.representative.index()}));
    }
  out.category = std::make_shared<const FinCat>(std::move(b).build());
  out.homs.resize(out.category->num_morphisms(), RecHom{});
  for (const auto& f : edges) out.homs[f.id.index()] = f.hom;
  return out;
}

struct DepthCheck {
  bool filtered = false, isomorphic = false, atomic = false;
  std::size_t objects = 0, morphisms = 0;
  std::string failure;
};

DepthCheck check_depth(const CatRef& cref, const Presheaf& phi, const RecEnumeration& e) {
  const FinCat& c = *cref;
  DepthCheck out;
  CommaCategory comma = comma_category(c, phi, e);
  const FinCat& k = *comma.category;
  out.objects = k.num_objects();
  out.morphisms = k.num_morphisms();
  out.filtered = bool(is_filtered(k));
  if (!out.filtered) out.failure = "comma frontier is not filtered: " + describe(k, is_filtered(k));

  // Colimit of the frontier presheaves, compared with φ.
  PresheafDiagram d{comma.category, {}, {}};
  for (auto [i, x] : comma.objects) d.objects.push_back(e.presheaves[i]);
  for (std::size_t m = 0; m < k.num_morphisms(); ++m)
    d.maps.push_back(k.is_identity(MorId(m)) ? identity_nat(d.objects[k.src(MorId(m)).index()])
                                             : as_presheaf_map(cref, comma.homs[m]));
  PresheafColimit colim = colimit(d);
  NatTrans cmp(c.num_objects());
  bool ok = true;
  for (std::size_t w = 0; w < c.num_objects() && ok; ++w) {
    const std::size_t none = phi.at(ObjId(w)).size();
    cmp[w].assign(colim.value.at(ObjId(w)).size(), none);
    for (std::size_t o = 0; o < comma.objects.size() && ok; ++o) {
      auto [i, x] = comma.objects[o];
      const Presheaf& pu = e.presheaves[i];
      for (std::size_t a = 0; a < pu.at(ObjId(w)).size(); ++a) {
        MorId rep = c.find_morphism(pu.at(ObjId(w)).name(a)).value();
        std::size_t image = phi.action(rep)[x];
        std::size_t& slot = cmp[w][colim.legs[o][w][a]];
        if (slot != none && slot != image) ok = false;
        slot = image;
      }
    }
    if (!ok) break;
    std::vector<bool> hit(none, false);
    for (std::size_t v : cmp[w]) {
      if (v == none || hit[v]) {
        ok = false;
        break;
      }
      hit[v] = true;
    }
    if (ok && std::find(hit.begin(), hit.end(), false) != hit.end()) ok = false;
  }
  out.isomorphic = ok && is_natural(colim.value, phi, cmp);
  if (!out.isomorphic && out.failure.empty()) out.failure = "colimit of the comma frontier is not isomorphic to phi";

  // Atomicity: colim_o hom(U, U_o) ≅ hom(U, φ) for every frontier object U.
  out.atomic = true;
  for (std::size_t m = 0; m < e.objects.size() && out.atomic; ++m) {
    const RecObject& u = e.objects[m];
    std::vector<FinSet> sets;
    std::vector<std::vector<RecHom>> homs;
    for (auto [i, x] : comma.objects) {
      homs.push_back(rec_hom(c, u, e.objects[i]));
      std::vector<std::string> names;
      for (const auto& h : homs.back()) names.push_back(c.name(h.representative));
      sets.emplace_back(std::move(names));
    }
    std::vector<Mapping> maps(k.num_morphisms());
    for (std::size_t f = 0; f < k.num_morphisms(); ++f) {
      std::size_t from = k.src(MorId(f)).index(), to = k.dst(MorId(f)).index();
      for (const auto& h : homs[from]) {
        MorId rep = k.is_identity(MorId(f)) ? h.representative
                                           : rec_compose(c, comma.homs[f], h).representative;
        maps[f].push_back(sets[to].index(c.name(rep)));
      }
    }
    Cocone hom_colim = colimit(SetDiagram(comma.category, sets, maps));
    // Target: elements y of φ(X_U) equalized by p, q.
    std::vector<std::size_t> target;
    for (std::size_t y = 0; y < phi.at(u.graph.vertex).size(); ++y)
      if (phi.action(u.graph.p)[y] == phi.action(u.graph.q)[y]) target.push_back(y);
    Mapping to(hom_colim.apex.size(), kNone);
    bool good = hom_colim.apex.size() == target.size();
    for (std::size_t o = 0; o < comma.objects.size() && good; ++o) {
      auto [i, x] = comma.objects[o];
      for (std::size_t h = 0; h < homs[o].size(); ++h) {
        std::size_t image = phi.action(homs[o][h].representative)[x];
        std::size_t& slot = to[hom_colim.legs[o][h]];
        if (slot != kNone && slot != image) good = false;
        slot = image;
      }
    }
    if (good) {
      std::sort(to.begin(), to.end());
      good = std::adjacent_find(to.begin(), to.end()) == to.end() && to == target;
    }
    if (!good) {
      out.atomic = false;
      if (out.failure.empty()) out.failure = "atomicity fails at frontier object " + stage_name(m);
    }
  }
  return out;
}

}  // namespace

InstanceReport verify_sind_instance(const CatRef& cref, const Presheaf& phi, std::size_t max_depth,
                                  const RecBudget& budget) {
  const FinCat& c = *cref;
  if (auto pb = has_pullbacks(c); !pb.all_exist)
    throw Error(ErrorKind::PullbackAbsent, "no pullback of " + c.name(pb.missing->first) + " and " +
                                               c.name(pb.missing->second));
  if (!is_in_Sind(phi)) throw Error(ErrorKind::ValidationError, "presheaf is not in Sind: " + describe(*category_of_elements(phi).category, sind_verdict(phi)));
  InstanceReport report;
  report.element_category_has_pullbacks = has_pullbacks(*category_of_elements(phi).category).all_exist;
  bool prev_ok = false;
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    RecEnumeration e;
    try {
      e = enumerate_rec(cref, depth, budget);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::BudgetExceeded) throw;
      report.budget_exceeded = true;
      report.failure = err.what();
      return report;
    }
    DepthCheck d = check_depth(cref, phi, e);
    report.depth = depth;
    report.frontier_objects = d.objects;
    report.frontier_morphisms = d.morphisms;
    report.filtered = d.filtered;
    report.colimit_isomorphic = d.isomorphic;
    report.atomic = d.atomic;
    report.failure = d.failure;
    bool ok = d.filtered && d.isomorphic && d.atomic;
    if (ok && prev_ok) {
      report.stabilized = true;
      return report;
    }
    prev_ok = ok;
  }
  if (report.failure.empty()) report.failure = "not stabilized by depth " + std::to_string(max_depth);
  return report;
}

// ---------------------------------------------------------------------------

std::string SetEndofunctor::describe() const {
  if (kind == Kind::Square) return "(-)^2";
  std::string s = "(-)x{";
  for (std::size_t i = 0; i < factor.size(); ++i) s += (i ? "," : "") + factor.name(i);
  return s + "}";
}

FinSet SetEndofunctor::on_set(const FinSet& x) const {
  std::vector<std::string> names;
  const FinSet& right = kind == Kind::Square ? x : factor;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b) names.push_back("(" + x.name(a) + "," + right.name(b) + ")");
  return FinSet(std::move(names));
}

Mapping SetEndofunctor::on_map(const FinSet& from, const FinSet& to, const Mapping& f) const {
  Mapping out;
  if (kind == Kind::Square) {
    for (std::size_t a = 0; a < from.size(); ++a)
      for (std::size_t b = 0; b < from.size(); ++b) out.push_back(f[a] * to.size() + f[b]);
  } else {
    for (std::size_t a = 0; a < from.size(); ++a)
      for (std::size_t s = 0; s < factor.size(); ++s) out.push_back(f[a] * factor.size() + s);
  }
  return out;
}

SetDiagram SetEndofunctor::on_diagram(const SetDiagram& d) const {
  const FinCat& c = d.shape();
  std::vector<FinSet> sets;
  for (const auto& s : d.sets()) sets.push_back(on_set(s));
  std::vector<Mapping> maps;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    maps.push_back(on_map(d.at(c.src(f)), d.at(c.dst(f)), d.map(f)));
  }
  return SetDiagram(d.shape_ref(), std::move(sets), std::move(maps));
}

namespace {

// Class labels of a colimit of finite sets given by sizes and connecting maps.
struct Classes {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> label;
  std::size_t count = 0;
};

Classes colimit_classes(const std::vector<std::size_t>& sizes,
                        const std::vector<std::tuple<std::size_t, std::size_t, const Mapping*>>& maps) {
  Classes out;
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    out.offset.push_back(total);
    total += s;
  }
  UnionFind uf(total);
  for (const auto& [from, to, m] : maps)
    for (std::size_t k = 0; k < m->size(); ++k) uf.unite(out.offset[from] + k, out.offset[to] + (*m)[k]);
  std::vector<std::size_t> id(total, total);
  out.label.resize(total);
  for (std::size_t e = 0; e < total; ++e) {
    std::size_t r = uf.find(e);
    if (id[r] == total) id[r] = out.count++;
    out.label[e] = id[r];
  }
  return out;
}

// A function between finite sets of the given sizes, built from pairs; true
// when well defined, total and bijective.
bool bijective_relation(std::size_t n, std::size_t m, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  if (n != m) return false;
  std::vector<std::size_t> f(n, m);
  for (auto [a, b] : pairs) {
    if (f[a] != m && f[a] != b) return false;
    f[a] = b;
  }
  std::vector<bool> hit(m, false);
  for (std::size_t v : f) {
    if (v == m || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace

PreservationReport preservation_check(const DecompositionResult& dec, const SetEndofunctor& t) {
  const DecompositionCertificate& cert = dec.certificate;
  const SetDiagram& f = cert.diagram;
  const FinCat& j = *cert.shape;
  SetDiagram tf = t.on_diagram(f);
  PreservationReport out;

  // Stagewise: T(coeq(Fp, Fq)) against coeq(TFp, TFq).
  out.reflexive_coequalizers = true;
  std::vector<FinSet> tvalues;
  std::vector<Mapping> tquot;
  for (const auto& s : cert.stages) {
    const FinSet& fx = f.at(s.graph.vertex);
    tvalues.push_back(t.on_set(s.value));
    tquot.push_back(t.on_map(fx, s.value, s.quotient));
    Quotient q = reflexive_coeq_via_relations(tf.function(s.graph.p), tf.function(s.graph.q));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t e = 0; e < q.map.map.size(); ++e) pairs.push_back({q.map.map[e], tquot.back()[e]});
    if (!bijective_relation(q.quotient.size(), tvalues.back().size(), pairs)) out.reflexive_coequalizers = false;
  }

  // Filtered colimit over the stage category, transported.
  std::vector<std::size_t> sizes;
  for (const auto& v : tvalues) sizes.push_back(v.size());
  std::vector<Mapping> tfun;
  for (const auto& k : cert.connections)
    tfun.push_back(t.on_map(cert.stages[k.from].value, cert.stages[k.to].value, k.function));
  std::vector<std::tuple<std::size_t, std::size_t, const Mapping*>> edges;
  for (std::size_t k = 0; k < cert.connections.size(); ++k)
    edges.push_back({cert.connections[k].from, cert.connections[k].to, &tfun[k]});
  Classes transported = colimit_classes(sizes, edges);
  out.transported_size = transported.count;
  FinSet tcolim = t.on_set(cert.colimit);
  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < cert.stages.size(); ++s) {
      Mapping leg = t.on_map(cert.stages[s].value, cert.colimit, cert.legs[s]);
      for (std::size_t e = 0; e < leg.size(); ++e) pairs.push_back({transported.label[transported.offset[s] + e], leg[e]});
    }
    out.filtered_colimit = bijective_relation(transported.count, tcolim.size(), pairs);
  }

  // Against the direct colimit of T∘F.
  Cocone direct = colimit(tf);
  out.direct_size = direct.apex.size();
  {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < cert.stages.size(); ++s) {
      ObjId x = cert.stages[s].graph.vertex;
      for (std::size_t e = 0; e < tquot[s].size(); ++e)
        pairs.push_back({transported.label[transported.offset[s] + tquot[s][e]], direct.legs[x.index()][e]});
    }
    out.matches_direct = bijective_relation(transported.count, direct.apex.size(), pairs);
  }
  (void)j;
  return out;
}

}  // namespace siftcat
