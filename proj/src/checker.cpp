// Certificate checker. Deliberately shares nothing with the builder beyond the
// base types (FinCat, FinSet, SetDiagram) and the input digest: equivalence
// classes, canonical names and colimits are recomputed here from scratch.

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "siftcat/decompose.hpp"
#include "siftcat/io.hpp"

namespace siftcat {

namespace {

struct Fail {
  std::string what;
};

[[noreturn]] void fail(std::string what) { throw Fail{std::move(what)}; }

class Partition {
 public:
  explicit Partition(std::size_t n) : up_(n) { std::iota(up_.begin(), up_.end(), std::size_t{0}); }
  std::size_t root(std::size_t x) {
    while (up_[x] != x) x = up_[x] = up_[up_[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) up_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> up_;
};

std::string at(const char* what, std::size_t i) { return std::string(what) + " " + std::to_string(i); }

// Classes of hom(w, vertex) generated by (s∘k, t∘k), k ∈ hom(w, edge); each
// morphism maps to the name-least member of its class.
std::map<std::size_t, MorId> hom_classes(const FinCat& c, ObjId w, const GraphOnObject& g) {
  std::vector<MorId> hom;
  for (std::size_t m = 0; m < c.num_morphisms(); ++m)
    if (c.src(MorId(m)) == w && c.dst(MorId(m)) == g.vertex) hom.push_back(MorId(m));
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < hom.size(); ++i) pos[hom[i].index()] = i;
  Partition p(hom.size());
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    MorId k(m);
    if (c.src(k) != w || c.dst(k) != g.edge) continue;
    p.join(pos.at(c.compose(g.p, k).index()), pos.at(c.compose(g.q, k).index()));
  }
  std::map<std::size_t, MorId> least;
  for (MorId f : hom) {
    std::size_t r = p.root(pos[f.index()]);
    auto it = least.find(r);
    if (it == least.end() || c.name(f) < c.name(it->second)) least[r] = f;
  }
  std::map<std::size_t, MorId> out;
  for (MorId f : hom) out[f.index()] = least[p.root(pos[f.index()])];
  return out;
}

struct CanonicalQuotient {
  std::vector<std::string> names;
  Mapping map;
};

// Quotient of a finite set by the classes of a partition: classes named by
// their least element name and listed in name order.
CanonicalQuotient canonical_quotient(const FinSet& s, Partition& p) {
  std::map<std::size_t, std::string> least;
  for (std::size_t e = 0; e < s.size(); ++e) {
    std::size_t r = p.root(e);
    auto it = least.find(r);
    if (it == least.end() || s.name(e) < it->second) least[r] = s.name(e);
  }
  CanonicalQuotient out;
  for (const auto& [r, name] : least) out.names.push_back(name);
  std::sort(out.names.begin(), out.names.end());
  for (std::size_t e = 0; e < s.size(); ++e) {
    auto it = std::lower_bound(out.names.begin(), out.names.end(), least[p.root(e)]);
    out.map.push_back(static_cast<std::size_t>(it - out.names.begin()));
  }
  return out;
}

struct Glued {
  std::vector<std::string> names;
  std::vector<Mapping> legs;
};

// Colimit of finite sets: part names, element sets, and (from, to, map)
// edges. Classes named "(part,elem)" by the least (part, elem) pair.
Glued glue(const std::vector<std::string>& parts, const std::vector<FinSet>& sets,
           const std::vector<std::tuple<std::size_t, std::size_t, const Mapping*>>& edges) {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& s : sets) {
    offset.push_back(total);
    total += s.size();
  }
  Partition p(total);
  for (const auto& [from, to, m] : edges) {
    if (m->size() != sets[from].size()) fail("function has the wrong length");
    for (std::size_t k = 0; k < m->size(); ++k) {
      if ((*m)[k] >= sets[to].size()) fail("function leaves its codomain");
      p.join(offset[from] + k, offset[to] + (*m)[k]);
    }
  }
  using Key = std::pair<std::string, std::string>;
  std::map<std::size_t, Key> least;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t k = 0; k < sets[i].size(); ++k) {
      Key key{parts[i], sets[i].name(k)};
      std::size_t r = p.root(offset[i] + k);
      auto it = least.find(r);
      if (it == least.end() || key < it->second) least[r] = key;
    }
  std::vector<Key> keys;
  for (const auto& [r, key] : least) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  Glued out;
  for (const auto& [a, b] : keys) out.names.push_back("(" + a + "," + b + ")");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Mapping leg;
    for (std::size_t k = 0; k < sets[i].size(); ++k)
      leg.push_back(static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), least[p.root(offset[i] + k)]) -
                                             keys.begin()));
    out.legs.push_back(std::move(leg));
  }
  return out;
}

void check(const DecompositionCertificate& cert) {
  if (cert.kind != DecompositionCertificate::kKind) fail("unknown certificate kind '" + cert.kind + "'");
  if (cert.version != DecompositionCertificate::kVersion) fail("unsupported version " + std::to_string(cert.version));
  if (!cert.shape) fail("missing shape");
  if (cert.digest != input_digest(cert.diagram)) fail("input digest mismatch");
  const FinCat& c = *cert.shape;
  const SetDiagram& f = cert.diagram;
  const std::size_t n = cert.stages.size();
  if (n < c.num_objects() || n == 0) fail("stage list does not start with the identity graphs");

  // Stages.
  std::vector<ObjId> by_name;
  for (std::size_t x = 0; x < c.num_objects(); ++x) by_name.push_back(ObjId(x));
  std::sort(by_name.begin(), by_name.end(), [&](ObjId a, ObjId b) { return c.name(a) < c.name(b); });
  for (std::size_t i = 0; i < n; ++i) {
    const CertStage& s = cert.stages[i];
    const GraphOnObject& g = s.graph;
    if (i < c.num_objects()) {
      MorId one = c.identity(by_name[i]);
      if (g.edge != by_name[i] || g.vertex != by_name[i] || g.p != one || g.q != one)
        fail(at("stage", i) + ": expected the identity graph on " + c.name(by_name[i]));
    }
    for (std::size_t k = 0; k < i; ++k)
      if (cert.stages[k].graph == g) fail(at("stage", i) + ": repeats stage " + std::to_string(k));
    if (c.src(g.p) != g.edge || c.src(g.q) != g.edge || c.dst(g.p) != g.vertex || c.dst(g.q) != g.vertex)
      fail(at("stage", i) + ": legs are not parallel");
    std::optional<MorId> least;
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
      MorId r(m);
      if (c.src(r) != g.vertex || c.dst(r) != g.edge) continue;
      if (c.compose(g.p, r) != c.identity(g.vertex) || c.compose(g.q, r) != c.identity(g.vertex)) continue;
      if (!least || c.name(r) < c.name(*least)) least = r;
    }
    if (!least || *least != s.section) fail(at("stage", i) + ": section is not the least common section");
    const FinSet& fx = f.at(g.vertex);
    Partition p(fx.size());
    const Mapping& fp = f.map(g.p);
    const Mapping& fq = f.map(g.q);
    for (std::size_t e = 0; e < fp.size(); ++e) p.join(fp[e], fq[e]);
    CanonicalQuotient q = canonical_quotient(fx, p);
    if (q.names != s.value.elements()) fail(at("stage", i) + ": value differs from the coequalizer");
    if (q.map != s.quotient) fail(at("stage", i) + ": quotient map differs from the coequalizer");
  }

  // Connections: every descending class, once, in (from, to, name) order.
  struct Expected {
    std::size_t from, to;
    MorId rep;
  };
  std::vector<Expected> expected;
  std::map<std::tuple<std::size_t, std::size_t>, std::map<std::size_t, MorId>> classes;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const GraphOnObject& ga = cert.stages[a].graph;
      const GraphOnObject& gb = cert.stages[b].graph;
      auto vertex = hom_classes(c, ga.vertex, gb);
      auto edge = hom_classes(c, ga.edge, gb);
      classes[{a, b}] = vertex;
      std::vector<MorId> reps;
      for (const auto& [m, rep] : vertex)
        if (MorId(m) == rep && edge.at(c.compose(rep, ga.p).index()) == edge.at(c.compose(rep, ga.q).index()))
          reps.push_back(rep);
      std::sort(reps.begin(), reps.end(), [&](MorId x, MorId y) { return c.name(x) < c.name(y); });
      for (MorId r : reps) expected.push_back({a, b, r});
    }
  if (expected.size() != cert.connections.size())
    fail("expected " + std::to_string(expected.size()) + " connections, found " + std::to_string(cert.connections.size()));
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const CertConnection& cc = cert.connections[k];
    if (cc.from != expected[k].from || cc.to != expected[k].to || cc.representative != expected[k].rep)
      fail(at("connection", k) + ": not the canonical class list");
    const CertStage& s = cert.stages[cc.from];
    const CertStage& t = cert.stages[cc.to];
    const Mapping& fx = f.map(cc.representative);
    const std::string where =
        at("connection", k) + " (stage U" + std::to_string(cc.from) + " -> stage U" + std::to_string(cc.to) + ")";
    if (cc.function.size() != s.value.size()) fail(where + ": function has the wrong length");
    for (std::size_t x = 0; x < s.quotient.size(); ++x)
      if (cc.function[s.quotient[x]] != t.quotient[fx[x]])
        fail(where + ": function is not induced by " + c.name(cc.representative));
  }
  auto same_class = [&](std::size_t a, std::size_t b, MorId x, MorId y) {
    const auto& cl = classes.at({a, b});
    return cl.at(x.index()) == cl.at(y.index());
  };

  // Filteredness witnesses, each the least valid one.
  std::size_t w = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++w) {
      if (w >= cert.cospans.size()) fail("missing cospan witnesses");
      const CertCospan& cs = cert.cospans[w];
      if (cs.left != a || cs.right != b) fail(at("cospan", w) + ": wrong pair");
      std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> least;
      for (std::size_t k = 0; k < n && !least; ++k) {
        std::optional<std::size_t> l, r;
        for (std::size_t m = 0; m < cert.connections.size(); ++m) {
          if (!l && cert.connections[m].from == a && cert.connections[m].to == k) l = m;
          if (!r && cert.connections[m].from == b && cert.connections[m].to == k) r = m;
        }
        if (l && r) least = std::tuple{k, *l, *r};
      }
      if (!least) fail(at("cospan", w) + ": stages have no cospan");
      if (std::tuple{cs.apex, cs.from_left, cs.from_right} != *least)
        fail(at("cospan", w) + ": not the least cospan witness");
    }
  if (w != cert.cospans.size()) fail("extra cospan witnesses");
  w = 0;
  for (std::size_t a = 0; a < cert.connections.size(); ++a)
    for (std::size_t b = a + 1; b < cert.connections.size(); ++b) {
      const CertConnection& ca = cert.connections[a];
      const CertConnection& cb = cert.connections[b];
      if (ca.from != cb.from || ca.to != cb.to) continue;
      if (w >= cert.coequalizers.size()) fail("missing coequalizer witnesses");
      const CertCoequalizer& q = cert.coequalizers[w];
      if (q.first != a || q.second != b) fail(at("coequalizer", w) + ": wrong pair");
      std::optional<std::size_t> least;
      for (std::size_t m = 0; m < cert.connections.size() && !least; ++m) {
        const CertConnection& cm = cert.connections[m];
        if (cm.from != ca.to) continue;
        if (same_class(ca.from, cm.to, c.compose(cm.representative, ca.representative),
                       c.compose(cm.representative, cb.representative)))
          least = m;
      }
      if (!least) fail(at("coequalizer", w) + ": parallel pair is not coequalized");
      if (q.map != *least) fail(at("coequalizer", w) + ": not the least coequalizing witness");
      ++w;
    }
  if (w != cert.coequalizers.size()) fail("extra coequalizer witnesses");

  // Colimit over the stage category.
  std::vector<std::string> parts;
  std::vector<FinSet> values;
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(stage_name(i));
    values.push_back(cert.stages[i].value);
  }
  std::vector<std::tuple<std::size_t, std::size_t, const Mapping*>> edges;
  for (const auto& cc : cert.connections) edges.push_back({cc.from, cc.to, &cc.function});
  Glued colim = glue(parts, values, edges);
  if (colim.names != cert.colimit.elements()) fail("colimit elements differ");
  if (colim.legs != cert.legs) fail("colimit legs differ");

  // Direct colimit of the input.
  std::vector<std::string> objects;
  for (std::size_t x = 0; x < c.num_objects(); ++x) objects.push_back(c.name(ObjId(x)));
  std::vector<std::tuple<std::size_t, std::size_t, const Mapping*>> fedges;
  for (std::size_t m = 0; m < c.num_morphisms(); ++m)
    fedges.push_back({c.src(MorId(m)).index(), c.dst(MorId(m)).index(), &f.map(MorId(m))});
  Glued direct = glue(objects, f.sets(), fedges);
  if (direct.names != cert.oracle.elements()) fail("direct colimit elements differ");

  // Bijection commuting with the legs.
  if (cert.bijection.size() != colim.names.size() || colim.names.size() != direct.names.size())
    fail("bijection has the wrong size");
  std::vector<bool> hit(direct.names.size(), false);
  for (std::size_t v : cert.bijection) {
    if (v >= hit.size() || hit[v]) fail("bijection is not bijective");
    hit[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    ObjId x = cert.stages[i].graph.vertex;
    for (std::size_t e = 0; e < f.at(x).size(); ++e)
      if (cert.bijection[colim.legs[i][cert.stages[i].quotient[e]]] != direct.legs[x.index()][e])
        fail(at("stage", i) + ": bijection does not commute with the legs");
  }
}

}  // namespace

CheckVerdict check_certificate(const DecompositionCertificate& cert) {
  try {
    check(cert);
    return {true, {}};
  } catch (const Fail& f) {
    return {false, f.what};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

}  // namespace siftcat
