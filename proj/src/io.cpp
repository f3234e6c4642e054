#include "siftcat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace siftcat {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

void expect_kind(const Json& j, const char* kind, const std::string& where) {
  const Json& k = field(j, "kind", where);
  if (!k.is_string() || k.get<std::string>() != kind)
    throw Error(ErrorKind::ValidationError, where + ".kind: expected \"" + std::string(kind) + "\"");
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

std::size_t index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) parse_fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(str(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Mapping indices(const Json& j, const std::string& where) {
  Mapping out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(index(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ObjId object_ref(const FinCat& c, const Json& j, const std::string& where) {
  auto name = str(j, where);
  auto x = c.find_object(name);
  if (!x) throw Error(ErrorKind::ValidationError, where + ": unknown object '" + name + "'");
  return *x;
}

MorId morphism_ref(const FinCat& c, const Json& j, const std::string& where) {
  auto name = str(j, where);
  auto f = c.find_morphism(name);
  if (!f) throw Error(ErrorKind::ValidationError, where + ": unknown morphism '" + name + "'");
  return *f;
}

FinSet finset(const Json& j, const std::string& where) {
  try {
    return FinSet(strings(j, where));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ValidationError, where + ": " + e.what());
  }
}

Mapping element_refs(const FinSet& target, const Json& j, const std::string& where) {
  Mapping out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    auto name = str(j[i], where + "[" + std::to_string(i) + "]");
    auto k = target.find(name);
    if (!k) throw Error(ErrorKind::ValidationError, where + "[" + std::to_string(i) + "]: unknown element '" + name + "'");
    out.push_back(*k);
  }
  return out;
}

Json names_of(const FinSet& s, const Mapping& m) {
  Json out = Json::array();
  for (std::size_t v : m) out.push_back(s.name(v));
  return out;
}

// Per-object sets and per-morphism functions keyed by name; identities are
// implicit. `forward` selects src → dst (diagrams) or dst → src (presheaves).
struct Valued {
  std::vector<FinSet> sets;
  std::vector<Mapping> maps;
};

Valued read_values(const FinCat& c, const Json& j, const char* maps_key, bool forward, const std::string& where) {
  Valued v;
  const Json& sets = field(j, "sets", where);
  for (std::size_t i = 0; i < c.num_objects(); ++i) {
    const std::string& name = c.name(ObjId(i));
    if (!sets.is_object() || !sets.contains(name))
      throw Error(ErrorKind::ValidationError, where + ".sets: missing object '" + name + "'");
    v.sets.push_back(finset(sets[name], where + ".sets." + name));
  }
  const Json& maps = field(j, maps_key, where);
  if (!maps.is_object()) parse_fail(where + "." + maps_key, "expected an object");
  for (auto it = maps.begin(); it != maps.end(); ++it) {
    auto f = c.find_morphism(it.key());
    if (!f || c.is_identity(*f))
      throw Error(ErrorKind::ValidationError, where + "." + maps_key + ": unknown morphism '" + it.key() + "'");
  }
  v.maps.resize(c.num_morphisms());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    const FinSet& from = v.sets[(forward ? c.src(f) : c.dst(f)).index()];
    const FinSet& to = v.sets[(forward ? c.dst(f) : c.src(f)).index()];
    if (c.is_identity(f)) {
      for (std::size_t k = 0; k < from.size(); ++k) v.maps[i].push_back(k);
      continue;
    }
    const std::string loc = where + "." + maps_key + "." + c.name(f);
    if (!maps.contains(c.name(f))) throw Error(ErrorKind::ValidationError, loc + ": missing");
    v.maps[i] = element_refs(to, maps[c.name(f)], loc);
    if (v.maps[i].size() != from.size())
      throw Error(ErrorKind::ValidationError, loc + ": expected " + std::to_string(from.size()) + " entries");
  }
  return v;
}

Json write_values(const FinCat& c, const std::vector<FinSet>& sets, const std::vector<Mapping>& maps, bool forward) {
  Json s = Json::object(), m = Json::object();
  for (std::size_t i = 0; i < c.num_objects(); ++i) s[c.name(ObjId(i))] = sets[i].elements();
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    if (c.is_identity(f)) continue;
    const FinSet& to = sets[(forward ? c.dst(f) : c.src(f)).index()];
    m[c.name(f)] = names_of(to, maps[i]);
  }
  return Json{{"sets", s}, {"maps", m}};
}

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ValidationError, path.string() + ": cannot write");
  out << text;
}

std::string document_kind(const Json& j) {
  if (j.is_object() && j.contains("kind") && j["kind"].is_string()) return j["kind"].get<std::string>();
  return {};
}

Json category_to_json(const FinCat& c) {
  RawCategory raw = to_raw(c);
  Json morphisms = Json::array(), compose = Json::array();
  for (const auto& m : raw.morphisms) morphisms.push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  for (const auto& k : raw.compose) compose.push_back(Json::array({k.second, k.first, k.result}));
  return Json{{"kind", "category"}, {"objects", raw.objects}, {"morphisms", morphisms}, {"compose", compose}};
}

FinCat category_from_json(const Json& j) {
  const std::string where = "category";
  expect_kind(j, "category", where);
  RawCategory raw;
  raw.objects = strings(field(j, "objects", where), where + ".objects");
  const Json& ms = array(field(j, "morphisms", where), where + ".morphisms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string loc = where + ".morphisms[" + std::to_string(i) + "]";
    raw.morphisms.push_back({str(field(ms[i], "id", loc), loc + ".id"), str(field(ms[i], "src", loc), loc + ".src"),
                             str(field(ms[i], "dst", loc), loc + ".dst")});
  }
  const Json& cs = array(field(j, "compose", where), where + ".compose");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string loc = where + ".compose[" + std::to_string(i) + "]";
    auto triple = strings(cs[i], loc);
    if (triple.size() != 3) parse_fail(loc, "expected [second, first, result]");
    raw.compose.push_back({triple[0], triple[1], triple[2]});
  }
  return validate_category(raw);
}

Json diagram_to_json(const SetDiagram& d) {
  Json out = write_values(d.shape(), d.sets(), d.maps(), true);
  out["kind"] = "diagram";
  out["shape"] = category_to_json(d.shape());
  return out;
}

SetDiagram diagram_from_json(const Json& j) {
  expect_kind(j, "diagram", "diagram");
  CatRef shape = share(category_from_json(field(j, "shape", "diagram")));
  Valued v = read_values(*shape, j, "maps", true, "diagram");
  return SetDiagram(shape, std::move(v.sets), std::move(v.maps));
}

Json presheaf_to_json(const Presheaf& p) {
  Json v = write_values(p.base(), p.sets(), p.actions(), false);
  return Json{{"kind", "presheaf"}, {"base", category_to_json(p.base())}, {"sets", v["sets"]}, {"actions", v["maps"]}};
}

Presheaf presheaf_from_json(const Json& j) {
  expect_kind(j, "presheaf", "presheaf");
  CatRef base = share(category_from_json(field(j, "base", "presheaf")));
  Valued v = read_values(*base, j, "actions", false, "presheaf");
  return Presheaf(base, std::move(v.sets), std::move(v.maps));
}

Json graph_to_json(const FinCat& c, const GraphOnObject& g) {
  return Json{{"edge", c.name(g.edge)}, {"vertex", c.name(g.vertex)}, {"p", c.name(g.p)}, {"q", c.name(g.q)}};
}

GraphOnObject graph_from_json(const FinCat& c, const Json& j) {
  const std::string where = "graph";
  GraphOnObject g{object_ref(c, field(j, "edge", where), where + ".edge"),
                  object_ref(c, field(j, "vertex", where), where + ".vertex"),
                  morphism_ref(c, field(j, "p", where), where + ".p"),
                  morphism_ref(c, field(j, "q", where), where + ".q")};
  if (c.src(g.p) != g.edge || c.src(g.q) != g.edge || c.dst(g.p) != g.vertex || c.dst(g.q) != g.vertex)
    throw Error(ErrorKind::NotParallel, where + ": legs do not run edge → vertex");
  return g;
}

Json frontier_to_json(const FinCat& c, const RecEnumeration& e, std::size_t depth) {
  Json objects = Json::array();
  for (std::size_t i = 0; i < e.objects.size(); ++i) {
    Json o = graph_to_json(c, e.objects[i].graph);
    o["section"] = c.name(e.objects[i].section);
    o["round"] = e.depth[i];
    o["fingerprint"] = fingerprint(e.presheaves[i]);
    objects.push_back(o);
  }
  return Json{{"kind", "rec-frontier"}, {"category", category_to_json(c)}, {"depth", depth}, {"objects", objects}};
}

std::string input_digest(const SetDiagram& d) {
  std::string text = canonical_dump(diagram_to_json(d));
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json certificate_to_json(const DecompositionCertificate& cert) {
  const FinCat& c = *cert.shape;
  Json stages = Json::array();
  for (const auto& s : cert.stages) {
    Json o = graph_to_json(c, s.graph);
    o["section"] = c.name(s.section);
    o["value"] = s.value.elements();
    o["quotient"] = s.quotient;
    stages.push_back(o);
  }
  Json connections = Json::array();
  for (const auto& k : cert.connections)
    connections.push_back(
        {{"from", k.from}, {"to", k.to}, {"representative", c.name(k.representative)}, {"function", k.function}});
  Json cospans = Json::array();
  for (const auto& w : cert.cospans)
    cospans.push_back({{"left", w.left},
                       {"right", w.right},
                       {"apex", w.apex},
                       {"from_left", w.from_left},
                       {"from_right", w.from_right}});
  Json coeqs = Json::array();
  for (const auto& w : cert.coequalizers) coeqs.push_back({{"first", w.first}, {"second", w.second}, {"map", w.map}});
  return Json{{"kind", cert.kind},
              {"version", cert.version},
              {"digest", cert.digest},
              {"input", diagram_to_json(cert.diagram)},
              {"stages", stages},
              {"connections", connections},
              {"cospans", cospans},
              {"coequalizers", coeqs},
              {"colimit", {{"elements", cert.colimit.elements()}, {"legs", cert.legs}}},
              {"oracle", cert.oracle.elements()},
              {"bijection", cert.bijection}};
}

DecompositionCertificate certificate_from_json(const Json& j) {
  const std::string where = "certificate";
  DecompositionCertificate cert;
  cert.kind = str(field(j, "kind", where), where + ".kind");
  const Json& version = field(j, "version", where);
  if (!version.is_number_integer()) parse_fail(where + ".version", "expected an integer");
  cert.version = version.get<int>();
  cert.digest = str(field(j, "digest", where), where + ".digest");
  cert.diagram = diagram_from_json(field(j, "input", where));
  cert.shape = cert.diagram.shape_ref();
  const FinCat& c = *cert.shape;

  const Json& stages = array(field(j, "stages", where), where + ".stages");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string loc = where + ".stages[" + std::to_string(i) + "]";
    CertStage s;
    s.graph = {object_ref(c, field(stages[i], "edge", loc), loc + ".edge"),
               object_ref(c, field(stages[i], "vertex", loc), loc + ".vertex"),
               morphism_ref(c, field(stages[i], "p", loc), loc + ".p"),
               morphism_ref(c, field(stages[i], "q", loc), loc + ".q")};
    s.section = morphism_ref(c, field(stages[i], "section", loc), loc + ".section");
    s.value = finset(field(stages[i], "value", loc), loc + ".value");
    s.quotient = indices(field(stages[i], "quotient", loc), loc + ".quotient");
    cert.stages.push_back(std::move(s));
  }
  const Json& conns = array(field(j, "connections", where), where + ".connections");
  for (std::size_t i = 0; i < conns.size(); ++i) {
    const std::string loc = where + ".connections[" + std::to_string(i) + "]";
    cert.connections.push_back({index(field(conns[i], "from", loc), loc + ".from"),
                                index(field(conns[i], "to", loc), loc + ".to"),
                                morphism_ref(c, field(conns[i], "representative", loc), loc + ".representative"),
                                indices(field(conns[i], "function", loc), loc + ".function")});
  }
  const Json& cospans = array(field(j, "cospans", where), where + ".cospans");
  for (std::size_t i = 0; i < cospans.size(); ++i) {
    const std::string loc = where + ".cospans[" + std::to_string(i) + "]";
    const Json& w = cospans[i];
    cert.cospans.push_back({index(field(w, "left", loc), loc + ".left"), index(field(w, "right", loc), loc + ".right"),
                            index(field(w, "apex", loc), loc + ".apex"),
                            index(field(w, "from_left", loc), loc + ".from_left"),
                            index(field(w, "from_right", loc), loc + ".from_right")});
  }
  const Json& coeqs = array(field(j, "coequalizers", where), where + ".coequalizers");
  for (std::size_t i = 0; i < coeqs.size(); ++i) {
    const std::string loc = where + ".coequalizers[" + std::to_string(i) + "]";
    const Json& w = coeqs[i];
    cert.coequalizers.push_back({index(field(w, "first", loc), loc + ".first"),
                                 index(field(w, "second", loc), loc + ".second"),
                                 index(field(w, "map", loc), loc + ".map")});
  }
  const Json& colim = field(j, "colimit", where);
  cert.colimit = finset(field(colim, "elements", where + ".colimit"), where + ".colimit.elements");
  const Json& legs = array(field(colim, "legs", where + ".colimit"), where + ".colimit.legs");
  for (std::size_t i = 0; i < legs.size(); ++i)
    cert.legs.push_back(indices(legs[i], where + ".colimit.legs[" + std::to_string(i) + "]"));
  cert.oracle = finset(field(j, "oracle", where), where + ".oracle");
  cert.bijection = indices(field(j, "bijection", where), where + ".bijection");
  return cert;
}

}  // namespace siftcat
