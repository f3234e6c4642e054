#include "siftcat/graphcalc.hpp"

namespace siftcat {

GraphOnObject make_graph(const FinCat& c, MorId p, MorId q) {
  if (c.src(p) != c.src(q) || c.dst(p) != c.dst(q))
    throw Error(ErrorKind::NotParallel, c.name(p) + " and " + c.name(q) + " are not parallel");
  return {c.src(p), c.dst(p), p, q};
}

GraphOnObject identity_graph(const FinCat& c, ObjId x) { return {x, x, c.identity(x), c.identity(x)}; }

std::string describe(const FinCat& c, const GraphOnObject& g) {
  return c.name(g.p) + ", " + c.name(g.q) + " : " + c.name(g.edge) + " => " + c.name(g.vertex);
}

std::optional<MorId> is_reflexive(const FinCat& c, const GraphOnObject& g) {
  const MorId one = c.identity(g.vertex);
  for (MorId r : c.hom(g.vertex, g.edge))
    if (c.compose_unchecked(g.p, r) == one && c.compose_unchecked(g.q, r) == one) return r;
  return std::nullopt;
}

std::optional<Containment> contains(const FinCat& c, const GraphOnObject& from, const GraphOnObject& into) {
  if (from.vertex != into.vertex)
    throw Error(ErrorKind::VertexMismatch, "graphs on " + c.name(from.vertex) + " and " + c.name(into.vertex));
  for (MorId f : c.hom(from.edge, into.edge))
    if (c.compose_unchecked(into.p, f) == from.p && c.compose_unchecked(into.q, f) == from.q)
      return Containment{from, into, f};
  return std::nullopt;
}

bool verify_containment(const FinCat& c, const Containment& k) {
  if (c.src(k.witness) != k.from.edge || c.dst(k.witness) != k.into.edge) return false;
  return c.compose_unchecked(k.into.p, k.witness) == k.from.p && c.compose_unchecked(k.into.q, k.witness) == k.from.q;
}

Concatenation concatenate(PullbackTable& pb, const GraphOnObject& first, const GraphOnObject& second) {
  const FinCat& c = pb.category();
  if (first.vertex != second.vertex)
    throw Error(ErrorKind::VertexMismatch, "graphs on " + c.name(first.vertex) + " and " + c.name(second.vertex));
  const PullbackSquare& sq = pb.require(first.q, second.p);
  return {{sq.apex, first.vertex, c.compose_unchecked(first.p, sq.to_left), c.compose_unchecked(second.q, sq.to_right)},
          sq};
}

Concatenation concatenate(const FinCat& c, const GraphOnObject& first, const GraphOnObject& second) {
  if (first.vertex != second.vertex)
    throw Error(ErrorKind::VertexMismatch, "graphs on " + c.name(first.vertex) + " and " + c.name(second.vertex));
  auto sq = chosen_pullback(c, first.q, second.p);
  if (!sq)
    throw Error(ErrorKind::PullbackAbsent, "no pullback of " + c.name(first.q) + " and " + c.name(second.p));
  return {{sq->apex, first.vertex, c.compose_unchecked(first.p, sq->to_left), c.compose_unchecked(second.q, sq->to_right)},
          *sq};
}

GraphOnObject opposite_graph(const GraphOnObject& g) { return {g.edge, g.vertex, g.q, g.p}; }

namespace {

MorId require_mediator(const FinCat& c, const PullbackSquare& sq, MorId a, MorId b, const char* what) {
  auto u = mediate(c, sq, a, b);
  if (!u) throw Error(ErrorKind::CheckFailed, std::string("no mediating morphism for ") + what);
  return *u;
}

}  // namespace

Containment contained_in_left_concatenation(const FinCat& c, const GraphOnObject& reflexive, MorId r,
                                            const GraphOnObject& other, const Concatenation& cat) {
  (void)reflexive;
  MorId u = require_mediator(c, cat.square, c.compose(r, other.p), c.identity(other.edge), "(r s, 1)");
  return {other, cat.graph, u};
}

Containment contained_in_right_concatenation(const FinCat& c, const GraphOnObject& other,
                                             const GraphOnObject& reflexive, MorId r, const Concatenation& cat) {
  (void)reflexive;
  MorId u = require_mediator(c, cat.square, c.identity(other.edge), c.compose(r, other.q), "(1, r t)");
  return {other, cat.graph, u};
}

MorId concatenation_section(const FinCat& c, const Concatenation& cat, MorId r_first, MorId r_second) {
  return require_mediator(c, cat.square, r_first, r_second, "(r, r')");
}

Reflexivization reflexivize(PullbackTable& pb, const GraphOnObject& g) {
  const FinCat& c = pb.category();
  const ObjId x = g.vertex;
  const MorId one = c.identity(x);
  CospanCategory k(pb.category_ref(), g.edge, x);
  auto start = k.find({x, g.p, one});
  auto end = k.find({x, g.q, one});
  auto path = find_zigzag(k, *start, *end);
  if (!path)
    throw Error(ErrorKind::NotSifted, "cospans (" + c.name(g.p) + ", 1) and (" + c.name(g.q) + ", 1) are not connected");

  // Normalise to X_0 → X_1 ← X_2 → ⋯ ← X_2n: merge runs of equal direction,
  // pad with identities at either end.
  struct Step {
    std::size_t from, to;
    MorId via;  // forward: apex(from) → apex(to); backward: apex(to) → apex(from)
    bool forward;
  };
  std::vector<Step> steps;
  for (const auto& s : *path) {
    if (!steps.empty() && steps.back().forward == s.forward) {
      Step& last = steps.back();
      last.via = s.forward ? c.compose(s.via, last.via) : c.compose(last.via, s.via);
      last.to = s.to;
    } else {
      steps.push_back({s.from, s.to, s.via, s.forward});
    }
  }
  if (!steps.empty() && !steps.front().forward) {
    std::size_t a = steps.front().from;
    steps.insert(steps.begin(), Step{a, a, c.identity(k.cospan(a).apex), true});
  }
  if (!steps.empty() && steps.back().forward) {
    std::size_t b = steps.back().to;
    steps.push_back(Step{b, b, c.identity(k.cospan(b).apex), false});
  }

  // Valley V with s_V : V → X_0, r_V : V → current right valley, and legs from
  // G and X.
  ObjId v = x;
  MorId s_v = one, r_v = one, a_v = g.p, b_v = one;
  std::size_t peaks = 0;
  for (std::size_t i = 0; i + 1 < steps.size(); i += 2) {
    const Step& up = steps[i];        // X_2k → X_2k+1
    const Step& down = steps[i + 1];  // X_2k+2 → X_2k+1
    const Cospan& next = k.cospan(down.to);
    const PullbackSquare& sq = pb.require(c.compose(up.via, r_v), down.via);
    MorId a = mediate(c, sq, a_v, next.left).value();
    MorId b = mediate(c, sq, b_v, next.right).value();
    v = sq.apex;
    s_v = c.compose(s_v, sq.to_left);
    r_v = sq.to_right;
    a_v = a;
    b_v = b;
    ++peaks;
  }
  Reflexivization out{{v, x, s_v, r_v}, a_v, b_v, path->size(), peaks};
  // postconditions
  if (c.compose(out.graph.p, out.section) != one || c.compose(out.graph.q, out.section) != one ||
      c.compose(out.graph.p, out.containment) != g.p || c.compose(out.graph.q, out.containment) != g.q)
    throw Error(ErrorKind::CheckFailed, "reflexivization postcondition failed for " + describe(c, g));
  return out;
}

Reflexivization reflexivize(const CatRef& c, const GraphOnObject& g) {
  PullbackTable pb(c);
  return reflexivize(pb, g);
}

bool coequalizes(const SetDiagram& f, const GraphOnObject& g, const Mapping& h) {
  const Mapping& fp = f.map(g.p);
  const Mapping& fq = f.map(g.q);
  for (std::size_t e = 0; e < fp.size(); ++e)
    if (h[fp[e]] != h[fq[e]]) return false;
  return true;
}

}  // namespace siftcat
