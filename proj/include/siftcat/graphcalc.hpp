#pragma once

// Graphs on an object (parallel pairs p, q : G ⇉ X), containment,
// concatenation by chosen pullbacks, opposites, and reflexivization by
// flattening a zigzag of cospans.

#include <optional>
#include <string>

#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"

namespace siftcat {

struct GraphOnObject {
  ObjId edge;
  ObjId vertex;
  MorId p;
  MorId q;
  friend bool operator==(const GraphOnObject&, const GraphOnObject&) = default;
};

// Throws NotParallel unless p, q share source and target.
GraphOnObject make_graph(const FinCat& c, MorId p, MorId q);
GraphOnObject identity_graph(const FinCat& c, ObjId x);
std::string describe(const FinCat& c, const GraphOnObject& g);

struct Containment {
  GraphOnObject from;
  GraphOnObject into;
  MorId witness;  // from.edge → into.edge
};

// Least r : X → G (identifier order) with p∘r = q∘r = 1_X.
std::optional<MorId> is_reflexive(const FinCat& c, const GraphOnObject& g);

// Least f : G_from → G_into with s∘f = p, t∘f = q. Throws VertexMismatch.
std::optional<Containment> contains(const FinCat& c, const GraphOnObject& from, const GraphOnObject& into);
bool verify_containment(const FinCat& c, const Containment& k);

struct Concatenation {
  GraphOnObject graph;    // (p∘v, t∘w) : K ⇉ X
  PullbackSquare square;  // v = to_left : K → G, w = to_right : K → H
};
// Pullback of q (from first) against s (from second). Throws PullbackAbsent,
// VertexMismatch.
Concatenation concatenate(PullbackTable& pb, const GraphOnObject& first, const GraphOnObject& second);
Concatenation concatenate(const FinCat& c, const GraphOnObject& first, const GraphOnObject& second);

GraphOnObject opposite_graph(const GraphOnObject& g);

// Containments of Δ in Γ·Δ and Δ·Γ for reflexive Γ with section r, built as
// (r∘s, 1) and (1, r∘t).
Containment contained_in_left_concatenation(const FinCat& c, const GraphOnObject& reflexive, MorId r,
                                            const GraphOnObject& other, const Concatenation& cat);
Containment contained_in_right_concatenation(const FinCat& c, const GraphOnObject& other,
                                             const GraphOnObject& reflexive, MorId r, const Concatenation& cat);
// Section (r_Γ, r_Δ) of Γ·Δ for reflexive Γ, Δ.
MorId concatenation_section(const FinCat& c, const Concatenation& cat, MorId r_first, MorId r_second);

struct Reflexivization {
  GraphOnObject graph;  // reflexive, on the same vertex
  MorId containment;    // input edge → graph.edge
  MorId section;        // vertex → graph.edge
  std::size_t zigzag_length = 0;
  std::size_t peaks = 0;
};
// Throws NotSifted when the two cospans (p, 1) and (q, 1) are not connected,
// PullbackAbsent when a peak has no chosen pullback.
Reflexivization reflexivize(PullbackTable& pb, const GraphOnObject& g);
Reflexivization reflexivize(const CatRef& c, const GraphOnObject& g);

// Image of a graph under a covariant set-valued functor, and the coequalizing
// test used by the graph-calculus checks.
bool coequalizes(const SetDiagram& f, const GraphOnObject& g, const Mapping& h);

// Calls visit for one representative h : F(X) → {0..k-1} of every quotient of
// F(X) (restricted growth strings).
template <class Visit>
void for_each_quotient(std::size_t n, Visit&& visit) {
  Mapping m(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      visit(static_cast<const Mapping&>(m));
      return;
    }
    for (std::size_t v = 0; v <= used && v < n; ++v) {
      m[i] = v;
      self(self, i + 1, v == used ? used + 1 : used);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace siftcat
