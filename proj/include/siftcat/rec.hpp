#pragma once

// Finite model of the reflexive-coequalizer completion: objects are reflexive
// graphs, morphisms are homotopy classes of vertex morphisms, presented
// pointwise as quotient presheaves.

#include <optional>
#include <vector>

#include "siftcat/graphcalc.hpp"
#include "siftcat/presheaf.hpp"

namespace siftcat {

struct RecObject {
  GraphOnObject graph;
  MorId section;
  friend bool operator==(const RecObject&, const RecObject&) = default;
};

// Throws SectionMissing unless g is reflexive; uses the least section.
RecObject make_rec_object(const FinCat& c, const GraphOnObject& g);
RecObject identity_rec_object(const FinCat& c, ObjId x);

// Equivalence on hom(W, Y) generated by C(W, s), C(W, t) for a graph on Y.
class HomClasses {
 public:
  HomClasses(const FinCat& c, ObjId w, const GraphOnObject& g);

  std::span<const MorId> members() const { return hom_; }
  // Least member of the class of f (identifier order).
  MorId canonical(MorId f) const;
  bool same(MorId a, MorId b) const { return canonical(a) == canonical(b); }
  // One canonical member per class, in identifier order.
  std::vector<MorId> representatives() const;

 private:
  std::span<const MorId> hom_;
  std::vector<std::size_t> position_;  // by morphism index; npos outside hom
  std::vector<MorId> canonical_;       // by position
};

struct RecHom {
  RecObject source;
  RecObject target;
  MorId representative;  // canonical X → Y
  friend bool operator==(const RecHom&, const RecHom&) = default;
};

// Whether f̃ : X → Y descends to a morphism U → V.
bool descends(const FinCat& c, const RecObject& u, const RecObject& v, MorId f);
// Throws CheckFailed when f does not descend.
RecHom make_rec_hom(const FinCat& c, const RecObject& u, const RecObject& v, MorId f);
std::vector<RecHom> rec_hom(const FinCat& c, const RecObject& u, const RecObject& v);
RecHom rec_id(const FinCat& c, const RecObject& u);
// g ∘ f; throws NotComposable.
RecHom rec_compose(const FinCat& c, const RecHom& g, const RecHom& f);

Presheaf as_presheaf(const CatRef& c, const RecObject& u);
// Component at W sends the class of a : W → X to the class of f̃∘a.
NatTrans as_presheaf_map(const CatRef& c, const RecHom& f);

struct HomotopyStep {
  MorId k;       // X → H
  bool forward;  // forward: s∘k ⇝ t∘k; backward: t∘k ⇝ s∘k
};
struct Homotopy {
  MorId from;
  MorId to;
  std::vector<HomotopyStep> steps;
};
// Shortest homotopy from f to g through the graph of v (breadth first, ties by
// identifier order of k).
std::optional<Homotopy> homotopy_search(const FinCat& c, MorId f, MorId g, const RecObject& v);
bool verify_homotopy(const FinCat& c, const Homotopy& h, const RecObject& v);

struct ReflexiveCoeqClosure {
  GraphOnObject k;            // pasted concatenation, reflexive
  MorId k_section;
  Homotopy to_fh;             // 1_Y ⇝ f̃h̃
  Homotopy from_gh;           // g̃h̃ ⇝ 1_Y
  RecObject l;                // K · H
  PresheafQuotient coequalizer;  // of as_presheaf(f), as_presheaf(g)
  NatTrans iso;               // as_presheaf(l) → coequalizer.value
};
// f, g : U ⇉ V with common section h. Throws SectionMissing, PullbackAbsent,
// CheckFailed.
ReflexiveCoeqClosure rec_reflexive_coeq_closure(PullbackTable& pb, const RecHom& f, const RecHom& g,
                                                const RecHom& h);

struct RecCospan {
  RecObject apex;
  RecHom from_left;
  RecHom from_right;
};
// Throws NotSifted, PullbackAbsent.
RecCospan rec_cospan(PullbackTable& pb, const RecObject& u, const RecObject& v);

struct RecCoequalizer {
  RecObject apex;
  RecHom map;  // V → apex, with map∘f = map∘g
};
// Throws NotSifted, PullbackAbsent.
RecCoequalizer rec_coequalize(PullbackTable& pb, const RecHom& f, const RecHom& g);

struct RecEnumeration {
  std::vector<RecObject> objects;
  std::vector<Presheaf> presheaves;
  std::vector<std::size_t> depth;  // round in which each object appeared
};
struct RecBudget {
  std::size_t max_objects = 200;
  // When false, constructions needing an absent pullback are skipped instead
  // of requiring has_pullbacks up front.
  bool require_pullbacks = true;
};
// Depth 0: identity graphs. Each further round adds reflexive graphs of C,
// concatenations of frontier graphs, and reflexivized pushforwards of
// frontier graphs along morphisms out of their vertices, deduplicated by
// presheaf isomorphism. Throws BudgetExceeded, PullbackAbsent.
RecEnumeration enumerate_rec(const CatRef& c, std::size_t depth, const RecBudget& budget = {});

}  // namespace siftcat
