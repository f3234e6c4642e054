#pragma once

// Finite presheaves C^op → FinSet: Yoneda, categories of elements, Sind / Ind
// membership, natural transformations and isomorphism search, left Kan
// extension along full inclusions, and the sifted-colimit saturation oracle.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"

namespace siftcat {

class Presheaf {
 public:
  Presheaf() = default;
  // actions[f] : φ(dst f) → φ(src f). Throws NotFunctorial / CarrierMismatch.
  Presheaf(CatRef base, std::vector<FinSet> sets, std::vector<Mapping> actions);

  const FinCat& base() const { return *base_; }
  const CatRef& base_ref() const { return base_; }
  const FinSet& at(ObjId x) const { return sets_[x.index()]; }
  const Mapping& action(MorId f) const { return actions_[f.index()]; }
  const std::vector<FinSet>& sets() const { return sets_; }
  const std::vector<Mapping>& actions() const { return actions_; }
  std::size_t total_size() const;

  // The same data as a covariant diagram on op, which must be opposite(base).
  SetDiagram as_diagram(const CatRef& op) const;

 private:
  CatRef base_;
  std::vector<FinSet> sets_;
  std::vector<Mapping> actions_;
};

// Reads a covariant diagram on op = opposite(base) back as a presheaf on base.
Presheaf from_diagram(const CatRef& base, const SetDiagram& d);

// Component per base object.
using NatTrans = std::vector<Mapping>;

bool is_natural(const Presheaf& from, const Presheaf& to, const NatTrans& a);
NatTrans identity_nat(const Presheaf& p);
NatTrans compose_nat(const NatTrans& b, const NatTrans& a);  // b ∘ a

// Enumerates natural transformations by constraint propagation; visit returns
// false to stop. When bijective is set only natural isomorphisms are produced.
void for_each_nat(const Presheaf& from, const Presheaf& to,
                  const std::function<bool(const NatTrans&)>& visit, bool bijective = false);
std::size_t count_nat(const Presheaf& from, const Presheaf& to);
std::optional<NatTrans> find_iso(const Presheaf& a, const Presheaf& b);
bool isomorphic(const Presheaf& a, const Presheaf& b);

// Isomorphism-invariant summary: value sizes, then image sizes of actions.
std::vector<std::size_t> fingerprint(const Presheaf& p);

Presheaf yoneda(const CatRef& c, ObjId x);
Presheaf yoneda(const CatRef& c, std::string_view object);  // throws UnknownObject
Presheaf empty_presheaf(const CatRef& c);
Presheaf terminal_presheaf(const CatRef& c);

struct ElementsCategory {
  CatRef category;  // objects "(X,x)", morphisms "(f,y)"
  FunctorData projection;
  std::vector<std::pair<ObjId, std::size_t>> element;  // per object of category
};
ElementsCategory category_of_elements(const Presheaf& p);

SiftedVerdict sind_verdict(const Presheaf& p);
FilteredVerdict ind_verdict(const Presheaf& p);
bool is_in_Sind(const Presheaf& p);
bool is_in_Ind(const Presheaf& p);

// Pointwise constructions.
Presheaf restrict(const Presheaf& p, const FunctorData& inclusion);
Presheaf product(const Presheaf& a, const Presheaf& b);
Presheaf equalizer(const Presheaf& a, const Presheaf& b, const NatTrans& f, const NatTrans& g);
struct PresheafQuotient {
  Presheaf value;
  NatTrans map;  // target → value
};
// Pointwise coequalizer of f, g : a ⇉ b.
PresheafQuotient coequalizer(const Presheaf& a, const Presheaf& b, const NatTrans& f, const NatTrans& g);

// Diagram of presheaves over a shape: objects[j] and nat-trans per morphism.
struct PresheafDiagram {
  CatRef shape;
  std::vector<Presheaf> objects;
  std::vector<NatTrans> maps;
};
struct PresheafColimit {
  Presheaf value;
  std::vector<NatTrans> legs;
};
PresheafColimit colimit(const PresheafDiagram& d);

// Lan along the full inclusion I : D → C, computed pointwise as a colimit over
// (W ↓ I)^op. Throws NotFullyFaithful.
Presheaf left_kan_extend(const Presheaf& psi, const FunctorData& inclusion);

// All presheaves on c with every value of size ≤ n, up to isomorphism,
// in a deterministic order. Throws BudgetExceeded past max_results.
std::vector<Presheaf> enumerate_presheaves(const CatRef& c, std::size_t n,
                                           std::size_t max_results = 100000);

// Shapes used by the saturation oracle: the point, the arrow, the idempotent
// monoid and the walking reflexive pair (only those passing is_sifted and with
// at most max_objects objects are used).
std::vector<CatRef> sifted_shape_catalog(std::size_t max_objects);

struct SaturationBudget {
  std::size_t max_members = 2000;
  std::size_t max_diagrams = 5000000;
  // Values of intermediate colimits may exceed n up to this bound; 0 means
  // max(n, largest value of a representable).
  std::size_t working_bound = 0;
};
struct SaturationResult {
  std::vector<Presheaf> members;
  std::size_t bound = 0;
  std::vector<Presheaf> within_bound() const;
  std::size_t rounds = 0;
  std::size_t diagrams = 0;
};
// Closure of the representables under colimits of shapes from the catalog.
// Intermediate stages are kept up to the working bound; members() lists every
// presheaf reached, within_bound() those with all values ≤ n.
// Throws BudgetExceeded.
SaturationResult sind_closure_bruteforce(const CatRef& c, std::size_t n, std::size_t shape_bound = 4,
                                         const SaturationBudget& budget = {});

// Index of a member isomorphic to p, if any.
std::optional<std::size_t> find_isomorphic(const std::vector<Presheaf>& pool, const Presheaf& p);

}  // namespace siftcat
