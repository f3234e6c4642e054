#pragma once

// The category of finite sets: functions, relations, set-valued diagrams over
// finite shapes, brute-force (co)limits with universal-property verifiers, and
// the quotient-by-generated-equivalence pipeline for reflexive coequalizers.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "siftcat/fincat.hpp"

namespace siftcat {

// Ordered list of distinct element identifiers. Copies share storage.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<std::string> elements);

  static FinSet numbered(std::size_t n, std::string_view prefix = "");

  std::size_t size() const { return data_->names.size(); }
  bool empty() const { return size() == 0; }
  const std::string& name(std::size_t i) const { return data_->names[i]; }
  const std::vector<std::string>& elements() const { return data_->names; }
  std::optional<std::size_t> find(std::string_view element) const;
  std::size_t index(std::string_view element) const;  // throws CarrierMismatch

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.data_ == b.data_ || a.data_->names == b.data_->names;
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

// Index-level map between element positions.
using Mapping = std::vector<std::size_t>;

struct FinFunction {
  FinSet domain;
  FinSet codomain;
  Mapping map;

  std::size_t operator()(std::size_t x) const { return map[x]; }
  bool is_injective() const;
  bool is_surjective() const;

  static FinFunction identity(const FinSet& s);
  // Throws CarrierMismatch unless map is total with values in the codomain.
  static FinFunction make(FinSet domain, FinSet codomain, Mapping map);

  friend bool operator==(const FinFunction&, const FinFunction&) = default;
};

// g ∘ f; throws CarrierMismatch when f.codomain != g.domain.
FinFunction compose(const FinFunction& g, const FinFunction& f);

class Relation {
 public:
  Relation(FinSet left, FinSet right);

  static Relation diagonal(const FinSet& s);

  const FinSet& left() const { return left_; }
  const FinSet& right() const { return right_; }
  bool contains(std::size_t a, std::size_t b) const { return bits_[a * right_.size() + b] != 0; }
  void insert(std::size_t a, std::size_t b) { bits_[a * right_.size() + b] = 1; }
  std::size_t size() const;
  bool includes(const Relation& other) const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  FinSet left_;
  FinSet right_;
  std::vector<char> bits_;
};

// {(x, z) : ∃y (x, y) ∈ r, (y, z) ∈ s}; requires r.right == s.left.
Relation rel_compose(const Relation& s, const Relation& r);
Relation rel_op(const Relation& r);
// Image of ⟨fp, fq⟩ : E → X × X.
Relation rel_of_graph(const FinFunction& fp, const FinFunction& fq);

struct ClosureResult {
  Relation equivalence;
  std::size_t steps;  // number of strictly growing iterations
};
// Stabilised union of R ⊆ R∘R°∘R ⊆ ⋯; throws NotReflexive.
ClosureResult equiv_closure_iterate(const Relation& r);

struct Quotient {
  FinSet quotient;  // named by the least element of each class
  FinFunction map;  // surjection onto the quotient
};

Quotient quotient_by(const FinSet& s, const Relation& equivalence);
// Throws NotParallel.
Quotient coequalizer(const FinFunction& f, const FinFunction& g);
// Throws NotReflexive when fp, fq have no common section.
Quotient reflexive_coeq_via_relations(const FinFunction& fp, const FinFunction& fq);
std::optional<FinFunction> common_section(const FinFunction& fp, const FinFunction& fq);

struct ImageFactorization {
  FinFunction surjection;
  FinFunction injection;
};
ImageFactorization image_factorization(const FinFunction& f);

// Kernel pair of f as a relation on its domain.
Relation kernel_pair(const FinFunction& f);

// ---------------------------------------------------------------------------
// Set-valued diagrams

// Covariant functor from a finite shape into finite sets.
class SetDiagram {
 public:
  SetDiagram() = default;
  // Throws NotFunctorial / CarrierMismatch.
  SetDiagram(CatRef shape, std::vector<FinSet> sets, std::vector<Mapping> maps);

  const FinCat& shape() const { return *shape_; }
  const CatRef& shape_ref() const { return shape_; }
  const FinSet& at(ObjId x) const { return sets_[x.index()]; }
  const Mapping& map(MorId f) const { return maps_[f.index()]; }
  FinFunction function(MorId f) const;
  const std::vector<FinSet>& sets() const { return sets_; }
  const std::vector<Mapping>& maps() const { return maps_; }

 private:
  CatRef shape_;
  std::vector<FinSet> sets_;
  std::vector<Mapping> maps_;
};

struct Cocone {
  FinSet apex;
  std::vector<Mapping> legs;  // per shape object, F(x) → apex
};
using Cone = Cocone;  // legs run apex → F(x)

Cocone colimit(const SetDiagram& d);
Cone limit(const SetDiagram& d);

bool is_cocone(const SetDiagram& d, const Cocone& c);
bool is_cone(const SetDiagram& d, const Cone& c);

// Universal property against every cocone (cone) into (out of) a set of
// size at most max_test_size, found by exhaustive enumeration.
bool verify_colimit(const SetDiagram& d, const Cocone& c, std::size_t max_test_size = 2);
bool verify_limit(const SetDiagram& d, const Cone& c, std::size_t max_test_size = 2);

SetDiagram pointwise_product(const SetDiagram& f, const SetDiagram& g);

// Canonical comparison colim(F×G) → colim F × colim G.
struct ProductComparison {
  std::size_t source_size;
  std::size_t target_size;
  bool bijective;
};
ProductComparison compare_product_colimit(const SetDiagram& f, const SetDiagram& g);

// Calls visit(mapping) for every function {0..n-1} → {0..k-1}; stops early
// when visit returns false.
template <class Visit>
bool for_each_function(std::size_t n, std::size_t k, Visit&& visit) {
  if (n > 0 && k == 0) return true;
  Mapping m(n, 0);
  while (true) {
    if (!visit(static_cast<const Mapping&>(m))) return false;
    std::size_t i = 0;
    while (i < n && ++m[i] == k) m[i++] = 0;
    if (i == n) return true;
  }
}

}  // namespace siftcat
