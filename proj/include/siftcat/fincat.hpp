#pragma once

// Finitely presented categories given by total composition tables, together
// with the structural predicates (connectedness, siftedness, filteredness),
// chosen pullbacks, cospan categories and functors between finite categories.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "siftcat/error.hpp"
#include "siftcat/ids.hpp"

namespace siftcat {

class FinCat;
using CatRef = std::shared_ptr<const FinCat>;

// Text-level description of a category, as read from a category file.
// Identities are implicit and named "id_<object>".
struct RawCategory {
  struct Morphism {
    std::string id;
    std::string src;
    std::string dst;
  };
  // compose(second, first) = result, i.e. second ∘ first.
  struct Composite {
    std::string second;
    std::string first;
    std::string result;
  };

  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<Composite> compose;
};

std::string identity_name(std::string_view object);

class FinCat {
 public:
  FinCat() = default;

  std::size_t num_objects() const { return object_names_.size(); }
  std::size_t num_morphisms() const { return morphism_names_.size(); }

  const std::string& name(ObjId x) const { return object_names_[x.index()]; }
  const std::string& name(MorId f) const { return morphism_names_[f.index()]; }

  ObjId src(MorId f) const { return src_[f.index()]; }
  ObjId dst(MorId f) const { return dst_[f.index()]; }
  MorId identity(ObjId x) const { return identity_[x.index()]; }
  bool is_identity(MorId f) const { return identity_[src(f).index()] == f; }

  bool composable(MorId second, MorId first) const { return dst(first) == src(second); }
  // second ∘ first; throws NotComposable when dst(first) != src(second).
  MorId compose(MorId second, MorId first) const;
  std::optional<MorId> try_compose(MorId second, MorId first) const;
  // Caller guarantees composability.
  MorId compose_unchecked(MorId second, MorId first) const {
    return MorId(table_[second.index() * num_morphisms() + first.index()]);
  }

  // Morphisms x → y ordered by identifier.
  std::span<const MorId> hom(ObjId x, ObjId y) const {
    return homs_[x.index() * num_objects() + y.index()];
  }
  // All morphisms out of / into an object, ordered by identifier.
  std::span<const MorId> out(ObjId x) const { return out_[x.index()]; }
  std::span<const MorId> in(ObjId x) const { return in_[x.index()]; }

  // Objects and morphisms in identifier order.
  std::span<const ObjId> objects_by_name() const { return objects_sorted_; }
  std::span<const MorId> morphisms_by_name() const { return morphisms_sorted_; }

  // Position in identifier order; lexicographic tie-breaking uses these.
  std::size_t rank(ObjId x) const { return object_rank_[x.index()]; }
  std::size_t rank(MorId f) const { return morphism_rank_[f.index()]; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  ObjId object(std::string_view name) const;     // throws UnknownObject
  MorId morphism(std::string_view name) const;   // throws DanglingIdentifier

  bool is_preorder() const;

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  friend class CategoryBuilder;

  void index();

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::vector<ObjId> src_;
  std::vector<ObjId> dst_;
  std::vector<MorId> identity_;
  std::vector<int> table_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::vector<MorId>> out_;
  std::vector<std::vector<MorId>> in_;
  std::vector<ObjId> objects_sorted_;
  std::vector<MorId> morphisms_sorted_;
  std::vector<std::size_t> object_rank_;
  std::vector<std::size_t> morphism_rank_;
  std::unordered_map<std::string, int> object_index_;
  std::unordered_map<std::string, int> morphism_index_;
};

// Incremental construction of a FinCat. Every object gets its identity
// "id_<name>" at creation; composites with identities are implied.
class CategoryBuilder {
 public:
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId src, ObjId dst);
  void set_composite(MorId second, MorId first, MorId result);

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;
  std::size_t num_objects() const { return cat_.object_names_.size(); }
  std::size_t num_morphisms() const { return cat_.morphism_names_.size(); }

  // Validates the unit laws, totality on composable pairs and associativity.
  FinCat build() &&;

 private:
  FinCat cat_;
  std::map<std::pair<int, int>, int> composites_;
};

FinCat validate_category(const RawCategory& raw);
RawCategory to_raw(const FinCat& c);

FinCat opposite(const FinCat& c);
FinCat product(const FinCat& a, const FinCat& b);
FinCat terminal_category(std::string object = "*");
FinCat discrete_category(const std::vector<std::string>& objects);

bool is_connected(const FinCat& c);

struct SiftedVerdict {
  enum class Failure { None, Empty, NoCospan, Disconnected };
  bool sifted = false;
  Failure failure = Failure::None;
  ObjId left;
  ObjId right;
  explicit operator bool() const { return sifted; }
};
SiftedVerdict is_sifted(const FinCat& c);

struct FilteredVerdict {
  enum class Failure { None, Empty, NoCospan, NoCoequalizer };
  bool filtered = false;
  Failure failure = Failure::None;
  ObjId left;
  ObjId right;
  MorId first;
  MorId second;
  explicit operator bool() const { return filtered; }
};
FilteredVerdict is_filtered(const FinCat& c);

std::string describe(const FinCat& c, const SiftedVerdict& v);
std::string describe(const FinCat& c, const FilteredVerdict& v);

// A commuting square over the cospan f: X → Z ← Y : g.
struct PullbackSquare {
  ObjId apex;
  MorId to_left;   // apex → X
  MorId to_right;  // apex → Y
};

std::optional<PullbackSquare> chosen_pullback(const FinCat& c, MorId f, MorId g);

// Checks the universal property from scratch: the square commutes and every
// commuting square over (f, g) factors through it by exactly one morphism.
bool verify_pullback(const FinCat& c, MorId f, MorId g, const PullbackSquare& square);

// Unique u : w → apex with to_left∘u = a and to_right∘u = b, if any.
std::optional<MorId> mediate(const FinCat& c, const PullbackSquare& square, MorId a, MorId b);

// Memo of chosen pullbacks, confined to one evaluation.
class PullbackTable {
 public:
  explicit PullbackTable(CatRef c) : cat_(std::move(c)) {}

  const FinCat& category() const { return *cat_; }
  const CatRef& category_ref() const { return cat_; }

  const std::optional<PullbackSquare>& get(MorId f, MorId g);
  // Throws PullbackAbsent.
  const PullbackSquare& require(MorId f, MorId g);

 private:
  CatRef cat_;
  std::unordered_map<long long, std::optional<PullbackSquare>> memo_;
};

struct PullbackReport {
  bool all_exist = true;
  std::optional<std::pair<MorId, MorId>> missing;
};
PullbackReport has_pullbacks(const FinCat& c);

// Category of cospans A → Z ← B over fixed feet, with apex maps commuting
// with both legs.
struct Cospan {
  ObjId apex;
  MorId left;   // A → apex
  MorId right;  // B → apex
  friend bool operator==(const Cospan&, const Cospan&) = default;
};

class CospanCategory {
 public:
  struct Edge {
    MorId via;           // apex(from) → apex(to)
    std::size_t target;  // index of the target cospan
  };

  CospanCategory(CatRef base, ObjId left_foot, ObjId right_foot);

  const FinCat& base() const { return *base_; }
  ObjId left_foot() const { return left_; }
  ObjId right_foot() const { return right_; }
  std::size_t size() const { return cospans_.size(); }
  const Cospan& cospan(std::size_t i) const { return cospans_[i]; }
  std::optional<std::size_t> find(const Cospan& c) const;
  std::span<const Edge> edges_from(std::size_t i) const { return out_[i]; }
  std::span<const Edge> edges_into(std::size_t i) const { return in_[i]; }
  bool is_connected() const;

 private:
  CatRef base_;
  ObjId left_;
  ObjId right_;
  std::vector<Cospan> cospans_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
};

struct ZigzagStep {
  std::size_t from;
  std::size_t to;
  MorId via;
  bool forward;  // true: via is a morphism from → to; false: to → from
};
using Zigzag = std::vector<ZigzagStep>;

// Shortest alternating path in the underlying undirected graph.
std::optional<Zigzag> find_zigzag(const CospanCategory& k, std::size_t a, std::size_t b);

// Functor between finite categories, given by its action on objects and
// morphisms.
struct FunctorData {
  CatRef source;
  CatRef target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  ObjId operator()(ObjId x) const { return on_objects[x.index()]; }
  MorId operator()(MorId f) const { return on_morphisms[f.index()]; }
};

// Throws NotFunctorial naming the first violation.
void validate_functor(const FunctorData& f);
bool is_full_and_faithful(const FunctorData& f);

// Inclusion of the full subcategory on the named objects.
FunctorData full_subcategory(const CatRef& c, const std::vector<ObjId>& objects);

}  // namespace siftcat
