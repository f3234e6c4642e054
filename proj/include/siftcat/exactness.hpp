#pragma once

// Exactness properties of finite sets: effective equivalence relations and
// pullback-stable surjections, filtered colimits commuting with finite limits,
// products of surjections, and filtered colimits commuting with products.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"

namespace siftcat {

// a × b together with the component of every product object and morphism.
struct ProductShape {
  CatRef left;
  CatRef right;
  CatRef shape;
  std::vector<std::pair<ObjId, ObjId>> objects;
  std::vector<std::pair<MorId, MorId>> components;

  ObjId object(ObjId a, ObjId b) const { return ObjId(a.index() * right->num_objects() + b.index()); }
  MorId morphism(MorId f, MorId g) const { return table[f.index() * right->num_morphisms() + g.index()]; }

  std::vector<MorId> table;
};
ProductShape product_shape(const CatRef& a, const CatRef& b);

// The diagram x ↦ d(π(x)) along a product projection.
SetDiagram pull_back_left(const ProductShape& ps, const SetDiagram& d);
SetDiagram pull_back_right(const ProductShape& ps, const SetDiagram& d);

struct ComparisonReport {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  bool well_defined = false;
  bool bijective = false;
  bool ok() const { return well_defined && bijective; }
};

// colim_J lim_L D → lim_L colim_J D for D on J × L (J the left factor).
ComparisonReport colim_lim_comparison(const ProductShape& jl, const SetDiagram& d);

// colim over ∏ J_i of ∏ F_i → ∏ colim F_i; the family must be nonempty.
ComparisonReport product_colimit_comparison(const std::vector<SetDiagram>& family);

// Limit shapes: a → c ← b, two discrete objects, a ⇉ b.
FinCat cospan_shape();
FinCat parallel_pair_shape();

struct ExactnessCheck {
  std::string name;
  std::size_t samples = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return samples > 0 && counterexamples.empty(); }
};

struct ExactnessParams {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t max_set_size = 3;
};

struct ExactnessReport {
  std::uint64_t seed = 0;
  std::vector<ExactnessCheck> checks;  // effective equivalences, filtered limits,
                                      // product surjections, product colimits
  bool ok() const;
};

// The four checks run concurrently, each with its own generator derived from
// the seed; the report is deterministic.
ExactnessReport exactness_suite(const ExactnessParams& params);
std::string describe(const ExactnessReport& report);

}  // namespace siftcat
