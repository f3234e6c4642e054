#pragma once

// Seeded random instances: categories, set-valued diagrams and graphs.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "siftcat/catalog.hpp"
#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"
#include "siftcat/presheaf.hpp"

namespace siftcat {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct ConcreteParams {
  std::size_t max_objects = 3;
  std::size_t max_carrier = 3;
  std::size_t max_generators = 4;
  std::size_t max_morphisms = 25;
};

// Subcategory of finite sets generated by random functions; nullopt when the
// closure exceeds the morphism cap.
std::optional<ConcreteCategory> random_concrete_category(Rng& rng, const ConcreteParams& p = {});

// Random partial order on n elements "p0".."p{n-1}" (generating pairs i<j
// chosen with the given probability).
FinCat random_poset(Rng& rng, std::size_t n, double density = 0.4);

// Random lattice: a random poset with a bottom and top adjoined, retried
// until it is a lattice (every pair has a meet and a join).
FinCat random_lattice(Rng& rng, std::size_t inner);

// Covariant functor C → FinSet: a coproduct of covariant representables
// C(x, −), quotiented by a random congruence until every value has at most
// max_set_size elements. May be empty when generators == 0.
SetDiagram random_diagram(Rng& rng, const CatRef& c, std::size_t max_set_size,
                          std::size_t max_generators = 2);

// Random presheaf on base (op must be opposite(base)), same recipe as above.
Presheaf random_presheaf(Rng& rng, const CatRef& base, const CatRef& op, std::size_t max_set_size,
                         std::size_t max_generators = 2);

// Random parallel pair: nullopt when no object pair has a nonempty hom.
struct RandomGraph {
  ObjId edge;
  ObjId vertex;
  MorId p;
  MorId q;
};
std::optional<RandomGraph> random_graph(Rng& rng, const FinCat& c);

// Random function tables and reflexive pairs of finite functions.
Mapping random_mapping(Rng& rng, std::size_t n, std::size_t k);
struct RandomReflexivePair {
  FinFunction p;
  FinFunction q;
};
RandomReflexivePair random_reflexive_pair(Rng& rng, std::size_t max_vertices, std::size_t max_edges);

}  // namespace siftcat
