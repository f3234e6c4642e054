#pragma once

// Named small categories used throughout the tests, the corpus and the CLI.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "siftcat/fincat.hpp"
#include "siftcat/finset.hpp"

namespace siftcat {

// a --f--> b
FinCat arrow_category();

// The walking reflexive pair: d0, d1 : 0 → 1 with common section s : 1 → 0,
// plus the idempotents sd0 = s∘d0 and sd1 = s∘d1. Seven morphisms.
FinCat reflexive_pair_category();

// Preorder on the given elements; leq lists generating pairs (x ≤ y), which
// are closed reflexively and transitively. Morphisms are named "x<y".
// Throws ValidationError when the closure is not antisymmetric.
FinCat poset_category(const std::vector<std::string>& elements,
                      const std::vector<std::pair<std::string, std::string>>& leq);

// Same, without the antisymmetry requirement (isomorphic pairs allowed).
FinCat preorder_category(const std::vector<std::string>& elements,
                         const std::vector<std::pair<std::string, std::string>>& leq);
FinCat codiscrete_category(std::size_t n);  // objects "0".."n-1", one arrow each way

FinCat chain_category(std::size_t n);             // 0 < 1 < ... < n-1
FinCat boolean_lattice_category(std::size_t k);   // subsets of a k-set
FinCat diamond_lattice_category();                // M3
FinCat pentagon_lattice_category();               // N5
FinCat divisor_lattice_category(std::size_t n);   // divisors of n

// One-object category of a finite monoid given by its multiplication table
// on named elements; elements[0] must be the unit. table[a][b] = a·b, which is
// composition a∘b.
FinCat monoid_category(const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& table,
                       std::string object = "*");
FinCat idempotent_monoid_category();   // {1, e}, e·e = e
FinCat cyclic_group_category(std::size_t n);

// A generator of a concrete category: a function between the carriers of two
// objects.
struct ConcreteGenerator {
  std::size_t src;
  std::size_t dst;
  Mapping map;
};

// The subcategory of finite sets generated by the given functions. Objects are
// the named carriers (sizes given); identities are "id_<obj>", the remaining
// morphisms are named "<src>><dst>:<images>". Throws BudgetExceeded when the
// closure exceeds max_morphisms.
struct ConcreteCategory {
  FinCat category;
  std::vector<std::size_t> sizes;  // carrier size per object
  std::vector<Mapping> maps;       // underlying function per morphism
};
ConcreteCategory concrete_category(const std::vector<std::string>& objects,
                                   const std::vector<std::size_t>& sizes,
                                   const std::vector<ConcreteGenerator>& generators,
                                   std::size_t max_morphisms = 64);

// Injections between {0..k-1}, 0 <= k <= n (objects "0".."n").
FinCat injections_category(std::size_t n);

// The forgetful diagram of a concrete category, carriers named "0", "1", ...
SetDiagram forgetful_diagram(const ConcreteCategory& data);

}  // namespace siftcat
