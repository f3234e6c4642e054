#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "siftcat/catalog.hpp"
#include "siftcat/finset.hpp"

using namespace siftcat;

namespace {

FinSet S(std::vector<std::string> v) { return FinSet(std::move(v)); }

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

Mapping random_map(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  Mapping m(n);
  for (auto& v : m) v = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
  return m;
}

}  // namespace

TEST(FinSetBasics, DuplicateRejected) {
  EXPECT_THROW(S({"a", "a"}), Error);
  FinSet s = S({"x", "y"});
  EXPECT_EQ(s.index("y"), 1u);
  EXPECT_THROW(s.index("z"), Error);
}

TEST(Colimit, Examples) {
  auto one = share(terminal_category());
  SetDiagram d(one, {S({"a", "b"})}, {{0, 1}});
  auto c = colimit(d);
  EXPECT_EQ(c.apex.size(), 2u);
  EXPECT_TRUE(verify_colimit(d, c));

  auto disc = share(discrete_category({"a", "b"}));
  SetDiagram d2(disc, {S({"1"}), S({"1"})}, {{0}, {0}});
  auto c2 = colimit(d2);
  EXPECT_EQ(c2.apex.size(), 2u);
  EXPECT_EQ(c2.apex.name(0), "(a,1)");
  EXPECT_TRUE(verify_colimit(d2, c2));

  auto two = share(arrow_category());
  // objects a, b; morphisms id_a, id_b, f
  SetDiagram d3(two, {S({"1", "2"}), S({"x"})}, {{0, 1}, {0}, {0, 0}});
  auto c3 = colimit(d3);
  EXPECT_EQ(c3.apex.size(), 1u);
  EXPECT_EQ(c3.apex.name(0), "(a,1)");
  EXPECT_TRUE(verify_colimit(d3, c3, 3));
}

TEST(Colimit, EmptyShape) {
  auto empty = share(FinCat{});
  SetDiagram d(empty, {}, {});
  EXPECT_EQ(colimit(d).apex.size(), 0u);
  auto l = limit(d);
  ASSERT_EQ(l.apex.size(), 1u);
  EXPECT_EQ(l.apex.name(0), "()");
  EXPECT_TRUE(verify_limit(d, l));
  EXPECT_TRUE(verify_colimit(d, colimit(d)));
}

TEST(Limit, Examples) {
  auto disc = share(discrete_category({"a", "b"}));
  SetDiagram d(disc, {S({"1", "2"}), S({"x", "y", "z"})}, {{0, 1}, {0, 1, 2}});
  auto l = limit(d);
  EXPECT_EQ(l.apex.size(), 6u);
  EXPECT_EQ(l.apex.name(0), "(1,x)");
  EXPECT_TRUE(verify_limit(d, l));

  // equalizer shape: two parallel arrows u, v : a → b
  RawCategory par;
  par.objects = {"a", "b"};
  par.morphisms = {{"u", "a", "b"}, {"v", "a", "b"}};
  auto p = share(validate_category(par));
  std::vector<Mapping> maps(p->num_morphisms());
  maps[p->morphism("id_a").index()] = {0, 1};
  maps[p->morphism("id_b").index()] = {0, 1};
  maps[p->morphism("u").index()] = {0, 1};  // f = (x, y)
  maps[p->morphism("v").index()] = {0, 0};  // g = (x, x)
  SetDiagram eq(p, {S({"1", "2"}), S({"x", "y"})}, maps);
  auto le = limit(eq);
  ASSERT_EQ(le.apex.size(), 1u);
  EXPECT_EQ(le.apex.name(0), "(1,x)");
  EXPECT_TRUE(verify_limit(eq, le));
}

TEST(Diagram, RejectsNonFunctor) {
  auto two = share(arrow_category());
  EXPECT_THROW(SetDiagram(two, {S({"1"}), S({"x"})}, {{0}, {0}, {1}}), Error);
  try {
    SetDiagram(two, {S({"1", "2"}), S({"x"})}, {{1, 0}, {0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFunctorial);
  }
}

TEST(Coequalizer, Examples) {
  FinSet one = S({"1", "2"}), ab = S({"a", "b"});
  FinFunction f{one, ab, {0, 1}}, g{one, ab, {1, 1}};
  EXPECT_EQ(coequalizer(f, f).quotient.size(), 2u);
  auto q = coequalizer(f, g);
  EXPECT_EQ(q.quotient.size(), 1u);
  EXPECT_EQ(q.quotient.name(0), "a");
  EXPECT_TRUE(q.map.is_surjective());
  FinFunction h{S({"z"}), ab, {0}};
  try {
    coequalizer(f, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(Image, Examples) {
  FinSet s = S({"1", "2", "3"}), xy = S({"x", "y"});
  auto id = image_factorization(FinFunction::identity(s));
  EXPECT_EQ(id.surjection.map, FinFunction::identity(s).map);
  auto c = image_factorization({S({"1", "2"}), xy, {0, 0}});
  EXPECT_EQ(c.surjection.codomain.elements(), std::vector<std::string>{"x"});
  FinFunction f{s, xy, {0, 0, 1}};
  auto im = image_factorization(f);
  EXPECT_EQ(im.surjection.codomain.size(), 2u);
  EXPECT_EQ(im.surjection(0), im.surjection(1));
  EXPECT_EQ(compose(im.injection, im.surjection), f);
  EXPECT_TRUE(im.injection.is_injective());
  EXPECT_TRUE(im.surjection.is_surjective());
}

TEST(Relations, Examples) {
  FinSet x = S({"1", "2", "3"});
  Relation r(x, x);
  r.insert(0, 1);
  EXPECT_EQ(rel_compose(Relation::diagonal(x), r), r);
  EXPECT_EQ(rel_compose(r, Relation::diagonal(x)), r);
  Relation s(x, x);
  s.insert(1, 2);
  auto rs = rel_compose(s, r);
  EXPECT_EQ(rs.pairs(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}}));
  EXPECT_TRUE(rel_op(r).contains(1, 0));
  Relation other(S({"q"}), x);
  EXPECT_THROW(rel_compose(other, r), Error);
}

TEST(Relations, GraphOfReflexivePairContainsDiagonal) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    std::size_t nx = 1 + rng() % 5, extra = rng() % 4;
    FinSet X = FinSet::numbered(nx), E = FinSet::numbered(nx + extra, "e");
    Mapping p(nx + extra), q(nx + extra);
    for (std::size_t i = 0; i < nx; ++i) p[i] = q[i] = i;
    for (std::size_t i = nx; i < nx + extra; ++i) {
      p[i] = rng() % nx;
      q[i] = rng() % nx;
    }
    auto g = rel_of_graph({E, X, p}, {E, X, q});
    EXPECT_TRUE(g.includes(Relation::diagonal(X)));
  }
}

TEST(Closure, Examples) {
  FinSet x = S({"1", "2", "3"});
  auto d = equiv_closure_iterate(Relation::diagonal(x));
  EXPECT_EQ(d.equivalence, Relation::diagonal(x));
  EXPECT_EQ(d.steps, 0u);

  Relation r = Relation::diagonal(x);
  r.insert(0, 1);
  auto c = equiv_closure_iterate(r);
  Relation want = r;
  want.insert(1, 0);
  EXPECT_EQ(c.equivalence, want);
  EXPECT_EQ(c.steps, 1u);

  Relation bad(x, x);
  try {
    equiv_closure_iterate(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotReflexive);
  }
}

TEST(Closure, FiveChain) {
  FinSet x = FinSet::numbered(5);
  Relation r = Relation::diagonal(x);
  for (std::size_t i = 0; i + 1 < 5; ++i) r.insert(i, i + 1);
  auto c = equiv_closure_iterate(r);
  EXPECT_EQ(c.equivalence.size(), 25u);
  // Frozen from a step-by-step brute force in test code: the reach of the
  // chain grows 1 → 3 → 9 hops, so two growing steps.
  std::size_t steps = 0;
  std::vector<std::vector<char>> m(5, std::vector<char>(5, 0));
  for (auto [a, b] : r.pairs()) m[a][b] = 1;
  while (true) {
    auto n = m;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int w = 0; w < 5; ++w)
          for (int z = 0; z < 5; ++z)
            if (m[a][b] && m[w][b] && m[w][z]) n[a][z] = 1;
    if (n == m) break;
    m = n;
    ++steps;
  }
  EXPECT_EQ(steps, 2u);
  EXPECT_EQ(c.steps, steps);
}

TEST(Closure, PropertiesOnRandomRelations) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 6;
    FinSet x = FinSet::numbered(n);
    Relation r = Relation::diagonal(x);
    std::vector<std::pair<std::size_t, std::size_t>> extra;
    for (std::size_t k = rng() % 5; k > 0; --k) {
      std::size_t a = rng() % n, b = rng() % n;
      r.insert(a, b);
      extra.emplace_back(a, b);
    }
    auto c = equiv_closure_iterate(r);
    EXPECT_TRUE(c.equivalence.is_reflexive());
    EXPECT_TRUE(c.equivalence.is_symmetric());
    EXPECT_TRUE(c.equivalence.is_transitive());
    EXPECT_TRUE(c.equivalence.includes(r));
    EXPECT_LE(c.steps, n * n);
    auto want = oracle::equivalence_closure(n, extra);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) EXPECT_EQ(c.equivalence.contains(a, b), want[a][b] != 0);
  }
}

TEST(ReflexiveCoequalizer, Examples) {
  FinSet x = S({"1", "2"});
  auto id = FinFunction::identity(x);
  EXPECT_EQ(reflexive_coeq_via_relations(id, id).quotient.size(), 2u);
  // edges e1: v1→v2, e2: v2→v2 plus vertex loops
  FinSet E = S({"e1", "e2", "l1", "l2"}), V = S({"v1", "v2"});
  FinFunction p{E, V, {0, 1, 0, 1}}, q{E, V, {1, 1, 0, 1}};
  auto r = reflexive_coeq_via_relations(p, q);
  EXPECT_EQ(r.quotient.size(), 1u);
  FinFunction bad{S({"e"}), V, {0}};
  FinFunction bad2{S({"e"}), V, {1}};
  try {
    reflexive_coeq_via_relations(bad, bad2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotReflexive);
  }
}

TEST(ReflexiveCoequalizer, MatchesDisjointSet) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    std::size_t nx = 1 + rng() % 6, extra = rng() % 5;
    FinSet X = FinSet::numbered(nx), E = FinSet::numbered(nx + extra, "e");
    Mapping p(nx + extra), q(nx + extra);
    for (std::size_t i = 0; i < nx; ++i) p[i] = q[i] = i;
    for (std::size_t i = nx; i < nx + extra; ++i) {
      p[i] = rng() % nx;
      q[i] = rng() % nx;
    }
    FinFunction fp{E, X, p}, fq{E, X, q};
    auto a = reflexive_coeq_via_relations(fp, fq);
    auto b = coequalizer(fp, fq);
    EXPECT_EQ(a.quotient, b.quotient);
    EXPECT_EQ(a.map.map, b.map.map);
  }
}

TEST(KernelPair, RecoversEquivalence) {
  FinSet x = S({"1", "2", "3"});
  Relation r = Relation::diagonal(x);
  r.insert(0, 1);
  r.insert(1, 0);
  auto q = quotient_by(x, r);
  EXPECT_EQ(kernel_pair(q.map), r);
}

TEST(Verifiers, RejectWrongCocone) {
  auto disc = share(discrete_category({"a", "b"}));
  SetDiagram d(disc, {S({"1"}), S({"1"})}, {{0}, {0}});
  Cocone collapsed{S({"*"}), {{0}, {0}}};
  EXPECT_TRUE(is_cocone(d, collapsed));
  EXPECT_FALSE(verify_colimit(d, collapsed));
  Cone big{S({"p", "q"}), {{0, 0}, {0, 0}}};
  EXPECT_TRUE(is_cone(d, big));
  EXPECT_FALSE(verify_limit(d, big));
}

TEST(Colimit, RandomDiagramsOverConcreteShapes) {
  std::mt19937_64 rng(5);
  std::vector<FinCat> shapes{arrow_category(), reflexive_pair_category(), chain_category(3),
                             diamond_lattice_category(), idempotent_monoid_category()};
  for (const auto& shape : shapes) {
    auto c = share(shape);
    // F = forgetful diagram of a random concrete model is awkward to sample;
    // use constant diagrams twisted by the identity instead, plus a Yoneda-style
    // covariant representable.
    for (std::size_t x = 0; x < c->num_objects(); ++x) {
      std::vector<FinSet> sets;
      std::vector<Mapping> maps(c->num_morphisms());
      for (std::size_t y = 0; y < c->num_objects(); ++y) {
        std::vector<std::string> names;
        for (MorId f : c->hom(ObjId(x), ObjId(y))) names.push_back(c->name(f));
        sets.emplace_back(names);
      }
      for (std::size_t i = 0; i < c->num_morphisms(); ++i) {
        MorId g(i);
        auto from = c->hom(ObjId(x), c->src(g));
        auto to = c->hom(ObjId(x), c->dst(g));
        for (MorId f : from) {
          MorId gf = c->compose(g, f);
          maps[i].push_back(std::find(to.begin(), to.end(), gf) - to.begin());
        }
      }
      SetDiagram d(c, sets, maps);
      auto co = colimit(d);
      // colimit of a covariant representable is a point
      EXPECT_EQ(co.apex.size(), 1u);
      EXPECT_EQ(oracle::colimit_size(d), 1u);
      EXPECT_TRUE(verify_colimit(d, co, 2));
    }
  }
  (void)rng;
  (void)random_map;
}

TEST(ProductComparison, DiscreteTwoIsNotBijective) {
  auto disc = share(discrete_category({"a", "b"}));
  SetDiagram f(disc, {S({"1"}), S({"1"})}, {{0}, {0}});
  auto cmp = compare_product_colimit(f, f);
  EXPECT_EQ(cmp.source_size, 2u);
  EXPECT_EQ(cmp.target_size, 4u);
  EXPECT_FALSE(cmp.bijective);
}

TEST(ForEachFunction, Counts) {
  std::size_t n = 0;
  for_each_function(3, 2, [&](const Mapping&) {
    ++n;
    return true;
  });
  EXPECT_EQ(n, 8u);
  n = 0;
  for_each_function(0, 0, [&](const Mapping&) {
    ++n;
    return true;
  });
  EXPECT_EQ(n, 1u);
  n = 0;
  for_each_function(2, 0, [&](const Mapping&) {
    ++n;
    return true;
  });
  EXPECT_EQ(n, 0u);
}
