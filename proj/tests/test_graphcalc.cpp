#include <gtest/gtest.h>

#include "siftcat/catalog.hpp"
#include "siftcat/gen.hpp"
#include "siftcat/graphcalc.hpp"

using namespace siftcat;

namespace {

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

std::vector<GraphOnObject> all_graphs(const FinCat& c) {
  std::vector<GraphOnObject> out;
  for (ObjId g : c.objects_by_name())
    for (ObjId x : c.objects_by_name())
      for (MorId p : c.hom(g, x))
        for (MorId q : c.hom(g, x)) out.push_back({g, x, p, q});
  return out;
}

std::vector<CatRef> calculus_bases() {
  std::vector<CatRef> out;
  out.push_back(share(terminal_category()));
  out.push_back(share(arrow_category()));
  out.push_back(share(reflexive_pair_category()));
  out.push_back(share(idempotent_monoid_category()));
  out.push_back(share(cyclic_group_category(3)));
  out.push_back(share(diamond_lattice_category()));
  out.push_back(share(injections_category(2)));
  return out;
}

// Diagrams used for the exhaustive coequalizing checks: values of size ≤ 5.
std::vector<SetDiagram> diagrams_on(const CatRef& c, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SetDiagram> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_diagram(rng, c, 5, 2));
  return out;
}

}  // namespace

TEST(Graph, MakeRejectsNonParallel) {
  auto rp = reflexive_pair_category();
  EXPECT_NO_THROW(make_graph(rp, rp.morphism("d0"), rp.morphism("d1")));
  try {
    make_graph(rp, rp.morphism("d0"), rp.morphism("s"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(Reflexive, Examples) {
  auto rp = reflexive_pair_category();
  auto id1 = identity_graph(rp, rp.object("1"));
  EXPECT_EQ(is_reflexive(rp, id1), rp.identity(rp.object("1")));
  auto g = make_graph(rp, rp.morphism("d0"), rp.morphism("d1"));
  EXPECT_EQ(is_reflexive(rp, g), rp.morphism("s"));

  auto two = arrow_category();
  EXPECT_FALSE(is_reflexive(two, make_graph(two, two.morphism("f"), two.morphism("f"))).has_value());
}

TEST(Reflexive, AgreesWithContainingIdentityGraph) {
  for (const auto& c : calculus_bases())
    for (const auto& g : all_graphs(*c)) {
      auto r = is_reflexive(*c, g);
      auto k = contains(*c, identity_graph(*c, g.vertex), g);
      EXPECT_EQ(r.has_value(), k.has_value()) << describe(*c, g);
      if (r) EXPECT_EQ(*r, k->witness);
    }
}

TEST(Contains, Examples) {
  auto rp = reflexive_pair_category();
  auto g = make_graph(rp, rp.morphism("d0"), rp.morphism("d1"));
  auto self = contains(rp, g, g);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->witness, rp.identity(rp.object("0")));
  // hom(0,0) = {id_0, sd0, sd1}; none swaps d0 and d1.
  EXPECT_FALSE(contains(rp, opposite_graph(g), g).has_value());
  auto k = contains(rp, identity_graph(rp, rp.object("1")), g);
  ASSERT_TRUE(k);
  EXPECT_EQ(k->witness, rp.morphism("s"));
  try {
    contains(rp, g, identity_graph(rp, rp.object("0")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexMismatch);
  }
}

TEST(Contains, WitnessIsLeastAndVerified) {
  for (const auto& c : calculus_bases()) {
    auto graphs = all_graphs(*c);
    for (const auto& a : graphs)
      for (const auto& b : graphs) {
        if (a.vertex != b.vertex) continue;
        auto k = contains(*c, a, b);
        std::optional<MorId> least;
        for (MorId f : c->hom(a.edge, b.edge))
          if (c->compose(b.p, f) == a.p && c->compose(b.q, f) == a.q) {
            least = f;
            break;
          }
        ASSERT_EQ(k.has_value(), least.has_value());
        if (k) {
          EXPECT_EQ(k->witness, *least);
          EXPECT_TRUE(verify_containment(*c, *k));
        }
      }
  }
}

TEST(Opposite, Involution) {
  auto rp = reflexive_pair_category();
  auto g = make_graph(rp, rp.morphism("d0"), rp.morphism("d1"));
  auto o = opposite_graph(g);
  EXPECT_EQ(o.p, rp.morphism("d1"));
  EXPECT_EQ(o.q, rp.morphism("d0"));
  EXPECT_EQ(opposite_graph(o), g);
  auto id = identity_graph(rp, rp.object("0"));
  EXPECT_EQ(opposite_graph(id), id);
}

TEST(Concatenate, IdentityIsNeutral) {
  for (const auto& c : calculus_bases())
    for (const auto& g : all_graphs(*c)) {
      auto k = concatenate(*c, identity_graph(*c, g.vertex), g);
      // Pullback along an identity: the edge objects are isomorphic and the
      // two graphs contain each other.
      EXPECT_TRUE(contains(*c, k.graph, g).has_value());
      EXPECT_TRUE(contains(*c, g, k.graph).has_value());
    }
}

TEST(Concatenate, LatticeMeets) {
  auto c = boolean_lattice_category(2);
  auto x = c.object("{0,1}");
  auto a = c.object("{0}"), b = c.object("{1}");
  auto ga = make_graph(c, c.hom(a, x)[0], c.hom(a, x)[0]);
  auto gb = make_graph(c, c.hom(b, x)[0], c.hom(b, x)[0]);
  auto k = concatenate(c, ga, gb);
  EXPECT_EQ(c.name(k.graph.edge), "{}");
  EXPECT_EQ(k.graph.p, k.graph.q);
}

TEST(Concatenate, PullbackAbsent) {
  auto rp = reflexive_pair_category();
  auto g = make_graph(rp, rp.morphism("d0"), rp.morphism("d1"));
  try {
    concatenate(rp, g, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PullbackAbsent);
  }
}

TEST(Quotients, RestrictedGrowthCounts) {
  // Bell numbers.
  std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (std::size_t n = 0; n <= 5; ++n) {
    std::size_t k = 0;
    for_each_quotient(n, [&](const Mapping&) { ++k; });
    EXPECT_EQ(k, bell[n]);
  }
}

// Containment reverses the coequalizing condition.
TEST(GraphCalculus, ContainmentTransfersCoequalizers) {
  std::size_t checked = 0;
  for (const auto& c : calculus_bases()) {
    auto graphs = all_graphs(*c);
    for (const auto& f : diagrams_on(c, 3, 11)) {
      for (const auto& a : graphs)
        for (const auto& b : graphs) {
          if (a.vertex != b.vertex || !contains(*c, a, b)) continue;
          for_each_quotient(f.at(a.vertex).size(), [&](const Mapping& h) {
            if (coequalizes(f, b, h)) EXPECT_TRUE(coequalizes(f, a, h)) << describe(*c, a) << " in " << describe(*c, b);
            ++checked;
          });
        }
    }
  }
  EXPECT_GT(checked, 1000u);
}

// Concatenation laws on every pair of graphs with a chosen pullback.
TEST(GraphCalculus, Concatenation) {
  std::size_t concatenations = 0, reflexive_pairs = 0;
  for (const auto& c : calculus_bases()) {
    auto graphs = all_graphs(*c);
    auto diagrams = diagrams_on(c, 3, 23);
    for (const auto& a : graphs)
      for (const auto& b : graphs) {
        if (a.vertex != b.vertex) continue;
        auto sq = chosen_pullback(*c, a.q, b.p);
        if (!sq) continue;
        auto k = concatenate(*c, a, b);
        ++concatenations;
        for (const auto& f : diagrams)
          for_each_quotient(f.at(a.vertex).size(), [&](const Mapping& h) {
            if (coequalizes(f, a, h) && coequalizes(f, b, h)) EXPECT_TRUE(coequalizes(f, k.graph, h));
          });
        auto ra = is_reflexive(*c, a);
        auto rb = is_reflexive(*c, b);
        if (ra) {
          auto left = contained_in_left_concatenation(*c, a, *ra, b, k);
          EXPECT_TRUE(verify_containment(*c, left));
          // The right-hand form needs the other chosen pullback.
          if (chosen_pullback(*c, b.q, a.p)) {
            auto k2 = concatenate(*c, b, a);
            EXPECT_TRUE(verify_containment(*c, contained_in_right_concatenation(*c, b, a, *ra, k2)));
          }
        }
        if (ra && rb) {
          ++reflexive_pairs;
          MorId r = concatenation_section(*c, k, *ra, *rb);
          EXPECT_EQ(c->compose(k.graph.p, r), c->identity(a.vertex));
          EXPECT_EQ(c->compose(k.graph.q, r), c->identity(a.vertex));
          // (e) as an equivalence on functions out of F(X).
          for (const auto& f : diagrams)
            for_each_quotient(f.at(a.vertex).size(), [&](const Mapping& h) {
              EXPECT_EQ(coequalizes(f, k.graph, h), coequalizes(f, a, h) && coequalizes(f, b, h));
            });
        }
      }
  }
  EXPECT_GT(concatenations, 100u);
  EXPECT_GT(reflexive_pairs, 20u);
}

TEST(Reflexivize, IdentityAndReflexiveInputs) {
  auto rp = share(reflexive_pair_category());
  auto id = identity_graph(*rp, rp->object("1"));
  auto r = reflexivize(rp, id);
  EXPECT_EQ(r.graph, id);
  EXPECT_EQ(r.peaks, 0u);
  // (d0, d1) is connected to itself through the idempotents, and every peak
  // the search meets has a chosen pullback.
  auto g = make_graph(*rp, rp->morphism("d0"), rp->morphism("d1"));
  auto rg = reflexivize(rp, g);
  EXPECT_TRUE(is_reflexive(*rp, rg.graph).has_value());
  EXPECT_TRUE(contains(*rp, g, rg.graph).has_value());
}

TEST(Reflexivize, NotSifted) {
  auto z3 = share(cyclic_group_category(3));
  auto g = make_graph(*z3, z3->identity(ObjId(0)), z3->morphism("g1"));
  try {
    reflexivize(z3, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSifted);
  }
}

TEST(Reflexivize, PostconditionsOnLattices) {
  Rng rng(5);
  std::size_t runs = 0;
  for (int i = 0; i < 30; ++i) {
    auto c = share(random_lattice(rng, uniform(rng, 1, 4)));
    for (const auto& g : all_graphs(*c)) {
      auto r = reflexivize(c, g);
      EXPECT_EQ(is_reflexive(*c, r.graph), r.section);
      EXPECT_TRUE(verify_containment(*c, {g, r.graph, r.containment}));
      EXPECT_EQ(r.graph.vertex, g.vertex);
      ++runs;
    }
  }
  EXPECT_GT(runs, 200u);
}

// Random sifted concrete categories: reflexivize either succeeds with verified
// postconditions or reports a missing pullback.
TEST(Reflexivize, RandomSiftedBases) {
  Rng rng(17);
  std::size_t ok = 0, nontrivial = 0;
  for (int i = 0; i < 400; ++i) {
    auto cc = random_concrete_category(rng);
    if (!cc || !is_sifted(cc->category)) continue;
    auto c = share(cc->category);
    for (const auto& g : all_graphs(*c)) {
      try {
        auto r = reflexivize(c, g);
        EXPECT_EQ(is_reflexive(*c, r.graph), r.section);
        EXPECT_TRUE(verify_containment(*c, {g, r.graph, r.containment}));
        ++ok;
        if (g.p != g.q && !is_reflexive(*c, g)) ++nontrivial;
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PullbackAbsent);
      }
    }
  }
  EXPECT_GT(ok, 50u);
  RecordProperty("nontrivial", static_cast<int>(nontrivial));
}
