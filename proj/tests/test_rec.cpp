#include <gtest/gtest.h>

#include "siftcat/catalog.hpp"
#include "siftcat/gen.hpp"
#include "siftcat/rec.hpp"

using namespace siftcat;

namespace {

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

RecBudget lenient() {
  RecBudget b;
  b.require_pullbacks = false;
  return b;
}

// Bases with all pullbacks, and bases where only some exist (enumerated
// leniently).
std::vector<CatRef> pullback_bases() {
  return {share(terminal_category()), share(arrow_category()), share(diamond_lattice_category()),
          share(cyclic_group_category(2)), share(injections_category(2))};
}
std::vector<CatRef> partial_bases() {
  return {share(reflexive_pair_category()), share(idempotent_monoid_category())};
}

}  // namespace

TEST(RecObject, RequiresSection) {
  auto rp = reflexive_pair_category();
  auto g = make_graph(rp, rp.morphism("d0"), rp.morphism("d1"));
  EXPECT_EQ(make_rec_object(rp, g).section, rp.morphism("s"));
  auto two = arrow_category();
  try {
    make_rec_object(two, make_graph(two, two.morphism("f"), two.morphism("f")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SectionMissing);
  }
}

TEST(RecHom, IdentityGraphsGiveHomSets) {
  for (const auto& c : pullback_bases())
    for (ObjId x : c->objects_by_name())
      for (ObjId y : c->objects_by_name()) {
        auto homs = rec_hom(*c, identity_rec_object(*c, x), identity_rec_object(*c, y));
        EXPECT_EQ(homs.size(), c->hom(x, y).size());
      }
  auto two = arrow_category();
  auto homs = rec_hom(two, identity_rec_object(two, two.object("a")), identity_rec_object(two, two.object("b")));
  ASSERT_EQ(homs.size(), 1u);
  EXPECT_EQ(homs[0].representative, two.morphism("f"));
}

TEST(AsPresheaf, IdentityGraphIsRepresentable) {
  for (const auto& c : pullback_bases())
    for (ObjId x : c->objects_by_name())
      EXPECT_TRUE(isomorphic(as_presheaf(c, identity_rec_object(*c, x)), yoneda(c, x)));
}

TEST(AsPresheaf, ReflexivePairQuotient) {
  auto rp = share(reflexive_pair_category());
  auto u = make_rec_object(*rp, make_graph(*rp, rp->morphism("d0"), rp->morphism("d1")));
  auto p = as_presheaf(rp, u);
  // Pointwise: hom(W,1) modulo d0∘k ~ d1∘k.
  EXPECT_EQ(p.at(rp->object("1")).size(), 1u);
  EXPECT_EQ(p.at(rp->object("0")).size(), 1u);
  EXPECT_TRUE(isomorphic(p, terminal_presheaf(rp)));
  EXPECT_TRUE(is_in_Sind(p));
}

TEST(Homotopy, Examples) {
  auto rp = reflexive_pair_category();
  auto u = make_rec_object(rp, make_graph(rp, rp.morphism("d0"), rp.morphism("d1")));
  auto d0 = rp.morphism("d0"), d1 = rp.morphism("d1");
  auto same = homotopy_search(rp, d0, d0, u);
  ASSERT_TRUE(same);
  EXPECT_TRUE(same->steps.empty());
  auto one = homotopy_search(rp, d0, d1, u);
  ASSERT_TRUE(one);
  ASSERT_EQ(one->steps.size(), 1u);
  EXPECT_EQ(one->steps[0].k, rp.identity(rp.object("0")));
  EXPECT_TRUE(one->steps[0].forward);
  EXPECT_TRUE(verify_homotopy(rp, *one, u));
  Homotopy bad = *one;
  bad.to = d0;
  EXPECT_FALSE(verify_homotopy(rp, bad, u));
}

TEST(Homotopy, AbsentIffDifferentClasses) {
  for (const auto& c : partial_bases()) {
    auto frontier = enumerate_rec(c, 2, lenient());
    for (const auto& v : frontier.objects)
      for (ObjId x : c->objects_by_name()) {
        HomClasses classes(*c, x, v.graph);
        for (MorId f : classes.members())
          for (MorId g : classes.members()) {
            auto h = homotopy_search(*c, f, g, v);
            EXPECT_EQ(h.has_value(), classes.same(f, g));
            if (h) EXPECT_TRUE(verify_homotopy(*c, *h, v));
          }
      }
  }
}

TEST(Enumerate, Examples) {
  auto one = share(terminal_category());
  EXPECT_EQ(enumerate_rec(one, 3).objects.size(), 1u);
  auto two = share(arrow_category());
  for (std::size_t d = 0; d <= 3; ++d) EXPECT_EQ(enumerate_rec(two, d).objects.size(), 2u);
  auto m3 = share(diamond_lattice_category());
  EXPECT_EQ(enumerate_rec(m3, 2).objects.size(), 5u);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    auto l = share(random_lattice(rng, uniform(rng, 1, 4)));
    EXPECT_EQ(enumerate_rec(l, 2).objects.size(), l->num_objects());
  }
}

TEST(Enumerate, RequiresPullbacksAndBudget) {
  auto rp = share(reflexive_pair_category());
  EXPECT_NO_THROW(enumerate_rec(rp, 0));
  try {
    enumerate_rec(rp, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PullbackAbsent);
  }
  RecBudget tiny;
  tiny.max_objects = 2;
  try {
    enumerate_rec(share(diamond_lattice_category()), 0, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Enumerate, FrontierIsInSind) {
  for (const auto& c : pullback_bases())
    for (const auto& p : enumerate_rec(c, 2).presheaves) EXPECT_TRUE(is_in_Sind(p));
  for (const auto& c : partial_bases())
    for (const auto& p : enumerate_rec(c, 2, lenient()).presheaves) EXPECT_TRUE(is_in_Sind(p));
}

// Category laws, and as_presheaf full and faithful on every frontier.
TEST(RecCategory, LawsAndFullFaithfulness) {
  auto check = [](const CatRef& c, const RecEnumeration& e) {
    const auto& obj = e.objects;
    for (std::size_t i = 0; i < obj.size(); ++i)
      for (std::size_t j = 0; j < obj.size(); ++j) {
        auto homs = rec_hom(*c, obj[i], obj[j]);
        EXPECT_EQ(homs.size(), count_nat(e.presheaves[i], e.presheaves[j]));
        std::vector<NatTrans> images;
        for (const auto& f : homs) {
          auto a = as_presheaf_map(c, f);
          EXPECT_TRUE(is_natural(e.presheaves[i], e.presheaves[j], a));
          EXPECT_EQ(std::count(images.begin(), images.end(), a), 0);
          images.push_back(a);
          EXPECT_EQ(rec_compose(*c, f, rec_id(*c, obj[i])), f);
          EXPECT_EQ(rec_compose(*c, rec_id(*c, obj[j]), f), f);
          for (std::size_t k = 0; k < obj.size(); ++k)
            for (const auto& g : rec_hom(*c, obj[j], obj[k])) {
              auto gf = rec_compose(*c, g, f);
              EXPECT_EQ(as_presheaf_map(c, gf), compose_nat(as_presheaf_map(c, g), a));
              for (std::size_t l = 0; l < obj.size(); ++l)
                for (const auto& h : rec_hom(*c, obj[k], obj[l]))
                  EXPECT_EQ(rec_compose(*c, h, gf), rec_compose(*c, rec_compose(*c, h, g), f));
            }
        }
      }
  };
  for (const auto& c : pullback_bases()) check(c, enumerate_rec(c, 2));
  for (const auto& c : partial_bases()) check(c, enumerate_rec(c, 2, lenient()));
}

TEST(RecCompose, RepresentativeIndependent) {
  auto rp = reflexive_pair_category();
  auto u = make_rec_object(rp, make_graph(rp, rp.morphism("d0"), rp.morphism("d1")));
  // Any member of a class composes to the same class.
  for (ObjId x : rp.objects_by_name()) {
    auto src = identity_rec_object(rp, x);
    HomClasses classes(rp, x, u.graph);
    for (MorId f : classes.members()) {
      RecHom a{src, u, f};
      EXPECT_EQ(rec_compose(rp, rec_id(rp, u), a).representative, classes.canonical(f));
    }
  }
  try {
    rec_compose(rp, rec_id(rp, u), rec_id(rp, identity_rec_object(rp, rp.object("0"))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotComposable);
  }
}

namespace {

// Runs the closure on every reflexive parallel pair of RecHoms in a frontier;
// returns (succeeded, skipped for a missing pullback).
std::pair<std::size_t, std::size_t> closure_sweep(const CatRef& c, const RecEnumeration& e) {
  PullbackTable pb(c);
  std::size_t ok = 0, skipped = 0;
  for (const auto& u : e.objects)
    for (const auto& v : e.objects) {
      auto fs = rec_hom(*c, u, v);
      auto hs = rec_hom(*c, v, u);
      for (const auto& f : fs)
        for (const auto& g : fs)
          for (const auto& h : hs) {
            if (!(rec_compose(*c, f, h) == rec_id(*c, v)) || !(rec_compose(*c, g, h) == rec_id(*c, v))) continue;
            try {
              auto r = rec_reflexive_coeq_closure(pb, f, g, h);
              EXPECT_TRUE(isomorphic(as_presheaf(c, r.l), r.coequalizer.value));
              EXPECT_TRUE(is_reflexive(*c, r.k).has_value());
              EXPECT_TRUE(contains(*c, make_graph(*c, f.representative, g.representative), r.k).has_value());
              ++ok;
            } catch (const Error& err) {
              EXPECT_EQ(err.kind(), ErrorKind::PullbackAbsent) << err.what();
              ++skipped;
            }
          }
    }
  return {ok, skipped};
}

}  // namespace

TEST(Closure, PullbackBases) {
  for (const auto& c : pullback_bases()) {
    auto [ok, skipped] = closure_sweep(c, enumerate_rec(c, 2));
    EXPECT_GT(ok, 0u);
    EXPECT_EQ(skipped, 0u);
  }
}

TEST(Closure, PartialBases) {
  std::size_t total = 0;
  for (const auto& c : partial_bases()) total += closure_sweep(c, enumerate_rec(c, 2, lenient())).first;
  EXPECT_GT(total, 0u);
}

TEST(Closure, RejectsNonSection) {
  auto c = share(arrow_category());
  PullbackTable pb(c);
  auto a = identity_rec_object(*c, c->object("a"));
  auto b = identity_rec_object(*c, c->object("b"));
  auto f = rec_hom(*c, a, b)[0];
  EXPECT_THROW(rec_reflexive_coeq_closure(pb, f, f, f), Error);
  auto id = rec_id(*c, b);
  auto r = rec_reflexive_coeq_closure(pb, id, id, id);
  EXPECT_TRUE(isomorphic(as_presheaf(c, r.l), yoneda(c, c->object("b"))));
  EXPECT_TRUE(r.to_fh.steps.empty());
  EXPECT_TRUE(r.from_gh.steps.empty());
}

TEST(Filteredness, CospansAndCoequalizers) {
  std::vector<CatRef> bases{share(terminal_category()), share(arrow_category()),
                            share(boolean_lattice_category(2)), share(pentagon_lattice_category())};
  Rng rng(9);
  for (int i = 0; i < 5; ++i) bases.push_back(share(random_lattice(rng, 3)));
  for (const auto& c : bases) {
    ASSERT_TRUE(is_sifted(*c));
    auto e = enumerate_rec(c, 2);
    PullbackTable pb(c);
    for (const auto& u : e.objects)
      for (const auto& v : e.objects) {
        auto cs = rec_cospan(pb, u, v);
        EXPECT_EQ(cs.from_left.target, cs.apex);
        EXPECT_TRUE(descends(*c, u, cs.apex, cs.from_left.representative));
        EXPECT_TRUE(descends(*c, v, cs.apex, cs.from_right.representative));
        auto fs = rec_hom(*c, u, v);
        for (const auto& f : fs)
          for (const auto& g : fs) {
            auto q = rec_coequalize(pb, f, g);
            EXPECT_EQ(rec_compose(*c, q.map, f), rec_compose(*c, q.map, g));
          }
      }
  }
}

TEST(Filteredness, SameObjectUsesIdentity) {
  auto c = share(diamond_lattice_category());
  PullbackTable pb(c);
  auto u = identity_rec_object(*c, c->object("x"));
  auto cs = rec_cospan(pb, u, u);
  EXPECT_EQ(cs.apex.graph.vertex, c->object("x"));
}
