#include <gtest/gtest.h>

#include "siftcat/catalog.hpp"
#include "siftcat/gen.hpp"
#include "siftcat/presheaf.hpp"

using namespace siftcat;

namespace {

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

struct Base {
  CatRef c, op;
  explicit Base(FinCat cat) : c(share(std::move(cat))), op(share(opposite(*c))) {}
};

std::vector<Base> bases() {
  std::vector<Base> out;
  out.emplace_back(terminal_category());
  out.emplace_back(arrow_category());
  out.emplace_back(reflexive_pair_category());
  out.emplace_back(idempotent_monoid_category());
  out.emplace_back(diamond_lattice_category());
  out.emplace_back(injections_category(2));
  return out;
}

// Iso classes of functions B → A with |A|, |B| ≤ n: for each |A|, partitions
// of |B| into at most |A| parts.
std::size_t arrow_presheaf_count(std::size_t n) {
  auto partitions = [](auto&& self, std::size_t total, std::size_t parts, std::size_t cap) -> std::size_t {
    if (total == 0) return 1;
    if (parts == 0) return 0;
    std::size_t k = 0;
    for (std::size_t first = std::min(total, cap); first >= 1; --first) k += self(self, total - first, parts - 1, first);
    return k;
  };
  std::size_t count = 0;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) count += partitions(partitions, b, a, b);
  return count;
}

}  // namespace

TEST(Yoneda, Examples) {
  auto one = share(terminal_category());
  auto y = yoneda(one, "*");
  EXPECT_EQ(y.at(ObjId(0)).size(), 1u);

  auto two = share(arrow_category());
  auto yb = yoneda(two, "b");
  EXPECT_EQ(yb.at(two->object("a")).elements(), std::vector<std::string>{"f"});
  EXPECT_EQ(yb.at(two->object("b")).elements(), std::vector<std::string>{"id_b"});
  EXPECT_THROW(yoneda(two, "zz"), Error);
}

TEST(Yoneda, NaturalityOnReflexivePair) {
  auto rp = share(reflexive_pair_category());
  for (std::size_t x = 0; x < rp->num_objects(); ++x) {
    auto y = yoneda(rp, ObjId(x));  // constructor checks contravariant functoriality
    EXPECT_EQ(y.total_size(), x == 0 ? 4u : 3u);
  }
}

TEST(Yoneda, LemmaOnRandomPresheaves) {
  Rng rng(21);
  for (auto& b : bases()) {
    for (int t = 0; t < 10; ++t) {
      Presheaf phi = random_presheaf(rng, b.c, b.op, 3);
      for (std::size_t x = 0; x < b.c->num_objects(); ++x)
        EXPECT_EQ(count_nat(yoneda(b.c, ObjId(x)), phi), phi.at(ObjId(x)).size());
    }
  }
}

TEST(Elements, Examples) {
  for (auto& b : bases()) {
    for (std::size_t x = 0; x < b.c->num_objects(); ++x) {
      auto el = category_of_elements(yoneda(b.c, ObjId(x)));
      auto top = el.category->object("(" + b.c->name(ObjId(x)) + "," + b.c->name(b.c->identity(ObjId(x))) + ")");
      for (std::size_t o = 0; o < el.category->num_objects(); ++o)
        EXPECT_EQ(el.category->hom(ObjId(o), top).size(), 1u);
      validate_functor(el.projection);
    }
  }
  auto two = share(arrow_category());
  EXPECT_EQ(category_of_elements(empty_presheaf(two)).category->num_objects(), 0u);

  // φ(a) = {u, v}, φ(b) = {*}, φ(f)(*) = u
  Presheaf phi(two, {FinSet({"u", "v"}), FinSet({"*"})}, {{0, 1}, {0}, {0}});
  auto el = category_of_elements(phi);
  EXPECT_EQ(el.category->num_objects(), 3u);
  EXPECT_FALSE(is_connected(*el.category));
  EXPECT_TRUE(el.category->find_morphism("(f,*)").has_value());
}

TEST(Classifiers, Examples) {
  for (auto& b : bases()) {
    for (std::size_t x = 0; x < b.c->num_objects(); ++x) {
      EXPECT_TRUE(is_in_Sind(yoneda(b.c, ObjId(x))));
      EXPECT_TRUE(is_in_Ind(yoneda(b.c, ObjId(x))));
    }
    EXPECT_FALSE(is_in_Sind(empty_presheaf(b.c)));
    EXPECT_FALSE(is_in_Ind(empty_presheaf(b.c)));
  }
}

TEST(Classifiers, ReflexiveCoequalizerIsSifted) {
  // coequalizer of y(d0), y(d1) : y(0) ⇉ y(1), reflexive via y(s)
  auto rp = share(reflexive_pair_category());
  auto y0 = yoneda(rp, "0"), y1 = yoneda(rp, "1");
  auto nat_of = [&](MorId f) {
    NatTrans t;
    for (std::size_t w = 0; w < rp->num_objects(); ++w) {
      Mapping m;
      auto to = rp->hom(ObjId(w), rp->dst(f));
      for (MorId g : rp->hom(ObjId(w), rp->src(f)))
        m.push_back(std::find(to.begin(), to.end(), rp->compose(f, g)) - to.begin());
      t.push_back(m);
    }
    return t;
  };
  auto d0 = nat_of(rp->morphism("d0")), d1 = nat_of(rp->morphism("d1"));
  ASSERT_TRUE(is_natural(y0, y1, d0));
  auto q = coequalizer(y0, y1, d0, d1);
  EXPECT_TRUE(is_in_Sind(q.value));
  // the quotient is the terminal presheaf
  EXPECT_TRUE(isomorphic(q.value, terminal_presheaf(rp)));
  EXPECT_FALSE(is_in_Ind(q.value));
}

TEST(Iso, FindsAndRejects) {
  Rng rng(4);
  for (auto& b : bases()) {
    for (int t = 0; t < 10; ++t) {
      Presheaf p = random_presheaf(rng, b.c, b.op, 3);
      auto iso = find_iso(p, p);
      ASSERT_TRUE(iso);
      EXPECT_TRUE(is_natural(p, p, *iso));
      Presheaf q = random_presheaf(rng, b.c, b.op, 3);
      if (fingerprint(p) != fingerprint(q)) EXPECT_FALSE(isomorphic(p, q));
      if (auto i = find_iso(p, q)) {
        EXPECT_TRUE(is_natural(p, q, *i));
        for (std::size_t x = 0; x < i->size(); ++x)
          EXPECT_TRUE((FinFunction{p.at(ObjId(x)), q.at(ObjId(x)), (*i)[x]}.is_injective()));
      }
    }
  }
}

TEST(Enumerate, ArrowCountsMatchPartitionFormula) {
  auto two = share(arrow_category());
  EXPECT_EQ(arrow_presheaf_count(2), 8u);
  EXPECT_EQ(arrow_presheaf_count(3), 18u);
  EXPECT_EQ(enumerate_presheaves(two, 2).size(), arrow_presheaf_count(2));
  EXPECT_EQ(enumerate_presheaves(two, 3).size(), arrow_presheaf_count(3));
  EXPECT_THROW(enumerate_presheaves(two, 3, 5), Error);
}

TEST(Kan, IdentityInclusion) {
  Rng rng(8);
  for (auto& b : bases()) {
    std::vector<ObjId> all;
    for (std::size_t x = 0; x < b.c->num_objects(); ++x) all.emplace_back(x);
    auto inc = full_subcategory(b.c, all);
    for (int t = 0; t < 5; ++t) {
      Presheaf psi = random_presheaf(rng, inc.source, share(opposite(*inc.source)), 3);
      auto lan = left_kan_extend(psi, inc);
      EXPECT_TRUE(isomorphic(restrict(lan, inc), psi));
    }
  }
}

TEST(Kan, Examples) {
  auto two = share(arrow_category());
  auto inc = full_subcategory(two, {two->object("b")});
  Presheaf psi(inc.source, {FinSet({"*"})}, {{0}});
  auto lan = left_kan_extend(psi, inc);
  EXPECT_EQ(lan.at(two->object("a")).size(), 1u);
  EXPECT_EQ(lan.at(two->object("b")).size(), 1u);
  EXPECT_EQ(left_kan_extend(empty_presheaf(inc.source), inc).total_size(), 0u);

  // not full: discrete {a, b} into 2
  auto disc = share(discrete_category({"a", "b"}));
  FunctorData bad{disc, two, {two->object("a"), two->object("b")}, {two->morphism("id_a"), two->morphism("id_b")}};
  validate_functor(bad);
  try {
    left_kan_extend(empty_presheaf(disc), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFullyFaithful);
  }
}

TEST(Kan, RestrictionRecoversPsiAndSindTransfers) {
  Rng rng(13);
  std::size_t checked = 0;
  for (auto& b : bases()) {
    const std::size_t n = b.c->num_objects();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<ObjId> keep;
      for (std::size_t x = 0; x < n; ++x)
        if (mask >> x & 1) keep.emplace_back(x);
      auto inc = full_subcategory(b.c, keep);
      auto dop = share(opposite(*inc.source));
      for (int t = 0; t < 4; ++t) {
        Presheaf psi = random_presheaf(rng, inc.source, dop, 3);
        auto lan = left_kan_extend(psi, inc);
        EXPECT_TRUE(isomorphic(restrict(lan, inc), psi));
        EXPECT_EQ(is_in_Sind(psi), is_in_Sind(lan));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Limits, SindClosedUnderFiniteLimitsWhenBaseHasThem) {
  // meet-semilattices with top have all finite limits
  Rng rng(17);
  std::vector<Base> lim;
  lim.emplace_back(boolean_lattice_category(2));
  lim.emplace_back(diamond_lattice_category());
  lim.emplace_back(chain_category(3));
  for (auto& b : lim) {
    ASSERT_TRUE(has_pullbacks(*b.c).all_exist);
    std::vector<Presheaf> pool;
    for (int t = 0; t < 60 && pool.size() < 8; ++t) {
      Presheaf p = random_presheaf(rng, b.c, b.op, 3);
      if (is_in_Sind(p)) pool.push_back(p);
    }
    ASSERT_FALSE(pool.empty());
    EXPECT_TRUE(is_in_Sind(terminal_presheaf(b.c)));
    for (const auto& p : pool)
      for (const auto& q : pool) {
        EXPECT_TRUE(is_in_Sind(product(p, q)));
        std::size_t shown = 0;
        std::vector<NatTrans> ts;
        for_each_nat(p, q, [&](const NatTrans& t) {
          ts.push_back(t);
          return ++shown < 4;
        });
        for (const auto& f : ts)
          for (const auto& g : ts) EXPECT_TRUE(is_in_Sind(equalizer(p, q, f, g)));
      }
  }
}

TEST(Saturation, Point) {
  auto one = share(terminal_category());
  auto sat = sind_closure_bruteforce(one, 3);
  auto members = sat.within_bound();
  ASSERT_EQ(members.size(), 1u);
  EXPECT_EQ(members[0].total_size(), 1u);
}

TEST(Saturation, RepresentablesIncludedAndSound) {
  for (auto& b : bases()) {
    if (b.c->num_morphisms() > 8) continue;
    auto sat = sind_closure_bruteforce(b.c, 2);
    for (std::size_t x = 0; x < b.c->num_objects(); ++x)
      EXPECT_TRUE(find_isomorphic(sat.members, yoneda(b.c, ObjId(x))));
    for (const auto& p : sat.members) EXPECT_TRUE(is_in_Sind(p));
  }
}

TEST(Saturation, AgreesWithClassifierOnRandomTwoObjectBases) {
  Rng rng(2024);
  ConcreteParams params;
  params.max_objects = 2;
  params.max_carrier = 3;
  params.max_generators = 3;
  params.max_morphisms = 12;
  std::size_t bases_done = 0;
  while (bases_done < 40) {
    auto cc = random_concrete_category(rng, params);
    if (!cc || cc->category.num_objects() != 2) continue;
    auto c = share(cc->category);
    auto sat = sind_closure_bruteforce(c, 3);
    auto within = sat.within_bound();
    for (const auto& p : enumerate_presheaves(c, 3))
      EXPECT_EQ(is_in_Sind(p), find_isomorphic(within, p).has_value());
    ++bases_done;
  }
}

TEST(Saturation, Budget) {
  auto rp = share(reflexive_pair_category());
  SaturationBudget tiny;
  tiny.max_members = 1;
  try {
    sind_closure_bruteforce(rp, 3, 4, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Colimit, PresheafColimitOfYonedaIsTerminal) {
  // colim of the Yoneda embedding of RP over RP itself
  auto rp = share(reflexive_pair_category());
  PresheafDiagram d{rp, {yoneda(rp, "0"), yoneda(rp, "1")}, {}};
  for (std::size_t i = 0; i < rp->num_morphisms(); ++i) {
    MorId f(i);
    NatTrans t;
    for (std::size_t w = 0; w < rp->num_objects(); ++w) {
      Mapping m;
      auto to = rp->hom(ObjId(w), rp->dst(f));
      for (MorId g : rp->hom(ObjId(w), rp->src(f))) m.push_back(std::find(to.begin(), to.end(), rp->compose(f, g)) - to.begin());
      t.push_back(m);
    }
    d.maps.push_back(t);
  }
  auto col = colimit(d);
  EXPECT_TRUE(isomorphic(col.value, terminal_presheaf(rp)));
  for (std::size_t k = 0; k < 2; ++k) EXPECT_TRUE(is_natural(d.objects[k], col.value, col.legs[k]));
}
