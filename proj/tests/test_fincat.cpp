#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "siftcat/catalog.hpp"
#include "siftcat/fincat.hpp"

using namespace siftcat;

namespace {

RawCategory arrow_raw() {
  RawCategory r;
  r.objects = {"a", "b"};
  r.morphisms = {{"f", "a", "b"}};
  return r;
}

ErrorKind kind_of(const RawCategory& r) {
  try {
    validate_category(r);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected validation failure";
  return ErrorKind::CheckFailed;
}

std::vector<FinCat> sample_categories() {
  std::vector<FinCat> out{terminal_category(),
                          arrow_category(),
                          reflexive_pair_category(),
                          discrete_category({"a", "b"}),
                          chain_category(4),
                          boolean_lattice_category(2),
                          diamond_lattice_category(),
                          pentagon_lattice_category(),
                          idempotent_monoid_category(),
                          cyclic_group_category(3),
                          injections_category(2),
                          product(arrow_category(), reflexive_pair_category())};
  return out;
}

}  // namespace

TEST(Validate, TerminalAndArrow) {
  RawCategory t;
  t.objects = {"*"};
  FinCat one = validate_category(t);
  EXPECT_EQ(one.num_morphisms(), 1u);
  EXPECT_EQ(one.name(one.identity(ObjId(0))), "id_*");

  FinCat two = validate_category(arrow_raw());
  EXPECT_EQ(two.num_morphisms(), 3u);
  MorId f = two.morphism("f");
  EXPECT_EQ(two.compose(two.morphism("id_b"), f), f);
  EXPECT_EQ(two.compose(f, two.morphism("id_a")), f);
}

TEST(Validate, RejectsBadTables) {
  auto r = arrow_raw();
  r.compose = {{"f", "f", "f"}};
  EXPECT_EQ(kind_of(r), ErrorKind::MissingComposite);

  RawCategory dangling = arrow_raw();
  dangling.morphisms.push_back({"g", "a", "zz"});
  EXPECT_EQ(kind_of(dangling), ErrorKind::DanglingIdentifier);

  RawCategory missing;
  missing.objects = {"a", "b", "c"};
  missing.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}};
  EXPECT_EQ(kind_of(missing), ErrorKind::MissingComposite);

  RawCategory unit;
  unit.objects = {"a"};
  unit.morphisms = {{"e", "a", "a"}};
  unit.compose = {{"e", "e", "e"}, {"id_a", "e", "id_a"}};
  EXPECT_EQ(kind_of(unit), ErrorKind::UnitLawViolation);

  // e∘e = e, u∘u = e, e∘u = u, u∘e = e: (u∘u)∘... breaks associativity
  RawCategory assoc;
  assoc.objects = {"a"};
  assoc.morphisms = {{"e", "a", "a"}, {"u", "a", "a"}};
  assoc.compose = {{"e", "e", "e"}, {"u", "u", "e"}, {"e", "u", "u"}, {"u", "e", "e"}};
  EXPECT_EQ(kind_of(assoc), ErrorKind::NonAssociative);

  RawCategory dup;
  dup.objects = {"a", "a"};
  EXPECT_EQ(kind_of(dup), ErrorKind::DuplicateIdentifier);
}

TEST(Validate, ErrorNamesOffendingPair) {
  RawCategory missing;
  missing.objects = {"a", "b", "c"};
  missing.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}};
  try {
    validate_category(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(g, f)"), std::string::npos) << e.what();
  }
}

TEST(Validate, RawRoundTrip) {
  for (const auto& c : sample_categories()) {
    FinCat again = validate_category(to_raw(c));
    EXPECT_TRUE(again == c);
  }
}

TEST(Opposite, Basics) {
  FinCat one = terminal_category();
  EXPECT_TRUE(opposite(one) == one);
  FinCat two = arrow_category();
  FinCat op = opposite(two);
  MorId f = op.morphism("f");
  EXPECT_EQ(op.name(op.src(f)), "b");
  EXPECT_EQ(op.name(op.dst(f)), "a");
  EXPECT_EQ(opposite(reflexive_pair_category()).num_morphisms(), 7u);
}

TEST(Opposite, Involution) {
  for (const auto& c : sample_categories()) EXPECT_TRUE(opposite(opposite(c)) == c);
}

TEST(Connected, Examples) {
  EXPECT_TRUE(is_connected(arrow_category()));
  EXPECT_FALSE(is_connected(discrete_category({"a", "b"})));
  EXPECT_FALSE(is_connected(FinCat{}));
}

TEST(Sifted, Examples) {
  EXPECT_TRUE(is_sifted(terminal_category()));
  auto d = is_sifted(discrete_category({"a", "b"}));
  EXPECT_FALSE(d);
  EXPECT_EQ(d.failure, SiftedVerdict::Failure::NoCospan);
  EXPECT_FALSE(is_sifted(FinCat{}));
  // frozen from the oracle in oracles.hpp
  EXPECT_TRUE(oracle::sifted(reflexive_pair_category()));
  EXPECT_TRUE(is_sifted(reflexive_pair_category()));
}

TEST(Sifted, WitnessNamesPair) {
  auto c = discrete_category({"a", "b"});
  auto v = is_sifted(c);
  ASSERT_FALSE(v);
  EXPECT_EQ(c.name(v.left), "a");
  EXPECT_EQ(c.name(v.right), "b");
  EXPECT_FALSE(describe(c, v).empty());
}

TEST(Filtered, Examples) {
  EXPECT_TRUE(is_filtered(arrow_category()));
  EXPECT_FALSE(is_filtered(discrete_category({"a", "b"})));
  FinCat rp = reflexive_pair_category();
  EXPECT_FALSE(oracle::filtered(rp));
  auto v = is_filtered(rp);
  ASSERT_FALSE(v);
  EXPECT_EQ(v.failure, FilteredVerdict::Failure::NoCoequalizer);
  // first offending parallel pair in identifier order is the idempotent pair
  // on 0; d0, d1 fail too
  EXPECT_EQ(rp.name(v.first), "sd0");
  EXPECT_EQ(rp.name(v.second), "sd1");
  for (MorId k : rp.out(rp.object("1")))
    EXPECT_NE(rp.compose(k, rp.morphism("d0")), rp.compose(k, rp.morphism("d1")));
  EXPECT_FALSE(is_filtered(FinCat{}));
}

TEST(Classifiers, AgreeWithOracleOnSamples) {
  for (const auto& c : sample_categories()) {
    EXPECT_EQ(bool(is_sifted(c)), oracle::sifted(c));
    EXPECT_EQ(bool(is_filtered(c)), oracle::filtered(c));
    if (is_filtered(c)) EXPECT_TRUE(is_sifted(c));
    if (is_sifted(c)) EXPECT_TRUE(is_connected(c));
  }
  // a group is sifted (one object, one cospan class) and filtered
  EXPECT_EQ(bool(is_filtered(cyclic_group_category(3))), oracle::filtered(cyclic_group_category(3)));
}

TEST(Pullback, IdentityLeg) {
  FinCat two = arrow_category();
  MorId f = two.morphism("f");
  auto sq = chosen_pullback(two, f, two.morphism("id_b"));
  ASSERT_TRUE(sq);
  EXPECT_EQ(two.name(sq->apex), "a");
  EXPECT_EQ(two.name(sq->to_left), "id_a");
  EXPECT_EQ(two.name(sq->to_right), "f");
  EXPECT_TRUE(verify_pullback(two, f, two.morphism("id_b"), *sq));
}

TEST(Pullback, LatticeMeets) {
  FinCat m3 = diamond_lattice_category();
  auto sq = chosen_pullback(m3, m3.morphism("x<top"), m3.morphism("y<top"));
  ASSERT_TRUE(sq);
  EXPECT_EQ(m3.name(sq->apex), "bot");

  FinCat b2 = boolean_lattice_category(2);
  // meet of {0} and {1} is {}
  auto sq2 = chosen_pullback(b2, b2.morphism("{0}<{0,1}"), b2.morphism("{1}<{0,1}"));
  ASSERT_TRUE(sq2);
  EXPECT_EQ(b2.name(sq2->apex), "{}");
  EXPECT_TRUE(has_pullbacks(b2).all_exist);
}

TEST(Pullback, AbsentInReflexivePair) {
  FinCat rp = reflexive_pair_category();
  EXPECT_FALSE(chosen_pullback(rp, rp.morphism("d0"), rp.morphism("d1")));
  auto rep = has_pullbacks(rp);
  EXPECT_FALSE(rep.all_exist);
  EXPECT_TRUE(rep.missing.has_value());
}

TEST(Pullback, NotACospanThrows) {
  FinCat two = arrow_category();
  try {
    chosen_pullback(two, two.morphism("f"), two.morphism("id_a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(Pullback, AlwaysVerifies) {
  for (const auto& c : sample_categories()) {
    for (std::size_t i = 0; i < c.num_morphisms(); ++i)
      for (std::size_t j = 0; j < c.num_morphisms(); ++j) {
        MorId f(i), g(j);
        if (c.dst(f) != c.dst(g)) continue;
        if (auto sq = chosen_pullback(c, f, g)) {
          EXPECT_TRUE(verify_pullback(c, f, g, *sq));
          // mediator of the square itself is the identity
          auto u = mediate(c, *sq, sq->to_left, sq->to_right);
          ASSERT_TRUE(u);
          EXPECT_TRUE(c.is_identity(*u));
        }
      }
  }
}

TEST(Pullback, Deterministic) {
  FinCat fi = injections_category(2);
  for (std::size_t i = 0; i < fi.num_morphisms(); ++i)
    for (std::size_t j = 0; j < fi.num_morphisms(); ++j) {
      MorId f(i), g(j);
      if (fi.dst(f) != fi.dst(g)) continue;
      auto a = chosen_pullback(fi, f, g), b = chosen_pullback(fi, f, g);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) {
        EXPECT_EQ(a->apex, b->apex);
        EXPECT_EQ(a->to_left, b->to_left);
        EXPECT_EQ(a->to_right, b->to_right);
      }
    }
}

TEST(Zigzag, Examples) {
  auto rp = std::make_shared<const FinCat>(reflexive_pair_category());
  ObjId zero = rp->object("0");
  CospanCategory k(rp, zero, zero);
  EXPECT_TRUE(k.is_connected());
  auto a = k.find({rp->object("1"), rp->morphism("d0"), rp->morphism("d0")});
  auto b = k.find({rp->object("1"), rp->morphism("d1"), rp->morphism("d1")});
  ASSERT_TRUE(a && b);
  auto empty = find_zigzag(k, *a, *a);
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->empty());
  auto z = find_zigzag(k, *a, *b);
  ASSERT_TRUE(z);
  ASSERT_FALSE(z->empty());
  // the path re-verifies edge by edge
  std::size_t at = *a;
  for (const auto& step : *z) {
    EXPECT_EQ(step.from, at);
    const Cospan& from = k.cospan(step.from);
    const Cospan& to = k.cospan(step.to);
    const Cospan& lo = step.forward ? from : to;
    const Cospan& hi = step.forward ? to : from;
    EXPECT_EQ(rp->compose(step.via, lo.left), hi.left);
    EXPECT_EQ(rp->compose(step.via, lo.right), hi.right);
    at = step.to;
  }
  EXPECT_EQ(at, *b);
  // frozen: shortest route goes through the cospan (id_0, id_0) via s — length 2
  EXPECT_EQ(z->size(), 2u);
}

TEST(Zigzag, Adjacent) {
  auto two = std::make_shared<const FinCat>(arrow_category());
  CospanCategory k(two, two->object("a"), two->object("a"));
  auto a = k.find({two->object("a"), two->morphism("id_a"), two->morphism("id_a")});
  auto b = k.find({two->object("b"), two->morphism("f"), two->morphism("f")});
  ASSERT_TRUE(a && b);
  auto z = find_zigzag(k, *a, *b);
  ASSERT_TRUE(z);
  ASSERT_EQ(z->size(), 1u);
  EXPECT_TRUE((*z)[0].forward);
}

TEST(Functor, FullSubcategory) {
  auto c = std::make_shared<const FinCat>(reflexive_pair_category());
  auto inc = full_subcategory(c, {c->object("0")});
  validate_functor(inc);
  EXPECT_TRUE(is_full_and_faithful(inc));
  EXPECT_EQ(inc.source->num_morphisms(), 3u);  // id_0, sd0, sd1
}

TEST(Functor, RejectsNonFunctor) {
  auto two = std::make_shared<const FinCat>(arrow_category());
  FunctorData bad{two, two, {two->object("a"), two->object("b")},
                  {two->morphism("id_a"), two->morphism("id_b"), two->morphism("id_a")}};
  // f ↦ id_a does not preserve the target
  bad.on_morphisms[two->morphism("f").index()] = two->morphism("id_a");
  try {
    validate_functor(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFunctorial);
  }
}

TEST(Product, Counts) {
  FinCat p = product(arrow_category(), reflexive_pair_category());
  EXPECT_EQ(p.num_objects(), 4u);
  EXPECT_EQ(p.num_morphisms(), 3u * 7u);
  EXPECT_TRUE(is_sifted(p));  // products of sifted categories are sifted
}

TEST(Catalog, PreordersWithIsomorphicPairs) {
  FinCat c = codiscrete_category(3);
  EXPECT_EQ(c.num_morphisms(), 9u);
  EXPECT_TRUE(is_sifted(c).sifted);
  EXPECT_TRUE(has_pullbacks(c).all_exist);
  MorId ab = c.morphism("0<1"), ba = c.morphism("1<0");
  EXPECT_EQ(c.compose(ba, ab), c.identity(c.object("0")));
  FinCat p = preorder_category({"a", "b", "t"}, {{"a", "b"}, {"b", "a"}, {"a", "t"}});
  EXPECT_EQ(p.num_morphisms(), 7u);
  EXPECT_TRUE(is_filtered(p).filtered);
  EXPECT_THROW(poset_category({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
}
