#include <gtest/gtest.h>

#include "fmlab/action.hpp"
#include "fmlab/oracle.hpp"
#include "fmlab/verify/fixtures.hpp"

using namespace fmlab;

namespace {

const Prime p2(2);
const Prime p3(3);

Vector e(Prime p, Index i, Residue c = 1) { return Vector::unit(p, i, c); }
GroupElement g_of(Prime p, std::vector<Residue> c) { return GroupElement(p, std::move(c)); }
HFObject at(Residue a, const Vector& w) { return atom_object(a, w); }

// {((j, e0), (j, e1)) : j in F_2}
HFObject parallel_matching() { return fixtures::identity_matching(p2); }

}  // namespace

TEST(ActAtom, Examples) {
  EXPECT_EQ(act_atom(Atom(0, e(p2, 0)), g_of(p2, {1, 0})), Atom(1, e(p2, 0)));
  for (const auto& g : oracle::all_group_elements(p3, 2)) {
    EXPECT_EQ(act_atom(Atom(2, Vector(p3)), g), Atom(2, Vector(p3)));
  }
  EXPECT_EQ(act_atom(Atom(1, e(p3, 1, 2)), g_of(p3, {0, 2})), Atom(2, e(p3, 1, 2)));
}

TEST(ActAtom, HorizonIsAHardError) {
  EXPECT_THROW(act_atom(Atom(0, e(p2, 2)), g_of(p2, {1, 0})), UsageError);
}

TEST(Compose, Examples) {
  for (const auto& g : oracle::all_group_elements(p2, 3)) {
    EXPECT_TRUE(compose(g, g).is_identity());
    EXPECT_EQ(compose(g, GroupElement::identity(p2, 3)), g);
  }
  const auto g = GroupElement::unit(p3, 2, 0);
  EXPECT_FALSE(compose(g, g).is_identity());
  EXPECT_TRUE(compose(compose(g, g), g).is_identity());
}

TEST(Compose, Mismatches) {
  EXPECT_THROW(compose(g_of(p2, {1}), g_of(p2, {1, 0})), UsageError);
  EXPECT_THROW(compose(g_of(p2, {1}), g_of(p3, {1})), UsageError);
}

TEST(FixesAt, Examples) {
  const auto g = g_of(p2, {1, 0});
  EXPECT_TRUE(fixes_at(g, std::vector<Vector>{e(p2, 1)}));
  EXPECT_FALSE(fixes_at(g, std::vector<Vector>{e(p2, 0)}));
  EXPECT_TRUE(fixes_at(g_of(p2, {1, 1}), std::vector<Vector>{e(p2, 0) + e(p2, 1)}));
}

TEST(PointwiseStabilizer, Examples) {
  const auto s0 = pointwise_stabilizer(p2, std::vector<Vector>{e(p2, 0)}, 2);
  EXPECT_EQ(s0.dimension(), 1u);
  EXPECT_TRUE(s0.contains(g_of(p2, {0, 1})));
  EXPECT_FALSE(s0.contains(g_of(p2, {1, 0})));
  EXPECT_EQ(pointwise_stabilizer(p2, std::vector<Vector>{}, 2).dimension(), 2u);
  EXPECT_EQ(pointwise_stabilizer(p2, std::vector<Vector>{e(p2, 0), e(p2, 1)}, 2).order(), 1u);
  EXPECT_THROW(pointwise_stabilizer(p2, std::vector<Vector>{e(p2, 2)}, 2), UsageError);
}

TEST(PointwiseStabilizer, MatchesRawEnumeration) {
  const std::vector<Vector> a{Vector::from_entries(p3, {{0, 1}, {2, 2}})};
  const auto s = pointwise_stabilizer(p3, a, 3);
  for (const auto& g : oracle::all_group_elements(p3, 3)) {
    EXPECT_EQ(s.contains(g), oracle::raw_fixes_at(g, a));
  }
}

TEST(ActHf, CellIsInvariant) {
  const HFObject u0 = PartitionCell{e(p2, 0)}.as_set();
  for (const auto& g : oracle::all_group_elements(p2, 2)) EXPECT_EQ(act_hf(u0, g), u0);
}

TEST(ActHf, AtomLeafAndTuple) {
  const auto g = g_of(p2, {1, 0});
  EXPECT_EQ(act_hf(at(0, e(p2, 0)), g), at(1, e(p2, 0)));
  const HFObject t = HFObject::tuple({at(0, e(p2, 0)), at(0, e(p2, 1))});
  EXPECT_EQ(act_hf(t, g), HFObject::tuple({at(1, e(p2, 0)), at(0, e(p2, 1))}));
}

TEST(HFObject, SetsAreCanonical) {
  const HFObject a = at(0, e(p2, 0));
  const HFObject b = at(1, e(p2, 0));
  EXPECT_EQ(HFObject::set({a, b, a}), HFObject::set({b, a}));
  EXPECT_EQ(HFObject::set({a, b}).size(), 2u);
  EXPECT_NE(HFObject::tuple({a, b}), HFObject::tuple({b, a}));
  EXPECT_EQ(HFObject(), HFObject::set({}));
}

TEST(Orbit, Examples) {
  const auto full = Subgroup::full(p3, 2);
  const auto orb = orbit(at(0, e(p3, 0)), full);
  EXPECT_EQ(HFObject::set(orb), PartitionCell{e(p3, 0)}.as_set());

  const HFObject x = HFObject::tuple({at(0, e(p2, 0)), at(1, e(p2, 1))});
  EXPECT_EQ(orbit(x, Subgroup::trivial(p2, 2)), std::vector<HFObject>{x});

  const HFObject t = HFObject::tuple({at(0, e(p2, 0)), at(0, e(p2, 1))});
  const auto all = orbit(t, Subgroup::full(p2, 2));
  EXPECT_EQ(all.size(), 4u);
  const auto brute = oracle::orbit_by_enumeration(t, oracle::all_group_elements(p2, 2));
  EXPECT_EQ(std::set<HFObject>(all.begin(), all.end()), brute);
}

TEST(Orbit, CapIsEnforced) {
  EXPECT_THROW(orbit(at(0, e(p2, 0)), Subgroup::full(p2, 10), 1000), ResourceError);
}

TEST(Stabilizer, Examples) {
  const auto full = Subgroup::full(p2, 2);
  EXPECT_EQ(stabilizer_in(at(0, e(p2, 0)), full), pointwise_stabilizer(p2, std::vector<Vector>{e(p2, 0)}, 2));
  EXPECT_EQ(stabilizer_in(HFObject(), full), full);

  const auto s = stabilizer_in(parallel_matching(), full);
  EXPECT_EQ(s.dimension(), 1u);
  EXPECT_EQ(full.index_exponent_in(full), 0u);
  EXPECT_EQ(s.index_exponent_in(full), 1u);
  const auto brute = oracle::stabilizer_by_enumeration(parallel_matching(), oracle::all_group_elements(p2, 2));
  ASSERT_EQ(brute.size(), 2u);
  for (const auto& g : brute) {
    EXPECT_EQ(g[0], g[1]);
    EXPECT_TRUE(s.contains(g));
  }
}

TEST(Kuratowski, RoundTripAndEquivariance) {
  const HFObject t = HFObject::tuple({at(0, e(p3, 0)), at(2, e(p3, 1)), HFObject()});
  const HFObject k = kuratowski_encode(t);
  EXPECT_TRUE(k.is_set());
  EXPECT_EQ(kuratowski_decode(k, 3), t);
  const auto g = g_of(p3, {1, 2});
  EXPECT_EQ(act_hf(k, g), kuratowski_encode(act_hf(t, g)));
  EXPECT_THROW(kuratowski_decode(HFObject(), 2), UsageError);
}

TEST(TextFormat, AtomsAndGroupElements) {
  EXPECT_EQ(to_string(Atom(1, e(p3, 0, 2))), "(1|0:2)");
  EXPECT_EQ(parse_atom("(1|0:2)", p3), Atom(1, e(p3, 0, 2)));
  EXPECT_EQ(display(Atom(0, Vector(p3))), "(0|∅)");
  EXPECT_EQ(parse_atom("(0|)", p3), Atom(0, Vector(p3)));
  EXPECT_EQ(to_string(g_of(p2, {1, 0, 1})), "1,0,1");
  EXPECT_EQ(parse_group_element("1,0,1", p2), g_of(p2, {1, 0, 1}));
  EXPECT_THROW(parse_group_element("1,2", p2), UsageError);
  EXPECT_EQ(to_string(HFObject::tuple({at(0, e(p2, 0)), HFObject()})), "<(0|0:1) {}>");
}
