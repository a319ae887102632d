#include <gtest/gtest.h>

#include "fmlab/oracle.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/verify/fixtures.hpp"
#include "fmlab/verify/generators.hpp"

using namespace fmlab;

namespace {

const Prime p2(2);
const Prime p3(3);

Vector e(Prime p, Index i, Residue c = 1) { return Vector::unit(p, i, c); }
using Vs = std::vector<Vector>;

// All cells U_w for w below the horizon.
HFObject partition(Prime p, Index horizon) {
  std::vector<HFObject> cells;
  for (const auto& c : oracle::all_tuples(p.value(), horizon)) {
    cells.push_back(PartitionCell{Vector::from_dense(p, c)}.as_set());
  }
  return HFObject::set(std::move(cells));
}

}  // namespace

TEST(IsSupport, EmptySetSupportsThePartition) {
  EXPECT_TRUE(is_support(p2, Vs{}, partition(p2, 3), 3));
  EXPECT_TRUE(is_support(p3, Vs{}, partition(p3, 2), 2));
}

TEST(IsSupport, AtomByItsCell) {
  EXPECT_TRUE(is_support(p2, Vs{e(p2, 0)}, atom_object(0, e(p2, 0)), 2));
  EXPECT_FALSE(is_support(p2, Vs{e(p2, 1)}, atom_object(0, e(p2, 0)), 2));
}

TEST(IsSupport, DiagonalSupportsParallelMatching) {
  const HFObject x = fixtures::identity_matching(p2);
  const Vs a{e(p2, 0) + e(p2, 1)};
  EXPECT_TRUE(is_support(p2, a, x, 2));
  EXPECT_TRUE(oracle::support_by_enumeration(p2, a, x, 2));
  EXPECT_FALSE(is_support(p2, Vs{}, x, 2));
}

TEST(IsSupport, HorizonIsAHardError) {
  EXPECT_THROW(is_support(p2, Vs{e(p2, 4)}, HFObject(), 2), UsageError);
  EXPECT_THROW(is_support(p2, Vs{}, atom_object(0, e(p2, 3)), 2), UsageError);
}

TEST(ReduceSupportStep, MatchingP2) {
  const auto f = fixtures::matching(p2);
  const auto step = reduce_support_step(f.input, f.extra);
  EXPECT_FALSE(step.shortcut);
  EXPECT_EQ(to_string(*step.h), "1,1");
  EXPECT_EQ(*step.m, 1u);
  EXPECT_EQ(*step.n, 1u);
  EXPECT_EQ(to_string(*step.b), "0:1,1:1");
  EXPECT_EQ(step.after, Vs{*step.b});
}

TEST(ReduceSupportStep, MatchingP3) {
  const auto f = fixtures::matching(p3);
  const auto step = reduce_support_step(f.input, f.extra);
  EXPECT_EQ(to_string(*step.b), "0:1,1:2");
  const Vs diag{*step.b};
  const auto h = pointwise_stabilizer(p3, diag, 2);
  EXPECT_EQ(h, stabilizer_in(f.input.x, Subgroup::full(p3, 2)));
}

TEST(ReduceSupportStep, ProperSubsetShortcut) {
  const HFObject x = atom_object(0, e(p2, 1));
  const ReductionInput in{p2, 2, x, PartitionCell{e(p2, 1)}.as_set(), {}};
  const auto step = reduce_support_step(in, Vs{e(p2, 0), e(p2, 1)});
  EXPECT_TRUE(step.shortcut);
  EXPECT_FALSE(step.h.has_value());
  EXPECT_EQ(step.after, Vs{e(p2, 1)});
}

TEST(ReduceSupportStep, RejectsBrokenPreconditions) {
  const auto f = fixtures::matching(p2);
  EXPECT_THROW(reduce_support_step(f.input, Vs{e(p2, 0)}), UsageError);
  EXPECT_THROW(reduce_support_step(f.input, Vs{e(p2, 0), e(p2, 0)}), UsageError);
  EXPECT_THROW(reduce_support_step(f.input, Vs{e(p2, 0), e(p2, 2)}), UsageError);

  ReductionInput wrong_size = f.input;
  wrong_size.orbit_set = HFObject::set({f.input.x});
  EXPECT_THROW(reduce_support_step(wrong_size, f.extra), UsageError);

  ReductionInput not_member = f.input;
  not_member.x = atom_object(0, e(p2, 0));
  EXPECT_THROW(reduce_support_step(not_member, f.extra), UsageError);
}

TEST(ReduceSupportStep, RejectsXNotSupportedByA) {
  const HFObject x = HFObject::tuple({atom_object(0, e(p2, 0)), atom_object(0, e(p2, 1))});
  const ReductionInput in{p2, 2, x, HFObject::set({x, HFObject()}), {}};
  EXPECT_THROW(reduce_support_step(in, Vs{e(p2, 0), e(p2, 1)}), UsageError);
}

TEST(FindSmallSupport, SingletonUnchanged) {
  const auto f = fixtures::matching(p2);
  const Vs b{e(p2, 0) + e(p2, 1)};
  const auto out = find_small_support(f.input, b);
  EXPECT_TRUE(out.trace.empty());
  EXPECT_EQ(out.remaining, b);
}

TEST(FindSmallSupport, MatchingExample) {
  const auto f = fixtures::matching(p2);
  const auto out = find_small_support(f.input, f.extra);
  ASSERT_EQ(out.trace.size(), 1u);
  EXPECT_EQ(out.support, Vs{e(p2, 0) + e(p2, 1)});
}

TEST(FindSmallSupport, FixedObjectReducesToA) {
  const HFObject empty;
  const ReductionInput in{p2, 3, empty, HFObject::set({empty, HFObject::set({empty})}), {}};
  const auto out = find_small_support(in, Vs{e(p2, 0), e(p2, 1), e(p2, 2)});
  EXPECT_TRUE(out.support.empty());
  EXPECT_TRUE(out.remaining.empty());
  ASSERT_EQ(out.trace.size(), 3u);
  for (const auto& s : out.trace) EXPECT_TRUE(s.shortcut);
}

TEST(FindSmallSupport, NormalizesBAgainstA) {
  // x supported by A u {e0 + e1}; B given as [e0 + e1 + e2, e3], A = {e2}.
  const HFObject x = HFObject::tuple({atom_object(0, e(p2, 2)), fixtures::identity_matching(p2)});
  const HFObject xs = HFObject::set(orbit(x, pointwise_stabilizer(p2, Vs{e(p2, 2)}, 4)));
  ASSERT_EQ(xs.size(), 2u);
  const ReductionInput in{p2, 4, x, xs, {e(p2, 2)}};
  const auto out = find_small_support(in, Vs{e(p2, 0) + e(p2, 1) + e(p2, 2), e(p2, 3)});
  EXPECT_TRUE(oracle::support_by_enumeration(p2, out.support, x, 4));
  EXPECT_LE(out.remaining.size(), 1u);
}

TEST(FindSmallSupport, RandomInstancesAgainstOracle) {
  gen::Rng rng(7);
  for (std::uint32_t pv : {2u, 3u, 5u}) {
    const Prime p(pv);
    for (int i = 0; i < 20; ++i) {
      const auto inst = gen::orbit_instance(rng, p, 3);
      const auto out = find_small_support(inst.input(), inst.extra);
      EXPECT_TRUE(oracle::support_by_enumeration(p, out.support, inst.x, 3));
    }
  }
}
