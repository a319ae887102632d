#include <gtest/gtest.h>

#include "fmlab/counterexample.hpp"
#include "fmlab/oracle.hpp"

using namespace fmlab;

namespace {

std::vector<bool> swapped(const std::vector<LevelEffect>& effects) {
  std::vector<bool> out;
  for (const auto& e : effects) out.push_back(e.swapped);
  return out;
}

}  // namespace

TEST(BuildTower, SingleLevelIsTheCell) {
  const auto t = build_tower(1);
  const Prime& p = pair_prime();
  EXPECT_EQ(t.levels[0], HFObject::set({atom_object(0, Vector::unit(p, 0)), atom_object(1, Vector::unit(p, 0))}));
}

TEST(BuildTower, SecondLevelHasBothBijections) {
  const auto t = build_tower(2);
  ASSERT_EQ(t.levels[1].size(), 2u);
  for (const auto& f : t.levels[1].elements()) {
    ASSERT_TRUE(f.is_set());
    ASSERT_EQ(f.size(), 2u);
    // A bijection: both arguments and both values occur once.
    std::set<HFObject> args, vals;
    for (const auto& pair : f.elements()) {
      args.insert(pair.elements()[0]);
      vals.insert(pair.elements()[1]);
    }
    EXPECT_EQ(HFObject::set({args.begin(), args.end()}), t.levels[0]);
    EXPECT_EQ(HFObject::set({vals.begin(), vals.end()}), t.cells[1]);
  }
}

TEST(BuildTower, EmptySetSupportsEveryLevel) {
  const auto t = build_tower(4);
  for (const auto& x : t.levels) {
    EXPECT_TRUE(is_support(pair_prime(), {}, x, t.horizon()));
    EXPECT_TRUE(oracle::support_by_enumeration(pair_prime(), {}, x, t.horizon()));
  }
}

TEST(BuildTower, Caps) {
  EXPECT_THROW(build_tower(0), UsageError);
  EXPECT_THROW(build_tower(13), ResourceError);
  EXPECT_THROW(build_tower(5, 4), ResourceError);
  EXPECT_NO_THROW(build_tower(12));
}

TEST(SwapEffect, Examples) {
  const auto t = build_tower(3);
  EXPECT_EQ(swapped(swap_effect(t, 0)), (std::vector<bool>{true, true, true}));
  EXPECT_EQ(swapped(swap_effect(t, 1)), (std::vector<bool>{false, true, true}));
  EXPECT_EQ(swapped(level_effects(t, GroupElement::identity(pair_prime(), 3))), (std::vector<bool>{false, false, false}));
  EXPECT_THROW(swap_effect(t, 3), UsageError);
}

TEST(SwapEffect, DirectApplicationAgrees) {
  const auto t = build_tower(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto g = level_swap(t, i);
    for (std::size_t n = 0; n < 4; ++n) {
      const auto e = t.levels[n].elements();
      EXPECT_EQ(act_hf(e[0], g) == e[1], n >= i);
      EXPECT_EQ(act_hf(e[0], g) == e[0], n < i);
    }
  }
}

TEST(RefutePcf, FourLevels) {
  const auto t = build_tower(4);
  const std::vector<std::size_t> s{0, 2};
  const auto r = refute_pcf(t, s);
  EXPECT_EQ(r.level, 1u);
  EXPECT_EQ(to_string(r.swap), "0,1,0,0");
  EXPECT_EQ(r.selections_checked, 8u);
  ASSERT_EQ(r.levels.size(), 3u);
  for (const auto& l : r.levels) {
    EXPECT_TRUE(l.moved);
    EXPECT_EQ(l.after[0], l.before[1]);
  }
}

TEST(RefutePcf, EmptySupport) {
  const auto r = refute_pcf(build_tower(2), std::vector<std::size_t>{});
  EXPECT_EQ(r.level, 0u);
  EXPECT_EQ(r.selections_checked, 4u);
}

TEST(RefutePcf, SingleLevel) {
  const auto t = build_tower(1);
  const auto r = refute_pcf(t, std::vector<std::size_t>{});
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_EQ(r.levels[0].after[0], r.levels[0].before[1]);
  EXPECT_EQ(r.levels[0].after[1], r.levels[0].before[0]);
}

TEST(RefutePcf, RejectsFullOrOutOfRangeS) {
  const auto t = build_tower(2);
  EXPECT_THROW(refute_pcf(t, std::vector<std::size_t>{0, 1}), UsageError);
  EXPECT_THROW(refute_pcf(t, std::vector<std::size_t>{5}), UsageError);
}
