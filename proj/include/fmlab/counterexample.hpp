#pragma once

// The pair tower X_0 = A_0, X_{i+1} = P(X_i, A_{i+1}) over the cells
// A_n = U_{e_n} (p = 2), and the swap argument showing that no proper set of
// levels supports a choice function on the tower.

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/error.hpp"
#include "fmlab/fp.hpp"
#include "fmlab/supports.hpp"

namespace fmlab {

inline constexpr std::size_t kDefaultTowerCap = 12;

inline const Prime& pair_prime() {
  static const Prime p(2);
  return p;
}

struct PairTower {
  std::size_t height = 0;
  std::vector<HFObject> cells;   // A_n = U_{e_n}
  std::vector<HFObject> levels;  // X_n

  Index horizon() const noexcept { return static_cast<Index>(height); }
};

/// P(A, B) for two-element sets: both bijections, each the set of its
/// (argument, value) tuples.
inline HFObject bijections(const HFObject& a, const HFObject& b) {
  if (!a.is_set() || !b.is_set() || a.size() != 2 || b.size() != 2) {
    throw UsageError("bijections: both arguments must be two-element sets");
  }
  const auto x = a.elements();
  const auto y = b.elements();
  auto graph = [](const HFObject& x0, const HFObject& y0, const HFObject& x1, const HFObject& y1) {
    return HFObject::set({HFObject::tuple({x0, y0}), HFObject::tuple({x1, y1})});
  };
  return HFObject::set({graph(x[0], y[0], x[1], y[1]), graph(x[0], y[1], x[1], y[0])});
}

inline PairTower build_tower(std::size_t height, std::size_t cap = kDefaultTowerCap) {
  if (height == 0) throw UsageError("build_tower needs height >= 1");
  if (height > cap) {
    throw ResourceError("tower height " + std::to_string(height) + " exceeds cap " + std::to_string(cap));
  }
  const Prime& p = pair_prime();
  PairTower t;
  t.height = height;
  for (Index n = 0; n < height; ++n) t.cells.push_back(PartitionCell{Vector::unit(p, n)}.as_set());
  t.levels.push_back(t.cells[0]);
  for (std::size_t n = 1; n < height; ++n) t.levels.push_back(bijections(t.levels[n - 1], t.cells[n]));

  for (std::size_t n = 0; n < height; ++n) {
    if (t.levels[n].size() != 2) throw ConsistencyError("level " + std::to_string(n) + " is not a pair");
    if (!is_support(p, {}, t.levels[n], t.horizon())) {
      throw ConsistencyError("empty set does not support level " + std::to_string(n));
    }
  }
  return t;
}

/// The permutation exchanging the two atoms of A_i and fixing all others.
inline GroupElement level_swap(const PairTower& t, std::size_t i) {
  if (i >= t.height) throw UsageError("swap level " + std::to_string(i) + " is outside the tower");
  return GroupElement::unit(pair_prime(), t.horizon(), static_cast<Index>(i));
}

struct LevelEffect {
  std::size_t level;
  bool swapped;
};

/// How g acts on each level: it either fixes both elements or exchanges
/// them, since the empty set supports every level.
inline std::vector<LevelEffect> level_effects(const PairTower& t, const GroupElement& g) {
  if (g.horizon() != t.horizon()) throw UsageError("group element horizon does not match the tower");
  std::vector<LevelEffect> out;
  for (std::size_t n = 0; n < t.height; ++n) {
    const auto e = t.levels[n].elements();
    const HFObject g0 = act_hf(e[0], g);
    const HFObject g1 = act_hf(e[1], g);
    if (g0 == e[0] && g1 == e[1]) {
      out.push_back({n, false});
    } else if (g0 == e[1] && g1 == e[0]) {
      out.push_back({n, true});
    } else {
      throw ConsistencyError("g does not map level " + std::to_string(n) + " to itself");
    }
  }
  return out;
}

inline std::vector<LevelEffect> swap_effect(const PairTower& t, std::size_t i) {
  return level_effects(t, level_swap(t, i));
}

struct MovedLevel {
  std::size_t level;
  bool moved;
  std::vector<HFObject> before;
  std::vector<HFObject> after;
};

struct RefutationReport {
  std::vector<std::size_t> support;  // S
  std::size_t level;                 // i = min of the complement of S
  GroupElement swap;
  std::vector<MovedLevel> levels;    // every n >= i
  std::uint64_t selections_checked = 0;
};

/// For a proper subset S of the levels, takes i = min(levels \ S) and the
/// swap g at A_i (which fixes at S) and checks that g moves every choice
/// function defined on levels i..N-1: every pick, and the function itself
/// as the set of (X_n, pick) tuples.
inline RefutationReport refute_pcf(const PairTower& t, std::span<const std::size_t> s_levels) {
  std::set<std::size_t> s(s_levels.begin(), s_levels.end());
  for (auto n : s) {
    if (n >= t.height) throw UsageError("level " + std::to_string(n) + " is outside the tower");
  }
  if (s.size() == t.height) {
    throw UsageError("S covers every level of a finite tower; there is no level left to swap");
  }
  std::size_t i = 0;
  while (s.count(i)) ++i;

  RefutationReport report{{s.begin(), s.end()}, i, level_swap(t, i), {}, 0};
  std::vector<Vector> s_cells;
  for (auto n : s) s_cells.push_back(Vector::unit(pair_prime(), static_cast<Index>(n)));
  if (!fixes_at(report.swap, s_cells)) throw ConsistencyError("swap does not fix at S");

  for (std::size_t n = i; n < t.height; ++n) {
    MovedLevel ml{n, true, {}, {}};
    for (const auto& e : t.levels[n].elements()) {
      ml.before.push_back(e);
      ml.after.push_back(act_hf(e, report.swap));
      ml.moved = ml.moved && ml.after.back() != e;
    }
    if (!ml.moved) throw ConsistencyError("swap fixes an element of level " + std::to_string(n));
    report.levels.push_back(std::move(ml));
  }

  // (X_n, pick) tuples and their images, for n >= i.
  const std::size_t span = t.height - i;
  std::vector<std::array<HFObject, 2>> entries(span), moved(span);
  for (std::size_t j = 0; j < span; ++j) {
    for (std::size_t pick = 0; pick < 2; ++pick) {
      entries[j][pick] = HFObject::tuple({t.levels[i + j], report.levels[j].before[pick]});
      moved[j][pick] = act_hf(entries[j][pick], report.swap);
    }
  }

  // Every selection on levels i..N-1, as a bit pattern over those levels.
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << span); ++bits) {
    std::vector<HFObject> graph, moved_graph;
    for (std::size_t j = 0; j < span; ++j) {
      const std::size_t pick = (bits >> j) & 1;
      graph.push_back(entries[j][pick]);
      moved_graph.push_back(moved[j][pick]);
    }
    if (HFObject::set(graph) == HFObject::set(moved_graph)) {
      throw ConsistencyError("swap fixes a choice function on levels >= " + std::to_string(i));
    }
    ++report.selections_checked;
  }
  return report;
}

}  // namespace fmlab
