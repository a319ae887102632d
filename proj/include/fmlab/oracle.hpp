#pragma once

// Brute-force reference computations. Nothing here goes through Subspace,
// echelon forms, annihilators or stabilizer bases: group elements are
// enumerated as raw coordinate tuples and spans as raw coefficient tuples.
// Used by the test suites and by verify-all to cross-check the library.

#include <cstdint>
#include <set>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/fp.hpp"

namespace fmlab::oracle {

// Every coordinate tuple in F_p^k, first coordinate fastest.
inline std::vector<std::vector<Residue>> all_tuples(Residue p, std::size_t k) {
  std::vector<std::vector<Residue>> out;
  std::vector<Residue> cur(k, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < k && ++cur[i] == p) cur[i++] = 0;
    if (i == k) break;
  }
  return out;
}

inline std::vector<GroupElement> all_group_elements(Prime p, Index horizon) {
  std::vector<GroupElement> out;
  for (auto& c : all_tuples(p.value(), horizon)) out.emplace_back(p, std::move(c));
  return out;
}

inline Residue raw_pairing(const Vector& w, const GroupElement& g) {
  std::uint64_t s = 0;
  for (const auto& [i, c] : w.entries()) s += std::uint64_t{c} * g.coords()[i];
  return static_cast<Residue>(s % g.prime().value());
}

inline bool raw_fixes_at(const GroupElement& g, std::span<const Vector> cells) {
  for (const auto& w : cells) {
    if (raw_pairing(w, g) != 0) return false;
  }
  return true;
}

/// Every g below the horizon that fixes at A must fix x.
inline bool support_by_enumeration(Prime p, std::span<const Vector> cells, const HFObject& x, Index horizon) {
  for (const auto& g : all_group_elements(p, horizon)) {
    if (raw_fixes_at(g, cells) && act_hf(x, g) != x) return false;
  }
  return true;
}

/// All sum(c_i * gens_i) over every coefficient tuple.
inline std::set<Vector> span_by_enumeration(Prime p, std::span<const Vector> gens) {
  std::set<Vector> out;
  for (const auto& coeffs : all_tuples(p.value(), gens.size())) {
    Vector acc(p);
    for (std::size_t i = 0; i < gens.size(); ++i) acc = acc.axpy(coeffs[i], gens[i]);
    out.insert(acc);
  }
  return out;
}

/// Orbit by applying every group element in a list.
inline std::set<HFObject> orbit_by_enumeration(const HFObject& x, std::span<const GroupElement> group) {
  std::set<HFObject> out;
  for (const auto& g : group) out.insert(act_hf(x, g));
  return out;
}

inline std::vector<GroupElement> stabilizer_by_enumeration(const HFObject& x, std::span<const GroupElement> group) {
  std::vector<GroupElement> out;
  for (const auto& g : group) {
    if (act_hf(x, g) == x) out.push_back(g);
  }
  return out;
}

/// Counts applications of "replace n by the least m with p^m >= n" (the
/// integer ceiling of log_p) until n <= 1.
inline std::uint32_t iterated_log(std::uint64_t n, Residue p) {
  std::uint32_t steps = 0;
  while (n > 1) {
    std::uint64_t m = 0;
    std::uint64_t pw = 1;
    while (pw < n) {
      pw *= p;
      ++m;
    }
    n = m;
    ++steps;
  }
  return steps;
}

/// Number of distinct dense prefixes of length k.
inline std::uint64_t density_by_prefixes(std::span<const Vector> set, Index k) {
  std::set<std::vector<Residue>> seen;
  for (const auto& w : set) {
    std::vector<Residue> dense(k, 0);
    for (const auto& [i, c] : w.entries()) {
      if (i < k) dense[i] = c;
    }
    seen.insert(std::move(dense));
  }
  return seen.size();
}

}  // namespace fmlab::oracle
