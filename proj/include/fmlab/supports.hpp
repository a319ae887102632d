#pragma once

// Supports of HF objects and the reduction of a finite support A u B of an
// element of a p-element set X down to A u {b}.

#include <optional>
#include <string>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/error.hpp"
#include "fmlab/fp.hpp"

namespace fmlab {

namespace detail {

inline void require_below_horizon(const HFObject& x, Index horizon, std::string_view what) {
  if (support_bound(x) > horizon) {
    throw UsageError(std::string(what) + ": object has atoms beyond horizon " + std::to_string(horizon));
  }
}

inline std::vector<Vector> join(std::span<const Vector> a, std::span<const Vector> b) {
  std::vector<Vector> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::vector<Vector> without(std::span<const Vector> b, std::size_t skip) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i != skip) out.push_back(b[i]);
  }
  return out;
}

}  // namespace detail

/// True iff every element of G_(A) at this horizon fixes x. Only a basis of
/// G_(A) is checked: the elements fixing x form a subgroup.
inline bool is_support(Prime p, std::span<const Vector> cells, const HFObject& x, Index horizon) {
  detail::require_below_horizon(x, horizon, "is_support");
  const Subgroup stab = pointwise_stabilizer(p, cells, horizon);
  for (const auto& g : stab.generators()) {
    if (act_hf(x, g) != x) return false;
  }
  return true;
}

struct ReductionStep {
  std::vector<Vector> before;
  std::optional<GroupElement> h;
  std::optional<Residue> m;
  std::optional<Residue> n;
  std::optional<Vector> b;
  // Set when some A u (B minus one element) already supported x.
  bool shortcut = false;
  std::vector<Vector> after;
};

using ReductionTrace = std::vector<ReductionStep>;

struct ReductionInput {
  Prime prime;
  Index horizon;
  HFObject x;
  HFObject orbit_set;  // X
  std::vector<Vector> base;  // A
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Rewrites B so that it is linearly independent and meets Span(A) only in 0:
/// each b is reduced modulo Span(A), and vectors dependent on A and the ones
/// already kept are dropped. Span(A u B) is unchanged.
inline std::vector<Vector> normalize_against(Prime p, std::span<const Vector> base,
                                             std::span<const Vector> extra) {
  Subspace span_a = span_of(p, base);
  Subspace running = span_a;
  std::vector<Vector> out;
  for (const auto& b : extra) {
    const Vector r = span_a.reduce(b);
    if (running.insert(r)) out.push_back(r);
  }
  return out;
}

namespace detail {

inline void check_orbit_situation(const ReductionInput& in) {
  const Prime& p = in.prime;
  require_below_horizon(in.orbit_set, in.horizon, "support reduction");
  for (const auto& a : in.base) {
    require_same_prime(p, a.prime(), "support reduction");
    if (a.support_bound() > in.horizon) throw UsageError("support reduction: A exceeds horizon");
  }
  if (!in.orbit_set.is_set() || in.orbit_set.size() != p.value()) {
    throw UsageError("support reduction: X must be a set of exactly p = " + std::to_string(p.value()) +
                     " elements");
  }
  if (!in.orbit_set.contains(in.x)) throw UsageError("support reduction: x is not an element of X");
  if (!is_support(p, in.base, in.orbit_set, in.horizon)) {
    throw UsageError("support reduction: A does not support X");
  }
}

inline void check_candidates(const ReductionInput& in, std::span<const Vector> cand) {
  const Prime& p = in.prime;
  for (const auto& b : cand) {
    require_same_prime(p, b.prime(), "support reduction");
    if (b.support_bound() > in.horizon) throw UsageError("support reduction: B exceeds horizon");
  }
  const auto all = join(in.base, cand);
  if (span_of(p, all).dimension() != span_of(p, in.base).dimension() + cand.size()) {
    throw UsageError("support reduction: B is not independent modulo Span(A)");
  }
  if (!is_support(p, all, in.x, in.horizon)) throw UsageError("support reduction: A u B does not support x");
}

}  // namespace detail

/// One reduction step: from A u B supporting x with |B| >= 2 (B normalized
/// against A), produce B' with |B'| = |B| - 1 and A u B' still supporting x.
///
/// If dropping some single element of B keeps a support, that is returned
/// as a shortcut. Otherwise, with b1, b2 the first two elements of B, G' the
/// pointwise stabilizer of A and the rest of B, and H the stabilizer of x in
/// G', H has index p over G'_(b1,b2). Any h in H moving U_b1 or U_b2 sends
/// (0, b1) to (m, b1) and (0, b2) to (n, b2), and b = m^-1 b1 - n^-1 b2 (or
/// b1 if m = 0, b2 if n = 0) has G'_(b) = H.
inline ReductionStep reduce_support_step(const ReductionInput& in, std::span<const Vector> cand) {
  detail::check_orbit_situation(in);
  detail::check_candidates(in, cand);
  if (cand.size() < 2) throw UsageError("reduce_support_step needs |B| >= 2");
  const Prime& p = in.prime;

  ReductionStep step;
  step.before.assign(cand.begin(), cand.end());

  for (std::size_t j = 0; j < cand.size(); ++j) {
    auto rest = detail::without(cand, j);
    if (is_support(p, detail::join(in.base, rest), in.x, in.horizon)) {
      step.shortcut = true;
      step.after = std::move(rest);
      return step;
    }
  }

  const Vector& b1 = cand[0];
  const Vector& b2 = cand[1];
  const std::vector<Vector> tail(cand.begin() + 2, cand.end());
  const auto a_tail = detail::join(in.base, tail);

  const Subgroup g_prime = pointwise_stabilizer(p, a_tail, in.horizon);
  const Subgroup h_sub = stabilizer_in(in.x, g_prime, in.cap);
  const Subgroup g_b1b2 = pointwise_stabilizer(p, detail::join(in.base, cand), in.horizon);

  if (!g_b1b2.is_subgroup_of(h_sub)) {
    throw ConsistencyError("G'_(b1,b2) is not contained in the stabilizer of x");
  }
  if (g_b1b2.index_exponent_in(h_sub) != 1) {
    throw ConsistencyError("[H : G'_(b1,b2)] is p^" + std::to_string(g_b1b2.index_exponent_in(h_sub)) +
                           ", expected p; X is not a p-element orbit of x");
  }

  const std::vector<Vector> pair{b1, b2};
  std::optional<GroupElement> h;
  h_sub.for_each(in.cap, [&](const GroupElement& g) {
    if (!fixes_at(g, pair)) {
      h = g;
      return false;
    }
    return true;
  });
  if (!h) throw ConsistencyError("no element of H moves U_b1 or U_b2");

  const Residue m = act_atom(Atom(0, b1), *h).scalar();
  const Residue n = act_atom(Atom(0, b2), *h).scalar();
  Vector b(p);
  if (m == 0) {
    b = b1;
  } else if (n == 0) {
    b = b2;
  } else {
    b = b1.scaled(p.inv(m)) - b2.scaled(p.inv(n));
  }

  // Both inclusions between G'_(b) and H are checked directly.
  std::vector<Vector> a_tail_b = a_tail;
  a_tail_b.push_back(b);
  const Subgroup g_b = pointwise_stabilizer(p, a_tail_b, in.horizon);
  if (!g_b.is_subgroup_of(h_sub) || !h_sub.is_subgroup_of(g_b)) {
    throw ConsistencyError("G'_(b) differs from the stabilizer of x for b = " + to_string(b));
  }

  step.h = *h;
  step.m = m;
  step.n = n;
  step.b = b;
  step.after = tail;
  step.after.insert(step.after.begin(), b);
  if (!is_support(p, detail::join(in.base, step.after), in.x, in.horizon)) {
    throw ConsistencyError("reduced set does not support x");
  }
  return step;
}

struct SmallSupport {
  std::vector<Vector> support;    // A u B_final
  std::vector<Vector> remaining;  // B_final, at most one vector
  ReductionTrace trace;
};

/// Repeats reduce_support_step until at most one vector of B is left. A last
/// remaining vector is dropped too when A alone supports x.
inline SmallSupport find_small_support(const ReductionInput& in, std::span<const Vector> extra) {
  detail::check_orbit_situation(in);
  std::vector<Vector> cand = normalize_against(in.prime, in.base, extra);
  detail::check_candidates(in, cand);

  SmallSupport out;
  while (cand.size() >= 2) {
    ReductionStep step = reduce_support_step(in, cand);
    if (step.after.size() + 1 != step.before.size()) {
      throw ConsistencyError("reduction step did not shrink B by one");
    }
    cand = step.after;
    out.trace.push_back(std::move(step));
  }
  if (cand.size() == 1 && is_support(in.prime, in.base, in.x, in.horizon)) {
    ReductionStep step;
    step.before = cand;
    step.shortcut = true;
    out.trace.push_back(std::move(step));
    cand.clear();
  }
  out.remaining = cand;
  out.support = detail::join(in.base, cand);
  return out;
}

}  // namespace fmlab
