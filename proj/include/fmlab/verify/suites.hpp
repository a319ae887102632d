#pragma once

// Property suites behind `verify-all` and the acceptance binary. Each suite
// pins its own primes and horizons; the config only supplies the seed, the
// caps, and the (p, horizon) pair for the config-scoped suite.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/counterexample.hpp"
#include "fmlab/fp.hpp"
#include "fmlab/oracle.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/thin.hpp"
#include "fmlab/verify/fixtures.hpp"
#include "fmlab/verify/generators.hpp"

namespace fmlab::verify {

struct Config {
  std::uint32_t p = 2;
  Index horizon = 3;
  std::uint64_t seed = 42;
  std::uint64_t cap_enum = kDefaultEnumerationCap;
  std::size_t cap_tower = kDefaultTowerCap;
};

class SuiteResult {
 public:
  explicit SuiteResult(std::string name) : name_(std::move(name)) {}

  template <typename Msg>
  void expect(bool ok, Msg&& msg) {
    ++checks_;
    if (!ok) fail(std::invoke(std::forward<Msg>(msg)));
  }

  void fail(std::string msg) {
    ++failures_;
    if (messages_.size() < kKeptMessages) messages_.push_back(std::move(msg));
  }

  void note(std::string key, std::uint64_t value) { stats_[std::move(key)] = value; }

  const std::string& name() const noexcept { return name_; }
  bool passed() const noexcept { return failures_ == 0; }
  std::uint64_t checks() const noexcept { return checks_; }
  std::uint64_t failures() const noexcept { return failures_; }
  const std::vector<std::string>& messages() const noexcept { return messages_; }
  const std::map<std::string, std::uint64_t>& stats() const noexcept { return stats_; }

 private:
  static constexpr std::size_t kKeptMessages = 10;
  std::string name_;
  std::uint64_t checks_ = 0;
  std::uint64_t failures_ = 0;
  std::vector<std::string> messages_;
  std::map<std::string, std::uint64_t> stats_;
};

namespace detail {

// Runs body, turning an escaped exception into a recorded failure.
template <typename Body>
SuiteResult run_suite(std::string name, Body&& body) {
  SuiteResult r(std::move(name));
  try {
    body(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  return r;
}

inline std::uint64_t suite_seed(const Config& cfg, std::uint64_t salt) {
  return cfg.seed * 0x9E3779B97F4A7C15ULL + salt;
}

inline std::string str(const HFObject& x) { return to_string(x); }

inline std::string str(std::span<const Vector> vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + display(vs[i]);
  return s + "]";
}

// Group elements in oracle order with a lookup from coordinates to position.
struct GroupTable {
  std::vector<GroupElement> elems;
  Residue p;

  std::size_t position(const GroupElement& g) const {
    std::size_t pos = 0, mul = 1;
    for (Index i = 0; i < g.horizon(); ++i) {
      pos += g[i] * mul;
      mul *= p;
    }
    return pos;
  }
};

inline GroupTable group_table(Prime p, Index horizon) { return {oracle::all_group_elements(p, horizon), p.value()}; }

inline void check_action_laws(SuiteResult& r, const GroupTable& table, const HFObject& x,
                              std::span<const std::size_t> h_positions) {
  std::vector<HFObject> images;
  images.reserve(table.elems.size());
  for (const auto& g : table.elems) images.push_back(act_hf(x, g));
  r.expect(images[0] == x, [&] { return "identity moves " + str(x); });
  for (std::size_t gi = 0; gi < table.elems.size(); ++gi) {
    for (auto hi : h_positions) {
      const auto& g = table.elems[gi];
      const auto& h = table.elems[hi];
      const HFObject gh = act_hf(images[gi], h);
      const HFObject hg = act_hf(images[hi], g);
      const auto composed = table.position(compose(g, h));
      r.expect(gh == images[composed], [&] {
        return "(x g) h != x (g h) for x=" + str(x) + " g=" + to_string(g) + " h=" + to_string(h);
      });
      r.expect(gh == hg, [&] { return "actions do not commute on " + str(x); });
    }
  }
}

}  // namespace detail

/// Echelon canonicity, linearity of prefixes, complements in F_2^4, and span
/// membership against coefficient enumeration.
inline SuiteResult fp_core_invariants(const Config& cfg) {
  return detail::run_suite("fp_core.invariants", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 1));
    for (std::uint32_t pv : {2u, 3u, 5u}) {
      const Prime p(pv);
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Vector> gens;
        const auto n = 1 + rng.below(5);
        for (std::uint64_t i = 0; i < n; ++i) gens.push_back(gen::random_vector(rng, p, 6));
        const Subspace s = span_of(p, gens);
        auto shuffled = gens;
        rng.shuffle(shuffled);
        r.expect(span_of(p, shuffled) == s, [&] { return "span depends on generator order: " + detail::str(gens); });
        const auto brute = oracle::span_by_enumeration(p, gens);
        const auto listed = s.elements(cfg.cap_enum);
        r.expect(std::set<Vector>(listed.begin(), listed.end()) == brute,
                 [&] { return "echelon span differs from enumeration for " + detail::str(gens); });
      }
    }

    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      std::vector<Vector> all;
      for (const auto& c : oracle::all_tuples(pv, 4)) all.push_back(Vector::from_dense(p, c));
      for (const auto& u : all) {
        for (const auto& v : all) {
          for (Index k = 0; k <= 4; ++k) {
            r.expect(project_prefix(u + v, k) == project_prefix(u, k) + project_prefix(v, k),
                     [&] { return "pr_" + std::to_string(k) + " not additive on " + to_string(u) + ", " + to_string(v); });
          }
        }
      }
    }

    {
      const Prime p(2);
      std::vector<Vector> all;
      for (const auto& c : oracle::all_tuples(2, 4)) all.push_back(Vector::from_dense(p, c));
      std::set<std::vector<Vector>> seen;
      std::vector<Subspace> subspaces;
      for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        if (std::popcount(mask) > 4) continue;
        std::vector<Vector> gens;
        for (std::uint32_t i = 0; i < 16; ++i) {
          if (mask >> i & 1) gens.push_back(all[i]);
        }
        Subspace s = span_of(p, gens);
        std::vector<Vector> key(s.basis().begin(), s.basis().end());
        if (seen.insert(key).second) subspaces.push_back(std::move(s));
      }
      r.expect(subspaces.size() == 67, [&] { return "expected 67 subspaces of F_2^4, found " + std::to_string(subspaces.size()); });
      for (const auto& s : subspaces) {
        const Subspace t = complement_within(s, 4);
        const auto s_elems = oracle::span_by_enumeration(p, s.basis());
        const auto t_elems = oracle::span_by_enumeration(p, t.basis());
        std::set<Vector> sums;
        std::size_t common = 0;
        for (const auto& a : s_elems) {
          if (t_elems.count(a)) ++common;
          for (const auto& b : t_elems) sums.insert(a + b);
        }
        r.expect(common == 1, [&] { return "S and its complement meet beyond 0 for S=" + detail::str(s.basis()); });
        r.expect(sums.size() == 16, [&] { return "S + T is not F_2^4 for S=" + detail::str(s.basis()); });
      }
    }

    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<Vector> gens;
        const auto n = rng.below(4);
        for (std::uint64_t i = 0; i < n; ++i) gens.push_back(gen::random_vector(rng, p, 4));
        const Subspace s = span_of(p, gens);
        const auto brute = oracle::span_by_enumeration(p, gens);
        for (const auto& c : oracle::all_tuples(pv, 4)) {
          const Vector v = Vector::from_dense(p, c);
          r.expect(in_span(v, s) == (brute.count(v) == 1), [&] { return "in_span disagrees for " + to_string(v); });
        }
      }
    }
  });
}

/// Acceptance 1: identity and composition laws, commutativity and order p,
/// exhaustively over horizon-3 groups for p = 2, 3 on 500 random objects
/// each; order p also for p = 5.
inline SuiteResult action_laws(const Config& cfg) {
  return detail::run_suite("atom_action.laws", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 2));
    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      const auto table = detail::group_table(p, 3);
      std::vector<std::size_t> all_h(table.elems.size());
      for (std::size_t i = 0; i < all_h.size(); ++i) all_h[i] = i;
      for (const auto& g : table.elems) {
        for (const auto& h : table.elems) {
          r.expect(compose(g, h) == compose(h, g), [&] { return "compose not commutative"; });
        }
      }
      for (int i = 0; i < 500; ++i) {
        detail::check_action_laws(r, table, gen::random_hf(rng, p, 3, 3), all_h);
      }
      r.note("objects_p" + std::to_string(pv), 500);
    }
    for (std::uint32_t pv : {2u, 3u, 5u}) {
      const Prime p(pv);
      for (const auto& g : oracle::all_group_elements(p, 3)) {
        GroupElement acc = GroupElement::identity(p, 3);
        for (std::uint32_t k = 1; k <= pv; ++k) {
          acc = compose(acc, g);
          if (k < pv && !g.is_identity()) {
            r.expect(!acc.is_identity(), [&] { return "order of " + to_string(g) + " below p"; });
          }
        }
        r.expect(acc.is_identity(), [&] { return to_string(g) + " composed p times is not the identity"; });
        // Characterization: trivial on U_0.
        for (Residue a = 0; a < pv; ++a) {
          r.expect(act_atom(Atom(a, Vector(p)), g) == Atom(a, Vector(p)), [&] { return "g moves U_0"; });
        }
      }
    }
  });
}

/// Acceptance 2: fix-one-iff-fix-all on U_w with G_(w) the stabilizer of
/// each atom of U_w, and support invariance under passing to a basis or to
/// the whole span. Exhaustive at horizon 3 for p = 2, 3.
inline SuiteResult remarks(const Config& cfg) {
  return detail::run_suite("atom_action.remarks", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 3));
    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      const Index k = 3;
      const auto group = oracle::all_group_elements(p, k);
      const Subgroup full = Subgroup::full(p, k);
      std::vector<Vector> all_w;
      for (const auto& c : oracle::all_tuples(pv, k)) all_w.push_back(Vector::from_dense(p, c));

      for (const auto& w : all_w) {
        const std::vector<Vector> cell{w};
        for (const auto& g : group) {
          const bool at = fixes_at(g, cell);
          const bool one = act_atom(Atom(0, w), g) == Atom(0, w);
          bool all = true;
          for (const auto& a : PartitionCell{w}.members()) all = all && act_atom(a, g) == a;
          r.expect(at == one && one == all, [&] { return "fix-one/fix-all mismatch at w=" + display(w) + " g=" + to_string(g); });
        }
        const Subgroup g_w = pointwise_stabilizer(p, cell, k);
        for (const auto& a : PartitionCell{w}.members()) {
          r.expect(stabilizer_in(HFObject::atom(a), full, cfg.cap_enum) == g_w,
                   [&] { return "G_(w) is not the stabilizer of " + to_string(a); });
        }
      }

      // Support depends only on the span: all A with |A| <= 2.
      std::vector<std::vector<Vector>> sets{{}};
      for (std::size_t i = 0; i < all_w.size(); ++i) {
        sets.push_back({all_w[i]});
        for (std::size_t j = i + 1; j < all_w.size(); ++j) sets.push_back({all_w[i], all_w[j]});
      }
      for (int obj = 0; obj < 12; ++obj) {
        std::vector<Vector> cells{gen::random_vector(rng, p, k, true), gen::random_vector(rng, p, k, true)};
        const HFObject x = gen::random_hf(rng, p, k, 2, cells);
        for (const auto& a : sets) {
          const Subspace s = span_of(p, a);
          const bool direct = is_support(p, a, x, k);
          const bool via_basis = is_support(p, s.basis(), x, k);
          const auto whole = s.elements(cfg.cap_enum);
          const bool via_span = is_support(p, whole, x, k);
          const bool brute = oracle::support_by_enumeration(p, a, x, k);
          r.expect(direct == via_basis && direct == via_span && direct == brute,
                   [&] { return "support of " + detail::str(x) + " differs between A=" + detail::str(a) + ", basis and span"; });
        }
      }
    }
  });
}

/// Acceptance 3: find_small_support on random p-element orbits for
/// p = 2, 3, 5 checked against full enumeration, plus both fixtures.
inline SuiteResult support_reduction(const Config& cfg) {
  return detail::run_suite("supports.reduction", [&](SuiteResult& r) {
    {
      const auto f = fixtures::matching(Prime(2));
      const auto out = find_small_support(f.input, f.extra);
      r.expect(out.remaining.size() == 1 && out.remaining[0] == Vector::from_entries(Prime(2), {{0, 1}, {1, 1}}),
               [&] { return "p=2 matching fixture gave " + detail::str(out.remaining); });
    }
    {
      const Prime p3(3);
      const auto f = fixtures::matching(p3);
      const auto out = find_small_support(f.input, f.extra);
      r.expect(out.remaining.size() == 1 && out.remaining[0] == Vector::from_entries(p3, {{0, 1}, {1, 2}}),
               [&] { return "p=3 matching fixture gave " + detail::str(out.remaining); });
    }

    gen::Rng rng(detail::suite_seed(cfg, 4));
    for (std::uint32_t pv : {2u, 3u, 5u}) {
      const Prime p(pv);
      std::uint64_t main_branch = 0, shortcut_only = 0;
      for (int trial = 0; trial < 100; ++trial) {
        const auto inst = gen::orbit_instance(rng, p, 3);
        const auto out = find_small_support(inst.input(cfg.cap_enum), inst.extra);
        r.expect(out.remaining.size() <= 1, [&] { return "more than one vector left"; });
        r.expect(is_support(p, out.support, inst.x, 3), [&] { return "result fails is_support"; });
        r.expect(oracle::support_by_enumeration(p, out.support, inst.x, 3), [&] {
          return "result " + detail::str(out.support) + " fails the enumeration oracle for x=" + detail::str(inst.x);
        });
        const bool used_main = std::any_of(out.trace.begin(), out.trace.end(), [](const ReductionStep& s) { return !s.shortcut; });
        (used_main ? main_branch : shortcut_only) += 1;
        for (const auto& s : out.trace) {
          r.expect(s.after.size() + 1 == s.before.size() || (s.shortcut && s.after.empty() && s.before.size() == 1),
                   [&] { return "trace step did not shrink B by one"; });
        }
      }
      r.note("main_branch_p" + std::to_string(pv), main_branch);
      r.note("shortcut_only_p" + std::to_string(pv), shortcut_only);
      r.expect(main_branch > 0, [&] { return "no instance reached the m, n branch for p=" + std::to_string(pv); });
    }
  });
}

/// Monotonicity of supports and the 1-or-p orbit dichotomy at horizon 3.
inline SuiteResult support_properties(const Config& cfg) {
  return detail::run_suite("supports.properties", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 5));
    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      const Index k = 3;
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vector> cells{gen::random_vector(rng, p, k, true), gen::random_vector(rng, p, k, true)};
        const HFObject x = gen::random_hf(rng, p, k, 2, cells);
        std::vector<Vector> a;
        for (std::uint64_t i = 0, n = rng.below(3); i < n; ++i) a.push_back(gen::random_vector(rng, p, k));
        std::vector<Vector> bigger = a;
        bigger.push_back(gen::random_vector(rng, p, k));
        if (is_support(p, a, x, k)) {
          r.expect(is_support(p, bigger, x, k), [&] { return "support not monotone for " + detail::str(x); });
        }
      }

      // A p-element set X supported by A is a union of G_(A)-orbits, each of
      // p-power size, so every x in X has an orbit of size 1 or p inside X.
      std::vector<Vector> all_w;
      for (const auto& c : oracle::all_tuples(pv, k)) all_w.push_back(Vector::from_dense(p, c));
      std::vector<std::vector<Vector>> bases{{}};
      for (const auto& w : all_w) {
        if (!w.is_zero()) bases.push_back({w});
      }
      std::vector<HFObject> family;
      for (const auto& u : all_w) {
        family.push_back(atom_object(0, u));
        for (const auto& v : all_w) {
          family.push_back(HFObject::tuple({atom_object(0, u), atom_object(0, v)}));
          if (!u.is_zero() && !v.is_zero()) {
            for (Residue beta = 1; beta < pv; ++beta) family.push_back(gen::twisted_matching(p, u, v, 1, beta));
          }
        }
      }
      rng.shuffle(family);
      family.resize(std::min<std::size_t>(family.size(), 240));

      std::vector<Subgroup> stabilizers;
      for (const auto& a : bases) stabilizers.push_back(pointwise_stabilizer(p, a, k));
      std::uint64_t p_orbits = 0, fixed_points = 0;
      std::set<HFObject> seen_sets;
      for (const auto& y : family) {
        for (const auto& g_c : stabilizers) {
          const auto xs = orbit(y, g_c, cfg.cap_enum);
          if (xs.size() != pv) continue;
          const HFObject x_set = HFObject::set(xs);
          if (!seen_sets.insert(x_set).second) continue;
          for (std::size_t ai = 0; ai < bases.size(); ++ai) {
            if (!is_support(p, bases[ai], x_set, k)) continue;
            for (const auto& x : xs) {
              const auto o = orbit(x, stabilizers[ai], cfg.cap_enum);
              r.expect(o.size() == 1 || o.size() == pv,
                       [&] { return "orbit of size " + std::to_string(o.size()) + " inside a p-element set"; });
              r.expect(std::all_of(o.begin(), o.end(), [&](const HFObject& z) { return x_set.contains(z); }),
                       [&] { return "orbit leaves the supported set " + detail::str(x_set); });
              (o.size() == 1 ? fixed_points : p_orbits) += 1;
            }
          }
        }
      }
      r.note("fixed_points_p" + std::to_string(pv), fixed_points);
      r.note("p_element_orbits_p" + std::to_string(pv), p_orbits);
    }
  });
}

/// Acceptance 4: subadditivity and span bound for d_k, the log* chain, and
/// tower vs iterated logarithm for all n <= 10^6.
inline SuiteResult lemma4(const Config& cfg) {
  return detail::run_suite("thin_ideal.lemma4", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 6));
    for (std::uint32_t pv : {2u, 3u}) {
      const Prime p(pv);
      for (int trial = 0; trial < 500; ++trial) {
        auto random_set = [&] {
          std::vector<Vector> s;
          for (std::uint64_t i = 0, n = 1 + rng.below(5); i < n; ++i) s.push_back(gen::random_vector(rng, p, 10));
          return s;
        };
        const auto a = random_set();
        const auto b = random_set();
        auto ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const auto span_elems = oracle::span_by_enumeration(p, a);
        const std::vector<Vector> span_list(span_elems.begin(), span_elems.end());
        std::uint64_t prev = 0;
        for (Index k = 0; k <= 8; ++k) {
          const auto da = density(a, k);
          r.expect(da == oracle::density_by_prefixes(a, k), [&] { return "density disagrees with prefix count"; });
          r.expect(da >= prev, [&] { return "d_k decreased in k"; });
          prev = da;
          r.expect(density(ab, k) <= da + density(b, k), [&] { return "d_k(A u B) > d_k(A) + d_k(B)"; });
          const auto bound = check_span_density_bound(p, a, k, cfg.cap_enum);
          r.expect(bound.lhs == oracle::density_by_prefixes(span_list, k), [&] { return "span density disagrees with enumeration"; });
          r.expect(bound.ok && bound.lhs <= bound.rhs, [&] { return "d_k(Span A) > p^d_k(A)"; });
          r.expect(log_star(bound.lhs, p) <= 1 + log_star(da, p), [&] { return "log* chain fails at k=" + std::to_string(k); });
        }
      }
    }
    for (std::uint32_t pv : {2u, 3u, 5u}) {
      const Prime p(pv);
      std::uint32_t prev = 0;
      std::uint64_t mismatches = 0;
      for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        const auto ls = log_star(n, p);
        if (ls != oracle::iterated_log(n, pv) || ls < prev) ++mismatches;
        prev = ls;
      }
      r.expect(mismatches == 0, [&] { return std::to_string(mismatches) + " log* mismatches for p=" + std::to_string(pv); });
    }
  });
}

namespace detail {

// Reference selection: scans candidates one by one and checks both
// conditions directly against the whole window, leaving at least one
// element after each choice.
inline std::vector<std::uint64_t> reference_selection(std::span<const Vector> window, std::size_t count, Residue p) {
  std::vector<std::uint64_t> idx{0};
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto k = static_cast<Index>(idx.back());
    std::optional<std::uint64_t> found;
    for (std::uint64_t n = idx.back() + 1; n + 1 < window.size() && !found; ++n) {
      if (oracle::iterated_log(n, p) <= i + 1) continue;
      bool stable = true;
      for (std::uint64_t m = n; m < window.size() && stable; ++m) {
        stable = project_prefix(window[m], k) == project_prefix(window[n], k);
      }
      if (stable) found = n;
    }
    if (!found) return idx;
    idx.push_back(*found);
  }
  return idx;
}

}  // namespace detail

/// Acceptance 5: the canonical stream e_0 + ... + e_n and random stabilizing
/// streams, with every selection re-derived by a direct scan.
inline SuiteResult extraction(const Config& cfg) {
  return detail::run_suite("thin_ideal.extraction", [&](SuiteResult& r) {
    {
      const Prime p(2);
      auto s = VectorStream::prefix_sums(p);
      const auto out = extract_thin_subsequence(s, 4, {64, 1});
      r.expect(out.indices == std::vector<std::uint64_t>{0, 3, 5, 17}, [&] { return "canonical stream indices differ"; });
      std::vector<Vector> window;
      for (Index n = 0; n < 64; ++n) {
        std::vector<Vector::Entry> e;
        for (Index j = 0; j <= n; ++j) e.emplace_back(j, 1);
        window.push_back(Vector::from_entries(p, std::move(e)));
      }
      r.expect(detail::reference_selection(window, 4, 2) == out.indices, [&] { return "canonical stream disagrees with reference scan"; });
      r.expect(certify_thin(out.certificate).valid, [&] { return "canonical certificate invalid"; });
    }

    gen::Rng rng(detail::suite_seed(cfg, 7));
    for (auto [pv, count] : {std::pair<std::uint32_t, std::size_t>{2, 4}, {3, 3}}) {
      const Prime p(pv);
      const std::size_t window = 200;
      for (int trial = 0; trial < 100; ++trial) {
        const auto spec = gen::random_stabilizing_stream(rng, p, 24, 40);
        auto stream = VectorStream::from_list(p, spec.prefix(window));
        const auto out = extract_thin_subsequence(stream, count, {window, 1});
        const auto buf = spec.prefix(window);
        r.expect(out.indices == detail::reference_selection(buf, count, pv),
                 [&] { return "selection differs from reference scan, p=" + std::to_string(pv); });
        const auto verdict = certify_thin(out.certificate);
        r.expect(verdict.valid, [&] { return "certificate invalid: " + (verdict.diagnostics.empty() ? "" : verdict.diagnostics[0]); });
        std::vector<Vector> members;
        for (std::size_t i = 1; i < out.indices.size(); ++i) members.push_back(buf[out.indices[i]]);
        for (std::size_t i = 0; i < out.indices.size(); ++i) {
          const auto d = oracle::density_by_prefixes(members, static_cast<Index>(out.indices[i]));
          r.expect(d <= i + 1, [&] { return "d_{n_" + std::to_string(i) + "} = " + std::to_string(d) + " > i + 1"; });
          if (i > 0) {
            r.expect(oracle::iterated_log(out.indices[i], pv) > i, [&] { return "log* condition fails"; });
          }
        }
      }
    }
  });
}

/// Acceptance 6: refutation for every proper S with N <= 5, swap propagation
/// for N <= 8, and composition of swaps.
inline SuiteResult counterexample(const Config& cfg) {
  return detail::run_suite("counterexample", [&](SuiteResult& r) {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto t = build_tower(n, cfg.cap_tower);
      for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t j = 0; j < n; ++j) {
          if (mask >> j & 1) s.push_back(j);
        }
        const auto rep = refute_pcf(t, s);
        std::size_t expected_i = 0;
        while (mask >> expected_i & 1) ++expected_i;
        r.expect(rep.level == expected_i, [&] { return "wrong refuting level"; });
        r.expect(rep.selections_checked == (std::uint64_t{1} << (n - expected_i)), [&] { return "not every selection checked"; });
        r.expect(rep.levels.size() == n - expected_i, [&] { return "report misses levels"; });
      }
    }
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto t = build_tower(n, cfg.cap_tower);
      for (std::size_t lvl = 0; lvl < n; ++lvl) {
        r.expect(t.levels[lvl].size() == 2, [&] { return "level is not a pair"; });
        r.expect(is_support(pair_prime(), {}, t.levels[lvl], t.horizon()), [&] { return "empty set does not support a level"; });
      }
      for (const auto& e : level_effects(t, GroupElement::identity(pair_prime(), t.horizon()))) {
        r.expect(!e.swapped, [&] { return "identity swaps a level"; });
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : swap_effect(t, i)) {
          r.expect(e.swapped == (e.level >= i), [&] {
            return "N=" + std::to_string(n) + " swap at " + std::to_string(i) + " level " + std::to_string(e.level);
          });
        }
        for (std::size_t j = 0; j < n; ++j) {
          const auto gi = level_swap(t, i), gj = level_swap(t, j);
          const auto both = level_effects(t, compose(gi, gj));
          const auto ei = level_effects(t, gi), ej = level_effects(t, gj);
          for (std::size_t lvl = 0; lvl < n; ++lvl) {
            r.expect(both[lvl].swapped == (ei[lvl].swapped != ej[lvl].swapped), [&] { return "swap composition inconsistent"; });
            const auto& x = t.levels[lvl].elements()[0];
            r.expect(act_hf(act_hf(x, gi), gj) == act_hf(x, compose(gi, gj)), [&] { return "tower action not a homomorphism"; });
          }
        }
      }
    }
  });
}

/// Acceptance 7: the Tuple primitive against its Kuratowski encoding.
inline SuiteResult kuratowski(const Config& cfg) {
  return detail::run_suite("encoding.kuratowski", [&](SuiteResult& r) {
    gen::Rng rng(detail::suite_seed(cfg, 8));
    for (int trial = 0; trial < 200; ++trial) {
      const Prime p(trial % 2 == 0 ? 2 : 3);
      const std::size_t arity = 2 + rng.below(3);
      const HFObject t = gen::random_tuple(rng, p, 3, arity, 2);
      const GroupElement g = gen::random_group_element(rng, p, 3);
      const HFObject enc = kuratowski_encode(t);
      r.expect(kuratowski_decode(enc, arity) == t, [&] { return "decode(encode(t)) != t for " + detail::str(t); });
      r.expect(act_hf(enc, g) == kuratowski_encode(act_hf(t, g)), [&] { return "encoding not equivariant for " + detail::str(t); });
      r.expect(kuratowski_decode(act_hf(enc, g), arity) == act_hf(t, g), [&] { return "decoding not equivariant for " + detail::str(t); });
    }
  });
}

/// Action laws at the configured prime and horizon.
inline SuiteResult config_action_laws(const Config& cfg) {
  return detail::run_suite("config.action_laws", [&](SuiteResult& r) {
    const Prime p(cfg.p);
    if (saturating_pow(cfg.p, cfg.horizon) > cfg.cap_enum) {
      throw ResourceError("horizon group of order " + std::to_string(cfg.p) + "^" + std::to_string(cfg.horizon) +
                          " exceeds the enumeration cap");
    }
    gen::Rng rng(detail::suite_seed(cfg, 9));
    const auto table = detail::group_table(p, cfg.horizon);
    for (int i = 0; i < 50; ++i) {
      std::vector<std::size_t> hs;
      for (int j = 0; j < 8; ++j) hs.push_back(rng.below(table.elems.size()));
      detail::check_action_laws(r, table, gen::random_hf(rng, p, cfg.horizon, 3), hs);
    }
    const Subgroup full = Subgroup::full(p, cfg.horizon);
    for (int i = 0; i < 20; ++i) {
      const HFObject x = gen::random_hf(rng, p, cfg.horizon, 2);
      const auto orb = orbit(x, full, cfg.cap_enum);
      const auto stab = stabilizer_in(x, full, cfg.cap_enum);
      r.expect(orb.size() * stab.order() == full.order(), [&] { return "orbit-stabilizer count fails for " + detail::str(x); });
    }
  });
}

struct NamedSuite {
  const char* name;
  SuiteResult (*run)(const Config&);
};

inline const std::vector<NamedSuite>& all_suites() {
  static const std::vector<NamedSuite> suites{
      {"atom_action.laws", action_laws},
      {"atom_action.remarks", remarks},
      {"config.action_laws", config_action_laws},
      {"counterexample", counterexample},
      {"encoding.kuratowski", kuratowski},
      {"fp_core.invariants", fp_core_invariants},
      {"supports.properties", support_properties},
      {"supports.reduction", support_reduction},
      {"thin_ideal.extraction", extraction},
      {"thin_ideal.lemma4", lemma4},
  };
  return suites;
}

}  // namespace fmlab::verify
