#pragma once

// Seeded random generators for the property suites.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "fmlab/action.hpp"
#include "fmlab/fp.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/thin.hpp"

namespace fmlab::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). Plain modulo keeps streams identical across standard
  // libraries; the bias is irrelevant at these sizes.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool coin() { return below(2) == 1; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline Vector random_vector(Rng& rng, Prime p, Index horizon, bool nonzero = false) {
  while (true) {
    std::vector<Residue> c(horizon);
    for (auto& x : c) x = static_cast<Residue>(rng.below(p.value()));
    Vector v = Vector::from_dense(p, c);
    if (!nonzero || !v.is_zero() || horizon == 0) return v;
  }
}

inline GroupElement random_group_element(Rng& rng, Prime p, Index horizon) {
  std::vector<Residue> c(horizon);
  for (auto& x : c) x = static_cast<Residue>(rng.below(p.value()));
  return GroupElement(p, std::move(c));
}

inline Atom random_atom(Rng& rng, Prime p, Index horizon) {
  return Atom(static_cast<Residue>(rng.below(p.value())), random_vector(rng, p, horizon));
}

// Atoms drawn from a fixed pool of cells when one is given.
inline HFObject random_hf(Rng& rng, Prime p, Index horizon, int depth, std::span<const Vector> cells = {}) {
  if (depth <= 0 || rng.below(3) == 0) {
    if (!cells.empty()) {
      return atom_object(static_cast<Residue>(rng.below(p.value())), cells[rng.below(cells.size())]);
    }
    return HFObject::atom(random_atom(rng, p, horizon));
  }
  const std::size_t n = rng.below(4);
  std::vector<HFObject> kids;
  for (std::size_t i = 0; i < n; ++i) kids.push_back(random_hf(rng, p, horizon, depth - 1, cells));
  return rng.coin() ? HFObject::set(std::move(kids)) : HFObject::tuple(std::move(kids));
}

inline HFObject random_tuple(Rng& rng, Prime p, Index horizon, std::size_t arity, int depth) {
  std::vector<HFObject> kids;
  for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_hf(rng, p, horizon, depth));
  return HFObject::tuple(std::move(kids));
}

/// {((j*alpha + c1, u1), (j*beta + c2, u2)) : j in F_p}: a "matching" of
/// U_u1 with U_u2 along a line.
inline HFObject twisted_matching(Prime p, const Vector& u1, const Vector& u2, Residue alpha, Residue beta,
                                 Residue c1 = 0, Residue c2 = 0) {
  std::vector<HFObject> pairs;
  for (Residue j = 0; j < p.value(); ++j) {
    pairs.push_back(HFObject::tuple({atom_object(p.add(p.mul(j, alpha), c1), u1),
                                     atom_object(p.add(p.mul(j, beta), c2), u2)}));
  }
  return HFObject::set(std::move(pairs));
}

/// An x in a p-element set X with A supporting X and A u B supporting x.
struct OrbitInstance {
  Prime prime;
  Index horizon;
  HFObject x;
  HFObject orbit_set;
  std::vector<Vector> base;
  std::vector<Vector> extra;

  ReductionInput input(std::uint64_t cap = kDefaultEnumerationCap) const {
    return {prime, horizon, x, orbit_set, base, cap};
  }
};

inline std::optional<OrbitInstance> try_orbit_instance(Rng& rng, Prime p, Index horizon) {
  const Vector u1 = random_vector(rng, p, horizon, true);
  const Vector u2 = random_vector(rng, p, horizon, true);
  if (span_of(p, std::vector<Vector>{u1, u2}).dimension() != 2) return std::nullopt;

  std::vector<Vector> base;
  if (rng.coin()) base.push_back(random_vector(rng, p, horizon, true));

  const auto nz = [&] { return static_cast<Residue>(1 + rng.below(p.value() - 1)); };
  HFObject y;
  switch (rng.below(3)) {
    case 0:
      y = twisted_matching(p, u1, u2, nz(), nz(), static_cast<Residue>(rng.below(p.value())),
                           static_cast<Residue>(rng.below(p.value())));
      break;
    case 1: {
      const Vector tag = base.empty() ? u1 : base.front();
      y = HFObject::tuple({twisted_matching(p, u1, u2, 1, nz()), atom_object(static_cast<Residue>(rng.below(p.value())), tag)});
      break;
    }
    default: {
      std::vector<Vector> cells{u1, u2};
      cells.insert(cells.end(), base.begin(), base.end());
      y = random_hf(rng, p, horizon, 2, cells);
      break;
    }
  }

  const Subgroup g_a = pointwise_stabilizer(p, base, horizon);
  const auto orb = orbit(y, g_a);
  if (orb.size() != p.value()) return std::nullopt;
  HFObject x_set = HFObject::set(orb);
  HFObject x = orb[rng.below(orb.size())];

  // B spans the cells of x modulo A, padded to two vectors, then mixed.
  std::vector<Vector> r = normalize_against(p, base, atom_cells(x));
  if (r.size() > 2) return std::nullopt;
  for (int tries = 0; r.size() < 2 && tries < 32; ++tries) {
    std::vector<Vector> all = base;
    all.insert(all.end(), r.begin(), r.end());
    const Vector cand = random_vector(rng, p, horizon, true);
    if (!span_of(p, all).contains(cand)) r.push_back(cand);
  }
  if (r.size() < 2) return std::nullopt;

  const Subspace span_a = span_of(p, base);
  std::vector<Vector> extra;
  while (true) {
    const Residue m00 = static_cast<Residue>(rng.below(p.value())), m01 = static_cast<Residue>(rng.below(p.value()));
    const Residue m10 = static_cast<Residue>(rng.below(p.value())), m11 = static_cast<Residue>(rng.below(p.value()));
    if (p.sub(p.mul(m00, m11), p.mul(m01, m10)) == 0) continue;
    extra = {r[0].scaled(m00) + r[1].scaled(m01), r[0].scaled(m10) + r[1].scaled(m11)};
    break;
  }
  if (!span_a.basis().empty()) {
    for (auto& b : extra) b = b.axpy(static_cast<Residue>(rng.below(p.value())), span_a.basis()[0]);
  }
  return OrbitInstance{p, horizon, std::move(x), std::move(x_set), std::move(base), std::move(extra)};
}

inline OrbitInstance orbit_instance(Rng& rng, Prime p, Index horizon) {
  while (true) {
    if (auto inst = try_orbit_instance(rng, p, horizon)) return std::move(*inst);
  }
}

/// Parameters of a stream whose coordinates below `coords` settle at random
/// times; coordinate coords + n carries a 1 in x_n only, which keeps the
/// elements distinct.
struct StabilizingStream {
  Prime prime;
  Index coords;
  std::vector<std::size_t> settle;         // per coordinate
  std::vector<Residue> final_value;        // per coordinate
  std::vector<std::vector<Residue>> noise;  // [n][c] before settling

  Vector at(std::size_t n) const {
    std::vector<Vector::Entry> e;
    for (Index c = 0; c < coords; ++c) {
      const Residue v = n < settle[c] ? noise[n][c] : final_value[c];
      if (v != 0) e.emplace_back(c, v);
    }
    e.emplace_back(static_cast<Index>(coords + n), 1);
    return Vector::from_entries(prime, std::move(e));
  }

  std::vector<Vector> prefix(std::size_t len) const {
    std::vector<Vector> out;
    for (std::size_t n = 0; n < len; ++n) out.push_back(at(n));
    return out;
  }
};

inline StabilizingStream random_stabilizing_stream(Rng& rng, Prime p, Index coords, std::size_t max_settle) {
  StabilizingStream s{p, coords, {}, {}, {}};
  for (Index c = 0; c < coords; ++c) {
    s.settle.push_back(rng.below(max_settle + 1));
    s.final_value.push_back(static_cast<Residue>(rng.below(p.value())));
  }
  s.noise.resize(max_settle + 1);
  for (auto& row : s.noise) {
    for (Index c = 0; c < coords; ++c) row.push_back(static_cast<Residue>(rng.below(p.value())));
  }
  return s;
}

}  // namespace fmlab::gen
