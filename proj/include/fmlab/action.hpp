#pragma once

// Atoms U = F_p x W, horizon-truncated elements of the product group G, the
// action (a, w)g = (a + sum w_i g_i, w), and its extension to hereditarily
// finite objects built over atoms.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "fmlab/error.hpp"
#include "fmlab/fp.hpp"

namespace fmlab {

class Atom {
 public:
  Atom(FpScalar a, Vector w) : a_(a.value()), w_(std::move(w)) {
    require_same_prime(a.prime(), w_.prime(), "atom");
  }
  Atom(Residue a, Vector w) : a_(a % w.prime().value()), w_(std::move(w)) {}

  Residue scalar() const noexcept { return a_; }
  const Vector& cell() const noexcept { return w_; }
  const Prime& prime() const noexcept { return w_.prime(); }

  friend bool operator==(const Atom&, const Atom&) = default;
  // Ordered by cell first so that the members of one U_w are adjacent.
  friend std::strong_ordering operator<=>(const Atom& x, const Atom& y) {
    if (auto c = x.w_ <=> y.w_; c != 0) return c;
    return x.a_ <=> y.a_;
  }

 private:
  Residue a_;
  Vector w_;
};

/// Element of G truncated to the coordinates below its horizon. Dense: every
/// coordinate below the horizon is defined.
class GroupElement {
 public:
  GroupElement(Prime p, std::vector<Residue> coords) : prime_(p), coords_(std::move(coords)) {
    for (auto& c : coords_) c %= p.value();
  }

  static GroupElement identity(Prime p, Index horizon) {
    return GroupElement(p, std::vector<Residue>(horizon, 0));
  }

  static GroupElement unit(Prime p, Index horizon, Index i, Residue c = 1) {
    if (i >= horizon) throw UsageError("unit group element index beyond horizon");
    std::vector<Residue> coords(horizon, 0);
    coords[i] = c;
    return GroupElement(p, std::move(coords));
  }

  static GroupElement from_vector(const Vector& v, Index horizon) {
    if (v.support_bound() > horizon) {
      throw UsageError("group element " + to_string(v) + " exceeds horizon " +
                       std::to_string(horizon));
    }
    std::vector<Residue> coords(horizon, 0);
    for (const auto& [i, c] : v.entries()) coords[i] = c;
    return GroupElement(v.prime(), std::move(coords));
  }

  const Prime& prime() const noexcept { return prime_; }
  Index horizon() const noexcept { return static_cast<Index>(coords_.size()); }
  std::span<const Residue> coords() const noexcept { return coords_; }
  Residue operator[](Index i) const { return coords_.at(i); }

  bool is_identity() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Residue c) { return c == 0; });
  }

  Vector to_vector() const { return Vector::from_dense(prime_, coords_); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  Prime prime_;
  std::vector<Residue> coords_;
};

/// sum(w_i g_i); throws UsageError when w reaches past g's horizon.
inline Residue pairing(const Vector& w, const GroupElement& g) {
  require_same_prime(w.prime(), g.prime(), "pairing");
  return pair_with_dense(w, g.coords());
}

inline Atom act_atom(const Atom& x, const GroupElement& g) {
  return Atom(x.prime().add(x.scalar(), pairing(x.cell(), g)), x.cell());
}

/// Group operation (coordinatewise sum). Acting by compose(g, h) is acting
/// by g, then by h.
inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
  require_same_prime(g.prime(), h.prime(), "compose");
  if (g.horizon() != h.horizon()) {
    throw UsageError("compose: horizons " + std::to_string(g.horizon()) + " and " +
                     std::to_string(h.horizon()) + " differ");
  }
  std::vector<Residue> c(g.horizon());
  for (Index i = 0; i < g.horizon(); ++i) c[i] = g.prime().add(g[i], h[i]);
  return GroupElement(g.prime(), std::move(c));
}

inline GroupElement inverse(const GroupElement& g) {
  std::vector<Residue> c(g.horizon());
  for (Index i = 0; i < g.horizon(); ++i) c[i] = g.prime().neg(g[i]);
  return GroupElement(g.prime(), std::move(c));
}

/// True iff g fixes every atom of U_w for every w in cells.
inline bool fixes_at(const GroupElement& g, std::span<const Vector> cells) {
  return std::all_of(cells.begin(), cells.end(), [&](const Vector& w) { return pairing(w, g) == 0; });
}

/// Subgroup of the horizon-k group, stored as a subspace of coordinate
/// vectors. Valid because G below a horizon is elementary abelian.
class Subgroup {
 public:
  Subgroup(Subspace coords, Index horizon) : coords_(std::move(coords)), horizon_(horizon) {
    if (coords_.support_bound() > horizon_) {
      throw UsageError("subgroup generators exceed horizon " + std::to_string(horizon_));
    }
  }

  static Subgroup full(Prime p, Index horizon) {
    Subspace s(p);
    for (Index i = 0; i < horizon; ++i) s.insert(Vector::unit(p, i));
    return Subgroup(std::move(s), horizon);
  }
  static Subgroup trivial(Prime p, Index horizon) { return Subgroup(Subspace(p), horizon); }

  static Subgroup generated_by(Prime p, Index horizon, std::span<const GroupElement> gens) {
    Subspace s(p);
    for (const auto& g : gens) {
      if (g.horizon() != horizon) throw UsageError("generator horizon mismatch");
      s.insert(g.to_vector());
    }
    return Subgroup(std::move(s), horizon);
  }

  const Prime& prime() const noexcept { return coords_.prime(); }
  Index horizon() const noexcept { return horizon_; }
  const Subspace& coordinates() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.dimension(); }
  std::uint64_t order() const noexcept { return coords_.size(); }

  std::vector<GroupElement> generators() const {
    std::vector<GroupElement> out;
    for (const auto& b : coords_.basis()) out.push_back(GroupElement::from_vector(b, horizon_));
    return out;
  }

  bool contains(const GroupElement& g) const {
    return g.horizon() == horizon_ && coords_.contains(g.to_vector());
  }

  bool is_subgroup_of(const Subgroup& other) const {
    return horizon_ == other.horizon_ && coords_.is_subspace_of(other.coords_);
  }

  // [other : *this] as a power of p; requires *this <= other.
  std::size_t index_exponent_in(const Subgroup& other) const {
    if (!is_subgroup_of(other)) throw UsageError("index of a non-subgroup");
    return other.dimension() - dimension();
  }

  // Visits elements in basis-combination order.
  template <typename Visitor>
  void for_each(std::uint64_t cap, Visitor&& visit) const {
    coords_.for_each_element(cap, [&](const Vector& v) {
      if constexpr (std::is_same_v<std::invoke_result_t<Visitor, const GroupElement&>, bool>) {
        return visit(GroupElement::from_vector(v, horizon_));
      } else {
        visit(GroupElement::from_vector(v, horizon_));
      }
    });
  }

  std::vector<GroupElement> elements(std::uint64_t cap = kDefaultEnumerationCap) const {
    std::vector<GroupElement> out;
    for_each(cap, [&](const GroupElement& g) { out.push_back(g); });
    return out;
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  Subspace coords_;
  Index horizon_;
};

/// G_(A) at horizon k: the annihilator of Span(A).
inline Subgroup pointwise_stabilizer(Prime p, std::span<const Vector> cells, Index horizon) {
  for (const auto& w : cells) {
    require_same_prime(p, w.prime(), "pointwise_stabilizer");
    if (w.support_bound() > horizon) {
      throw UsageError("pointwise_stabilizer: cell " + to_string(w) + " exceeds horizon " +
                       std::to_string(horizon));
    }
  }
  return Subgroup(annihilator(span_of(p, cells), horizon), horizon);
}

/// Hereditarily finite object over atoms: an atom, a finite set, or a tuple.
/// Immutable; copies share structure. Sets are kept sorted and duplicate-free
/// so equality is structural.
class HFObject {
 public:
  enum class Kind { atom, set, tuple };

  HFObject() : HFObject(set({})) {}

  static HFObject atom(Atom a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->atom.emplace(std::move(a));
    n->atom_count = 1;
    return HFObject(std::move(n));
  }

  static HFObject set(std::vector<HFObject> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return make_compound(Kind::set, std::move(elems));
  }

  static HFObject tuple(std::vector<HFObject> elems) { return make_compound(Kind::tuple, std::move(elems)); }

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::atom; }
  bool is_set() const noexcept { return kind() == Kind::set; }
  bool is_tuple() const noexcept { return kind() == Kind::tuple; }

  const Atom& as_atom() const {
    if (!is_atom()) throw UsageError("HF object is not an atom");
    return *node_->atom;
  }
  std::span<const HFObject> elements() const noexcept { return node_->elems; }
  std::size_t size() const noexcept { return node_->elems.size(); }

  bool contains(const HFObject& x) const {
    if (!is_set()) return false;
    return std::binary_search(node_->elems.begin(), node_->elems.end(), x);
  }

  // Atom occurrences counted with multiplicity through shared subobjects.
  std::uint64_t atom_count() const noexcept { return node_->atom_count; }

  friend bool operator==(const HFObject& x, const HFObject& y) {
    return x.node_ == y.node_ || (x <=> y) == 0;
  }

  friend std::strong_ordering operator<=>(const HFObject& x, const HFObject& y) {
    if (x.node_ == y.node_) return std::strong_ordering::equal;
    if (auto c = x.kind() <=> y.kind(); c != 0) return c;
    if (x.is_atom()) return *x.node_->atom <=> *y.node_->atom;
    return std::lexicographical_compare_three_way(x.node_->elems.begin(), x.node_->elems.end(),
                                                  y.node_->elems.begin(), y.node_->elems.end());
  }

 private:
  struct Node {
    Kind kind = Kind::set;
    std::optional<Atom> atom;
    std::vector<HFObject> elems;
    std::uint64_t atom_count = 0;
  };

  explicit HFObject(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static HFObject make_compound(Kind k, std::vector<HFObject> elems) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    for (const auto& e : elems) n->atom_count += e.atom_count();
    n->elems = std::move(elems);
    return HFObject(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

inline HFObject atom_object(Residue a, Vector w) { return HFObject::atom(Atom(a, std::move(w))); }

/// U_w = {(a, w) : a in F_p}.
struct PartitionCell {
  Vector w;

  std::vector<Atom> members() const {
    std::vector<Atom> out;
    for (Residue a = 0; a < w.prime().value(); ++a) out.emplace_back(a, w);
    return out;
  }

  HFObject as_set() const {
    std::vector<HFObject> elems;
    for (auto& a : members()) elems.push_back(HFObject::atom(std::move(a)));
    return HFObject::set(std::move(elems));
  }
};

// The distinct cells (second coordinates) of all atoms occurring in x.
inline std::vector<Vector> atom_cells(const HFObject& x) {
  std::set<Vector> seen;
  std::vector<const HFObject*> todo{&x};
  while (!todo.empty()) {
    const HFObject* o = todo.back();
    todo.pop_back();
    if (o->is_atom()) {
      seen.insert(o->as_atom().cell());
    } else {
      for (const auto& e : o->elements()) todo.push_back(&e);
    }
  }
  return {seen.begin(), seen.end()};
}

inline Index support_bound(const HFObject& x) {
  Index k = 0;
  for (const auto& w : atom_cells(x)) k = std::max(k, w.support_bound());
  return k;
}

inline HFObject act_hf(const HFObject& x, const GroupElement& g) {
  switch (x.kind()) {
    case HFObject::Kind::atom:
      return HFObject::atom(act_atom(x.as_atom(), g));
    case HFObject::Kind::set:
    case HFObject::Kind::tuple: {
      std::vector<HFObject> out;
      out.reserve(x.size());
      for (const auto& e : x.elements()) out.push_back(act_hf(e, g));
      return x.is_set() ? HFObject::set(std::move(out)) : HFObject::tuple(std::move(out));
    }
  }
  throw ConsistencyError("unknown HF object kind");
}

/// {act_hf(x, g) : g in H}, sorted.
inline std::vector<HFObject> orbit(const HFObject& x, const Subgroup& h,
                                   std::uint64_t cap = kDefaultEnumerationCap) {
  std::set<HFObject> seen;
  h.for_each(cap, [&](const GroupElement& g) { seen.insert(act_hf(x, g)); });
  return {seen.begin(), seen.end()};
}

/// {g in H : act_hf(x, g) = x}. The fixing set is checked to be a subgroup
/// (its span has exactly as many elements as it does).
inline Subgroup stabilizer_in(const HFObject& x, const Subgroup& h,
                              std::uint64_t cap = kDefaultEnumerationCap) {
  Subspace fixers(h.prime());
  std::uint64_t count = 0;
  bool saw_identity = false;
  h.for_each(cap, [&](const GroupElement& g) {
    if (act_hf(x, g) == x) {
      ++count;
      saw_identity = saw_identity || g.is_identity();
      fixers.insert(g.to_vector());
    }
  });
  if (!saw_identity || fixers.size() != count) {
    throw ConsistencyError("stabilizer is not closed under composition");
  }
  return Subgroup(std::move(fixers), h.horizon());
}

// Kuratowski encoding of tuples, used to cross-check that treating Tuple as a
// primitive does not change the action. (a, b) = {{a}, {a, b}}; longer tuples
// nest to the right: (a, b, c) = (a, (b, c)). Only the outermost tuple is
// encoded; components are left as they are.
inline HFObject kuratowski_pair(const HFObject& a, const HFObject& b) {
  return HFObject::set({HFObject::set({a}), HFObject::set({a, b})});
}

inline HFObject kuratowski_encode(const HFObject& t) {
  if (!t.is_tuple() || t.size() < 2) throw UsageError("kuratowski_encode needs a tuple of length >= 2");
  const auto e = t.elements();
  HFObject acc = kuratowski_pair(e[e.size() - 2], e[e.size() - 1]);
  for (std::size_t i = e.size() - 2; i-- > 0;) acc = kuratowski_pair(e[i], acc);
  return acc;
}

inline std::pair<HFObject, HFObject> kuratowski_unpair(const HFObject& k) {
  if (!k.is_set() || k.size() < 1 || k.size() > 2) throw UsageError("not a Kuratowski pair");
  if (k.size() == 1) {
    const auto& only = k.elements()[0];
    if (!only.is_set() || only.size() != 1) throw UsageError("not a Kuratowski pair");
    return {only.elements()[0], only.elements()[0]};
  }
  const auto& s0 = k.elements()[0];
  const auto& s1 = k.elements()[1];
  if (!s0.is_set() || !s1.is_set()) throw UsageError("not a Kuratowski pair");
  const HFObject& single = s0.size() == 1 ? s0 : s1;
  const HFObject& both = s0.size() == 1 ? s1 : s0;
  if (single.size() != 1 || both.size() != 2) throw UsageError("not a Kuratowski pair");
  const HFObject& a = single.elements()[0];
  if (!both.contains(a)) throw UsageError("not a Kuratowski pair");
  const HFObject& b = both.elements()[0] == a ? both.elements()[1] : both.elements()[0];
  return {a, b};
}

inline HFObject kuratowski_decode(const HFObject& k, std::size_t arity) {
  if (arity < 2) throw UsageError("kuratowski_decode needs arity >= 2");
  std::vector<HFObject> out;
  HFObject rest = k;
  for (std::size_t i = 0; i + 2 < arity; ++i) {
    auto [head, tail] = kuratowski_unpair(rest);
    out.push_back(std::move(head));
    rest = std::move(tail);
  }
  auto [a, b] = kuratowski_unpair(rest);
  out.push_back(std::move(a));
  out.push_back(std::move(b));
  return HFObject::tuple(std::move(out));
}

// "(a|w)" with w in the vector text format.
inline std::string to_string(const Atom& a) {
  return "(" + std::to_string(a.scalar()) + "|" + to_string(a.cell()) + ")";
}
inline std::string display(const Atom& a) {
  return "(" + std::to_string(a.scalar()) + "|" + display(a.cell()) + ")";
}

// Sets as {x y}, tuples as <x y>, atoms as (a|w).
inline std::string to_string(const HFObject& x) {
  if (x.is_atom()) return to_string(x.as_atom());
  std::string s = x.is_set() ? "{" : "<";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ' ';
    s += to_string(x.elements()[i]);
  }
  return s + (x.is_set() ? "}" : ">");
}

inline Atom parse_atom(std::string_view text, Prime p) {
  if (text.size() < 3 || text.front() != '(' || text.back() != ')') {
    throw UsageError("atom '" + std::string(text) + "' is not of the form (a|w)");
  }
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw UsageError("atom '" + std::string(text) + "' lacks '|'");
  const auto a = detail::parse_natural(text.substr(1, bar - 1), text);
  if (a >= p.value()) throw UsageError("atom scalar out of range in '" + std::string(text) + "'");
  return Atom(static_cast<Residue>(a), parse_vector(text.substr(bar + 1, text.size() - bar - 2), p));
}

// Dense residues below the horizon: "1,0,1".
inline std::string to_string(const GroupElement& g) {
  std::string s;
  for (Index i = 0; i < g.horizon(); ++i) {
    if (i) s += ',';
    s += std::to_string(g[i]);
  }
  return s;
}

inline GroupElement parse_group_element(std::string_view text, Prime p) {
  std::vector<Residue> coords;
  if (!text.empty()) {
    for (auto part : detail::split(text, ',')) {
      const auto v = detail::parse_natural(part, text);
      if (v >= p.value()) throw UsageError("group coordinate out of range in '" + std::string(text) + "'");
      coords.push_back(static_cast<Residue>(v));
    }
  }
  return GroupElement(p, std::move(coords));
}

}  // namespace fmlab
