#pragma once

// Exact arithmetic in F_p and linear algebra over finitely supported
// coordinate vectors.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "fmlab/error.hpp"

namespace fmlab {

using Residue = std::uint32_t;
using Index = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Saturating p^e.
constexpr std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > kMax / base) return kMax;
    r *= base;
  }
  return r;
}

/// The characteristic of the field. Validated once at construction so that
/// everything downstream can assume primality.
class Prime {
 public:
  explicit Prime(std::uint64_t p) : p_(static_cast<Residue>(p)) {
    if (p > (Residue{1} << 31) || !is_prime(p)) {
      throw UsageError("not a supported prime: " + std::to_string(p));
    }
  }

  Residue value() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    const auto m = static_cast<std::int64_t>(p_);
    auto r = v % m;
    return static_cast<Residue>(r < 0 ? r + m : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }
  Residue inv(Residue a) const {
    if (a % p_ == 0) throw UsageError("zero has no inverse in F_p");
    // a^(p-2)
    Residue result = 1;
    Residue base = a % p_;
    for (std::uint64_t e = p_ - 2; e > 0; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }

  friend bool operator==(const Prime&, const Prime&) = default;
  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  Residue p_;
};

inline void require_same_prime(const Prime& a, const Prime& b, std::string_view what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": mismatched primes " + std::to_string(a.value()) +
                     " and " + std::to_string(b.value()));
  }
}

class FpScalar {
 public:
  FpScalar(Prime p, std::int64_t v) : prime_(p), value_(p.reduce(v)) {}

  Residue value() const noexcept { return value_; }
  const Prime& prime() const noexcept { return prime_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FpScalar inverse() const { return FpScalar(prime_, prime_.inv(value_)); }

  friend FpScalar operator+(const FpScalar& a, const FpScalar& b) {
    require_same_prime(a.prime_, b.prime_, "scalar addition");
    return FpScalar(a.prime_, a.prime_.add(a.value_, b.value_));
  }
  friend FpScalar operator-(const FpScalar& a, const FpScalar& b) {
    require_same_prime(a.prime_, b.prime_, "scalar subtraction");
    return FpScalar(a.prime_, a.prime_.sub(a.value_, b.value_));
  }
  friend FpScalar operator*(const FpScalar& a, const FpScalar& b) {
    require_same_prime(a.prime_, b.prime_, "scalar multiplication");
    return FpScalar(a.prime_, a.prime_.mul(a.value_, b.value_));
  }
  friend bool operator==(const FpScalar&, const FpScalar&) = default;

 private:
  Prime prime_;
  Residue value_;
};

/// Element of W: a finitely supported F_p sequence, stored as sorted
/// (index, nonzero residue) pairs. Equality is structural.
class Vector {
 public:
  using Entry = std::pair<Index, Residue>;

  explicit Vector(Prime p) : prime_(p) {}

  // Entries may be unsorted and may contain zeros; duplicate indices are
  // rejected.
  static Vector from_entries(Prime p, std::vector<Entry> entries) {
    for (auto& e : entries) e.second %= p.value();
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].first == entries[i - 1].first) {
        throw UsageError("duplicate coordinate " + std::to_string(entries[i].first));
      }
    }
    std::erase_if(entries, [](const Entry& e) { return e.second == 0; });
    Vector v(p);
    v.entries_ = std::move(entries);
    return v;
  }

  static Vector unit(Prime p, Index i, Residue c = 1) { return from_entries(p, {{i, c}}); }

  static Vector from_dense(Prime p, std::span<const Residue> coords) {
    Vector v(p);
    for (Index i = 0; i < coords.size(); ++i) {
      const Residue c = coords[i] % p.value();
      if (c != 0) v.entries_.emplace_back(i, c);
    }
    return v;
  }

  const Prime& prime() const noexcept { return prime_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }

  Residue at(Index i) const noexcept {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, 0});
    return (it != entries_.end() && it->first == i) ? it->second : 0;
  }

  std::optional<Index> leading_index() const noexcept {
    if (entries_.empty()) return std::nullopt;
    return entries_.front().first;
  }

  // One past the largest stored index; 0 for the zero vector.
  Index support_bound() const noexcept { return entries_.empty() ? 0 : entries_.back().first + 1; }

  std::vector<Index> support() const {
    std::vector<Index> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.first);
    return s;
  }

  Vector scaled(Residue c) const {
    c %= prime_.value();
    Vector r(prime_);
    if (c == 0) return r;
    r.entries_.reserve(entries_.size());
    for (const auto& [i, v] : entries_) r.entries_.emplace_back(i, prime_.mul(v, c));
    return r;
  }

  // this + c * other
  Vector axpy(Residue c, const Vector& other) const {
    require_same_prime(prime_, other.prime_, "vector combination");
    c %= prime_.value();
    if (c == 0) return *this;
    Vector r(prime_);
    r.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        r.entries_.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        r.entries_.emplace_back(b->first, prime_.mul(b->second, c));
        ++b;
      } else {
        const Residue s = prime_.add(a->second, prime_.mul(b->second, c));
        if (s != 0) r.entries_.emplace_back(a->first, s);
        ++a;
        ++b;
      }
    }
    return r;
  }

  friend Vector operator+(const Vector& a, const Vector& b) { return a.axpy(1, b); }
  friend Vector operator-(const Vector& a, const Vector& b) {
    return a.axpy(a.prime_.neg(1), b);
  }

  friend bool operator==(const Vector&, const Vector&) = default;
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    if (auto c = a.prime_ <=> b.prime_; c != 0) return c;
    return a.entries_ <=> b.entries_;
  }

 private:
  Prime prime_;
  std::vector<Entry> entries_;
};

/// Linear combination sum(coeffs[i] * vecs[i]).
inline Vector vector_combine(std::span<const FpScalar> coeffs, std::span<const Vector> vecs) {
  if (coeffs.size() != vecs.size()) {
    throw UsageError("vector_combine: " + std::to_string(coeffs.size()) + " coefficients for " +
                     std::to_string(vecs.size()) + " vectors");
  }
  if (vecs.empty()) throw UsageError("vector_combine: empty combination has no prime");
  Vector acc(vecs.front().prime());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    require_same_prime(coeffs[i].prime(), vecs[i].prime(), "vector_combine");
    acc = acc.axpy(coeffs[i].value(), vecs[i]);
  }
  return acc;
}

inline Vector project_prefix(const Vector& v, Index k) {
  std::vector<Vector::Entry> kept;
  for (const auto& e : v.entries()) {
    if (e.first >= k) break;
    kept.push_back(e);
  }
  return Vector::from_entries(v.prime(), std::move(kept));
}

// Dot product of a sparse vector with a dense coordinate list. Coordinates of
// v at or beyond dense.size() are a usage error.
inline Residue pair_with_dense(const Vector& v, std::span<const Residue> dense) {
  const Prime& p = v.prime();
  Residue s = 0;
  for (const auto& [i, c] : v.entries()) {
    if (i >= dense.size()) {
      throw UsageError("coordinate " + std::to_string(i) + " is beyond horizon " +
                       std::to_string(dense.size()));
    }
    s = p.add(s, p.mul(c, dense[i]));
  }
  return s;
}

/// Subspace of W in reduced row-echelon form: each basis vector has its
/// least nonzero coordinate (the pivot) equal to 1, no other basis vector is
/// nonzero at that pivot, and the basis is sorted by pivot. Equal subspaces
/// have identical bases.
class Subspace {
 public:
  explicit Subspace(Prime p) : prime_(p) {}

  const Prime& prime() const noexcept { return prime_; }
  std::span<const Vector> basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }

  std::vector<Index> pivots() const {
    std::vector<Index> out;
    for (const auto& b : basis_) out.push_back(*b.leading_index());
    return out;
  }

  // Number of elements, saturating.
  std::uint64_t size() const noexcept { return saturating_pow(prime_.value(), basis_.size()); }

  Index support_bound() const noexcept {
    Index k = 0;
    for (const auto& b : basis_) k = std::max(k, b.support_bound());
    return k;
  }

  // Remainder of v after eliminating every pivot; zero iff v is in the span.
  Vector reduce(const Vector& v) const {
    require_same_prime(prime_, v.prime(), "subspace reduction");
    Vector r = v;
    for (const auto& b : basis_) {
      const Residue c = r.at(*b.leading_index());
      if (c != 0) r = r.axpy(prime_.neg(c), b);
    }
    return r;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  bool is_subspace_of(const Subspace& other) const {
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](const Vector& b) { return other.contains(b); });
  }

  // Adds v to the span; returns false if v was already in it.
  bool insert(const Vector& v) {
    Vector r = reduce(v);
    if (r.is_zero()) return false;
    const Index pivot = *r.leading_index();
    r = r.scaled(prime_.inv(r.at(pivot)));
    for (auto& b : basis_) {
      const Residue c = b.at(pivot);
      if (c != 0) b = b.axpy(prime_.neg(c), r);
    }
    auto pos = std::lower_bound(basis_.begin(), basis_.end(), pivot,
                                [](const Vector& b, Index piv) { return *b.leading_index() < piv; });
    basis_.insert(pos, std::move(r));
    return true;
  }

  // Visits every element in basis-combination order: the coefficient of
  // basis()[0] is the fastest-moving digit.
  template <typename Visitor>
  void for_each_element(std::uint64_t cap, Visitor&& visit) const {
    if (size() > cap) {
      throw ResourceError("subspace of dimension " + std::to_string(dimension()) + " over F_" +
                          std::to_string(prime_.value()) + " exceeds enumeration cap " +
                          std::to_string(cap));
    }
    std::vector<Residue> digits(basis_.size(), 0);
    const std::uint64_t total = size();
    for (std::uint64_t n = 0; n < total; ++n) {
      Vector v(prime_);
      for (std::size_t i = 0; i < basis_.size(); ++i) v = v.axpy(digits[i], basis_[i]);
      if constexpr (std::is_same_v<std::invoke_result_t<Visitor, const Vector&>, bool>) {
        if (!visit(v)) return;
      } else {
        visit(v);
      }
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < prime_.value()) break;
        digits[i] = 0;
      }
    }
  }

  std::vector<Vector> elements(std::uint64_t cap = kDefaultEnumerationCap) const {
    std::vector<Vector> out;
    for_each_element(cap, [&](const Vector& v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Prime prime_;
  std::vector<Vector> basis_;
};

inline Subspace span_of(Prime p, std::span<const Vector> gens) {
  Subspace s(p);
  for (const auto& g : gens) s.insert(g);
  return s;
}

inline bool in_span(const Vector& v, const Subspace& s) {
  require_same_prime(v.prime(), s.prime(), "in_span");
  return s.contains(v);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  Subspace s = a;
  for (const auto& v : b.basis()) s.insert(v);
  return s;
}

inline Subspace intersection(const Subspace& a, const Subspace& b, std::uint64_t cap = kDefaultEnumerationCap) {
  require_same_prime(a.prime(), b.prime(), "intersection");
  Subspace s(a.prime());
  const Subspace& small = a.dimension() <= b.dimension() ? a : b;
  const Subspace& large = a.dimension() <= b.dimension() ? b : a;
  small.for_each_element(cap, [&](const Vector& v) {
    if (large.contains(v)) s.insert(v);
  });
  return s;
}

/// Deterministic complement of s inside the first `horizon` coordinates: the
/// standard vectors at the non-pivot coordinates, ascending.
inline Subspace complement_within(const Subspace& s, Index horizon) {
  if (s.support_bound() > horizon) {
    throw UsageError("complement_within: subspace reaches coordinate " +
                     std::to_string(s.support_bound() - 1) + ", beyond horizon " +
                     std::to_string(horizon));
  }
  const auto piv = s.pivots();
  Subspace t(s.prime());
  for (Index j = 0; j < horizon; ++j) {
    if (!std::binary_search(piv.begin(), piv.end(), j)) t.insert(Vector::unit(s.prime(), j));
  }
  return t;
}

/// Vectors g below `horizon` with sum(w_i g_i) = 0 for every w in s.
inline Subspace annihilator(const Subspace& s, Index horizon) {
  if (s.support_bound() > horizon) {
    throw UsageError("annihilator: subspace reaches coordinate " +
                     std::to_string(s.support_bound() - 1) + ", beyond horizon " +
                     std::to_string(horizon));
  }
  const Prime& p = s.prime();
  const auto piv = s.pivots();
  Subspace out(p);
  for (Index f = 0; f < horizon; ++f) {
    if (std::binary_search(piv.begin(), piv.end(), f)) continue;
    std::vector<Vector::Entry> e{{f, 1}};
    for (std::size_t r = 0; r < piv.size(); ++r) {
      const Residue c = s.basis()[r].at(f);
      if (c != 0) e.emplace_back(piv[r], p.neg(c));
    }
    out.insert(Vector::from_entries(p, std::move(e)));
  }
  return out;
}

// Textual form: "i:v,j:u" ascending by index; the zero vector is "".
inline std::string to_string(const Vector& v) {
  std::string s;
  for (const auto& [i, c] : v.entries()) {
    if (!s.empty()) s += ',';
    s += std::to_string(i) + ':' + std::to_string(c);
  }
  return s;
}

// Same as to_string but renders the zero vector as "∅".
inline std::string display(const Vector& v) { return v.is_zero() ? std::string("∅") : to_string(v); }

namespace detail {

inline std::uint64_t parse_natural(std::string_view s, std::string_view context) {
  if (s.empty()) throw UsageError("empty number in " + std::string(context));
  std::uint64_t n = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') {
      throw UsageError("bad digit '" + std::string(1, ch) + "' in " + std::string(context));
    }
    if (n > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
      throw UsageError("number too large in " + std::string(context));
    }
    n = n * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return n;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

inline Vector parse_vector(std::string_view text, Prime p) {
  if (text.empty() || text == "∅") return Vector(p);
  std::vector<Vector::Entry> entries;
  for (auto part : detail::split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("vector entry '" + std::string(part) + "' is not index:value");
    }
    const auto idx = detail::parse_natural(part.substr(0, colon), text);
    const auto val = detail::parse_natural(part.substr(colon + 1), text);
    if (idx > std::numeric_limits<Index>::max()) throw UsageError("coordinate index too large");
    if (val == 0 || val >= p.value()) {
      throw UsageError("vector entry '" + std::string(part) + "' is not a nonzero residue mod " +
                       std::to_string(p.value()));
    }
    if (!entries.empty() && entries.back().first >= idx) {
      throw UsageError("vector '" + std::string(text) + "' is not sorted by index");
    }
    entries.emplace_back(static_cast<Index>(idx), static_cast<Residue>(val));
  }
  return Vector::from_entries(p, std::move(entries));
}

}  // namespace fmlab
