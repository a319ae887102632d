#pragma once

// Iterated-logarithm densities: log*_p, the prefix counts d_k, thinness
// certificates, and extraction of a thin subsequence from a coordinatewise
// eventually constant stream.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fmlab/error.hpp"
#include "fmlab/fp.hpp"

namespace fmlab {

/// tower(p, 0) = 1, tower(p, k + 1) = p^tower(p, k); saturates at 2^64 - 1.
constexpr std::uint64_t tower(std::uint64_t p, std::uint64_t k) noexcept {
  std::uint64_t t = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t next = saturating_pow(p, t);
    if (next == t) return t;
    t = next;
  }
  return t;
}

/// Least k with (log_p)^k(n) <= 1, computed as the least k with
/// tower(p, k) >= n.
inline std::uint32_t log_star(std::uint64_t n, const Prime& p) {
  if (n == 0) throw UsageError("log_star is undefined at 0");
  std::uint32_t k = 0;
  std::uint64_t t = 1;
  while (t < n) {
    t = saturating_pow(p.value(), t);
    ++k;
  }
  return k;
}

/// d_k(A) = |{pr_k(w) : w in A}|.
inline std::uint64_t density(std::span<const Vector> set, Index k) {
  std::set<Vector> prefixes;
  for (const auto& w : set) prefixes.insert(project_prefix(w, k));
  return prefixes.size();
}

inline std::uint64_t density(const Subspace& s, Index k, std::uint64_t cap = kDefaultEnumerationCap) {
  std::set<Vector> prefixes;
  s.for_each_element(cap, [&](const Vector& w) { prefixes.insert(project_prefix(w, k)); });
  return prefixes.size();
}

struct SpanDensityBound {
  std::uint64_t lhs;  // d_k(Span A)
  std::uint64_t rhs;  // p^(d_k(A)), saturating
  bool ok;
};

inline SpanDensityBound check_span_density_bound(Prime p, std::span<const Vector> set, Index k,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
  const std::uint64_t lhs = density(span_of(p, set), k, cap);
  const std::uint64_t rhs = saturating_pow(p.value(), density(set, k));
  return {lhs, rhs, lhs <= rhs};
}

struct DensityRow {
  Index k;
  std::uint64_t d_k;
  std::uint32_t logstar_dk;
  std::uint32_t logstar_k;
};

/// d_k(A) for k = 1..max_k together with log*_p of both sides of the
/// thinness ratio. A must be nonempty.
inline std::vector<DensityRow> density_profile(Prime p, std::span<const Vector> set, Index max_k) {
  if (set.empty()) throw UsageError("density profile of the empty set");
  std::vector<DensityRow> rows;
  for (Index k = 1; k <= max_k; ++k) {
    const auto d = density(set, k);
    rows.push_back({k, d, log_star(d, p), log_star(k, p)});
  }
  return rows;
}

inline std::string to_csv(std::span<const DensityRow> rows) {
  std::ostringstream os;
  os << "k,d_k,logstar_dk,logstar_k\n";
  for (const auto& r : rows) os << r.k << ',' << r.d_k << ',' << r.logstar_dk << ',' << r.logstar_k << '\n';
  return os.str();
}

struct Checkpoint {
  std::uint64_t n;
  std::uint64_t d;  // observed d_n of the certified set

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Finite evidence that a set belongs to the thin ideal. Only the four
/// closed-form classes below are ever certified.
struct ThinCertificate {
  enum class Kind { finite_set, finite_union, span_of_finite, extracted_stream };

  Kind kind = Kind::finite_set;
  std::uint32_t prime = 2;
  std::vector<Vector> vectors;           // finite_set, span_of_finite
  std::vector<ThinCertificate> children;  // finite_union
  std::vector<Checkpoint> checkpoints;   // extracted_stream

  static ThinCertificate finite(Prime p, std::vector<Vector> vs) {
    return {Kind::finite_set, p.value(), std::move(vs), {}, {}};
  }
  static ThinCertificate span(Prime p, std::vector<Vector> vs) {
    return {Kind::span_of_finite, p.value(), std::move(vs), {}, {}};
  }
  static ThinCertificate union_of(Prime p, std::vector<ThinCertificate> parts) {
    return {Kind::finite_union, p.value(), {}, std::move(parts), {}};
  }
  static ThinCertificate stream(Prime p, std::vector<Checkpoint> cps) {
    return {Kind::extracted_stream, p.value(), {}, {}, std::move(cps)};
  }

  friend bool operator==(const ThinCertificate&, const ThinCertificate&) = default;
};

inline std::string kind_name(ThinCertificate::Kind k) {
  switch (k) {
    case ThinCertificate::Kind::finite_set: return "finite-set";
    case ThinCertificate::Kind::finite_union: return "finite-union";
    case ThinCertificate::Kind::span_of_finite: return "span-of-finite";
    case ThinCertificate::Kind::extracted_stream: return "extracted-stream";
  }
  return "?";
}

struct CertificateVerdict {
  bool valid = true;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline void certify_into(const ThinCertificate& c, const std::string& path, CertificateVerdict& out) {
  auto fail = [&](const std::string& msg) {
    out.valid = false;
    out.diagnostics.push_back(path + ": " + msg);
  };
  if (!is_prime(c.prime)) {
    fail("prime " + std::to_string(c.prime) + " is not prime");
    return;
  }
  const Prime p(c.prime);
  switch (c.kind) {
    case ThinCertificate::Kind::finite_set:
    case ThinCertificate::Kind::span_of_finite:
      for (const auto& v : c.vectors) {
        if (v.prime() != p) fail("vector " + to_string(v) + " has the wrong prime");
      }
      break;
    case ThinCertificate::Kind::finite_union:
      if (c.children.empty()) fail("union with no children");
      for (std::size_t i = 0; i < c.children.size(); ++i) {
        if (c.children[i].prime != c.prime) fail("child " + std::to_string(i) + " uses another prime");
        certify_into(c.children[i], path + ".children[" + std::to_string(i) + "]", out);
      }
      break;
    case ThinCertificate::Kind::extracted_stream: {
      const auto& cps = c.checkpoints;
      if (cps.empty()) {
        fail("stream certificate without checkpoints");
        break;
      }
      if (cps.front().n != 0) fail("checkpoint 0 has n = " + std::to_string(cps.front().n) + ", expected 0");
      for (std::size_t i = 0; i < cps.size(); ++i) {
        const std::string at = "checkpoint " + std::to_string(i) + " (n = " + std::to_string(cps[i].n) + ")";
        if (cps[i].d > i + 1) {
          fail(at + ": d = " + std::to_string(cps[i].d) + " exceeds " + std::to_string(i + 1));
        }
        if (i > 0) {
          if (cps[i].n <= cps[i - 1].n) fail(at + ": indices not increasing");
          if (log_star(cps[i].n, p) <= i) {
            fail(at + ": log*_" + std::to_string(c.prime) + "(n) = " +
                 std::to_string(log_star(cps[i].n, p)) + " is not > " + std::to_string(i));
          }
        }
      }
      break;
    }
  }
}

}  // namespace detail

/// Checks the certificate's internal arithmetic. Stream checkpoints are only
/// as good as the window they were extracted from.
inline CertificateVerdict certify_thin(const ThinCertificate& c) {
  CertificateVerdict v;
  detail::certify_into(c, "certificate", v);
  return v;
}

/// Single-consumer enumeration of pairwise distinct vectors.
class VectorStream {
 public:
  using Generator = std::function<std::optional<Vector>()>;

  VectorStream(Prime p, Generator gen) : prime_(p), gen_(std::move(gen)) {}

  static VectorStream from_list(Prime p, std::vector<Vector> items) {
    auto shared = std::make_shared<std::vector<Vector>>(std::move(items));
    return VectorStream(p, [shared, i = std::size_t{0}]() mutable -> std::optional<Vector> {
      if (i >= shared->size()) return std::nullopt;
      return (*shared)[i++];
    });
  }

  // x_n = e_0 + ... + e_n
  static VectorStream prefix_sums(Prime p) {
    return VectorStream(p, [p, acc = Vector(p), n = Index{0}]() mutable -> std::optional<Vector> {
      acc = acc + Vector::unit(p, n++);
      return acc;
    });
  }

  const Prime& prime() const noexcept { return prime_; }
  std::size_t position() const noexcept { return position_; }

  std::optional<Vector> next() {
    auto v = gen_();
    if (!v) return v;
    require_same_prime(prime_, v->prime(), "vector stream");
    if (!seen_.insert(*v).second) {
      throw UsageError("vector stream repeated " + to_string(*v) + " at position " + std::to_string(position_));
    }
    ++position_;
    return v;
  }

 private:
  Prime prime_;
  Generator gen_;
  std::set<Vector> seen_;
  std::size_t position_ = 0;
};

struct ExtractionOptions {
  std::size_t window = 4096;  // stream elements inspected
  std::size_t margin = 1;     // elements that must remain after a chosen index
};

struct ThinExtraction {
  std::vector<std::uint64_t> indices;  // n_0 = 0, n_1, ...
  std::vector<Vector> members;         // x_{n_1}, x_{n_2}, ...: the certified set
  ThinCertificate certificate;
};

class WindowExhausted : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// Chooses n_0 = 0 and then each n_{i+1} as the least index above n_i with
/// log*_p(n_{i+1}) > i + 1 such that pr_{n_i} is constant on the stream from
/// n_{i+1} to the end of the window.
///
/// The certified set leaves out the anchor x_{n_0}: at level n_i the
/// members x_{n_1}..x_{n_i} plus the common prefix of all later members give
/// at most i + 1 prefixes, and x_{n_0}'s prefix is not constrained by the
/// selection.
inline ThinExtraction extract_thin_subsequence(VectorStream& stream, std::size_t count,
                                               ExtractionOptions opts = {}) {
  if (count == 0) throw UsageError("extract_thin_subsequence needs count >= 1");
  if (opts.margin == 0) throw UsageError("extraction margin must be positive");
  const Prime& p = stream.prime();

  std::vector<Vector> buf;
  while (buf.size() < opts.window) {
    auto v = stream.next();
    if (!v) break;
    buf.push_back(std::move(*v));
  }
  if (buf.empty()) throw UsageError("extract_thin_subsequence on an empty stream");
  const std::size_t size = buf.size();

  ThinExtraction out;
  out.indices.push_back(0);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto k = static_cast<Index>(out.indices.back());
    // Least s such that pr_k(x_m) agrees for all m in [s, size).
    std::size_t stable_from = size - 1;
    const Vector tail_prefix = project_prefix(buf[size - 1], k);
    while (stable_from > 0 && project_prefix(buf[stable_from - 1], k) == tail_prefix) --stable_from;

    const std::uint64_t threshold = tower(p.value(), i + 1);
    if (threshold >= size || threshold + 1 + opts.margin >= size) {
      throw WindowExhausted("window of " + std::to_string(size) + " elements cannot reach log*_" +
                            std::to_string(p.value()) + "(n) > " + std::to_string(i + 1) +
                            " (needs n > " + std::to_string(threshold) + ")");
    }
    const std::uint64_t candidate =
        std::max<std::uint64_t>({stable_from, threshold + 1, out.indices.back() + 1});
    if (candidate + opts.margin >= size) {
      // Name the coordinate below k that changes latest in the window.
      Index worst = 0;
      std::size_t last_change = 0;
      for (std::size_t m = 1; m < size; ++m) {
        for (Index c = 0; c < k; ++c) {
          if (buf[m].at(c) != buf[m - 1].at(c) && m >= last_change) {
            last_change = m;
            worst = c;
          }
        }
      }
      throw WindowExhausted("prefix below " + std::to_string(k) + " does not stabilize within window of " +
                            std::to_string(size) + ": coordinate " + std::to_string(worst) +
                            " still changes at position " + std::to_string(last_change));
    }
    out.indices.push_back(candidate);
  }

  for (std::size_t i = 1; i < out.indices.size(); ++i) out.members.push_back(buf[out.indices[i]]);
  std::vector<Checkpoint> cps;
  for (const auto n : out.indices) cps.push_back({n, density(out.members, static_cast<Index>(n))});
  out.certificate = ThinCertificate::stream(p, std::move(cps));
  return out;
}

}  // namespace fmlab
