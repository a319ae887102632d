#include <gtest/gtest.h>

#include "fmlab/oracle.hpp"
#include "fmlab/thin.hpp"

using namespace fmlab;

namespace {

const Prime p2(2);
const Prime p3(3);

Vector e(Prime p, Index i, Residue c = 1) { return Vector::unit(p, i, c); }
using Vs = std::vector<Vector>;

}  // namespace

TEST(Tower, Values) {
  EXPECT_EQ(tower(2, 0), 1u);
  EXPECT_EQ(tower(2, 3), 16u);
  EXPECT_EQ(tower(2, 4), 65536u);
  EXPECT_EQ(tower(3, 2), 27u);
  EXPECT_EQ(tower(2, 6), std::numeric_limits<std::uint64_t>::max());
}

TEST(LogStar, Examples) {
  EXPECT_EQ(log_star(1, p2), 0u);
  EXPECT_EQ(log_star(16, p2), 3u);
  EXPECT_EQ(log_star(17, p2), 4u);
  EXPECT_EQ(log_star(27, p3), 2u);
  EXPECT_EQ(log_star(28, p3), 3u);
  EXPECT_EQ(log_star(std::numeric_limits<std::uint64_t>::max(), p2), 5u);
  EXPECT_THROW(log_star(0, p2), UsageError);
}

TEST(LogStar, MatchesIteratedLog) {
  for (std::uint32_t pv : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t n = 1; n <= 100000; ++n) ASSERT_EQ(log_star(n, Prime(pv)), oracle::iterated_log(n, pv)) << n;
  }
}

TEST(Density, Examples) {
  const Vs a{e(p2, 0), e(p2, 1), e(p2, 0) + e(p2, 1)};
  EXPECT_EQ(density(a, 1), 2u);
  EXPECT_EQ(density(a, 0), 1u);
  EXPECT_EQ(density(span_of(p2, Vs{e(p2, 0), e(p2, 1)}), 1), 2u);
  EXPECT_EQ(density(Vs{}, 3), 0u);
}

TEST(Density, SubspaceCap) {
  const Subspace s = span_of(p2, Vs{e(p2, 0), e(p2, 1), e(p2, 2)});
  EXPECT_THROW(density(s, 2, 4), ResourceError);
}

// The right-hand side is p^(d_k(A)), the exponent taken over A itself.
TEST(SpanDensityBound, Examples) {
  auto b = check_span_density_bound(p2, Vs{e(p2, 0)}, 1);
  EXPECT_EQ(b.lhs, 2u);
  EXPECT_EQ(b.rhs, 2u);
  EXPECT_TRUE(b.ok);

  b = check_span_density_bound(p3, Vs{}, 5);
  EXPECT_EQ(b.lhs, 1u);
  EXPECT_EQ(b.rhs, 1u);
  EXPECT_TRUE(b.ok);

  b = check_span_density_bound(p2, Vs{e(p2, 0), e(p2, 1)}, 2);
  EXPECT_EQ(b.lhs, 4u);
  EXPECT_EQ(b.rhs, 4u);
  EXPECT_TRUE(b.ok);

  // Tight only when the prefixes of A are independent.
  b = check_span_density_bound(p2, Vs{e(p2, 0), e(p2, 1), e(p2, 0) + e(p2, 1)}, 2);
  EXPECT_EQ(b.lhs, 4u);
  EXPECT_EQ(b.rhs, 8u);
}

TEST(DensityProfile, Csv) {
  const auto rows = density_profile(p2, Vs{e(p2, 0), e(p2, 1), e(p2, 2)}, 3);
  EXPECT_EQ(to_csv(rows), "k,d_k,logstar_dk,logstar_k\n1,2,1,0\n2,3,2,1\n3,3,2,2\n");
  EXPECT_THROW(density_profile(p2, Vs{}, 3), UsageError);
}

TEST(Extraction, CanonicalStream) {
  auto s = VectorStream::prefix_sums(p2);
  const auto out = extract_thin_subsequence(s, 3, {64, 1});
  EXPECT_EQ(out.indices, (std::vector<std::uint64_t>{0, 3, 5}));
  EXPECT_TRUE(certify_thin(out.certificate).valid);

  auto s4 = VectorStream::prefix_sums(p2);
  EXPECT_EQ(extract_thin_subsequence(s4, 4, {64, 1}).indices, (std::vector<std::uint64_t>{0, 3, 5, 17}));
}

TEST(Extraction, CountOne) {
  auto s = VectorStream::prefix_sums(p3);
  const auto out = extract_thin_subsequence(s, 1, {8, 1});
  EXPECT_EQ(out.indices, std::vector<std::uint64_t>{0});
  EXPECT_TRUE(out.members.empty());
  EXPECT_TRUE(certify_thin(out.certificate).valid);
}

TEST(Extraction, ConstantPrefixStream) {
  // x_n = e_0 + e_{n+1}: all prefixes below any checkpoint agree.
  Vs items;
  for (Index n = 0; n < 64; ++n) items.push_back(e(p2, 0) + e(p2, n + 1));
  auto s = VectorStream::from_list(p2, items);
  const auto out = extract_thin_subsequence(s, 4, {64, 1});
  for (std::size_t i = 0; i < out.certificate.checkpoints.size(); ++i) {
    EXPECT_LE(out.certificate.checkpoints[i].d, i + 1);
  }
}

// With the anchor x_0 counted, the bound at n_1 would be violated: x_0, x_3
// and x_5 have three distinct prefixes of length 3. The certified set leaves
// x_0 out and stays within i + 1.
TEST(Extraction, AnchorIsNotCertified) {
  Vs items{Vector(p2), e(p2, 5), e(p2, 6), e(p2, 0)};
  for (Index n = 4; n < 64; ++n) items.push_back(e(p2, 1) + e(p2, n + 10));
  auto s = VectorStream::from_list(p2, items);
  const auto out = extract_thin_subsequence(s, 3, {64, 1});
  ASSERT_EQ(out.indices, (std::vector<std::uint64_t>{0, 3, 5}));

  Vs with_anchor{items[0]};
  for (std::size_t i = 1; i < out.indices.size(); ++i) with_anchor.push_back(items[out.indices[i]]);
  EXPECT_EQ(density(with_anchor, 3), 3u);
  EXPECT_EQ(density(out.members, 3), 2u);
  EXPECT_TRUE(certify_thin(out.certificate).valid);
}

TEST(Extraction, WindowExhaustedNamesCoordinate) {
  // Coordinate 1 keeps flipping, so no index stabilizes the prefix below 3.
  Vs items;
  for (Index n = 0; n < 40; ++n) {
    Vector v = e(p2, n + 4);
    if (n % 2) v = v + e(p2, 1);
    items.push_back(v);
  }
  auto s = VectorStream::from_list(p2, items);
  try {
    extract_thin_subsequence(s, 3, {40, 1});
    FAIL() << "expected WindowExhausted";
  } catch (const WindowExhausted& ex) {
    EXPECT_NE(std::string(ex.what()).find("coordinate 1"), std::string::npos) << ex.what();
  }
}

TEST(Extraction, WindowTooShortForTower) {
  auto s = VectorStream::prefix_sums(p2);
  EXPECT_THROW(extract_thin_subsequence(s, 4, {16, 1}), WindowExhausted);
}

TEST(VectorStream, RejectsRepeats) {
  auto s = VectorStream::from_list(p2, Vs{e(p2, 0), e(p2, 0)});
  EXPECT_TRUE(s.next().has_value());
  EXPECT_THROW(s.next(), UsageError);
}

TEST(CertifyThin, Examples) {
  EXPECT_TRUE(certify_thin(ThinCertificate::finite(p2, Vs{e(p2, 0), e(p2, 4)})).valid);
  const auto u = ThinCertificate::union_of(
      p2, {ThinCertificate::finite(p2, Vs{e(p2, 0)}), ThinCertificate::span(p2, Vs{e(p2, 1), e(p2, 2)})});
  EXPECT_TRUE(certify_thin(u).valid);

  const auto bad = ThinCertificate::stream(p2, {{0, 1}, {3, 1}, {4, 2}});
  const auto v = certify_thin(bad);
  EXPECT_FALSE(v.valid);
  ASSERT_EQ(v.diagnostics.size(), 1u);
  EXPECT_NE(v.diagnostics[0].find("checkpoint 2"), std::string::npos);
}

TEST(CertifyThin, DensityAndOrderViolations) {
  EXPECT_FALSE(certify_thin(ThinCertificate::stream(p2, {{0, 1}, {3, 3}})).valid);
  EXPECT_FALSE(certify_thin(ThinCertificate::stream(p2, {{1, 1}})).valid);
  EXPECT_FALSE(certify_thin(ThinCertificate::stream(p2, {})).valid);
  EXPECT_FALSE(certify_thin(ThinCertificate::union_of(p2, {})).valid);
  auto bad_child = ThinCertificate::union_of(p2, {ThinCertificate::stream(p2, {{0, 1}, {2, 1}})});
  const auto v = certify_thin(bad_child);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.diagnostics[0].find("children[0]"), std::string::npos);
}
