#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qcolor/error.hpp"
#include "qcolor/invariants.hpp"
#include "qcolor/solver.hpp"

using namespace qc;
using Coeffs = std::map<int, std::uint64_t>;

namespace {

InvariantRecord record_for(const char* file, const FiniteQuandle& q) {
  const auto d = load_diagram(oracle::data(file));
  return make_record(d.name(), q.spec(), solve(presentation(d), q).colorings);
}

}  // namespace

TEST(ImageSize, CountsDistinctColors) {
  EXPECT_EQ(image_size(Coloring{{3, 3, 3, 3}}), 1u);
  EXPECT_EQ(image_size(Coloring{{0, 4, 0, 7}}), 3u);
}

TEST(EnhancedPolynomial, RendersAscending) {
  EnhancedPolynomial p({{3, 72}, {1, 9}, {2, 72}});
  EXPECT_EQ(p.render(), "9q + 72q^2 + 72q^3");
  EXPECT_EQ(EnhancedPolynomial({{1, 1}, {9, 48}}).render(), "q + 48q^9");
  EXPECT_EQ(EnhancedPolynomial().render(), "0");
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.total(), 153u);
  EXPECT_EQ(p.coefficient(5), 0u);
  EXPECT_THROW(p.add(0), InputError);
}

TEST(EnhancedPolynomial, DropsZeroCoefficients) {
  EXPECT_EQ(EnhancedPolynomial({{1, 9}, {2, 0}}), EnhancedPolynomial(Coeffs{{1, 9}}));
  EXPECT_EQ(EnhancedPolynomial(Coeffs{{2, 0}}).degree(), 0);
}

TEST(EnhancedPolynomial, HopfSumAndL1OverZ3) {
  const auto q = symplectic_quandle(FieldPrime(3), 2);
  const auto h = record_for("hopf_sum.json", q);
  EXPECT_EQ(h.phi, 153u);
  EXPECT_EQ(h.phi_e.render(), "9q + 72q^2 + 72q^3");
  const auto l1 = record_for("as_l1.json", q);
  EXPECT_EQ(l1.phi_e.render(), "9q + 72q^2 + 24q^3 + 48q^9");
  EXPECT_EQ(l1.degree(), 9);
}

TEST(EnhancedPolynomial, L1OverZ5) {
  const auto l1 = record_for("as_l1.json", symplectic_quandle(FieldPrime(5), 1));
  EXPECT_EQ(l1.phi, 1225u);
  EXPECT_EQ(l1.phi_e, EnhancedPolynomial({{1, 25}, {2, 360}, {3, 360}, {21, 360}, {22, 120}}));
  // The alternative tally with 840 in degree 3 is inconsistent with the count.
  EXPECT_NE(EnhancedPolynomial({{1, 25}, {2, 360}, {3, 840}, {21, 360}, {22, 120}}).total(), 1225u);
}

TEST(EnhancedPolynomial, MatchesOracleTally) {
  for (const char* f : {"unknot.json", "unlink2.json", "hopf.json", "hopf_sum.json"}) {
    const auto d = load_diagram(oracle::data(f));
    for (int p : {2, 3, 5}) {
      const auto q = symplectic_quandle(FieldPrime(p), 1);
      const auto mine = enhanced_polynomial(solve(presentation(d), q).colorings);
      EXPECT_EQ(mine.coefficients(), oracle::image_tally(oracle::colorings(d, oracle::symplectic(p, 1)))) << f;
    }
  }
}

TEST(Separates, Verdicts) {
  const auto q = symplectic_quandle(FieldPrime(3), 2);
  const auto h = record_for("hopf_sum.json", q);
  const auto l1 = record_for("as_l1.json", q);
  const auto l2 = record_for("as_l2.json", q);
  EXPECT_EQ(separates(h, l1), Separation::by_polynomial);
  EXPECT_EQ(separates(l1, l2), Separation::none);
  EXPECT_EQ(separates(h, h), Separation::none);
  const auto hopf = record_for("hopf.json", q);
  EXPECT_EQ(separates(hopf, h), Separation::by_count);
  EXPECT_EQ(to_string(Separation::by_polynomial), "by_polynomial");
}

TEST(Separates, RejectsDifferentTargets) {
  const auto a = record_for("hopf.json", symplectic_quandle(FieldPrime(3), 2));
  const auto b = record_for("hopf.json", symplectic_quandle(FieldPrime(3), 1));
  EXPECT_THROW(separates(a, b), InputError);
}

TEST(Invariants, ConstantColoringsAndDegreeBound) {
  const std::vector<FiniteQuandle> targets{symplectic_quandle(FieldPrime(3), 2), symplectic_quandle(FieldPrime(5), 1),
                                           takasaki_quandle(6), alexander_quandle(7, 3)};
  for (const auto& q : targets) {
    for (const char* f : {"unknot.json", "hopf.json", "hopf_sum.json", "as_l1.json"}) {
      const auto r = record_for(f, q);
      EXPECT_EQ(r.phi_e.coefficient(1), q.size()) << f << " " << q.spec();
      EXPECT_LE(r.degree(), static_cast<int>(q.size()));
      EXPECT_EQ(r.phi_e.total(), r.phi);
    }
  }
}

TEST(Invariants, SplitUnionMultipliesCounts) {
  const auto q = symplectic_quandle(FieldPrime(3), 2);
  const auto hopf = load_diagram(oracle::data("hopf.json"));
  const auto h = load_diagram(oracle::data("hopf_sum.json"));
  const auto both = split_union(hopf, h);
  EXPECT_EQ(solve(presentation(both), q).report.hom_count,
            solve(presentation(hopf), q).report.hom_count * solve(presentation(h), q).report.hom_count);
}

TEST(Invariants, ScalingLeavesPolynomialUnchanged) {
  for (int p : {3, 5}) {
    for (const char* f : {"unknot.json", "hopf.json", "hopf_sum.json"}) {
      const auto base = record_for(f, symplectic_quandle(FieldPrime(p), 1));
      for (int l = 2; l < p; ++l) EXPECT_EQ(record_for(f, symplectic_quandle(FieldPrime(p), l)).phi_e, base.phi_e);
    }
  }
}

TEST(Residual, FindsBrokenColoring) {
  const auto d = load_diagram(oracle::data("hopf_sum.json"));
  const auto q = symplectic_quandle(FieldPrime(3), 2);
  auto fs = solve(presentation(d), q).colorings;
  EXPECT_FALSE(find_residual_failure(presentation(d), q, fs));
  // Arc 3 is the output of crossing 1, so any change to it breaks that relation.
  fs[40].arcs[3] = static_cast<Element>((fs[40].arcs[3] + 1) % 9);
  const auto bad = find_residual_failure(presentation(d), q, fs);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->coloring, 40u);
  EXPECT_EQ(bad->crossing, 1u);
}
