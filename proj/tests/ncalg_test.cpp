#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qlocal;
using qtest::loops;

namespace {

NCPoly P(const QuiverPtr& q, const std::string& s) { return parse_poly(q, s); }

}  // namespace

TEST(NCPoly, VertexTimesArrow) {
  auto q = make_quiver(Quiver({"1", "2"}, {{"a", "1", "2"}}));
  NCPoly a = NCPoly::arrow(q, 0);
  EXPECT_EQ(NCPoly::vertex(q, 0) * a, a);
  EXPECT_TRUE((NCPoly::vertex(q, 1) * a).is_zero());
  EXPECT_EQ(a * NCPoly::vertex(q, 1), a);
}

TEST(NCPoly, Bilinearity) {
  auto q = loops({"X", "Y"});
  EXPECT_EQ(P(q, "X + Y") * P(q, "X - Y"), P(q, "X^2 - X*Y + Y*X - Y^2"));
}

TEST(NCPoly, IncomposableProductIsZero) {
  auto q = make_quiver(Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}));
  EXPECT_TRUE((NCPoly::arrow(q, 1) * NCPoly::arrow(q, 1)).is_zero());
  EXPECT_FALSE((NCPoly::arrow(q, 0) * NCPoly::arrow(q, 1)).is_zero());
}

TEST(NCPoly, MinPart) {
  auto q = loops({"X", "Y"});
  EXPECT_EQ(P(q, "X*Y + X*Y*X").min_part(), P(q, "X*Y"));
  EXPECT_EQ(P(q, "X*Y - Y*X").min_part(), P(q, "X*Y - Y*X"));
  EXPECT_EQ(P(q, "e + X").min_part(), P(q, "e"));
}

TEST(NCPoly, DeglexLeadingWord) {
  auto q = loops({"X", "Y"});
  NCPoly f = P(q, "Y*X*Y + 3*Y*X + 2*X*Y");
  EXPECT_EQ(format_word(*q, f.leading_word()), "X*Y");
  EXPECT_EQ(f.leading_coeff(), Scalar(2));
  EXPECT_EQ(format_poly(f), "2*X*Y + 3*Y*X + Y*X*Y");
}

TEST(NCPoly, MixingQuiversThrows) {
  auto q1 = loops({"X"});
  auto q2 = loops({"X", "Y"});
  EXPECT_THROW(NCPoly::arrow(q1, 0) + NCPoly::arrow(q2, 0), Error);
}

TEST(Text, ParseErrors) {
  auto q = loops({"X", "Y"});
  EXPECT_THROW(P(q, "X*Z"), Error);
  EXPECT_THROW(P(q, "X*"), Error);
  EXPECT_THROW(P(q, "2*w*X"), Error);
  auto a2 = make_quiver(Quiver({"1", "2"}, {{"a", "1", "2"}}));
  EXPECT_TRUE(P(a2, "a*a").is_zero());
}

TEST(Text, FormatRoundTrip) {
  auto q = loops({"X", "Y", "Z"});
  for (const char* s : {"X*Y + Z^3", "1/2*X^2 - 3*Y*Z*Y", "e - X*Y*X", "-X"}) {
    NCPoly f = P(q, s);
    EXPECT_EQ(P(q, format_poly(f)), f) << s;
  }
}

TEST(CyclicSymmetrize, Rotations) {
  auto q = loops({"X", "Y"});
  auto sym = [&](const std::string& s) { return cyclic_symmetrize(Superpotential::from_poly(P(q, s))); };
  EXPECT_EQ(sym("X*Y"), P(q, "X*Y + Y*X"));
  EXPECT_EQ(sym("X^2*Y^2"), P(q, "X*X*Y*Y + X*Y*Y*X + Y*Y*X*X + Y*X*X*Y"));
  EXPECT_EQ(sym("X*Y*X*Y"), P(q, "2*X*Y*X*Y + 2*Y*X*Y*X"));
}

TEST(Superpotential, RotationsAreOneClass) {
  auto q = loops({"X", "Y"});
  auto w = Superpotential::from_poly(P(q, "X*Y*Y - Y*X*Y"));
  EXPECT_TRUE(w.as_poly().is_zero());
}

TEST(Strip, RightAndLeft) {
  auto q = loops({"X", "Y"});
  const std::size_t X = 0, Y = 1;
  EXPECT_EQ(right_strip(P(q, "X*Y"), Y), P(q, "X"));
  EXPECT_TRUE(right_strip(P(q, "X*Y"), X).is_zero());
  EXPECT_EQ(right_strip(P(q, "2*X*Y*X + Y*X"), X), P(q, "2*X*Y + Y"));
  EXPECT_EQ(left_strip(X, P(q, "X*Y + Y*X")), P(q, "Y"));
}

TEST(CyclicDerivative, GoldenFile) {
  auto q = loops({"X", "Y"});
  auto w = Superpotential::from_poly(P(q, "X^2*Y^2 - X*Y*X*Y"));
  std::string got = "dX: " + format_poly(cyclic_derivative(w, 0)) + "\n" + "dY: " + format_poly(cyclic_derivative(w, 1)) + "\n";
  EXPECT_EQ(got, qtest::read_file(std::string(QLOCAL_GOLDEN_DIR) + "/cyclic_derivative.txt"));
}

TEST(CyclicDerivative, SmallCases) {
  auto q = loops({"X", "Y", "Z"});
  auto w = Superpotential::from_poly(P(q, "X*Y"));
  EXPECT_EQ(cyclic_derivative(w, 0), P(q, "Y"));
  EXPECT_TRUE(cyclic_derivative(w, 2).is_zero());
}

TEST(CyclicDerivative, StripsAgree) {
  auto q = loops({"X", "Y"});
  auto w = Superpotential::from_poly(P(q, "X^3*Y + 2*X*Y*X*Y*Y - Y^4"));
  for (std::size_t a = 0; a < 2; ++a) {
    NCPoly s = cyclic_symmetrize(w);
    EXPECT_EQ(right_strip(s, a), left_strip(a, s));
    EXPECT_EQ(cyclic_derivative(w, a), qtest::oracle_cyclic_derivative(w.as_poly(), a));
  }
}

TEST(Presentations, PreprojectiveOfLoop) {
  auto qd = make_quiver(double_quiver(Quiver({"v"}, {{"x", "v", "v"}})));
  auto rels = preprojective_relations(qd);
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0], P(qd, "x*x' - x'*x"));
}

TEST(Presentations, PreprojectiveOfA2) {
  auto qd = make_quiver(double_quiver(Quiver({"1", "2"}, {{"a", "2", "1"}})));
  auto rels = preprojective_relations(qd);
  ASSERT_EQ(rels.size(), 2u);
  // vertex 1 is the tail of a: only a'*a with a minus sign sits there
  EXPECT_EQ(rels[0], P(qd, "-a'*a"));
  EXPECT_EQ(rels[1], P(qd, "a*a'"));
}

TEST(Presentations, PreprojectiveOfLoopsIsSumOfCommutators) {
  auto qd = make_quiver(double_quiver(Quiver({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}})));
  auto rels = preprojective_relations(qd);
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0], P(qd, "x*x' - x'*x + y*y' - y'*y"));
}

TEST(Presentations, SuperpotentialRelations) {
  auto q = loops({"X", "Y"});
  auto p = superpotential_relations(Superpotential::from_poly(P(q, "X^2*Y^2 - X*Y*X*Y")));
  ASSERT_EQ(p.relations().size(), 2u);
  EXPECT_EQ(p.relations()[0], P(q, "X*Y*Y + Y*Y*X - 2*Y*X*Y"));
  EXPECT_EQ(p.relations()[1], P(q, "Y*X*X + X*X*Y - 2*X*Y*X"));
  auto half = superpotential_relations(Superpotential::from_poly(P(q, "1/2*X^2")));
  ASSERT_EQ(half.relations().size(), 1u);
  EXPECT_EQ(half.relations()[0], P(q, "X"));
  EXPECT_TRUE(superpotential_relations(Superpotential(q)).relations().empty());
}

TEST(Presentations, GroupAlgebras) {
  auto s1 = group_algebra_presentation({GroupKind::surface, 1});
  EXPECT_EQ(s1.quiver().num_arrows(), 4u);
  EXPECT_EQ(s1.unit_relations().size(), 4u);
  ASSERT_EQ(s1.relations().size(), 1u);
  EXPECT_EQ(s1.relations()[0], P(s1.quiver_ptr(), "X1*Y1*X1^-1*Y1^-1 - e"));
  auto s2 = group_algebra_presentation({GroupKind::surface, 2});
  EXPECT_EQ(s2.quiver().num_arrows(), 8u);
  EXPECT_EQ(s2.relations()[0], P(s2.quiver_ptr(), "X1*Y1*X1^-1*Y1^-1*X2*Y2*X2^-1*Y2^-1 - e"));
  auto h = group_algebra_presentation({GroupKind::heisenberg, 1});
  EXPECT_EQ(h.quiver().num_arrows(), 4u);
  EXPECT_EQ(h.relations().size(), 2u);
  EXPECT_EQ(h.unit_relations().size(), 4u);
  EXPECT_FALSE(h.admissible());
}
