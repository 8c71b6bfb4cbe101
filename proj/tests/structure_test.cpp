#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qlocal;
using qtest::loops;

namespace {

QuiverPtr doubled(const Quiver& q) { return make_quiver(double_quiver(q)); }

std::map<std::size_t, NCPoly> by_arrow(const QuiverPtr& q, const std::vector<std::string>& texts) {
  std::map<std::size_t, NCPoly> out;
  for (std::size_t a = 0; a < texts.size(); ++a) out.emplace(a, parse_poly(q, texts[a]));
  return out;
}

}  // namespace

TEST(ExtractQuadratic, PreprojectiveOfLoop) {
  auto qd = doubled(Quiver({"v"}, {{"x", "v", "v"}}));
  auto qp = extract_quadratic(preprojective_relations(qd));
  // x*x' - x'*x: the word b*a carries g_ab
  EXPECT_EQ(qp.at(1, 0), Scalar(1));
  EXPECT_EQ(qp.at(0, 1), Scalar(-1));
  EXPECT_EQ(qp.g.size(), 2u);
}

TEST(ExtractQuadratic, CubicTailAndSquares) {
  auto q = loops({"a", "b"});
  auto qp = extract_quadratic({parse_poly(q, "b*a - a*b + b^3")});
  EXPECT_EQ(qp.at(0, 1), Scalar(1));
  EXPECT_EQ(qp.at(1, 0), Scalar(-1));
  ASSERT_EQ(qp.higher.size(), 1u);
  EXPECT_EQ(qp.higher[0], parse_poly(q, "b^3"));
  auto sq = extract_quadratic({parse_poly(loops({"a"}), "a^2")});
  EXPECT_EQ(sq.at(0, 0), Scalar(1));
}

TEST(ExtractQuadratic, Guards) {
  auto q = loops({"X", "Y"});
  EXPECT_THROW(extract_quadratic({parse_poly(q, "X^2*Y - Y*X^2")}), Error);
  EXPECT_THROW(extract_quadratic({parse_poly(q, "X*Y"), parse_poly(q, "Y*X")}), Error);
  EXPECT_THROW(extract_quadratic({}), Error);
}

TEST(PreprojectiveForm, CanonicalOnDoubles) {
  for (const Quiver& q : {Quiver({"v"}, {{"x", "v", "v"}}), Quiver({"1", "2"}, {{"a", "2", "1"}}),
                          Quiver({"1", "2", "3"}, {{"a", "2", "1"}, {"b", "3", "2"}, {"c", "1", "1"}})}) {
    auto qd = doubled(q);
    auto v = preprojective_form(preprojective_relations(qd));
    ASSERT_TRUE(v.yes) << v.witness;
    EXPECT_EQ(v.base_change, Matrix::identity(qd->num_arrows()));
    for (const auto& s : v.alpha) EXPECT_EQ(s, Scalar(1));
    for (const auto& [a, b] : v.pairing) EXPECT_EQ(*qd->partner(a), b);
  }
}

TEST(PreprojectiveForm, HeisenbergConeIsNotQuadratic) {
  auto q = loops({"T1", "T2"});
  EXPECT_THROW(preprojective_form({parse_poly(q, "T1^2*T2 - 2*T1*T2*T1 + T2*T1^2")}), Error);
}

TEST(PreprojectiveForm, SquareIsDegenerate) {
  auto v = preprojective_form({parse_poly(loops({"a"}), "a^2")});
  EXPECT_FALSE(v.yes);
  EXPECT_NE(v.witness.find("antisymmetric"), std::string::npos);
}

TEST(PreprojectiveForm, ScaledVertexAndBaseChange) {
  // a scaled commutator of a pair of loops plus a changed basis still qualifies
  auto q = loops({"X", "Y"});
  auto v = preprojective_form({parse_poly(q, "3*X*Y - 3*Y*X + X*X*X")});
  ASSERT_TRUE(v.yes) << v.witness;
  ASSERT_EQ(v.pairing.size(), 1u);
}

TEST(PreprojectiveForm, GramSchmidtGivesDarbouxBasis) {
  auto q = loops({"X", "Y", "Z", "U"});
  std::vector<NCPoly> rels{parse_poly(q, "X*Y - Y*X + X*Z - Z*X + Z*U - U*Z")};
  auto v = preprojective_form(rels);
  ASSERT_TRUE(v.yes) << v.witness;
  ASSERT_EQ(v.pairing.size(), 2u);
  EXPECT_FALSE(v.base_change == Matrix::identity(4));
  auto qp = extract_quadratic(rels);
  qp.alpha = v.alpha;
  auto row = [&](std::size_t a) {
    std::vector<Scalar> r;
    for (std::size_t k = 0; k < 4; ++k) r.push_back(v.base_change(a, k));
    return r;
  };
  std::map<std::size_t, std::size_t> partner;
  for (const auto& [e, f] : v.pairing) {
    partner[e] = f;
    partner[f] = e;
  }
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      Scalar w = detail::omega(qp, row(a), row(b));
      if (partner[b] == a && v.pairing.end() != std::find(v.pairing.begin(), v.pairing.end(), std::make_pair(b, a)))
        EXPECT_EQ(w, Scalar(1));
      else if (partner[a] == b)
        EXPECT_EQ(w, Scalar(-1));
      else
        EXPECT_TRUE(w.is_zero());
    }
}

TEST(PreprojectiveForm, DegenerateBlock) {
  // X and Y pair, Z is orthogonal to both
  auto q = loops({"X", "Y", "Z"});
  auto v = preprojective_form({parse_poly(q, "X*Y - Y*X")});
  EXPECT_FALSE(v.yes);
  EXPECT_NE(v.witness.find("degenerate"), std::string::npos);
}

TEST(SuperpotentialForm, Examples) {
  auto q = loops({"X", "Y"});
  auto v = superpotential_form(q, by_arrow(q, {"X*Y*Y + Y*Y*X - 2*Y*X*Y", "Y*X*X + X*X*Y - 2*X*Y*X"}));
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(format_superpotential(*v.w), "X^2*Y^2 - X*Y*X*Y");
  auto xy = superpotential_form(q, by_arrow(q, {"Y", "X"}));
  ASSERT_TRUE(xy.yes);
  EXPECT_EQ(format_superpotential(*xy.w), "X*Y");
  auto half = superpotential_form(q, by_arrow(q, {"X", "0"}));
  ASSERT_TRUE(half.yes);
  EXPECT_EQ(format_superpotential(*half.w), "1/2*X^2");
}

TEST(SuperpotentialForm, Inconsistent) {
  auto q = loops({"X", "Y"});
  auto v = superpotential_form(q, by_arrow(q, {"Y", "0"}));
  EXPECT_FALSE(v.yes);
  EXPECT_FALSE(v.certificate.empty());
}

TEST(SuperpotentialForm, ShapeMismatch) {
  auto q = make_quiver(Quiver({"1", "2"}, {{"a", "2", "1"}, {"b", "1", "2"}}));
  std::map<std::size_t, NCPoly> rels;
  rels.emplace(0, parse_poly(q, "a"));
  EXPECT_THROW(superpotential_form(q, rels), Error);
  std::map<std::size_t, NCPoly> ok;
  ok.emplace(0, parse_poly(q, "b"));
  ok.emplace(1, parse_poly(q, "a"));
  auto v = superpotential_form(q, ok);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(cyclic_derivative(*v.w, 0), parse_poly(q, "b"));
}

TEST(SuperpotentialForm, MixedDegreesSolvedSeparately) {
  auto q = loops({"X", "Y"});
  auto w = Superpotential::from_poly(parse_poly(q, "X*Y + X^2*Y^2 - X*Y*X*Y"));
  std::map<std::size_t, NCPoly> rels;
  for (std::size_t a = 0; a < 2; ++a) rels.emplace(a, cyclic_derivative(w, a));
  auto v = superpotential_form(q, rels);
  ASSERT_TRUE(v.yes);
  for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(cyclic_derivative(*v.w, a), rels.at(a));
}

TEST(Verdicts, Json) {
  auto qd = doubled(Quiver({"v"}, {{"x", "v", "v"}}));
  auto j = preprojective_verdict_json(preprojective_form(preprojective_relations(qd)), *qd);
  EXPECT_EQ(j["preprojective"], true);
  EXPECT_EQ(j["alpha"]["v"], "1");
  EXPECT_EQ(j["pairing"][0][0], "x");
  EXPECT_EQ(j["pairing"][0][1], "x'");
  auto q = loops({"X", "Y"});
  auto s = superpotential_verdict_json(superpotential_form(q, by_arrow(q, {"Y", "X"})));
  EXPECT_EQ(s["W"], "X*Y");
}
