#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qlocal;

namespace {

Quiver a2() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }

}  // namespace

TEST(Quiver, DuplicateIdsRejected) {
  EXPECT_THROW(Quiver({"v", "v"}, {}), Error);
  EXPECT_THROW(Quiver({"v"}, {{"a", "v", "v"}, {"a", "v", "v"}}), Error);
  EXPECT_THROW(Quiver({"v"}, {{"a", "v", "w"}}), Error);
}

TEST(Quiver, DoubleOfLoop) {
  Quiver d = double_quiver(Quiver({"v"}, {{"a", "v", "v"}}));
  ASSERT_EQ(d.num_arrows(), 2u);
  EXPECT_EQ(d.arrow(1).id, "a'");
  EXPECT_TRUE(d.is_double());
  EXPECT_TRUE(d.is_star(1));
  EXPECT_EQ(*d.partner(0), 1u);
}

TEST(Quiver, DoubleReversesEndpoints) {
  Quiver d = double_quiver(a2());
  const Arrow& s = d.arrow(d.arrow_index("a'"));
  EXPECT_EQ(d.vertex_name(s.head), "2");
  EXPECT_EQ(d.vertex_name(s.tail), "1");
}

TEST(Quiver, DoubleWithoutArrowsIsIdentical) {
  Quiver q({"1", "2", "3"}, {});
  EXPECT_EQ(double_quiver(q), q);
}

TEST(Quiver, DoubleRejectsStarCollision) {
  EXPECT_THROW(double_quiver(Quiver({"v"}, {{"a", "v", "v"}, {"a'", "v", "v"}})), Error);
}

TEST(Quiver, Restrict) {
  Quiver q = a2();
  EXPECT_EQ(restrict_quiver(q, {"1", "2"}), q);
  Quiver r = restrict_quiver(q, {"1"});
  EXPECT_EQ(r.num_vertices(), 1u);
  EXPECT_EQ(r.num_arrows(), 0u);
  Quiver l({"1", "2"}, {{"b", "1", "1"}, {"a", "2", "1"}});
  Quiver rl = restrict_quiver(l, {"1"});
  ASSERT_EQ(rl.num_arrows(), 1u);
  EXPECT_EQ(rl.arrow(0).id, "b");
}

TEST(DimVector, GlAndRepSpace) {
  EXPECT_EQ(gl_dim(DimVector({1})), 1);
  EXPECT_EQ(gl_dim(DimVector({2, 3})), 13);
  EXPECT_EQ(gl_dim(DimVector({0, 5})), 25);
  Quiver loop({"v"}, {{"x", "v", "v"}});
  EXPECT_EQ(rep_space_dim(loop, DimVector({4})), 16);
  Quiver q({"1", "2"}, {{"a", "2", "1"}});
  EXPECT_EQ(rep_space_dim(q, DimVector({2, 3})), 6);
  EXPECT_EQ(rep_space_dim(Quiver({"1", "2"}, {}), DimVector({2, 3})), 0);
  EXPECT_THROW(rep_space_dim(q, DimVector({1})), Error);
  EXPECT_THROW(rep_space_dim(q, DimVector({1, -1})), Error);
}

TEST(CbArrowCount, DoubledLoop) {
  Quiver d = double_quiver(Quiver({"v"}, {{"x", "v", "v"}}));
  EXPECT_EQ(cb_arrow_count(d, {DimVector({1})}, 0, 0), 2);
  EXPECT_EQ(cb_arrow_count(d, {DimVector({1}), DimVector({1})}, 0, 1), 0);
  EXPECT_EQ(cb_arrow_count(d, {DimVector({0})}, 0, 0), 2);
}

TEST(CbArrowCount, NeedsDouble) {
  EXPECT_THROW(cb_arrow_count(a2(), {DimVector({1, 0})}, 0, 0), Error);
}

TEST(SurfaceLocalQuiver, Formula) {
  auto one = surface_local_quiver(2, {1});
  EXPECT_EQ(one.quiver.num_vertices(), 1u);
  EXPECT_EQ(one.quiver.num_arrows(), 4u);
  auto torus = surface_local_quiver(1, {1, 1});
  EXPECT_EQ(count_arrows(torus.quiver, 0, 0), 2u);
  EXPECT_EQ(count_arrows(torus.quiver, 1, 1), 2u);
  EXPECT_EQ(count_arrows(torus.quiver, 0, 1), 0u);
  auto mixed = surface_local_quiver(2, {1, 2});
  EXPECT_EQ(count_arrows(mixed.quiver, 0, 0), 4u);
  EXPECT_EQ(count_arrows(mixed.quiver, 1, 1), 10u);
  EXPECT_EQ(count_arrows(mixed.quiver, 0, 1), 4u);
  EXPECT_EQ(count_arrows(mixed.quiver, 1, 0), 4u);
  EXPECT_THROW(surface_local_quiver(0, {1}), Error);
}

TEST(DimRepPreproj, Formula) {
  EXPECT_EQ(dim_rep_preproj(1, 2), 6);
  EXPECT_EQ(dim_rep_preproj(2, 1), 4);
  EXPECT_EQ(dim_rep_preproj(3, 2), 21);
}

TEST(Dot, OneEdgePerArrow) {
  std::string dot = to_dot(double_quiver(a2()), "A2");
  EXPECT_NE(dot.find("digraph \"A2\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"a'\""), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++edges;
  EXPECT_EQ(edges, 2u);
}
