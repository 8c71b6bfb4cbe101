#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qlocal;
using qtest::mat;

TEST(Matrix, ProductAndIdentity) {
  Matrix a = mat({{1, 2}, {3, 4}});
  EXPECT_EQ(a * Matrix::identity(2), a);
  EXPECT_EQ(a * a, mat({{7, 10}, {15, 22}}));
  EXPECT_EQ(a.transpose(), mat({{1, 3}, {2, 4}}));
}

TEST(Matrix, RankAndNullspace) {
  Matrix a = mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(a.rank(), 2u);
  EXPECT_EQ(a.rank_fraction_free(), 2u);
  Matrix n = a.nullspace();
  ASSERT_EQ(n.cols(), 1u);
  EXPECT_TRUE((a * n).is_zero());
}

TEST(Matrix, Inverse) {
  Matrix a = mat({{2, 1}, {1, 1}});
  EXPECT_EQ(a * a.inverse(), Matrix::identity(2));
  EXPECT_THROW(mat({{1, 2}, {2, 4}}).inverse(), Error);
}

TEST(Matrix, ScalarIdentityDetection) {
  Scalar s;
  EXPECT_TRUE((Scalar(3) * Matrix::identity(3)).is_scalar_multiple_of_identity(&s));
  EXPECT_EQ(s, Scalar(3));
  EXPECT_FALSE(mat({{1, 0}, {0, 2}}).is_scalar_multiple_of_identity());
}

TEST(Matrix, ShapeMismatchThrows) {
  EXPECT_THROW(mat({{1, 2}}) * mat({{1, 2}}), Error);
  EXPECT_THROW(mat({{1, 2}}) + mat({{1}, {2}}), Error);
}

TEST(Matrix, DirectSum) {
  Matrix d = direct_sum(mat({{1}}), mat({{2, 3}, {4, 5}}));
  EXPECT_EQ(d, mat({{1, 0, 0}, {0, 2, 3}, {0, 4, 5}}));
}

TEST(Matrix, CyclotomicEntriesRank) {
  Scalar w = Scalar::root_of_unity(3, 1);
  Matrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = w;
  a(1, 0) = w;
  a(1, 1) = w * w;
  EXPECT_EQ(a.rank(), 1u);
  EXPECT_EQ(a.rank_fraction_free(), 1u);
}

TEST(EchelonBasis, InsertAndContains) {
  EchelonBasis b(3);
  EXPECT_TRUE(b.insert({1, 1, 0}));
  EXPECT_TRUE(b.insert({0, 1, 1}));
  EXPECT_FALSE(b.insert({1, 2, 1}));
  EXPECT_TRUE(b.contains({1, 0, -1}));
  EXPECT_FALSE(b.contains({0, 0, 1}));
  EXPECT_EQ(b.size(), 2u);
}
