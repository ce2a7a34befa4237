#include "oracles.hpp"

#include "qsemi/matrix.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"

#include <gtest/gtest.h>

using namespace qsemi;

namespace {

Polynomial x(int p, int q) { return Polynomial::var(VarId::entry("X", p, q)); }
Polynomial y(int p, int q) { return Polynomial::var(VarId::entry("Y", p, q)); }

} // namespace

TEST(MatMul, IdentityIsNeutral)
{
  const Matrix m = generic_matrix("X", 2, 3);
  EXPECT_EQ(Matrix::identity(2) * m, m);
  EXPECT_EQ(m * Matrix::identity(3), m);
}

TEST(MatMul, GenericProductEntry)
{
  const Matrix p = generic_matrix("X", 2, 2) * generic_matrix("Y", 2, 2);
  EXPECT_EQ(p(0, 0), x(1, 1) * y(1, 1) + x(1, 2) * y(2, 1));
  EXPECT_EQ(p(1, 0), x(2, 1) * y(1, 1) + x(2, 2) * y(2, 1));
}

TEST(MatMul, DimensionMismatch)
{
  EXPECT_THROW(generic_matrix("X", 2, 3) * generic_matrix("Y", 2, 3), DimensionError);
}

TEST(MatMul, ConstantAndSymbolicPathsAgree)
{
  Rng rng(default_seed);
  const Matrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
  // same product with one factor forced through the symbolic path
  Matrix b_sym = b;
  b_sym(0, 0) += Polynomial::var(VarId::aux(0));
  Bindings zero{{VarId::aux(0), Polynomial(0)}};
  Matrix via_sym = a * b_sym;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(substitute(via_sym(i, j), zero), (a * b)(i, j));
}

TEST(MatTrace, Examples)
{
  EXPECT_EQ(trace(Matrix::identity(2)), Polynomial(2));
  EXPECT_TRUE(trace(Matrix::zero(3, 3)).is_zero());
  EXPECT_EQ(trace(adjugate(generic_matrix("X", 2, 2))), x(1, 1) + x(2, 2));
  EXPECT_THROW(trace(generic_matrix("X", 2, 3)), DimensionError);
}

TEST(MatDet, Generic2x2) { EXPECT_EQ(determinant(generic_matrix("X", 2, 2)), x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)); }

TEST(MatDet, Identity)
{
  for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(determinant(Matrix::identity(n)), Polynomial(1)) << n;
}

TEST(MatDet, NonSquareRejected) { EXPECT_THROW(determinant(generic_matrix("X", 3, 2)), DimensionError); }

TEST(MatDet, Generic4x4MatchesLeibniz)
{
  const Matrix m = generic_matrix("X", 4, 4);
  const Polynomial d = determinant(m);
  EXPECT_EQ(d, oracle::leibniz_det(m));
  EXPECT_EQ(d.size(), 24u);
}

class RandomDet : public ::testing::TestWithParam<int> {};

TEST_P(RandomDet, MatchesCofactorExpansion)
{
  Rng rng(derive_seed(default_seed, static_cast<std::uint64_t>(GetParam())));
  const std::size_t n = 2 + static_cast<std::size_t>(GetParam()) % 5;
  const Matrix m = random_matrix(n, n, rng);
  EXPECT_EQ(determinant(m), oracle::cofactor_det(m));
}

TEST_P(RandomDet, MixedSymbolicMatchesLeibniz)
{
  Rng rng(derive_seed(default_seed, 50 + static_cast<std::uint64_t>(GetParam())));
  Matrix m = random_matrix(4, 4, rng);
  m(static_cast<std::size_t>(GetParam()) % 4, 1) = x(1, 1);
  m(2, static_cast<std::size_t>(GetParam()) % 4) += x(1, 2);
  EXPECT_EQ(determinant(m), oracle::leibniz_det(m));
}

INSTANTIATE_TEST_SUITE_P(Seeded, RandomDet, ::testing::Range(0, 15));

TEST(MatAdjugate, Generic2x2ClosedForm)
{
  const Matrix adj = adjugate(generic_matrix("X", 2, 2));
  EXPECT_EQ(adj, Matrix::from_rows({{x(2, 2), -x(1, 2)}, {-x(2, 1), x(1, 1)}}));
}

TEST(MatAdjugate, IdentityFixed)
{
  EXPECT_EQ(adjugate(Matrix::identity(2)), Matrix::identity(2));
  EXPECT_EQ(adjugate(Matrix::identity(4)), Matrix::identity(4));
}

TEST(MatAdjugate, Generic3x3)
{
  const Matrix m = generic_matrix("X", 3, 3);
  const Matrix adj = adjugate(m);
  EXPECT_EQ(adj, oracle::cofactor_adjugate(m));
  const Polynomial d = determinant(m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(adj(i, j).degree(), 2);
      EXPECT_EQ((adj * m)(i, j), i == j ? d : Polynomial());
      EXPECT_EQ((m * adj)(i, j), i == j ? d : Polynomial());
    }
}

TEST(MatAdjugate, DoubleAdjugate2x2)
{
  const Matrix m = generic_matrix("X", 2, 2);
  EXPECT_EQ(adjugate(adjugate(m)), m);
  EXPECT_EQ(m * adjugate(m), determinant(m) * Matrix::identity(2));
}

TEST(MatAdjugate, NonSquareRejected) { EXPECT_THROW(adjugate(generic_matrix("X", 2, 3)), DimensionError); }

TEST(InverseConstant, ExactAndSingular)
{
  const Matrix m = Matrix::from_rows({{Polynomial(2), Polynomial(1)}, {Polynomial(1), Polynomial(1)}});
  EXPECT_EQ(m * inverse_constant(m), Matrix::identity(2));
  const Matrix h = Matrix::from_rows({{Polynomial(2), Polynomial(0)}, {Polynomial(0), Polynomial(1)}});
  EXPECT_EQ(inverse_constant(h)(0, 0), Polynomial(Rational(1, 2)));
  const Matrix s = Matrix::from_rows({{Polynomial(1), Polynomial(2)}, {Polynomial(2), Polynomial(4)}});
  EXPECT_THROW(inverse_constant(s), std::domain_error);
}
