// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <gtest/gtest.h>
#include "blochhom/tensor.hpp"

namespace blochhom
{
namespace
{

TensorC RandomTensor(int dim, int rank, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TensorC t(dim, rank);
  for (std::size_t f = 0; f < t.Size(); f++)
  {
    t[f] = Complex(u(rng), u(rng));
  }
  return t;
}

double Distance(const TensorC &a, const TensorC &b)
{
  double d = 0.0;
  for (std::size_t f = 0; f < a.Size(); f++)
  {
    d = std::max(d, std::abs(a[f] - b[f]));
  }
  return d;
}

TEST(Tensor, RankTwoFullSymmetrizationIsTransposeAverage)
{
  const TensorC t = RandomTensor(2, 2, 1);
  const TensorC s = SymmetrizeFull(t);
  for (int i = 0; i < 2; i++)
  {
    for (int j = 0; j < 2; j++)
    {
      EXPECT_NEAR(std::abs(s({i, j}) - 0.5 * (t({i, j}) + t({j, i}))), 0.0, 1e-15);
    }
  }
}

TEST(Tensor, PartialSymmetrizationOfBasisTensor)
{
  // e1 (x) e2 (x) e3 needs three distinct directions; in 2D use e1 (x) e1 (x) e2.
  TensorC t(2, 3);
  t({0, 0, 1}) = 1.0;
  const TensorC s = SymmetrizePartial(t);
  EXPECT_DOUBLE_EQ(s({0, 0, 1}).real(), 0.5);
  EXPECT_DOUBLE_EQ(s({0, 1, 0}).real(), 0.5);
  EXPECT_DOUBLE_EQ(s({1, 0, 0}).real(), 0.0);
  EXPECT_DOUBLE_EQ(MaxAbs(s), 0.5);
}

TEST(Tensor, FullSymmetrizationOfRankFourCountsPermutations)
{
  TensorC t(2, 4);
  t({0, 0, 1, 1}) = 6.0;
  const TensorC s = SymmetrizeFull(t);
  // Six distinct arrangements of two 0s and two 1s share the mass equally.
  EXPECT_NEAR(s({0, 1, 0, 1}).real(), 1.0, 1e-15);
  EXPECT_NEAR(s({1, 1, 0, 0}).real(), 1.0, 1e-15);
  EXPECT_NEAR(s({0, 0, 0, 1}).real(), 0.0, 1e-15);
}

class TensorProperties : public ::testing::TestWithParam<std::tuple<int, int>>
{
};

TEST_P(TensorProperties, SymmetrizationIsIdempotentAndInvariant)
{
  const auto [dim, rank] = GetParam();
  for (unsigned seed = 0; seed < 5; seed++)
  {
    const TensorC t = RandomTensor(dim, rank, 100 * seed + rank);
    const TensorC s = SymmetrizeFull(t);
    EXPECT_LT(Distance(SymmetrizeFull(s), s), 1e-14);
    const TensorC p = SymmetrizePartial(t);
    EXPECT_LT(Distance(SymmetrizePartial(p), p), 1e-14);
    EXPECT_LT(Distance(SymmetrizeFull(p), s), 1e-14);
    // Invariance under every index permutation.
    for (std::size_t f = 0; f < s.Size(); f++)
    {
      auto idx = s.Unflatten(f);
      std::sort(idx.begin(), idx.begin() + rank);
      do
      {
        EXPECT_NEAR(std::abs(s.At(idx) - s[f]), 0.0, 1e-14);
      } while (std::next_permutation(idx.begin(), idx.begin() + rank));
    }
    // Contraction with a symmetric power only sees the symmetric part.
    const std::array<Complex, 2> v{Complex(0.3, 0.1), Complex(-1.2, 0.4)};
    EXPECT_NEAR(std::abs(ContractPower(t, v) - ContractPower(s, v)), 0.0, 1e-13);
  }
}

INSTANTIATE_TEST_SUITE_P(AllRanks, TensorProperties,
                         ::testing::Combine(::testing::Values(1, 2), ::testing::Values(1, 2, 3, 4)));

TEST(Tensor, ContractPowerMatchesExplicitSum)
{
  const TensorC t = RandomTensor(2, 3, 9);
  const std::array<Complex, 2> v{Complex(0.5, -0.2), Complex(2.0, 1.0)};
  Complex sum = 0.0;
  for (int i = 0; i < 2; i++)
    for (int j = 0; j < 2; j++)
      for (int k = 0; k < 2; k++)
        sum += t({i, j, k}) * v[i] * v[j] * v[k];
  EXPECT_NEAR(std::abs(ContractPower(t, v) - sum), 0.0, 1e-13);
}

TEST(Tensor, OuterProductAndIdentity)
{
  const TensorC a = RandomTensor(2, 1, 3), b = RandomTensor(2, 2, 4);
  const TensorC o = Outer(a, b);
  ASSERT_EQ(o.Rank(), 3);
  for (std::size_t f = 0; f < o.Size(); f++)
  {
    const auto idx = o.Unflatten(f);
    EXPECT_EQ(o[f], a({idx[0]}) * b({idx[1], idx[2]}));
  }
  const TensorC I = IdentityTensor(2);
  EXPECT_EQ(I({0, 0}), 1.0);
  EXPECT_EQ(I({0, 1}), 0.0);
  EXPECT_THROW(Outer(b, RandomTensor(2, 3, 5)), ValidationError);
}

TEST(Tensor, RankValidation)
{
  EXPECT_THROW(TensorC(2, 5), ValidationError);
  EXPECT_THROW(TensorC(3, 2), ValidationError);
  EXPECT_THROW(SymmetrizeFull(TensorC(2, 0)), ValidationError);
  TensorC t(2, 2);
  EXPECT_THROW(t({0, 1, 1}), ValidationError);
}

}  // namespace
}  // namespace blochhom
