// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <gtest/gtest.h>
#include "blochhom/fit.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/quadrature.hpp"

namespace blochhom
{
namespace
{

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly)
{
  for (int n : {1, 2, 5, 16, 64})
  {
    const Rule1D r = GaussLegendre(n, -2.0, 3.0);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    for (int a = 0; a <= 2 * n - 1; a++)
    {
      double sum = 0.0;
      for (int i = 0; i < n; i++)
      {
        sum += r.weights[i] * std::pow(r.nodes[i], a);
      }
      const double exact = (std::pow(3.0, a + 1) - std::pow(-2.0, a + 1)) / (a + 1);
      EXPECT_NEAR(sum, exact, 1e-12 * std::max(1.0, std::pow(3.0, a + 1)));
    }
    for (double w : r.weights)
    {
      EXPECT_GT(w, 0.0);
    }
  }
}

TEST(Quadrature, TrapezoidWeights)
{
  const Rule1D r = Trapezoid(5, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(r.weights[0], 0.125);
  EXPECT_DOUBLE_EQ(r.weights[2], 0.25);
  EXPECT_DOUBLE_EQ(r.nodes[4], 1.0);
  EXPECT_THROW(Trapezoid(1, 0.0, 1.0), ValidationError);
}

TEST(Quadrature, TensorRuleSelfTest)
{
  for (int d : {1, 2})
  {
    for (QuadratureRule rule : {QuadratureRule::GaussLegendre, QuadratureRule::Trapezoid})
    {
      const WavenumberQuadrature q(d, rule, 24, 8.0);
      EXPECT_EQ(q.Size(), (d == 1) ? 24u : 576u);
      EXPECT_LT(QuadratureSelfTest(q), 1e-12);
      double total = 0.0;
      for (std::size_t i = 0; i < q.Size(); i++)
      {
        EXPECT_GT(q.Weight(i), 0.0);
        const Vec2 k = q.Node(i);
        EXPECT_LE(std::max(std::abs(k[0]), std::abs(k[1])), 8.0);
        total += q.Weight(i);
      }
      EXPECT_NEAR(total, std::pow(16.0, d), 1e-10);
    }
  }
}

TEST(Quadrature, GaussianIntegralConverges)
{
  const WavenumberQuadrature q(1, QuadratureRule::GaussLegendre, 64, 12.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.Size(); i++)
  {
    sum += q.Weight(i) * std::exp(-0.25 * q.Node(i)[0] * q.Node(i)[0]);
  }
  EXPECT_NEAR(sum, 2.0 * std::sqrt(kPi), 1e-13);
}

TEST(Quadrature, ParseRules)
{
  EXPECT_EQ(ParseQuadratureRule("gauss-legendre"), QuadratureRule::GaussLegendre);
  EXPECT_EQ(ParseQuadratureRule("trapezoid"), QuadratureRule::Trapezoid);
  EXPECT_EQ(ToString(QuadratureRule::Trapezoid), "trapezoid");
  EXPECT_THROW(ParseQuadratureRule("simpson"), ValidationError);
  EXPECT_THROW(WavenumberQuadrature(1, QuadratureRule::GaussLegendre, 0, 8.0), ValidationError);
  EXPECT_THROW(WavenumberQuadrature(1, QuadratureRule::GaussLegendre, 8, -1.0), ValidationError);
}

TEST(SlopeFit, ExactPowerLaw)
{
  const std::vector<double> eps = {0.5, 0.375, 0.25};
  std::vector<double> err;
  for (double e : eps)
  {
    err.push_back(e);
  }
  const SlopeResult r = SlopeFit(eps, err);
  EXPECT_NEAR(r.slope, 1.0, 1e-14);
  EXPECT_NEAR(r.intercept, 0.0, 1e-14);
  EXPECT_NEAR(r.residual, 0.0, 1e-14);
}

TEST(SlopeFit, NoisyQuadraticFixture)
{
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (int trial = 0; trial < 20; trial++)
  {
    std::vector<double> eps, err;
    for (double e = 0.5; e > 0.05; e *= 0.8)
    {
      eps.push_back(e);
      err.push_back(3.0 * e * e * (1.0 + noise(rng)));
    }
    const SlopeResult r = SlopeFit(eps, err);
    EXPECT_NEAR(r.slope, 2.0, 0.05);
    EXPECT_NEAR(std::exp(r.intercept), 3.0, 0.2);
  }
}

TEST(SlopeFit, RejectsDegenerateInput)
{
  EXPECT_THROW(SlopeFit({0.5, 0.25}, {1.0, 0.5}), ValidationError);
  EXPECT_THROW(SlopeFit({0.5, 0.5, 0.5}, {1.0, 0.5, 0.2}), ValidationError);
  EXPECT_THROW(SlopeFit({0.5, 0.25, 0.1}, {1.0, 0.0, 0.2}), ValidationError);
  EXPECT_THROW(SlopeFit({0.5, -0.25, 0.1}, {1.0, 0.5, 0.2}), ValidationError);
  EXPECT_THROW(SlopeFit({0.5, 0.25, 0.1}, {1.0, 0.5}), ValidationError);
}

TEST(Grid, FrameConversionIsRelabeling)
{
  const Grid slow = CenteredGrid(2, Frame::Slow, 2.0, 64);
  const Grid fast = slow.InFrame(Frame::Fast, 0.25);
  EXPECT_EQ(fast.count, slow.count);
  EXPECT_DOUBLE_EQ(fast.origin[0], -8.0);
  EXPECT_DOUBLE_EQ(fast.spacing[1], slow.spacing[1] / 0.25);
  const Grid back = fast.InFrame(Frame::Slow, 0.25);
  EXPECT_DOUBLE_EQ(back.origin[1], slow.origin[1]);
  EXPECT_DOUBLE_EQ(slow.SamplesPerCell(0.25), 16.0);
  EXPECT_NO_THROW(CheckResolution(slow, 0.25));
  EXPECT_THROW(CheckResolution(slow, 0.125), ValidationError);
}

TEST(Grid, CenteredAxisIsSymmetric)
{
  const Grid g = CenteredGrid(1, Frame::Fast, 3.5, 16);
  const auto x = g.Axis(0);
  ASSERT_EQ(x.size(), 113u);
  for (std::size_t i = 0; i < x.size(); i++)
  {
    EXPECT_NEAR(x[i], -x[x.size() - 1 - i], 1e-13);
  }
  EXPECT_EQ(g.count[1], 1);
}

}  // namespace
}  // namespace blochhom
