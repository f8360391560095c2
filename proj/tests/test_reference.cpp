// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <gtest/gtest.h>
#include "blochhom/convergence.hpp"
#include "blochhom/fields.hpp"
#include "blochhom/reference.hpp"
#include "oracles.hpp"

namespace blochhom
{
namespace
{

FrequencySpec SubAcoustic(double eps, const GammaPair &g)
{
  FrequencySpec f;
  f.p = g.p;
  f.sigma = -1;
  f.omega_hat = 1.0;
  f.eps = eps;
  f.omega0_2 = g.omega2;
  return f;
}

double ClosedFormError(int n_cell)
{
  const double c = 2.0, eps = 0.5;
  const BlochOperator op(Medium(HomogeneousSpec(1, c, 1.0)), 4);
  const GammaPair g = EigenpairAtGamma(op, 0);
  // The sqrt(c) decay length is long at this frequency, so the domain is enlarged.
  ReferenceConfig cfg;
  cfg.n_cell = n_cell;
  cfg.n_dom = 60;
  const ReferenceSolution ref = SolveReference(op, g, SubAcoustic(eps, g), SourceSpec{}, cfg);
  const auto x = ref.field.grid.Axis(0);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    worst = std::max(
        worst, std::abs(ref.field.values(i, 0) - oracle::DampedGaussianResponse(eps * x[i], c)));
  }
  return worst;
}

TEST(Reference, HomogeneousSecondOrderAccuracy)
{
  const double e16 = ClosedFormError(16), e32 = ClosedFormError(32);
  EXPECT_LT(e32, 1e-5);
  EXPECT_NEAR(std::log2(e16 / e32), 2.0, 0.1);
}

TEST(Reference, SelfConvergenceOnLayeredMedium)
{
  const BlochOperator op(Medium(TwoPhaseLayeredSpec()), 32);
  const GammaPair g = EigenpairAtGamma(op, 0);
  const FrequencySpec f = SubAcoustic(0.5, g);
  std::vector<MatrixC> sols;
  for (int n : {16, 32, 64})
  {
    ReferenceConfig cfg;
    cfg.n_cell = n;
    sols.push_back(SolveReference(op, g, f, SourceSpec{}, cfg).field.values);
  }
  // Compare at the nodes common to all three grids.
  auto coarse = [&](int level)
  {
    const int stride = 1 << level;
    const Eigen::Index n = sols[0].rows();
    VectorC v(n);
    for (Eigen::Index i = 0; i < n; i++)
    {
      v(i) = sols[level](i * stride, 0);
    }
    return v;
  };
  const double d1 = (coarse(0) - coarse(1)).norm();
  const double d2 = (coarse(1) - coarse(2)).norm();
  EXPECT_NEAR(std::log2(d1 / d2), 2.0, 0.3);
}

TEST(Reference, BoundaryDecayOnLayeredMedium)
{
  const BlochOperator op(Medium(TwoPhaseLayeredSpec()), 32);
  const GammaPair g = EigenpairAtGamma(op, 0);
  ReferenceConfig cfg;
  cfg.n_dom = 20;
  cfg.n_cell = 32;
  const ReferenceSolution ref = SolveReference(op, g, SubAcoustic(0.5, g), SourceSpec{}, cfg);
  EXPECT_LT(ref.boundary_ratio, 1e-6);
  EXPECT_EQ(ref.n_dom, 20);
  EXPECT_EQ(ref.field.grid.count[0], 41 * 32 + 1);
  cfg.n_dom = 2;
  EXPECT_THROW(SolveReference(op, g, SubAcoustic(0.5, g), SourceSpec{}, cfg), DecayCheckFailed);
}

TEST(Reference, AutomaticDomainAndValidation)
{
  ReferenceConfig cfg;
  EXPECT_EQ(cfg.DomainHalfWidth(0.5), 20);
  EXPECT_EQ(cfg.DomainHalfWidth(0.375), 27);
  cfg.n_dom = 7;
  EXPECT_EQ(cfg.DomainHalfWidth(0.1), 7);
  cfg.n_cell = 8;
  EXPECT_THROW(cfg.Validate(), ValidationError);
  cfg = ReferenceConfig{};
  cfg.decay_tol = 0.0;
  EXPECT_THROW(cfg.Validate(), ValidationError);
}

// 2D homogeneous medium: the FD solution agrees with the spectral Bloch synthesis.
TEST(Reference, HomogeneousTwoDimensionalAgreesWithSynthesis)
{
  const BlochOperator op(Medium(HomogeneousSpec(2, 1.5, 1.0)), 2);
  const GammaPair g = EigenpairAtGamma(op, 0);
  const FrequencySpec f = SubAcoustic(0.5, g);
  ReferenceConfig cfg;
  cfg.n_dom = 14;
  cfg.n_cell = 16;
  cfg.decay_tol = 1e-2;
  const ReferenceSolution ref = SolveReference(op, g, f, SourceSpec{}, cfg);
  const WavenumberQuadrature q(2, QuadratureRule::GaussLegendre, 64, SourceSpec{}.k_max);
  const BlochSynthesis u = BranchSolution(op, g, f, SourceSpec{}, q, ref.field.grid);
  EXPECT_LT(RelativeError(u.field, ref.field, 8), 5e-3);
}

TEST(RelativeError, ExactRatios)
{
  FieldOnGrid a;
  a.grid = CenteredGrid(1, Frame::Fast, 3.5, 16);
  a.values = MatrixC(a.grid.count[0], 1);
  const auto x = a.grid.Axis(0);
  for (int i = 0; i < a.grid.count[0]; i++)
  {
    a.values(i, 0) = std::exp(-x[i] * x[i]) * Complex(1.0, 0.3);
  }
  FieldOnGrid b = a;
  EXPECT_EQ(RelativeError(a, b, 3), 0.0);
  b.values *= 2.0;
  EXPECT_NEAR(RelativeError(a, b, 3), 1.0, 1e-14);
  FieldOnGrid c = a;
  c.grid.spacing[0] *= 2.0;
  EXPECT_THROW(RelativeError(a, c, 3), ValidationError);
}

TEST(RelativeError, TrapezoidRegion)
{
  // Only points with |x| <= M - 1/2 count: a perturbation outside does not change the error.
  FieldOnGrid a;
  a.grid = CenteredGrid(1, Frame::Fast, 4.5, 4);
  a.values = MatrixC::Ones(a.grid.count[0], 1);
  FieldOnGrid b = a;
  b.values(0, 0) = 5.0;
  EXPECT_EQ(RelativeError(a, b, 3), 0.0);
  b.values(a.grid.count[0] / 2, 0) = 2.0;
  // One interior node off by 1 among a trapezoid rule of 21 points with spacing 1/4.
  const double expected = std::sqrt(0.25 / (0.25 * 20));
  EXPECT_NEAR(RelativeError(a, b, 3), expected, 1e-14);
}

}  // namespace
}  // namespace blochhom
