// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <gtest/gtest.h>
#include "blochhom/fields.hpp"
#include "oracles.hpp"

namespace blochhom
{
namespace
{

double RelDiff(const FieldOnGrid &a, const FieldOnGrid &b)
{
  return (a.values - b.values).norm() / b.values.norm();
}

// Homogeneous 1D medium (G = c, rho = 1) driven below the acoustic branch.
class HomogeneousFields : public ::testing::Test
{
protected:
  static constexpr double kC = 1.7;
  static constexpr double kEps = 0.25;

  HomogeneousFields()
    : op(Medium(HomogeneousSpec(1, kC, 1.0)), 8), hom(Homogenize(op, 0)),
      quad(1, QuadratureRule::GaussLegendre, 256, source.k_max),
      grid(CenteredGrid(1, Frame::Slow, 6.0, 64))
  {
    freq.p = 0;
    freq.sigma = -1;
    freq.omega_hat = 1.0;
    freq.eps = kEps;
    freq.omega0_2 = hom.gamma.omega2;
  }

  BlochOperator op;
  Homogenization hom;
  SourceSpec source;
  WavenumberQuadrature quad;
  Grid grid;
  FrequencySpec freq;
};

TEST_F(HomogeneousFields, ExactSolutionMatchesClosedForm)
{
  const BlochSynthesis u = ExactBlochSolution(op, hom.gamma, freq, source, quad, 0, grid);
  const auto r = grid.Axis(0);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.size(); i++)
  {
    worst = std::max(worst,
                     std::abs(u.field.values(i, 0) - oracle::DampedGaussianResponse(r[i], kC)));
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_LT(u.field.ImagResidue(), 1e-10);
  EXPECT_LE(u.orthonormality, 1e-10);
}

TEST_F(HomogeneousFields, BranchSolutionEqualsExactSolution)
{
  const BlochSynthesis u = ExactBlochSolution(op, hom.gamma, freq, source, quad, 10, grid);
  const BlochSynthesis up = BranchSolution(op, hom.gamma, freq, source, quad, grid);
  EXPECT_LT(RelDiff(up.field, u.field), 1e-10);
}

TEST_F(HomogeneousFields, LinearInEnvelopeAmplitude)
{
  SourceSpec doubled = source;
  doubled.amplitude = 2.0;
  const FieldOnGrid a = BranchSolution(op, hom.gamma, freq, source, quad, grid).field;
  const FieldOnGrid b = BranchSolution(op, hom.gamma, freq, doubled, quad, grid).field;
  EXPECT_LT((b.values - 2.0 * a.values).cwiseAbs().maxCoeff(), 1e-15 * b.MaxAbs() + 1e-300);
}

TEST_F(HomogeneousFields, HomogenizedFieldsCoincide)
{
  const FieldOnGrid W0 = EffectiveEnvelope(hom.coeffs, freq, source, quad, 0, grid);
  const FieldOnGrid W2 = EffectiveEnvelope(hom.coeffs, freq, source, quad, 2, grid);
  EXPECT_LT(RelDiff(W2, W0), 1e-12);
  const auto r = grid.Axis(0);
  for (std::size_t i = 0; i < r.size(); i += 7)
  {
    EXPECT_NEAR(std::abs(W0.values(i, 0) - oracle::DampedGaussianResponse(r[i], kC)), 0.0, 1e-9);
  }
  for (int m = 0; m < 3; m++)
  {
    const FieldOnGrid U = HomogenizedField(op, hom, freq, source, quad, m, grid);
    EXPECT_LT(RelDiff(U, W0), 1e-12) << "order " << m;
  }
}

TEST_F(HomogeneousFields, GapViolationOnBranch)
{
  // Put w^2 exactly on the acoustic branch at one quadrature node.
  FrequencySpec bad = freq;
  bad.sigma = 1;
  bad.omega_hat = std::abs(quad.Node(quad.Size() / 2 + 3)[0]) * std::sqrt(kC);
  EXPECT_THROW(BranchSolution(op, hom.gamma, bad, source, quad, grid), GapViolation);
}

TEST_F(HomogeneousFields, EnvelopeSingularityReported)
{
  FrequencySpec bad = freq;
  bad.sigma = 1;
  bad.omega_hat = std::abs(quad.Node(quad.Size() / 2 + 3)[0]) * std::sqrt(kC);
  EXPECT_THROW(EffectiveEnvelope(hom.coeffs, bad, source, quad, 0, grid), EnvelopeSingularity);
  EXPECT_THROW(EffectiveEnvelope(hom.coeffs, freq, source, quad, 1, grid), ValidationError);
}

// Effective fields on the layered medium.
class LayeredFields : public ::testing::Test
{
protected:
  LayeredFields()
    : op(Medium(TwoPhaseLayeredSpec()), 48), hom(Homogenize(op, 0)),
      quad(1, QuadratureRule::GaussLegendre, 192, source.k_max),
      grid(CenteredGrid(1, Frame::Slow, 5.0, 64))
  {
    freq.p = 0;
    freq.sigma = -1;
    freq.omega_hat = 1.0;
    freq.eps = 0.25;
    freq.omega0_2 = hom.gamma.omega2;
  }

  BlochOperator op;
  Homogenization hom;
  SourceSpec source;
  WavenumberQuadrature quad;
  Grid grid;
  FrequencySpec freq;
};

TEST_F(LayeredFields, EnvelopeSatisfiesEffectiveEquation)
{
  const Envelope W = ComputeEnvelope(hom.coeffs, freq, source, quad, 0, grid, 2);
  const double mu0 = hom.coeffs.mu0({0, 0}).real(), rho0 = hom.coeffs.rho0;
  const auto r = grid.Axis(0);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < r.size(); i++)
  {
    const Complex res = mu0 * W.hess[0](i, 0) + rho0 * freq.sigma * W.W(i, 0) +
                        rho0 * source.SpaceEnvelope(1, {r[i], 0.0});
    worst = std::max(worst, std::abs(res));
    scale = std::max(scale, rho0 * std::abs(W.W(i, 0)));
  }
  EXPECT_LT(worst, 1e-8 * scale);
}

TEST_F(LayeredFields, FieldsAreRealUpToRoundoff)
{
  for (int m = 0; m < 3; m++)
  {
    EXPECT_LT(HomogenizedField(op, hom, freq, source, quad, m, grid).ImagResidue(), 1e-10);
  }
  EXPECT_LT(BranchSolution(op, hom.gamma, freq, source, quad, grid).field.ImagResidue(), 1e-10);
}

TEST_F(LayeredFields, FirstOrderCorrectionVanishesAtEnvelopeExtremum)
{
  const FieldOnGrid U0 = HomogenizedField(op, hom, freq, source, quad, 0, grid);
  const FieldOnGrid U1 = HomogenizedField(op, hom, freq, source, quad, 1, grid);
  const int centre = grid.count[0] / 2;
  ASSERT_NEAR(grid.Axis(0)[centre], 0.0, 1e-12);
  EXPECT_LT(std::abs(U1.values(centre, 0) - U0.values(centre, 0)), 1e-12 * U0.MaxAbs());
  EXPECT_GT((U1.values - U0.values).cwiseAbs().maxCoeff(), 1e-4 * U0.MaxAbs());
}

TEST_F(LayeredFields, QuadratureConvergence)
{
  const WavenumberQuadrature fine(1, QuadratureRule::GaussLegendre, 384, source.k_max);
  for (int m = 0; m < 3; m++)
  {
    const FieldOnGrid a = HomogenizedField(op, hom, freq, source, quad, m, grid);
    const FieldOnGrid b = HomogenizedField(op, hom, freq, source, fine, m, grid);
    EXPECT_LT(RelDiff(a, b), 1e-8);
  }
  const FieldOnGrid a = BranchSolution(op, hom.gamma, freq, source, quad, grid).field;
  const FieldOnGrid b = BranchSolution(op, hom.gamma, freq, source, fine, grid).field;
  EXPECT_LT(RelDiff(a, b), 1e-8);
}

// The other branches contribute at O(eps^3) relative to the branch solution.
TEST_F(LayeredFields, BranchApproximationOrder)
{
  std::vector<double> eps_list = {0.5, 0.25, 0.125}, diffs;
  for (double eps : eps_list)
  {
    FrequencySpec f = freq;
    f.eps = eps;
    const Grid g = CenteredGrid(1, Frame::Fast, 8.0 / eps, 16);
    const WavenumberQuadrature q(1, QuadratureRule::GaussLegendre, 128, source.k_max);
    const BlochSynthesis u = ExactBlochSolution(op, hom.gamma, f, source, q, 40, g);
    const BlochSynthesis up = BranchSolution(op, hom.gamma, f, source, q, g);
    diffs.push_back((u.field.values - up.field.values).cwiseAbs().maxCoeff() / u.field.MaxAbs());
  }
  const double slope = std::log(diffs[0] / diffs[2]) / std::log(eps_list[0] / eps_list[2]);
  EXPECT_GE(slope, 2.7);
}

}  // namespace
}  // namespace blochhom
