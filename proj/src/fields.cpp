// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>
#include "blochhom/parallel.hpp"

namespace blochhom
{

namespace
{

// exp(i s k_q t_i) for the points t of one axis and the 1D nodes k_q.
MatrixC AxisExponentials(const std::vector<double> &t, const std::vector<double> &nodes,
                         double s)
{
  MatrixC E(t.size(), nodes.size());
  for (std::size_t i = 0; i < t.size(); i++)
  {
    for (std::size_t q = 0; q < nodes.size(); q++)
    {
      E(i, q) = std::polar(1.0, s * nodes[q] * t[i]);
    }
  }
  return E;
}

struct AxisFactors
{
  MatrixC E0, E1;  // point-by-node exponentials; E1 is 1x1 in 1D
  int q1 = 1;      // nodes along the second axis
};

AxisFactors MakeAxisFactors(const WavenumberQuadrature &quad, const Grid &grid, double s)
{
  AxisFactors f;
  f.E0 = AxisExponentials(grid.Axis(0), quad.Axis().nodes, s);
  if (quad.Dim() == 2)
  {
    f.E1 = AxisExponentials(grid.Axis(1), quad.Axis().nodes, s);
    f.q1 = quad.PerAxis();
  }
  else
  {
    f.E1 = MatrixC::Ones(1, 1);
  }
  return f;
}

// sum_q E0(i, q0) A(q0, q1) E1(j, q1) for node weights stored in quadrature order.
MatrixC Synthesize(const AxisFactors &f, const VectorC &node_values)
{
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      A(node_values.data(), f.E0.cols(), f.q1);
  return f.E0 * A * f.E1.transpose();
}

struct ModeSums
{
  MatrixC C;  // node-by-basis coefficients of the weighted periodic parts
  double tail = 0.0;
  double min_denominator = std::numeric_limits<double>::infinity();
  double orthonormality = 0.0;
};

ModeSums ComputeModeSums(const BlochOperator &op, const GammaPair &gamma,
                         const FrequencySpec &freq, const SourceSpec &source,
                         const WavenumberQuadrature &quad, int first, int count)
{
  const int M = op.Size();
  const int d = op.Dim();
  const double w2 = freq.Omega2();
  const VectorC bphi = op.Mass() * gamma.phi;
  ModeSums out;
  out.C = MatrixC::Zero(quad.Size(), M);
  std::vector<double> tails(quad.Size(), 0.0);
  std::vector<double> mins(quad.Size(), std::numeric_limits<double>::infinity());
  std::vector<double> ortho(quad.Size(), 0.0);
  ParallelFor(quad.Size(),
              [&](std::size_t q)
              {
                const Vec2 khat = quad.Node(q);
                const double weight = quad.Weight(q) * source.F(d, khat);
                if (weight == 0.0)
                {
                  return;
                }
                const Vec2 k = {freq.eps * khat[0], freq.eps * khat[1]};
                const BandSolution bands = SolveBands(op.Stiffness(k), op.Mass(), count, true);
                const int n = count - first;
                const VectorR den = bands.omega2.tail(n).array() - w2;
                const double dmin = den.cwiseAbs().minCoeff();
                if (dmin < kGapTol)
                {
                  throw GapViolation(fmt::format(
                      "|w_m^2(k) - w^2| = {:.3e} < {:.0e} at k = ({}, {}); the frequency is "
                      "not in a gap",
                      dmin, kGapTol, k[0], k[1]));
                }
                mins[q] = dmin;
                ortho[q] = bands.orthonormality_residual;
                const MatrixC V = bands.vectors.rightCols(n);
                const VectorC amp =
                    (V.adjoint() * bphi).cwiseQuotient(den.cast<Complex>());
                const VectorC c = V * amp;
                const double cn = c.norm();
                tails[q] = (cn > 0.0) ? std::abs(amp(n - 1)) * V.col(n - 1).norm() / cn : 0.0;
                out.C.row(q) = weight * c.transpose();
              });
  out.tail = *std::max_element(tails.begin(), tails.end());
  out.min_denominator = *std::min_element(mins.begin(), mins.end());
  out.orthonormality = *std::max_element(ortho.begin(), ortho.end());
  return out;
}

BlochSynthesis SynthesizeBloch(const BlochOperator &op, const FrequencySpec &freq,
                               const WavenumberQuadrature &quad, const ModeSums &sums,
                               const Grid &grid, const char *name)
{
  const int d = op.Dim();
  if (grid.dim != d || quad.Dim() != d)
  {
    throw ValidationError("grid, quadrature and medium dimensions differ");
  }
  const Grid fast = grid.InFrame(Frame::Fast, freq.eps);
  const AxisFactors f = MakeAxisFactors(quad, fast, freq.eps);
  const PlaneWaveBasis &basis = op.Basis();
  const int N = basis.Cutoff();
  std::vector<double> harmonics;
  for (int j = -N; j <= N; j++)
  {
    harmonics.push_back(2.0 * kPi * j);
  }
  // Phase tables exp(i 2 pi j x) per axis, indexed by j + N.
  const MatrixC P0 = AxisExponentials(fast.Axis(0), harmonics, 1.0);
  const MatrixC P1 = (d == 2) ? AxisExponentials(fast.Axis(1), harmonics, 1.0)
                              : MatrixC::Ones(1, 2 * N + 1);
  MatrixC u = MatrixC::Zero(fast.count[0], fast.count[1]);
  for (int a = 0; a < basis.Size(); a++)
  {
    const auto &j = basis.Index(a);
    const MatrixC S = Synthesize(f, sums.C.col(a));
    const int c1 = (d == 2) ? j[1] + N : N;
    u.array() += S.array() * (P0.col(j[0] + N) * P1.col(c1).transpose()).array();
  }
  BlochSynthesis out;
  out.field.grid = grid;
  out.field.values = std::pow(2.0 * kPi, -0.5 * d) * freq.eps * freq.eps * u;
  out.field.meta = {name, freq.eps, freq.p, freq.sigma, freq.omega_hat};
  out.tail = sums.tail;
  out.min_denominator = sums.min_denominator;
  out.orthonormality = sums.orthonormality;
  return out;
}

}  // namespace

BlochSynthesis ExactBlochSolution(const BlochOperator &op, const GammaPair &gamma,
                                  const FrequencySpec &freq, const SourceSpec &source,
                                  const WavenumberQuadrature &quad, int mode_count,
                                  const Grid &grid)
{
  source.Validate();
  const int count = (mode_count <= 0) ? op.Size() : std::min(mode_count, op.Size());
  const ModeSums sums = ComputeModeSums(op, gamma, freq, source, quad, 0, count);
  return SynthesizeBloch(op, freq, quad, sums, grid, "u");
}

BlochSynthesis BranchSolution(const BlochOperator &op, const GammaPair &gamma,
                              const FrequencySpec &freq, const SourceSpec &source,
                              const WavenumberQuadrature &quad, const Grid &grid)
{
  source.Validate();
  const ModeSums sums = ComputeModeSums(op, gamma, freq, source, quad, freq.p, freq.p + 1);
  BlochSynthesis out = SynthesizeBloch(op, freq, quad, sums, grid, "u_p");
  out.tail = 0.0;
  return out;
}

double EnvelopeDenominator(const DispersionExpansion &expansion, const FrequencySpec &freq,
                           int order, const Vec2 &khat)
{
  double den = expansion.Omega2(khat) - freq.sigma * freq.omega_hat * freq.omega_hat;
  if (order == 2)
  {
    den += freq.eps * freq.eps * expansion.Omega4(khat);
  }
  return den;
}

Envelope ComputeEnvelope(const EffectiveCoefficients &coeffs, const FrequencySpec &freq,
                         const SourceSpec &source, const WavenumberQuadrature &quad, int order,
                         const Grid &grid, int derivatives)
{
  if (order != 0 && order != 2)
  {
    throw ValidationError(fmt::format("envelope order must be 0 or 2, got {}", order));
  }
  source.Validate();
  const int d = coeffs.dim;
  if (grid.dim != d || quad.Dim() != d)
  {
    throw ValidationError("grid, quadrature and coefficient dimensions differ");
  }
  const DispersionExpansion expansion = DispersionExpansion::From(coeffs);
  const std::size_t Q = quad.Size();
  VectorC base(Q);
  for (std::size_t q = 0; q < Q; q++)
  {
    const Vec2 khat = quad.Node(q);
    const double den = EnvelopeDenominator(expansion, freq, order, khat);
    if (std::abs(den) < kEnvelopeTol)
    {
      throw EnvelopeSingularity(fmt::format(
          "order-{} envelope denominator {:.3e} at k = ({}, {}) (sigma = {}, eps = {})", order,
          den, khat[0], khat[1], freq.sigma, freq.eps));
    }
    base(q) = quad.Weight(q) * source.F(d, khat) / den;
  }
  base *= std::pow(2.0 * kPi, -0.5 * d);
  const AxisFactors f = MakeAxisFactors(quad, grid.InFrame(Frame::Slow, freq.eps), 1.0);
  Envelope out;
  out.W = Synthesize(f, base);
  if (derivatives >= 1)
  {
    for (int a = 0; a < d; a++)
    {
      VectorC v(Q);
      for (std::size_t q = 0; q < Q; q++)
      {
        v(q) = base(q) * kI * quad.Node(q)[a];
      }
      out.grad.push_back(Synthesize(f, v));
    }
  }
  if (derivatives >= 2)
  {
    for (int a = 0; a < d; a++)
    {
      for (int b = 0; b < d; b++)
      {
        VectorC v(Q);
        for (std::size_t q = 0; q < Q; q++)
        {
          v(q) = -base(q) * quad.Node(q)[a] * quad.Node(q)[b];
        }
        out.hess.push_back(Synthesize(f, v));
      }
    }
  }
  return out;
}

FieldOnGrid EffectiveEnvelope(const EffectiveCoefficients &coeffs, const FrequencySpec &freq,
                              const SourceSpec &source, const WavenumberQuadrature &quad,
                              int order, const Grid &grid)
{
  FieldOnGrid out;
  out.grid = grid;
  out.values = ComputeEnvelope(coeffs, freq, source, quad, order, grid, 0).W;
  out.meta = {fmt::format("W{}", order), freq.eps, freq.p, freq.sigma, freq.omega_hat};
  return out;
}

FieldOnGrid HomogenizedField(const BlochOperator &op, const Homogenization &hom,
                             const FrequencySpec &freq, const SourceSpec &source,
                             const WavenumberQuadrature &quad, int order, const Grid &grid)
{
  if (order < 0 || order > 2)
  {
    throw ValidationError(fmt::format("homogenized field order must be 0, 1 or 2, got {}", order));
  }
  const int d = op.Dim();
  const Envelope env =
      ComputeEnvelope(hom.coeffs, freq, source, quad, (order == 2) ? 2 : 0, grid, order);
  const Grid fast = grid.InFrame(Frame::Fast, freq.eps);
  const std::vector<double> x0 = fast.Axis(0);
  const std::vector<double> x1 = (d == 2) ? fast.Axis(1) : std::vector<double>{0.0};
  auto cell = [&](const VectorC &c) { return op.Basis().EvaluateTensor(c, x0, x1); };
  const MatrixC phi = cell(hom.gamma.phi);
  MatrixC U = phi.cwiseProduct(env.W);
  if (order >= 1)
  {
    for (int a = 0; a < d; a++)
    {
      U += freq.eps * cell(hom.cells.chi1[a]).cwiseProduct(env.grad[a]);
    }
  }
  if (order == 2)
  {
    for (int a = 0; a < d; a++)
    {
      for (int b = 0; b < d; b++)
      {
        const MatrixC corr = hom.coeffs.C1({a, b}) * phi + cell(hom.cells.chi2({a, b}));
        U += freq.eps * freq.eps * corr.cwiseProduct(env.hess[a * d + b]);
      }
    }
  }
  FieldOnGrid out;
  out.grid = grid;
  out.values = U;
  out.meta = {fmt::format("U{}", order), freq.eps, freq.p, freq.sigma, freq.omega_hat};
  return out;
}

}  // namespace blochhom
