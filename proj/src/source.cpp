// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/source.hpp"

#include <cmath>
#include <fmt/format.h>

namespace blochhom
{

FrequencySpec MakeFrequency(const GammaPair &gamma, const DispersionDiagram &diagram, int sigma,
                            double omega_hat, double eps)
{
  if (sigma != 1 && sigma != -1)
  {
    throw ValidationError(fmt::format("sigma must be +1 or -1, got {}", sigma));
  }
  if (!(omega_hat > 0.0))
  {
    throw ValidationError(fmt::format("Omega must be positive, got {}", omega_hat));
  }
  if (!(eps > 0.0))
  {
    throw ValidationError(fmt::format("eps must be positive, got {}", eps));
  }
  if (!gamma.simple)
  {
    throw NotSimple(fmt::format("w_{}^2(0) is not a simple eigenvalue", gamma.p));
  }
  if (diagram.count < 1 || diagram.omega2.empty())
  {
    throw ValidationError("frequency validation needs a non-empty dispersion diagram");
  }
  FrequencySpec out;
  out.p = gamma.p;
  out.sigma = sigma;
  out.omega_hat = omega_hat;
  out.eps = eps;
  out.omega0_2 = gamma.omega2;
  const double w2 = out.Omega2();
  out.gap_upper_branch = diagram.count;
  for (int m = 0; m < diagram.count; m++)
  {
    const BranchRange range = RangeOfBranch(diagram, m);
    if (w2 >= range.min && w2 <= range.max)
    {
      throw NotInGap(fmt::format(
          "w^2 = {} (p = {}, sigma = {}, Omega = {}, eps = {}) lies in the range [{}, {}] of "
          "branch {}",
          w2, gamma.p, sigma, omega_hat, eps, range.min, range.max, m));
    }
    if (w2 < range.min && out.gap_upper_branch == diagram.count)
    {
      out.gap_upper_branch = m;
    }
  }
  if (out.gap_upper_branch == diagram.count)
  {
    throw NotInGap(fmt::format("w^2 = {} lies above all {} computed branches", w2,
                               diagram.count));
  }
  return out;
}

void SourceSpec::Validate() const
{
  if (envelope != "gaussian")
  {
    throw ValidationError(
        fmt::format("unknown source envelope '{}' (only 'gaussian' is built in)", envelope));
  }
  if (!(amplitude > 0.0))
  {
    throw ValidationError(fmt::format("envelope amplitude must be positive, got {}", amplitude));
  }
  if (!(k_max > 0.0))
  {
    throw ValidationError(fmt::format("K_max must be positive, got {}", k_max));
  }
}

double SourceSpec::F(int dim, const Vec2 &khat) const
{
  const double k1 = (dim == 2) ? khat[1] : 0.0;
  if (std::max(std::abs(khat[0]), std::abs(k1)) > k_max)
  {
    return 0.0;
  }
  return amplitude * std::exp(-0.25 * (khat[0] * khat[0] + k1 * k1)) / (2.0 * std::sqrt(kPi));
}

double SourceSpec::SpaceEnvelope(int dim, const Vec2 &r) const
{
  const double r1 = (dim == 2) ? r[1] : 0.0;
  return amplitude * std::pow(2.0, 0.5 * dim) / (2.0 * std::sqrt(kPi)) *
         std::exp(-(r[0] * r[0] + r1 * r1));
}

Complex SpaceEnvelopeQuadrature(const SourceSpec &source, const WavenumberQuadrature &quad,
                                const Vec2 &r)
{
  const int d = quad.Dim();
  Complex sum = 0.0;
  for (std::size_t q = 0; q < quad.Size(); q++)
  {
    const Vec2 k = quad.Node(q);
    const double arg = k[0] * r[0] + ((d == 2) ? k[1] * r[1] : 0.0);
    sum += quad.Weight(q) * source.F(d, k) * std::polar(1.0, arg);
  }
  return sum * std::pow(2.0 * kPi, -0.5 * d);
}

FieldOnGrid SampleSource(const BlochOperator &op, const GammaPair &gamma,
                         const SourceSpec &source, const FrequencySpec &freq, const Grid &grid,
                         const WavenumberQuadrature *quad)
{
  source.Validate();
  const int d = op.Dim();
  if (grid.dim != d)
  {
    throw ValidationError("source grid and medium have different dimensions");
  }
  const Grid fast = grid.InFrame(Frame::Fast, freq.eps);
  const auto x0 = fast.Axis(0);
  const auto x1 = fast.Axis(1);
  const MatrixC phi = op.Basis().EvaluateTensor(gamma.phi, x0, (d == 2) ? x1 : std::vector<double>{0.0});
  FieldOnGrid out;
  out.grid = grid;
  out.meta = {"source", freq.eps, freq.p, freq.sigma, freq.omega_hat};
  out.values.resize(grid.count[0], grid.count[1]);
  for (int i = 0; i < grid.count[0]; i++)
  {
    for (int j = 0; j < grid.count[1]; j++)
    {
      const Vec2 x = {x0[i], (d == 2) ? x1[j] : 0.0};
      const Vec2 r = {freq.eps * x[0], freq.eps * x[1]};
      const Complex env = (quad != nullptr) ? SpaceEnvelopeQuadrature(source, *quad, r)
                                            : Complex(source.SpaceEnvelope(d, r));
      out.values(i, j) = env * op.GetMedium().Evaluate(Field::Density, x) * phi(i, j);
    }
  }
  return out;
}

ProjectionCheck CheckProjection(const BlochOperator &op, const GammaPair &gamma,
                                const SourceSpec &source, double eps, const VectorC &phi,
                                const Vec2 &k, int cells)
{
  source.Validate();
  if (!(eps > 0.0) || cells < 1)
  {
    throw ValidationError("projection check needs eps > 0 and at least one cell");
  }
  const int d = op.Dim();
  const VectorC bphi = op.Mass() * gamma.phi;
  ProjectionCheck out;
  const Vec2 kscaled = {k[0] / eps, k[1] / eps};
  out.closed_form = std::pow(eps, -d) * std::pow(2.0 * kPi, 0.5 * d) *
                    std::conj(gamma.phi.dot(op.Mass() * phi)) * source.F(d, kscaled);

  // The integrand is (B phi_p)(x) conj(phi(x)) times a smooth decaying factor; a uniform
  // rule resolving the band limit 2N is spectrally accurate for it.
  const int n = 4 * op.Basis().Cutoff() + 8;
  std::vector<double> local(n);
  for (int j = 0; j < n; j++)
  {
    local[j] = -0.5 + static_cast<double>(j) / n;
  }
  const std::vector<double> local1 = (d == 2) ? local : std::vector<double>{0.0};
  const MatrixC g = op.Basis().EvaluateTensor(bphi, local, local1).cwiseProduct(
      op.Basis().EvaluateTensor(phi, local, local1).conjugate());
  // Per-axis sums over cells of exp(-eps^2 x^2) exp(-i k x) at x = c + y.
  auto axis_sum = [&](int axis, const std::vector<double> &ys)
  {
    VectorC s = VectorC::Zero(static_cast<Eigen::Index>(ys.size()));
    for (std::size_t j = 0; j < ys.size(); j++)
    {
      for (int c = -cells; c <= cells; c++)
      {
        const double x = c + ys[j];
        s(j) += std::exp(-eps * eps * x * x) * std::polar(1.0, -k[axis] * x);
      }
    }
    return s;
  };
  const VectorC s0 = axis_sum(0, local);
  const VectorC s1 = (d == 2) ? axis_sum(1, local1) : VectorC::Ones(1);
  const double scale = source.SpaceEnvelope(d, {0.0, 0.0}) * std::pow(1.0 / n, d);
  out.whole_space = scale * (s0.transpose() * g * s1)(0, 0);
  out.difference = out.whole_space - out.closed_form;
  return out;
}

}  // namespace blochhom
