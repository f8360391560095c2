// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/convergence.hpp"

#include <cmath>
#include <fmt/format.h>

namespace blochhom
{

namespace
{

bool SameGrid(const Grid &a, const Grid &b)
{
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x)); };
  return a.dim == b.dim && a.frame == b.frame && a.count == b.count &&
         close(a.origin[0], b.origin[0]) && close(a.origin[1], b.origin[1]) &&
         close(a.spacing[0], b.spacing[0]) && close(a.spacing[1], b.spacing[1]);
}

// Trapezoid weights of the points of one axis lying in [-half, half] (zero outside).
std::vector<double> AxisWeights(const std::vector<double> &t, double half)
{
  std::vector<double> w(t.size(), 0.0);
  if (t.size() == 1)
  {
    w[0] = 1.0;
    return w;
  }
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(t.size()); i++)
  {
    if (half <= 0.0 || std::abs(t[i]) <= half + 1e-9)
    {
      if (lo < 0)
      {
        lo = i;
      }
      hi = i;
    }
  }
  if (lo < 0 || hi == lo)
  {
    throw ValidationError("error region D_{M-1/2} contains fewer than two grid points per axis");
  }
  for (int i = lo; i <= hi; i++)
  {
    w[i] = (i == lo || i == hi) ? 0.5 : 1.0;
  }
  return w;
}

}  // namespace

double RelativeError(const FieldOnGrid &ref, const FieldOnGrid &approx, double M)
{
  if (!SameGrid(ref.grid, approx.grid) || ref.values.rows() != approx.values.rows() ||
      ref.values.cols() != approx.values.cols())
  {
    throw ValidationError("relative error needs both fields on the same grid");
  }
  const double eps = (ref.meta.eps > 0.0) ? ref.meta.eps : approx.meta.eps;
  if (ref.grid.frame == Frame::Slow && !(eps > 0.0))
  {
    throw ValidationError("slow-frame fields need eps metadata for the error region");
  }
  const Grid fast = ref.grid.InFrame(Frame::Fast, eps);
  const double half = (M > 0.0) ? M - 0.5 : 0.0;
  const std::vector<double> w0 = AxisWeights(fast.Axis(0), half);
  const std::vector<double> w1 = AxisWeights(fast.Axis(1), half);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < fast.count[0]; i++)
  {
    for (int j = 0; j < fast.count[1]; j++)
    {
      const double w = w0[i] * w1[j];
      if (w == 0.0)
      {
        continue;
      }
      num += w * std::norm(approx.values(i, j) - ref.values(i, j));
      den += w * std::norm(ref.values(i, j));
    }
  }
  if (den == 0.0)
  {
    throw ValidationError("reference field vanishes on the error region");
  }
  return std::sqrt(num / den);
}

void ConvergenceConfig::Validate() const
{
  if (eps_list.empty())
  {
    throw ValidationError("convergence study needs at least one eps");
  }
  for (double e : eps_list)
  {
    if (!(e > 0.0))
    {
      throw ValidationError(fmt::format("eps values must be positive, got {}", e));
    }
  }
  if (cutoff < 1)
  {
    throw ValidationError(fmt::format("basis cutoff must be >= 1, got {}", cutoff));
  }
  if (quad_points < 2)
  {
    throw ValidationError("quadrature needs at least two points per axis");
  }
  if (diagram_samples < 2)
  {
    throw ValidationError("gap check needs at least two k samples");
  }
  source.Validate();
  reference.Validate();
}

bool ConvergenceReport::OrderingHolds() const
{
  for (const auto &r : runs)
  {
    if (!(r.error_fd[2] < r.error_fd[1] && r.error_fd[1] < r.error_fd[0]))
    {
      return false;
    }
  }
  return !runs.empty();
}

bool ConvergenceReport::MonotoneInEps() const
{
  for (int m = 0; m < 3; m++)
  {
    for (std::size_t a = 0; a < runs.size(); a++)
    {
      for (std::size_t b = 0; b < runs.size(); b++)
      {
        if (runs[a].eps < runs[b].eps && !(runs[a].error_fd[m] < runs[b].error_fd[m]))
        {
          return false;
        }
      }
    }
  }
  return true;
}

bool ConvergenceReport::SlopesInBands() const
{
  if (!slopes_fitted)
  {
    return false;
  }
  for (int m = 0; m < 3; m++)
  {
    const double s = slopes_fd[m].slope;
    if (!(s >= m + 0.7 && s <= m + 1.6))
    {
      return false;
    }
  }
  return true;
}

bool ConvergenceReport::ReferencesAgree() const
{
  if (!slopes_fitted || !has_bloch)
  {
    return false;
  }
  for (int m = 0; m < 3; m++)
  {
    if (std::abs(slopes_fd[m].slope - slopes_bloch[m].slope) > 0.15)
    {
      return false;
    }
  }
  return true;
}

ConvergenceReport RunConvergence(const ConvergenceConfig &config)
{
  config.Validate();
  const Medium medium(config.medium);
  const int d = medium.Dim();
  const BlochOperator op(medium, config.cutoff, config.rule);
  const Homogenization hom = Homogenize(op, config.p);
  const std::vector<Vec2> ks =
      (d == 1) ? UniformZone1D(config.diagram_samples) : BrillouinPath(config.diagram_samples);
  const DispersionDiagram diagram =
      ComputeDispersion(op, ks, std::min(config.p + 3, op.Size()));
  const WavenumberQuadrature quad(d, config.quad_rule, config.quad_points, config.source.k_max);

  ConvergenceReport report;
  report.dim = d;
  report.has_bloch = config.bloch_reference;
  report.coeffs = hom.coeffs;
  report.cell_stats = hom.cells.stats;
  {
    const BandSolution bands =
        SolveBands(op.Stiffness({0.0, 0.0}), op.Mass(), std::min(config.p + 2, op.Size()), true);
    report.gamma_orthonormality = bands.orthonormality_residual;
  }
  for (double eps : config.eps_list)
  {
    const FrequencySpec freq =
        MakeFrequency(hom.gamma, diagram, config.sigma, config.omega_hat, eps);
    const ReferenceSolution ref = SolveReference(op, hom.gamma, freq, config.source,
                                                 config.reference);
    const Grid &grid = ref.field.grid;
    const double M = (config.eval_half_width > 0) ? config.eval_half_width : ref.n_dom;
    EpsilonRun run;
    run.eps = eps;
    run.n_dom = ref.n_dom;
    run.omega2 = freq.Omega2();
    run.boundary_ratio = ref.boundary_ratio;
    std::array<FieldOnGrid, 3> U;
    for (int m = 0; m < 3; m++)
    {
      U[m] = HomogenizedField(op, hom, freq, config.source, quad, m, grid);
      run.error_fd[m] = RelativeError(ref.field, U[m], M);
      run.imag_residue = std::max(run.imag_residue, U[m].ImagResidue());
    }
    if (config.bloch_reference)
    {
      const BlochSynthesis u =
          ExactBlochSolution(op, hom.gamma, freq, config.source, quad, config.mode_count, grid);
      for (int m = 0; m < 3; m++)
      {
        run.error_bloch[m] = RelativeError(u.field, U[m], M);
      }
      run.fd_vs_bloch = RelativeError(u.field, ref.field, M);
      run.imag_residue = std::max(run.imag_residue, u.field.ImagResidue());
      run.tail = u.tail;
      run.orthonormality = u.orthonormality;
    }
    report.runs.push_back(run);
  }
  if (report.runs.size() >= 3)
  {
    std::vector<double> eps;
    for (const auto &r : report.runs)
    {
      eps.push_back(r.eps);
    }
    for (int m = 0; m < 3; m++)
    {
      std::vector<double> efd, ebl;
      for (const auto &r : report.runs)
      {
        efd.push_back(r.error_fd[m]);
        ebl.push_back(r.error_bloch[m]);
      }
      report.slopes_fd[m] = SlopeFit(eps, efd);
      if (report.has_bloch)
      {
        report.slopes_bloch[m] = SlopeFit(eps, ebl);
      }
    }
    report.slopes_fitted = true;
  }
  return report;
}

}  // namespace blochhom
