// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/reference.hpp"

#include <cmath>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <fmt/format.h>

namespace blochhom
{

namespace
{

using SparseR = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

int Wrap(int i, int n)
{
  return ((i % n) + n) % n;
}

//
// Coefficient tables for one period of grid nodes. The grid is aligned with the lattice
// (n_cell intervals per unit), so node i and node i + n_cell see the same medium.
//
struct LocalCoefficients
{
  int n = 0;
  Eigen::MatrixXd rho, gx, gy;  // node density, faces (i,j)-(i+1,j) and (i,j)-(i,j+1)
};

LocalCoefficients Local1D(const Medium &medium, const Grid &grid, int n_cell)
{
  LocalCoefficients c;
  c.n = n_cell;
  const double h = grid.spacing[0];
  c.rho.resize(n_cell, 1);
  c.gx.resize(n_cell, 1);
  for (int i = 0; i < n_cell; i++)
  {
    const double x = grid.origin[0] + i * h;
    c.rho(i, 0) = medium.Integral1D(Field::Density, x - 0.5 * h, x + 0.5 * h) / h;
    c.gx(i, 0) = h / medium.Integral1D(Field::Compliance, x, x + h);
  }
  return c;
}

LocalCoefficients Local2D(const Medium &medium, const Grid &grid, int n_cell, int S)
{
  LocalCoefficients c;
  c.n = n_cell;
  const double h = grid.spacing[0];
  c.rho.resize(n_cell, n_cell);
  c.gx.resize(n_cell, n_cell);
  c.gy.resize(n_cell, n_cell);
  // Midpoint offsets of S sub-intervals spanning [0, h).
  std::vector<double> off(S);
  for (int s = 0; s < S; s++)
  {
    off[s] = (s + 0.5) * h / S;
  }
  for (int i = 0; i < n_cell; i++)
  {
    for (int j = 0; j < n_cell; j++)
    {
      const double x = grid.origin[0] + i * h;
      const double y = grid.origin[1] + j * h;
      double rho = 0.0, gx = 0.0, gy = 0.0;
      for (int t = 0; t < S; t++)
      {
        double cx = 0.0, cy = 0.0;
        for (int s = 0; s < S; s++)
        {
          rho += medium.Evaluate(Field::Density, {x - 0.5 * h + off[s], y - 0.5 * h + off[t]});
          cx += medium.Evaluate(Field::Compliance, {x + off[s], y - 0.5 * h + off[t]});
          cy += medium.Evaluate(Field::Compliance, {x - 0.5 * h + off[t], y + off[s]});
        }
        gx += S / cx;
        gy += S / cy;
      }
      c.rho(i, j) = rho / (S * S);
      c.gx(i, j) = gx / S;
      c.gy(i, j) = gy / S;
    }
  }
  return c;
}

Eigen::MatrixXd SolveSparse(const SparseR &A, const Eigen::MatrixXd &b)
{
  Eigen::SparseLU<SparseR> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
  {
    throw SingularSystem(fmt::format("finite-difference matrix factorization failed: {}",
                                     lu.lastErrorMessage()));
  }
  Eigen::MatrixXd x = lu.solve(b);
  if (lu.info() != Eigen::Success)
  {
    throw SingularSystem("finite-difference solve failed");
  }
  return x;
}

}  // namespace

int ReferenceConfig::DomainHalfWidth(double eps) const
{
  return (n_dom > 0) ? n_dom : static_cast<int>(std::ceil(10.0 / eps - 1e-12));
}

void ReferenceConfig::Validate() const
{
  if (n_dom < 0)
  {
    throw ValidationError(fmt::format("reference N_dom must be >= 0 (0 = auto), got {}", n_dom));
  }
  if (n_cell < kMinReferenceCellPoints)
  {
    throw ValidationError(fmt::format("reference n_cell must be >= {}, got {}",
                                      kMinReferenceCellPoints, n_cell));
  }
  if (!(decay_tol > 0.0))
  {
    throw ValidationError("reference decay tolerance must be positive");
  }
  if (subsamples < 1)
  {
    throw ValidationError("reference subsamples must be >= 1");
  }
}

Grid ReferenceGrid(int dim, int n_dom, int n_cell)
{
  return CenteredGrid(dim, Frame::Fast, n_dom + 0.5, n_cell);
}

ReferenceSolution SolveReference(const BlochOperator &op, const GammaPair &gamma,
                                 const FrequencySpec &freq, const SourceSpec &source,
                                 const ReferenceConfig &config)
{
  config.Validate();
  source.Validate();
  const int d = op.Dim();
  const Medium &medium = op.GetMedium();
  const int n_dom = config.DomainHalfWidth(freq.eps);
  const Grid grid = ReferenceGrid(d, n_dom, config.n_cell);
  const double h = grid.spacing[0];
  const double ih2 = 1.0 / (h * h);
  const double w2 = freq.Omega2();
  const int n0 = grid.count[0];
  const int n1 = grid.count[1];
  const auto x0 = grid.Axis(0);
  const auto x1 = grid.Axis(1);
  const MatrixC phi = op.Basis().EvaluateTensor(gamma.phi, x0, (d == 2) ? x1 : std::vector<double>{0.0});
  const LocalCoefficients c = (d == 1) ? Local1D(medium, grid, config.n_cell)
                                       : Local2D(medium, grid, config.n_cell, config.subsamples);
  const int m0 = n0 - 2;
  const int m1 = (d == 2) ? n1 - 2 : 1;
  auto unknown = [&](int i, int j) { return (d == 2) ? (i - 1) * m1 + (j - 1) : i - 1; };
  auto rho_at = [&](int i, int j) { return c.rho(Wrap(i, c.n), (d == 2) ? Wrap(j, c.n) : 0); };
  auto gx_at = [&](int i, int j) { return c.gx(Wrap(i, c.n), (d == 2) ? Wrap(j, c.n) : 0); };
  auto gy_at = [&](int i, int j) { return c.gy(Wrap(i, c.n), Wrap(j, c.n)); };

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(m0) * m1 * (2 * d + 1));
  Eigen::MatrixXd rhs(m0 * m1, 2);
  const int jlo = (d == 2) ? 1 : 0;
  const int jhi = (d == 2) ? n1 - 1 : 1;
  for (int i = 1; i < n0 - 1; i++)
  {
    for (int j = jlo; j < jhi; j++)
    {
      const int row = unknown(i, j);
      const double rho = rho_at(i, j);
      double diag = -w2 * rho;
      auto couple = [&](int ii, int jj, double g)
      {
        diag += g * ih2;
        const bool interior = ii > 0 && ii < n0 - 1 && (d == 1 || (jj > 0 && jj < n1 - 1));
        if (interior)
        {
          triplets.emplace_back(row, unknown(ii, jj), -g * ih2);
        }
      };
      couple(i - 1, j, gx_at(i - 1, j));
      couple(i + 1, j, gx_at(i, j));
      if (d == 2)
      {
        couple(i, j - 1, gy_at(i, j - 1));
        couple(i, j + 1, gy_at(i, j));
      }
      triplets.emplace_back(row, row, diag);
      const Vec2 r = {freq.eps * x0[i], (d == 2) ? freq.eps * x1[j] : 0.0};
      const Complex f =
          freq.eps * freq.eps * source.SpaceEnvelope(d, r) * rho * phi(i, (d == 2) ? j : 0);
      rhs(row, 0) = f.real();
      rhs(row, 1) = f.imag();
    }
  }
  SparseR A(m0 * m1, m0 * m1);
  A.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::MatrixXd sol = SolveSparse(A, rhs);

  ReferenceSolution out;
  out.n_dom = n_dom;
  out.field.grid = grid;
  out.field.meta = {"u_ref", freq.eps, freq.p, freq.sigma, freq.omega_hat};
  out.field.values = MatrixC::Zero(n0, n1);
  for (int i = 1; i < n0 - 1; i++)
  {
    for (int j = jlo; j < jhi; j++)
    {
      const int row = unknown(i, j);
      out.field.values(i, j) = Complex(sol(row, 0), sol(row, 1));
    }
  }
  const double peak = out.field.MaxAbs();
  const double edge = grid.origin[0] + (n0 - 1) * h - 1.0;
  double outer = 0.0;
  for (int i = 0; i < n0; i++)
  {
    for (int j = 0; j < n1; j++)
    {
      const bool layer = std::abs(x0[i]) >= edge - 1e-12 ||
                         (d == 2 && std::abs(x1[j]) >= edge - 1e-12);
      if (layer)
      {
        outer = std::max(outer, std::abs(out.field.values(i, j)));
      }
    }
  }
  out.boundary_ratio = (peak > 0.0) ? outer / peak : 0.0;
  if (out.boundary_ratio > config.decay_tol)
  {
    throw DecayCheckFailed(fmt::format(
        "boundary/peak ratio {:.3e} exceeds {:.1e} on D with N_dom = {}; enlarge N_dom",
        out.boundary_ratio, config.decay_tol, n_dom));
  }
  return out;
}

}  // namespace blochhom
