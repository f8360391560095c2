// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/grid.hpp"

#include <cmath>
#include <limits>
#include <fmt/format.h>

namespace blochhom
{

std::string ToString(Frame frame)
{
  return (frame == Frame::Fast) ? "fast" : "slow";
}

std::vector<double> Grid::Axis(int axis) const
{
  std::vector<double> out(count[axis]);
  for (int i = 0; i < count[axis]; i++)
  {
    out[i] = origin[axis] + i * spacing[axis];
  }
  return out;
}

Grid Grid::InFrame(Frame target, double eps) const
{
  if (target == frame)
  {
    return *this;
  }
  if (!(eps > 0.0))
  {
    throw ValidationError("frame conversion needs eps > 0");
  }
  const double s = (target == Frame::Slow) ? eps : 1.0 / eps;
  Grid out = *this;
  out.frame = target;
  for (int a = 0; a < 2; a++)
  {
    out.origin[a] *= s;
    out.spacing[a] *= s;
  }
  return out;
}

double Grid::SamplesPerCell(double eps) const
{
  const Grid fast = InFrame(Frame::Fast, eps);
  double h = (count[0] > 1) ? fast.spacing[0] : 0.0;
  if (dim == 2 && count[1] > 1)
  {
    h = std::max(h, fast.spacing[1]);
  }
  return (h > 0.0) ? 1.0 / h : std::numeric_limits<double>::infinity();
}

Grid CenteredGrid(int dim, Frame frame, double half, int per_unit)
{
  if (dim != 1 && dim != 2)
  {
    throw ValidationError(fmt::format("grid dimension must be 1 or 2, got {}", dim));
  }
  if (!(half > 0.0) || per_unit < 1)
  {
    throw ValidationError("grid needs a positive half-width and at least one interval per unit");
  }
  const int intervals = static_cast<int>(std::lround(2.0 * half * per_unit));
  Grid g;
  g.dim = dim;
  g.frame = frame;
  const double h = 2.0 * half / intervals;
  g.origin = {-half, (dim == 2) ? -half : 0.0};
  g.spacing = {h, (dim == 2) ? h : 1.0};
  g.count = {intervals + 1, (dim == 2) ? intervals + 1 : 1};
  return g;
}

void CheckResolution(const Grid &grid, double eps)
{
  const double spc = grid.SamplesPerCell(eps);
  if (spc < kMinSamplesPerCell * (1.0 - 1e-12))
  {
    throw ValidationError(fmt::format(
        "grid resolves the unit cell with {:.2f} samples per period; at least {} are required",
        spc, kMinSamplesPerCell));
  }
}

double FieldOnGrid::MaxAbs() const
{
  return values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
}

double FieldOnGrid::MaxImag() const
{
  return values.size() ? values.imag().cwiseAbs().maxCoeff() : 0.0;
}

double FieldOnGrid::ImagResidue() const
{
  const double m = MaxAbs();
  return (m > 0.0) ? MaxImag() / m : 0.0;
}

}  // namespace blochhom
