// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/medium.hpp"

#include <cmath>
#include <fmt/format.h>

namespace blochhom
{

namespace
{

double Wrap(double x)
{
  return x - std::floor(x + 0.5);
}

// Integral of exp(-i 2 pi n.x) over an inclusion centered at the origin.
double ShapeTransform(const Inclusion &inc, int n0, int n1)
{
  const double a = inc.radius;
  if (inc.shape == Shape::Interval)
  {
    if (n0 == 0)
    {
      return 2.0 * a;
    }
    return std::sin(2.0 * kPi * n0 * a) / (kPi * n0);
  }
  const double nn = std::hypot(static_cast<double>(n0), static_cast<double>(n1));
  if (nn == 0.0)
  {
    return kPi * a * a;
  }
  return a * std::cyl_bessel_j(1.0, 2.0 * kPi * nn * a) / nn;
}

double Measure(const Inclusion &inc)
{
  return (inc.shape == Shape::Interval) ? 2.0 * inc.radius : kPi * inc.radius * inc.radius;
}

}  // namespace

CoefficientTable::CoefficientTable(int dim, int cutoff)
  : dim_(dim), cutoff_(cutoff), width_(2 * cutoff + 1)
{
  if (dim != 1 && dim != 2)
  {
    throw ValidationError(fmt::format("coefficient table dimension must be 1 or 2, got {}", dim));
  }
  if (cutoff < 1)
  {
    throw ValidationError(fmt::format("coefficient table cutoff must be >= 1, got {}", cutoff));
  }
  const std::size_t size = (dim == 1) ? width_ : static_cast<std::size_t>(width_) * width_;
  G_.assign(size, 0.0);
  rho_.assign(size, 0.0);
  compliance_.assign(size, 0.0);
}

bool CoefficientTable::Contains(int n0, int n1) const
{
  if (dim_ == 1 && n1 != 0)
  {
    return false;
  }
  return std::abs(n0) <= cutoff_ && std::abs(n1) <= cutoff_;
}

std::size_t CoefficientTable::Index(int n0, int n1) const
{
  if (!Contains(n0, n1))
  {
    throw ValidationError(
        fmt::format("Fourier index ({}, {}) outside table cutoff {}", n0, n1, cutoff_));
  }
  if (dim_ == 1)
  {
    return static_cast<std::size_t>(n0 + cutoff_);
  }
  return static_cast<std::size_t>(n0 + cutoff_) * width_ + static_cast<std::size_t>(n1 + cutoff_);
}

std::vector<Complex> &CoefficientTable::Data(Field field)
{
  switch (field)
  {
    case Field::Stiffness:
      return G_;
    case Field::Density:
      return rho_;
    case Field::Compliance:
      break;
  }
  return compliance_;
}

const std::vector<Complex> &CoefficientTable::Data(Field field) const
{
  return const_cast<CoefficientTable *>(this)->Data(field);
}

Complex CoefficientTable::operator()(Field field, int n0, int n1) const
{
  return Data(field)[Index(n0, n1)];
}

Complex &CoefficientTable::Ref(Field field, int n0, int n1)
{
  return Data(field)[Index(n0, n1)];
}

Medium::Medium(MediumSpec spec) : spec_(std::move(spec))
{
  if (spec_.dim != 1 && spec_.dim != 2)
  {
    throw ValidationError(fmt::format("medium dimension must be 1 or 2, got {}", spec_.dim));
  }
  auto check_phase = [](const Phase &ph, const std::string &where)
  {
    if (!(ph.G > 0.0) || !(ph.rho > 0.0) || !std::isfinite(ph.G) || !std::isfinite(ph.rho))
    {
      throw ValidationError(fmt::format(
          "{}: stiffness and density must be finite and positive (G={}, rho={})", where, ph.G,
          ph.rho));
    }
  };
  check_phase(spec_.background, "background");
  if (!(spec_.smoothing >= 0.0) || !std::isfinite(spec_.smoothing))
  {
    throw ValidationError(fmt::format("smoothing width must be >= 0, got {}", spec_.smoothing));
  }
  for (std::size_t i = 0; i < spec_.inclusions.size(); i++)
  {
    const auto &inc = spec_.inclusions[i];
    const std::string where = fmt::format("inclusion {}", i);
    check_phase(inc.phase, where);
    if (spec_.dim == 1 && inc.shape != Shape::Interval)
    {
      throw ValidationError(where + ": only interval inclusions are valid in 1D");
    }
    if (spec_.dim == 2 && inc.shape != Shape::Disk)
    {
      throw ValidationError(where + ": only disk inclusions are valid in 2D");
    }
    if (spec_.dim == 1 && inc.center[1] != 0.0)
    {
      throw ValidationError(where + ": 1D inclusion center must have a single coordinate");
    }
    if (!(inc.radius > 0.0))
    {
      throw ValidationError(fmt::format("{}: radius must be positive, got {}", where, inc.radius));
    }
    for (int a = 0; a < spec_.dim; a++)
    {
      if (!(std::abs(inc.center[a]) + inc.radius < 0.5))
      {
        throw ValidationError(
            fmt::format("{}: inclusion overflows the unit cell (center {}, radius {})", where,
                        inc.center[a], inc.radius));
      }
    }
    for (std::size_t j = 0; j < i; j++)
    {
      const auto &other = spec_.inclusions[j];
      const double dist = std::hypot(inc.center[0] - other.center[0],
                                     inc.center[1] - other.center[1]);
      if (dist < inc.radius + other.radius)
      {
        throw ValidationError(fmt::format("inclusions {} and {} overlap", j, i));
      }
    }
  }
}

double Medium::Value(Field field, const Phase &phase) const
{
  switch (field)
  {
    case Field::Stiffness:
      return phase.G;
    case Field::Density:
      return phase.rho;
    case Field::Compliance:
      break;
  }
  return 1.0 / phase.G;
}

double Medium::Evaluate(Field field, const Vec2 &x) const
{
  const double y0 = Wrap(x[0]);
  const double y1 = (spec_.dim == 2) ? Wrap(x[1]) : 0.0;
  for (const auto &inc : spec_.inclusions)
  {
    const bool inside = (inc.shape == Shape::Interval)
                            ? std::abs(y0 - inc.center[0]) < inc.radius
                            : std::hypot(y0 - inc.center[0], y1 - inc.center[1]) < inc.radius;
    if (inside)
    {
      return Value(field, inc.phase);
    }
  }
  return Value(field, spec_.background);
}

double Medium::Average(Field field) const
{
  const double v1 = Value(field, spec_.background);
  double avg = v1;
  for (const auto &inc : spec_.inclusions)
  {
    avg += (Value(field, inc.phase) - v1) * Measure(inc);
  }
  return avg;
}

CoefficientTable Medium::FourierTable(int cutoff) const
{
  CoefficientTable table(spec_.dim, cutoff);
  const int n1max = (spec_.dim == 2) ? cutoff : 0;
  const double s = spec_.smoothing;
  for (int n0 = -cutoff; n0 <= cutoff; n0++)
  {
    for (int n1 = -n1max; n1 <= n1max; n1++)
    {
      const double k2 = 4.0 * kPi * kPi * (double(n0) * n0 + double(n1) * n1);
      const double mollifier = (s > 0.0) ? std::exp(-0.5 * s * s * k2) : 1.0;
      for (Field field : {Field::Stiffness, Field::Density, Field::Compliance})
      {
        const double v1 = Value(field, spec_.background);
        Complex c = (n0 == 0 && n1 == 0) ? Complex(v1) : Complex(0.0);
        for (const auto &inc : spec_.inclusions)
        {
          const double arg = -2.0 * kPi * (n0 * inc.center[0] + n1 * inc.center[1]);
          c += (Value(field, inc.phase) - v1) * ShapeTransform(inc, n0, n1) *
               std::polar(1.0, arg);
        }
        table.Ref(field, n0, n1) = mollifier * c;
      }
    }
  }
  return table;
}

double Medium::Integral1D(Field field, double a, double b) const
{
  if (spec_.dim != 1)
  {
    throw ValidationError("Integral1D requires a one-dimensional medium");
  }
  if (b < a)
  {
    return -Integral1D(field, b, a);
  }
  const double v1 = Value(field, spec_.background);
  double result = v1 * (b - a);
  for (const auto &inc : spec_.inclusions)
  {
    const double lo = inc.center[0] - inc.radius, hi = inc.center[0] + inc.radius;
    double overlap = 0.0;
    const long first = static_cast<long>(std::floor(a - hi)) - 1;
    const long last = static_cast<long>(std::ceil(b - lo)) + 1;
    for (long m = first; m <= last; m++)
    {
      const double l = std::max(a, lo + m), r = std::min(b, hi + m);
      if (r > l)
      {
        overlap += r - l;
      }
    }
    result += (Value(field, inc.phase) - v1) * overlap;
  }
  return result;
}

MediumSpec HomogeneousSpec(int dim, double G, double rho)
{
  MediumSpec spec;
  spec.dim = dim;
  spec.background = {G, rho};
  return spec;
}

MediumSpec TwoPhaseLayeredSpec(double half_length, Phase inclusion, Phase background,
                               double smoothing)
{
  MediumSpec spec;
  spec.dim = 1;
  spec.background = background;
  spec.inclusions.push_back({Shape::Interval, {0.0, 0.0}, half_length, inclusion});
  spec.smoothing = smoothing;
  return spec;
}

MediumSpec DiskSpec(double radius, Phase inclusion, Phase background, double smoothing)
{
  MediumSpec spec;
  spec.dim = 2;
  spec.background = background;
  spec.inclusions.push_back({Shape::Disk, {0.0, 0.0}, radius, inclusion});
  spec.smoothing = smoothing;
  return spec;
}

}  // namespace blochhom
