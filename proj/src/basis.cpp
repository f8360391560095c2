// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/basis.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace blochhom
{

PlaneWaveBasis::PlaneWaveBasis(int dim, int cutoff) : dim_(dim), cutoff_(cutoff)
{
  if (dim != 1 && dim != 2)
  {
    throw ValidationError(fmt::format("basis dimension must be 1 or 2, got {}", dim));
  }
  if (cutoff < 1)
  {
    throw ValidationError(fmt::format("basis cutoff must be >= 1, got {}", cutoff));
  }
  const int width = 2 * cutoff + 1;
  const int j1max = (dim == 2) ? cutoff : 0;
  indices_.push_back({0, 0});
  for (int j0 = -cutoff; j0 <= cutoff; j0++)
  {
    for (int j1 = -j1max; j1 <= j1max; j1++)
    {
      if (j0 != 0 || j1 != 0)
      {
        indices_.push_back({j0, j1});
      }
    }
  }
  lookup_.assign((dim == 2) ? width * width : width, -1);
  for (int a = 0; a < Size(); a++)
  {
    const auto &j = indices_[a];
    const int slot = (dim == 2) ? (j[0] + cutoff) * width + (j[1] + cutoff) : j[0] + cutoff;
    lookup_[slot] = a;
  }
  for (int axis = 0; axis < 2; axis++)
  {
    wavenumbers_[axis].resize(Size());
    for (int a = 0; a < Size(); a++)
    {
      wavenumbers_[axis](a) = 2.0 * kPi * indices_[a][axis];
    }
  }
}

int PlaneWaveBasis::Find(int j0, int j1) const
{
  if (std::abs(j0) > cutoff_ || std::abs(j1) > cutoff_ || (dim_ == 1 && j1 != 0))
  {
    return -1;
  }
  const int width = 2 * cutoff_ + 1;
  const int slot = (dim_ == 2) ? (j0 + cutoff_) * width + (j1 + cutoff_) : j0 + cutoff_;
  return lookup_[slot];
}

Complex PlaneWaveBasis::Evaluate(const VectorC &coeffs, const Vec2 &x) const
{
  Complex sum = 0.0;
  for (int a = 0; a < Size(); a++)
  {
    const double arg = 2.0 * kPi * (indices_[a][0] * x[0] + indices_[a][1] * x[1]);
    sum += coeffs(a) * std::polar(1.0, arg);
  }
  return sum;
}

MatrixC PlaneWaveBasis::EvaluateTensor(const VectorC &coeffs, const std::vector<double> &y0,
                                       const std::vector<double> &y1) const
{
  const int width = 2 * cutoff_ + 1;
  const int width1 = (dim_ == 2) ? width : 1;
  MatrixC C = MatrixC::Zero(width, width1);
  for (int a = 0; a < Size(); a++)
  {
    C(indices_[a][0] + cutoff_, (dim_ == 2) ? indices_[a][1] + cutoff_ : 0) = coeffs(a);
  }
  MatrixC E0(y0.size(), width), E1(y1.size(), width1);
  for (std::size_t i = 0; i < y0.size(); i++)
  {
    for (int j = -cutoff_; j <= cutoff_; j++)
    {
      E0(i, j + cutoff_) = std::polar(1.0, 2.0 * kPi * j * y0[i]);
    }
  }
  for (std::size_t i = 0; i < y1.size(); i++)
  {
    if (dim_ == 1)
    {
      E1(i, 0) = 1.0;
      continue;
    }
    for (int j = -cutoff_; j <= cutoff_; j++)
    {
      E1(i, j + cutoff_) = std::polar(1.0, 2.0 * kPi * j * y1[i]);
    }
  }
  return E0 * C * E1.transpose();
}

}  // namespace blochhom
