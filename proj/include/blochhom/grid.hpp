// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_GRID_HPP
#define BLOCHHOM_GRID_HPP

#include <array>
#include <string>
#include <vector>
#include "blochhom/common.hpp"

namespace blochhom
{

// Fast coordinates x resolve the microstructure; slow coordinates are r = eps x.
enum class Frame
{
  Fast,
  Slow
};

std::string ToString(Frame frame);

//
// Regular grid origin + i * spacing along each axis. In 1D the second axis has one point.
//
struct Grid
{
  int dim = 1;
  Frame frame = Frame::Fast;
  Vec2 origin{0.0, 0.0};
  Vec2 spacing{1.0, 1.0};
  std::array<int, 2> count{1, 1};

  std::vector<double> Axis(int axis) const;
  std::size_t Size() const { return static_cast<std::size_t>(count[0]) * count[1]; }

  // The same points expressed in the other frame.
  Grid InFrame(Frame target, double eps) const;

  // Samples per unit cell in fast coordinates along the coarsest axis.
  double SamplesPerCell(double eps) const;
};

// Uniform grid on [-half, half]^d with `per_unit` intervals per unit length.
Grid CenteredGrid(int dim, Frame frame, double half, int per_unit);

inline constexpr double kMinSamplesPerCell = 16.0;

// Rejects grids coarser than 16 samples per period in fast coordinates.
void CheckResolution(const Grid &grid, double eps);

struct FieldMetadata
{
  std::string name;
  double eps = 0.0;
  int p = 0;
  int sigma = -1;
  double omega_hat = 0.0;
};

//
// Complex samples on a grid; values(i, j) is the sample at (axis0[i], axis1[j]).
//
struct FieldOnGrid
{
  Grid grid;
  MatrixC values;
  FieldMetadata meta;

  double MaxAbs() const;
  double MaxImag() const;
  // Largest |imag| relative to the largest magnitude.
  double ImagResidue() const;
};

}  // namespace blochhom

#endif  // BLOCHHOM_GRID_HPP
