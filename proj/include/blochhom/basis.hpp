// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_BASIS_HPP
#define BLOCHHOM_BASIS_HPP

#include <array>
#include <vector>
#include "blochhom/common.hpp"

namespace blochhom
{

//
// Plane-wave basis exp(i 2 pi j.x) with |j|_inf <= N. The zero index comes first, the
// remaining indices follow in lexicographic order.
//
class PlaneWaveBasis
{
public:
  PlaneWaveBasis(int dim, int cutoff);

  int Dim() const { return dim_; }
  int Cutoff() const { return cutoff_; }
  int Size() const { return static_cast<int>(indices_.size()); }

  const std::array<int, 2> &Index(int a) const { return indices_[a]; }

  // Position of multi-index (j0, j1) in the basis, or -1 when it is not represented.
  int Find(int j0, int j1 = 0) const;

  // Diagonal of the derivative symbol: 2 pi j_axis for every basis function.
  const VectorR &Wavenumbers(int axis) const { return wavenumbers_[axis]; }

  // Value of sum_a c_a exp(i 2 pi j_a.x) at a point.
  Complex Evaluate(const VectorC &coeffs, const Vec2 &x) const;

  // Values on the tensor grid y0 x y1 (y1 = {0} in 1D); result has size y0.size() x y1.size().
  MatrixC EvaluateTensor(const VectorC &coeffs, const std::vector<double> &y0,
                         const std::vector<double> &y1) const;

private:
  int dim_, cutoff_;
  std::vector<std::array<int, 2>> indices_;
  std::vector<int> lookup_;
  std::array<VectorR, 2> wavenumbers_;
};

}  // namespace blochhom

#endif  // BLOCHHOM_BASIS_HPP
