// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/tensor.hpp"

namespace blochhom
{

Complex ContractPower(const TensorC &tau, const std::array<Complex, 2> &v)
{
  Complex sum = 0.0;
  for (std::size_t flat = 0; flat < tau.Size(); flat++)
  {
    const auto idx = tau.Unflatten(flat);
    Complex term = tau[flat];
    for (int r = 0; r < tau.Rank(); r++)
    {
      term *= v[idx[r]];
    }
    sum += term;
  }
  return sum;
}

double MaxAbs(const TensorC &tau)
{
  double m = 0.0;
  for (std::size_t flat = 0; flat < tau.Size(); flat++)
  {
    m = std::max(m, std::abs(tau[flat]));
  }
  return m;
}

TensorC Outer(const TensorC &a, const TensorC &b)
{
  if (a.Dim() != b.Dim())
  {
    throw ValidationError("outer product of tensors with different dimensions");
  }
  TensorC out(a.Dim(), a.Rank() + b.Rank());
  for (std::size_t fa = 0; fa < a.Size(); fa++)
  {
    for (std::size_t fb = 0; fb < b.Size(); fb++)
    {
      out[fa * b.Size() + fb] = a[fa] * b[fb];
    }
  }
  return out;
}

TensorC IdentityTensor(int dim)
{
  TensorC id(dim, 2);
  for (int a = 0; a < dim; a++)
  {
    id({a, a}) = 1.0;
  }
  return id;
}

}  // namespace blochhom
