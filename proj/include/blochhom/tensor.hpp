// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_TENSOR_HPP
#define BLOCHHOM_TENSOR_HPP

#include <algorithm>
#include <array>
#include <initializer_list>
#include <numeric>
#include <vector>
#include <fmt/format.h>
#include "blochhom/common.hpp"

namespace blochhom
{

inline constexpr int kMaxTensorRank = 4;

//
// Dense tensor of rank 0..4 over a d-dimensional index space, stored row-major (the last
// index varies fastest). The entry type can be a scalar or a coefficient vector, so the
// same container holds effective tensors and tensor-valued cell functions. Rank 0 holds a
// single entry and lets the eigenfunction itself act as the zeroth cell function.
//
template <typename T>
class Tensor
{
public:
  using Index = std::array<int, kMaxTensorRank>;

  Tensor() = default;
  Tensor(int dim, int rank, const T &fill = T{}) : dim_(dim), rank_(rank)
  {
    if (dim < 1 || dim > 2)
    {
      throw ValidationError(fmt::format("tensor dimension must be 1 or 2, got {}", dim));
    }
    if (rank < 0 || rank > kMaxTensorRank)
    {
      throw ValidationError(fmt::format("tensor rank must be in [0, {}], got {}",
                                        kMaxTensorRank, rank));
    }
    std::size_t size = 1;
    for (int r = 0; r < rank; r++)
    {
      size *= static_cast<std::size_t>(dim);
    }
    data_.assign(size, fill);
  }

  int Dim() const { return dim_; }
  int Rank() const { return rank_; }
  std::size_t Size() const { return data_.size(); }

  T &operator[](std::size_t flat) { return data_[flat]; }
  const T &operator[](std::size_t flat) const { return data_[flat]; }

  T &operator()(std::initializer_list<int> idx) { return data_[Flatten(idx)]; }
  const T &operator()(std::initializer_list<int> idx) const { return data_[Flatten(idx)]; }
  T &At(const Index &idx) { return data_[Flatten(idx)]; }
  const T &At(const Index &idx) const { return data_[Flatten(idx)]; }

  std::size_t Flatten(const Index &idx) const
  {
    std::size_t flat = 0;
    for (int r = 0; r < rank_; r++)
    {
      flat = flat * dim_ + static_cast<std::size_t>(idx[r]);
    }
    return flat;
  }

  std::size_t Flatten(std::initializer_list<int> idx) const
  {
    if (static_cast<int>(idx.size()) != rank_)
    {
      throw ValidationError("tensor index length does not match the rank");
    }
    Index full{};
    std::copy(idx.begin(), idx.end(), full.begin());
    return Flatten(full);
  }

  Index Unflatten(std::size_t flat) const
  {
    Index idx{};
    for (int r = rank_ - 1; r >= 0; r--)
    {
      idx[r] = static_cast<int>(flat % dim_);
      flat /= dim_;
    }
    return idx;
  }

private:
  int dim_ = 0, rank_ = 0;
  std::vector<T> data_;
};

namespace detail
{

// Averages tau over permutations of the index positions [first, rank).
template <typename T>
Tensor<T> AveragePermutations(const Tensor<T> &tau, int first)
{
  const int rank = tau.Rank();
  if (rank < 1 || rank > kMaxTensorRank)
  {
    throw ValidationError(
        fmt::format("symmetrization needs a tensor of rank 1..{}, got {}", kMaxTensorRank, rank));
  }
  Tensor<T> out = tau;
  for (std::size_t flat = 0; flat < tau.Size(); flat++)
  {
    const auto idx = tau.Unflatten(flat);
    std::array<int, kMaxTensorRank> perm{};
    std::iota(perm.begin(), perm.begin() + rank, 0);
    T sum = tau[flat] * 0.0;
    int count = 0;
    do
    {
      typename Tensor<T>::Index permuted = idx;
      for (int r = first; r < rank; r++)
      {
        permuted[r] = idx[perm[r]];
      }
      sum += tau.At(permuted);
      count++;
    } while (std::next_permutation(perm.begin() + first, perm.begin() + rank));
    out[flat] = sum / static_cast<double>(count);
  }
  return out;
}

}  // namespace detail

// Average over all index permutations: {tau}.
template <typename T>
Tensor<T> SymmetrizeFull(const Tensor<T> &tau)
{
  return detail::AveragePermutations(tau, 0);
}

// Average over permutations of all indices but the first: {tau}'.
template <typename T>
Tensor<T> SymmetrizePartial(const Tensor<T> &tau)
{
  return detail::AveragePermutations(tau, 1);
}

using TensorC = Tensor<Complex>;

// tau : v^r, the full contraction with r copies of v.
Complex ContractPower(const TensorC &tau, const std::array<Complex, 2> &v);

// Largest entry magnitude.
double MaxAbs(const TensorC &tau);

// Tensor product a (x) b.
TensorC Outer(const TensorC &a, const TensorC &b);

// Identity matrix as a rank-2 tensor.
TensorC IdentityTensor(int dim);

}  // namespace blochhom

#endif  // BLOCHHOM_TENSOR_HPP
