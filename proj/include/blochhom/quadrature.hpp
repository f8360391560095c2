// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_QUADRATURE_HPP
#define BLOCHHOM_QUADRATURE_HPP

#include <string>
#include <vector>
#include "blochhom/common.hpp"

namespace blochhom
{

enum class QuadratureRule
{
  GaussLegendre,
  Trapezoid
};

std::string ToString(QuadratureRule rule);
QuadratureRule ParseQuadratureRule(const std::string &name);

struct Rule1D
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b] (Newton iteration on the Legendre recurrence).
Rule1D GaussLegendre(int n, double a, double b);
// n-point trapezoid rule on [a, b], endpoints included.
Rule1D Trapezoid(int n, double a, double b);

//
// Tensor-product rule on the box |k|_inf <= k_max in d dimensions. Node q of a 2D rule is
// (axis[q / Q], axis[q % Q]) with Q nodes per axis.
//
class WavenumberQuadrature
{
public:
  WavenumberQuadrature(int dim, QuadratureRule rule, int per_axis, double k_max);

  int Dim() const { return dim_; }
  QuadratureRule Rule() const { return rule_; }
  int PerAxis() const { return per_axis_; }
  double KMax() const { return k_max_; }
  const Rule1D &Axis() const { return axis_; }

  std::size_t Size() const;
  Vec2 Node(std::size_t q) const;
  double Weight(std::size_t q) const;

  // Highest polynomial degree integrated exactly along one axis.
  int ExactDegree() const;

private:
  int dim_;
  QuadratureRule rule_;
  int per_axis_;
  double k_max_;
  Rule1D axis_;
};

// Largest relative error over monomials k_1^a k_2^b with a, b <= ExactDegree().
double QuadratureSelfTest(const WavenumberQuadrature &quad);

}  // namespace blochhom

#endif  // BLOCHHOM_QUADRATURE_HPP
