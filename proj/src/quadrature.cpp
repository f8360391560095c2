// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/quadrature.hpp"

#include <cmath>
#include <fmt/format.h>

namespace blochhom
{

std::string ToString(QuadratureRule rule)
{
  return (rule == QuadratureRule::GaussLegendre) ? "gauss-legendre" : "trapezoid";
}

QuadratureRule ParseQuadratureRule(const std::string &name)
{
  if (name == "gauss-legendre" || name == "gauss")
  {
    return QuadratureRule::GaussLegendre;
  }
  if (name == "trapezoid")
  {
    return QuadratureRule::Trapezoid;
  }
  throw ValidationError(
      fmt::format("unknown quadrature rule '{}' (expected gauss-legendre or trapezoid)", name));
}

Rule1D GaussLegendre(int n, double a, double b)
{
  if (n < 1)
  {
    throw ValidationError(fmt::format("Gauss-Legendre rule needs n >= 1, got {}", n));
  }
  Rule1D out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < (n + 1) / 2; i++)
  {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; iter++)
    {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; j++)
      {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.nodes[i] = mid - half * x;
    out.nodes[n - 1 - i] = mid + half * x;
    out.weights[i] = out.weights[n - 1 - i] = half * w;
  }
  return out;
}

Rule1D Trapezoid(int n, double a, double b)
{
  if (n < 2)
  {
    throw ValidationError(fmt::format("trapezoid rule needs n >= 2, got {}", n));
  }
  Rule1D out;
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; i++)
  {
    out.nodes.push_back(a + i * h);
    out.weights.push_back((i == 0 || i == n - 1) ? 0.5 * h : h);
  }
  return out;
}

WavenumberQuadrature::WavenumberQuadrature(int dim, QuadratureRule rule, int per_axis,
                                           double k_max)
  : dim_(dim), rule_(rule), per_axis_(per_axis), k_max_(k_max)
{
  if (dim != 1 && dim != 2)
  {
    throw ValidationError(fmt::format("quadrature dimension must be 1 or 2, got {}", dim));
  }
  if (!(k_max > 0.0))
  {
    throw ValidationError(fmt::format("quadrature K_max must be positive, got {}", k_max));
  }
  axis_ = (rule == QuadratureRule::GaussLegendre) ? GaussLegendre(per_axis, -k_max, k_max)
                                                  : Trapezoid(per_axis, -k_max, k_max);
}

std::size_t WavenumberQuadrature::Size() const
{
  const std::size_t q = static_cast<std::size_t>(per_axis_);
  return (dim_ == 2) ? q * q : q;
}

Vec2 WavenumberQuadrature::Node(std::size_t q) const
{
  if (dim_ == 1)
  {
    return {axis_.nodes[q], 0.0};
  }
  return {axis_.nodes[q / per_axis_], axis_.nodes[q % per_axis_]};
}

double WavenumberQuadrature::Weight(std::size_t q) const
{
  if (dim_ == 1)
  {
    return axis_.weights[q];
  }
  return axis_.weights[q / per_axis_] * axis_.weights[q % per_axis_];
}

int WavenumberQuadrature::ExactDegree() const
{
  return (rule_ == QuadratureRule::GaussLegendre) ? 2 * per_axis_ - 1 : 1;
}

double QuadratureSelfTest(const WavenumberQuadrature &quad)
{
  const int deg = quad.ExactDegree();
  const double K = quad.KMax();
  // Exact integral of k^a over [-K, K].
  auto exact1d = [K](int a) { return (a % 2 == 1) ? 0.0 : 2.0 * std::pow(K, a + 1) / (a + 1); };
  double worst = 0.0;
  const int bmax = (quad.Dim() == 2) ? deg : 0;
  for (int a = 0; a <= deg; a++)
  {
    for (int b = 0; b <= bmax; b++)
    {
      double sum = 0.0;
      for (std::size_t q = 0; q < quad.Size(); q++)
      {
        const Vec2 k = quad.Node(q);
        sum += quad.Weight(q) * std::pow(k[0], a) * ((quad.Dim() == 2) ? std::pow(k[1], b) : 1.0);
      }
      const double exact = exact1d(a) * ((quad.Dim() == 2) ? exact1d(b) : 1.0);
      const double scale = exact1d(a + (a % 2)) * ((quad.Dim() == 2) ? exact1d(b + (b % 2)) : 1.0);
      worst = std::max(worst, std::abs(sum - exact) / scale);
    }
  }
  return worst;
}

}  // namespace blochhom
