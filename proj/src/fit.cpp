// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/fit.hpp"

#include <cmath>
#include <fmt/format.h>
#include "blochhom/common.hpp"

namespace blochhom
{

SlopeResult SlopeFit(const std::vector<double> &eps, const std::vector<double> &err)
{
  if (eps.size() != err.size())
  {
    throw ValidationError("slope fit needs equally many eps and error values");
  }
  const std::size_t n = eps.size();
  if (n < 3)
  {
    throw ValidationError(fmt::format("slope fit needs at least 3 pairs, got {}", n));
  }
  double sx = 0.0, sy = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; i++)
  {
    if (!(eps[i] > 0.0) || !(err[i] > 0.0))
    {
      throw ValidationError(fmt::format("slope fit needs positive data, got ({}, {})", eps[i],
                                        err[i]));
    }
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(err[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx < 1e-24)
  {
    throw ValidationError("slope fit needs at least two distinct eps values");
  }
  SlopeResult out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    const double r = ly[i] - (out.intercept + out.slope * lx[i]);
    ss += r * r;
  }
  out.residual = std::sqrt(ss / n);
  return out;
}

}  // namespace blochhom
