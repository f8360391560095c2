// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_FIT_HPP
#define BLOCHHOM_FIT_HPP

#include <vector>

namespace blochhom
{

struct SlopeResult
{
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square deviation of log(e) from the fitted line
};

// Least-squares fit of log(e) = slope * log(eps) + intercept. Needs at least three pairs,
// all positive, with at least two distinct eps values.
SlopeResult SlopeFit(const std::vector<double> &eps, const std::vector<double> &err);

}  // namespace blochhom

#endif  // BLOCHHOM_FIT_HPP
