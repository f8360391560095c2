// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_REFERENCE_HPP
#define BLOCHHOM_REFERENCE_HPP

#include "blochhom/bloch.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/source.hpp"

namespace blochhom
{

//
// Finite-difference reference on D = [-(n_dom + 1/2), n_dom + 1/2]^d in fast coordinates
// with homogeneous Dirichlet conditions. n_dom = 0 selects ceil(10 / eps).
//
struct ReferenceConfig
{
  int n_dom = 0;
  int n_cell = 64;
  double decay_tol = 1e-6;
  int subsamples = 4;  // per grid interval and axis, for 2D coefficient averages

  int DomainHalfWidth(double eps) const;
  void Validate() const;
};

inline constexpr int kMinReferenceCellPoints = 16;

struct ReferenceSolution
{
  FieldOnGrid field;         // fast frame, boundary nodes included
  double boundary_ratio = 0.0;  // max |u| in the outermost cell layer / max |u|
  int n_dom = 0;
};

//
// Solves -div(G grad u) - w^2 rho u = eps^2 f(eps x) with a conservative second-order
// stencil: G on faces is the exact harmonic average along the face normal (arithmetic
// across it in 2D) and rho at nodes is the dual-cell average. Throws DecayCheckFailed if
// the boundary ratio exceeds decay_tol.
//
ReferenceSolution SolveReference(const BlochOperator &op, const GammaPair &gamma,
                                 const FrequencySpec &freq, const SourceSpec &source,
                                 const ReferenceConfig &config);

// Fast-frame grid with n_cell intervals per unit on D.
Grid ReferenceGrid(int dim, int n_dom, int n_cell);

}  // namespace blochhom

#endif  // BLOCHHOM_REFERENCE_HPP
