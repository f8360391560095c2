// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_FIELDS_HPP
#define BLOCHHOM_FIELDS_HPP

#include <vector>
#include "blochhom/bloch.hpp"
#include "blochhom/cell.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/quadrature.hpp"
#include "blochhom/source.hpp"

namespace blochhom
{

inline constexpr int kDefaultModeCount = 30;
inline constexpr double kGapTol = 1e-8;
inline constexpr double kEnvelopeTol = 1e-10;

struct BlochSynthesis
{
  FieldOnGrid field;
  double tail = 0.0;              // max over nodes of |last included term| / |node sum|
  double min_denominator = 0.0;   // min |w_m^2(k) - w^2| over the included modes
  double orthonormality = 0.0;    // worst B-orthonormality residual over the eigensolves
};

//
// u(x) = (2 pi)^{-d/2} eps^2 sum_q w_q F(k_q) exp(i eps k_q.x)
//          sum_{m < mode_count} phi_m(eps k_q; x) <rho phi_p, phi_m> / (w_m^2(eps k_q) - w^2),
//
// the response of -div(G grad u) - w^2 rho u = eps^2 f(eps x) expanded in Bloch modes.
// mode_count <= 0 keeps every mode of the basis. The grid may be in either frame.
// Throws GapViolation when a denominator is below 1e-8.
//
BlochSynthesis ExactBlochSolution(const BlochOperator &op, const GammaPair &gamma,
                                  const FrequencySpec &freq, const SourceSpec &source,
                                  const WavenumberQuadrature &quad, int mode_count,
                                  const Grid &grid);

// Same synthesis restricted to the single branch m = p.
BlochSynthesis BranchSolution(const BlochOperator &op, const GammaPair &gamma,
                              const FrequencySpec &freq, const SourceSpec &source,
                              const WavenumberQuadrature &quad, const Grid &grid);

//
// Envelope W and its spectral derivatives on a grid. grad[a] = d_a W and hess[a * d + b] =
// d_a d_b W with respect to slow coordinates.
//
struct Envelope
{
  MatrixC W;
  std::vector<MatrixC> grad;
  std::vector<MatrixC> hess;
};

// Denominator of the order-0 or order-2 envelope at a quadrature node.
double EnvelopeDenominator(const DispersionExpansion &expansion, const FrequencySpec &freq,
                           int order, const Vec2 &khat);

Envelope ComputeEnvelope(const EffectiveCoefficients &coeffs, const FrequencySpec &freq,
                         const SourceSpec &source, const WavenumberQuadrature &quad, int order,
                         const Grid &grid, int derivatives = 2);

// W_0 or W_2 as a field on the grid (any frame; evaluated at the slow coordinates).
FieldOnGrid EffectiveEnvelope(const EffectiveCoefficients &coeffs, const FrequencySpec &freq,
                              const SourceSpec &source, const WavenumberQuadrature &quad,
                              int order, const Grid &grid);

//
// U_0 = phi W_0, U_1 = U_0 + eps chi1 . grad W_0, and
// U_2 = phi W_2 + eps chi1 . grad W_2 + eps^2 (C1 phi + chi2) : grad grad W_2,
// with the cell functions evaluated at the fast coordinate r / eps.
//
FieldOnGrid HomogenizedField(const BlochOperator &op, const Homogenization &hom,
                             const FrequencySpec &freq, const SourceSpec &source,
                             const WavenumberQuadrature &quad, int order, const Grid &grid);

}  // namespace blochhom

#endif  // BLOCHHOM_FIELDS_HPP
