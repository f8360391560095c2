// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_SOURCE_HPP
#define BLOCHHOM_SOURCE_HPP

#include <string>
#include "blochhom/bloch.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/quadrature.hpp"

namespace blochhom
{

//
// Driving frequency w^2 = w_p^2(0) + eps^2 sigma Omega^2, required to lie in a band gap.
//
struct FrequencySpec
{
  int p = 0;
  int sigma = -1;
  double omega_hat = 1.0;
  double eps = 0.25;
  double omega0_2 = 0.0;  // w_p^2(0)
  int gap_upper_branch = 0;  // first branch above w^2

  double Omega2() const { return omega0_2 + eps * eps * sigma * omega_hat * omega_hat; }
  // Rescaled frequency Omega_eps^2 = w_p^2(0) / eps^2 + sigma Omega^2.
  double OmegaEps2() const { return omega0_2 / (eps * eps) + sigma * omega_hat * omega_hat; }
};

// Validates sigma, Omega and eps and checks w^2 against every branch range of the diagram.
// Throws NotInGap if w^2 falls inside a branch range or above the highest computed branch.
FrequencySpec MakeFrequency(const GammaPair &gamma, const DispersionDiagram &diagram, int sigma,
                            double omega_hat, double eps);

inline constexpr double kDefaultKMax = 12.0;

//
// Envelope in wavenumber space. The built-in Gaussian is
// F(k) = amplitude * exp(-|k|^2 / 4) / (2 sqrt(pi)), truncated to |k|_inf <= k_max.
//
struct SourceSpec
{
  std::string envelope = "gaussian";
  double amplitude = 1.0;
  double k_max = kDefaultKMax;

  void Validate() const;
  double F(int dim, const Vec2 &khat) const;
  // (2 pi)^{-d/2} int F(k) exp(i k.r) dk over all of R^d, in closed form.
  double SpaceEnvelope(int dim, const Vec2 &r) const;
};

// (2 pi)^{-d/2} sum_q w_q F(k_q) exp(i k_q.r): the quadrature path of SpaceEnvelope.
Complex SpaceEnvelopeQuadrature(const SourceSpec &source, const WavenumberQuadrature &quad,
                                const Vec2 &r);

//
// Samples f(eps x) = envelope(eps x) rho(x) phi_p(x) on a grid (any frame). rho is the sharp
// pointwise coefficient. The envelope is the closed form unless `quad` is given.
//
FieldOnGrid SampleSource(const BlochOperator &op, const GammaPair &gamma,
                         const SourceSpec &source, const FrequencySpec &freq, const Grid &grid,
                         const WavenumberQuadrature *quad = nullptr);

struct ProjectionCheck
{
  Complex whole_space = 0.0;
  Complex closed_form = 0.0;
  Complex difference = 0.0;
};

//
// Projection of the source onto exp(i k.x) phi(x): the whole-space integral over the
// truncated domain [-(cells + 1/2), cells + 1/2]^d, against the closed form
// eps^{-d} (2 pi)^{d/2} conj(<rho conj(phi_p) phi>) F(k / eps). rho phi_p is taken as its
// Galerkin projection B phi_p, so both sides use the same band-limited density.
//
ProjectionCheck CheckProjection(const BlochOperator &op, const GammaPair &gamma,
                                const SourceSpec &source, double eps, const VectorC &phi,
                                const Vec2 &k, int cells);

}  // namespace blochhom

#endif  // BLOCHHOM_SOURCE_HPP
