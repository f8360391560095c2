// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_CONVERGENCE_HPP
#define BLOCHHOM_CONVERGENCE_HPP

#include <array>
#include <vector>
#include "blochhom/bloch.hpp"
#include "blochhom/cell.hpp"
#include "blochhom/fields.hpp"
#include "blochhom/fit.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/medium.hpp"
#include "blochhom/quadrature.hpp"
#include "blochhom/reference.hpp"
#include "blochhom/source.hpp"

namespace blochhom
{

//
// Relative L2 error |approx - ref| / |ref| over D_{M - 1/2} = [-(M - 1/2), M - 1/2]^d in fast
// coordinates, by the trapezoid rule on the common grid. M <= 0 uses the whole grid.
//
double RelativeError(const FieldOnGrid &ref, const FieldOnGrid &approx, double M);

struct ConvergenceConfig
{
  MediumSpec medium = TwoPhaseLayeredSpec();
  int cutoff = 64;
  StiffnessRule rule = StiffnessRule::Auto;
  int p = 0;
  int sigma = -1;
  double omega_hat = 1.0;
  std::vector<double> eps_list = {0.5, 0.375, 0.25};
  QuadratureRule quad_rule = QuadratureRule::GaussLegendre;
  int quad_points = 256;
  SourceSpec source;
  ReferenceConfig reference;
  int mode_count = kDefaultModeCount;
  bool bloch_reference = true;  // also compare against the exact Bloch synthesis
  int eval_half_width = 0;      // M of D_{M-1/2}; 0 = the reference N_dom
  int diagram_samples = 65;     // k samples for the gap check (per leg in 2D)

  void Validate() const;
};

struct EpsilonRun
{
  double eps = 0.0;
  int n_dom = 0;
  double omega2 = 0.0;
  double boundary_ratio = 0.0;
  std::array<double, 3> error_fd{};     // e^(m) against the finite-difference reference
  std::array<double, 3> error_bloch{};  // e^(m) against the Bloch synthesis (if enabled)
  double fd_vs_bloch = 0.0;
  double imag_residue = 0.0;  // largest relative imaginary part among emitted fields
  double tail = 0.0;
  double orthonormality = 0.0;  // worst B-orthonormality residual of the eigensolves used
};

struct ConvergenceReport
{
  int dim = 1;
  bool has_bloch = false;
  std::vector<EpsilonRun> runs;
  std::array<SlopeResult, 3> slopes_fd{};
  std::array<SlopeResult, 3> slopes_bloch{};
  bool slopes_fitted = false;
  EffectiveCoefficients coeffs;
  SolveStats cell_stats;
  double gamma_orthonormality = 0.0;

  bool OrderingHolds() const;     // e2 < e1 < e0 at every eps
  bool MonotoneInEps() const;     // errors grow with eps for every order
  // Slope of order m within [m + 0.7, m + 1.6] against the FD reference.
  bool SlopesInBands() const;
  bool ReferencesAgree() const;   // FD and Bloch slopes within 0.15
};

ConvergenceReport RunConvergence(const ConvergenceConfig &config);

}  // namespace blochhom

#endif  // BLOCHHOM_CONVERGENCE_HPP
