// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

//
// Acceptance harness: one PASS/FAIL line per criterion plus the reduced 2D smoke run.
// Reference values come from the closed forms in oracles.hpp, not from the library.
//

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>
#include <fmt/format.h>
#include "blochhom/cell.hpp"
#include "blochhom/convergence.hpp"
#include "blochhom/fields.hpp"
#include "oracles.hpp"

using namespace blochhom;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

struct Hygiene
{
  double orthonormality = 0.0;
  double zero_mean = 0.0;
  double compatibility = 0.0;
  double residual = 0.0;

  void Add(const SolveStats &s)
  {
    zero_mean = std::max(zero_mean, s.zero_mean);
    compatibility = std::max(compatibility, s.compatibility);
    residual = std::max(residual, s.residual);
  }
};

Hygiene g_hygiene;

ConvergenceConfig AcceptanceConfig1D()
{
  ConvergenceConfig c;
  c.medium = TwoPhaseLayeredSpec();
  c.cutoff = 64;
  c.p = 0;
  c.sigma = -1;
  c.omega_hat = 1.0;
  c.eps_list = {0.5, 0.375, 0.25};
  c.quad_points = 256;
  c.reference.n_cell = 64;
  c.bloch_reference = true;
  return c;
}

const ConvergenceReport &Report1D()
{
  static const ConvergenceReport report = []
  {
    ConvergenceReport r = RunConvergence(AcceptanceConfig1D());
    g_hygiene.Add(r.cell_stats);
    g_hygiene.orthonormality = std::max(g_hygiene.orthonormality, r.gamma_orthonormality);
    for (const auto &run : r.runs)
    {
      g_hygiene.orthonormality = std::max(g_hygiene.orthonormality, run.orthonormality);
    }
    return r;
  }();
  return report;
}

Outcome ConvergenceRates()
{
  const ConvergenceReport &r = Report1D();
  const double lo[3] = {0.7, 1.7, 2.7}, hi[3] = {1.7, 2.6, 3.7};
  bool ok = r.slopes_fitted;
  std::string detail = "slopes";
  for (int m = 0; m < 3 && r.slopes_fitted; m++)
  {
    const double s = r.slopes_fd[m].slope;
    ok = ok && s >= lo[m] && s <= hi[m];
    detail += fmt::format(" m{}={:.3f} [{}, {}]", m, s, lo[m], hi[m]);
  }
  return {ok, detail};
}

Outcome ErrorOrdering()
{
  const ConvergenceReport &r = Report1D();
  std::string detail;
  for (const auto &run : r.runs)
  {
    detail += fmt::format("eps={}: {:.3e} > {:.3e} > {:.3e}; ", run.eps, run.error_fd[0],
                          run.error_fd[1], run.error_fd[2]);
  }
  return {r.OrderingHolds(), detail};
}

Outcome BandStructure()
{
  // 2D disk medium, 14 branches on the Gamma-X-M-Gamma path.
  const BlochOperator op2(Medium(DiskSpec()), 10);
  const DispersionDiagram d2 = ComputeDispersion(op2, BrillouinPath(12), 14);
  const std::vector<BandGap> gaps = FindBandGaps(d2);
  std::string detail = fmt::format("2D N=10: {} complete gaps (expected 3):", gaps.size());
  for (const auto &g : gaps)
  {
    detail += fmt::format(" [{}-{}: {:.4f}, {:.4f}]", g.lower_branch, g.upper_branch, g.lower,
                          g.upper);
  }

  // 1D band edges of the first gap against the transfer-matrix roots at k = pi.
  const oracle::Bilayer layers;
  const double lo = oracle::TransferRoot(layers, -1.0, 0);
  const double up = oracle::TransferRoot(layers, -1.0, 1);
  const BlochOperator op1(Medium(TwoPhaseLayeredSpec()), 64);
  const std::vector<BandGap> gaps1 = FindBandGaps(ComputeDispersion(op1, UniformZone1D(65), 3));
  double rel = 1.0;
  if (!gaps1.empty() && gaps1[0].lower_branch == 0)
  {
    rel = std::max(std::abs(std::sqrt(gaps1[0].lower) / lo - 1.0),
                   std::abs(std::sqrt(gaps1[0].upper) / up - 1.0));
  }
  detail += fmt::format("; 1D edges vs transfer matrix rel {:.2e} (tol 1e-4)", rel);
  return {gaps.size() == 3 && rel <= 1e-4, detail};
}

Outcome VanishingDiagnostics()
{
  struct Case
  {
    std::string name;
    MediumSpec spec;
    int cutoff;
    int p;
  };
  const std::vector<Case> cases = {
      {"1D p=0", TwoPhaseLayeredSpec(0.25, {6.0, 20.0}, {1.0, 1.0}, 0.02), 64, 0},
      {"1D p=3", TwoPhaseLayeredSpec(0.25, {6.0, 20.0}, {1.0, 1.0}, 0.02), 64, 3},
      {"2D p=0", DiskSpec(0.3, {6.0, 20.0}, {1.0, 1.0}, 0.04), 8, 0},
      {"2D p=3", DiskSpec(0.3, {6.0, 20.0}, {1.0, 1.0}, 0.04), 8, 3}};
  bool ok = true;
  std::string detail;
  for (const auto &c : cases)
  {
    const BlochOperator op(Medium(c.spec), c.cutoff);
    const Homogenization h = Homogenize(op, c.p);
    g_hygiene.Add(h.cells.stats);
    const double mu_scale = MaxAbs(h.coeffs.mu0);
    const double r1 = h.coeffs.Rho1Norm() / h.coeffs.rho0;
    const double m1 = h.coeffs.Mu1Norm() / mu_scale;
    const double r2 = h.coeffs.Rho2Norm() / h.coeffs.rho0;
    ok = ok && r1 <= kDiagnosticTol && m1 <= kDiagnosticTol && r2 <= kDiagnosticTol;
    detail += fmt::format("{}: rho1 {:.1e} mu1 {:.1e} rho2 {:.1e}; ", c.name, r1, m1, r2);
  }
  return {ok, detail};
}

Outcome ExpansionRemainder()
{
  const std::vector<double> eps = {0.04, 0.02, 0.01};
  const BlochOperator op1(Medium(TwoPhaseLayeredSpec()), 16);
  const Homogenization h1 = Homogenize(op1, 0);
  g_hygiene.Add(h1.cells.stats);
  const ExpansionCheck c1 =
      DispersionExpansionCheck(op1, DispersionExpansion::From(h1.coeffs), {8.0, 0.0}, eps);
  const BlochOperator op2(Medium(DiskSpec()), 8);
  const Homogenization h2 = Homogenize(op2, 3);
  g_hygiene.Add(h2.cells.stats);
  const ExpansionCheck c2 =
      DispersionExpansionCheck(op2, DispersionExpansion::From(h2.coeffs), {8.0, 0.0}, eps);
  const bool ok = c1.slope >= 5.5 && c2.slope >= 5.5;
  return {ok, fmt::format("1D p=0 slope {:.3f}, 2D p=3 slope {:.3f} (>= 5.5; k=8 e1)", c1.slope,
                          c2.slope)};
}

Outcome ClassicalLimit()
{
  const oracle::Bilayer layers;
  const double closed = oracle::HarmonicStiffness(layers) / oracle::MeanDensity(layers);
  const BlochOperator op(Medium(TwoPhaseLayeredSpec()), 64);
  const Homogenization h = Homogenize(op, 0);
  g_hygiene.Add(h.cells.stats);
  const double ratio = h.coeffs.mu0({0, 0}).real() / h.coeffs.rho0;
  auto quotient = [&](double k)
  { return SolveBands(op.Stiffness({k, 0.0}), op.Mass(), 1, false).omega2(0) / (k * k); };
  const double limit = (4.0 * quotient(0.02) - quotient(0.04)) / 3.0;
  const double e1 = std::abs(ratio / closed - 1.0), e2 = std::abs(limit / ratio - 1.0);
  return {e1 <= 1e-6 && e2 <= 1e-6,
          fmt::format("mu0/rho0 = {:.12f}, (12/7)/10.5 = {:.12f}, rel {:.1e}; eigensolver "
                      "limit rel {:.1e}",
                      ratio, closed, e1, e2)};
}

Outcome OracleCrossValidation()
{
  const ConvergenceReport &r = Report1D();
  double discrepancy = 1.0;
  for (const auto &run : r.runs)
  {
    if (std::abs(run.eps - 0.25) < 1e-12)
    {
      discrepancy = run.fd_vs_bloch;
    }
  }

  // Homogeneous medium G = 2: u(x) = U(eps x) with -2 U'' + U = Gaussian.
  const double c = 2.0, eps = 0.25;
  const BlochOperator op(Medium(HomogeneousSpec(1, c, 1.0)), 8);
  const GammaPair g = EigenpairAtGamma(op, 0);
  FrequencySpec f;
  f.p = 0;
  f.sigma = -1;
  f.omega_hat = 1.0;
  f.eps = eps;
  f.omega0_2 = g.omega2;
  const SourceSpec src;
  const WavenumberQuadrature quad(1, QuadratureRule::GaussLegendre, 256, src.k_max);
  const Grid grid = CenteredGrid(1, Frame::Fast, 40.5, 16);
  const BlochSynthesis u = ExactBlochSolution(op, g, f, src, quad, 0, grid);
  const auto x = grid.Axis(0);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    const double exact = oracle::DampedGaussianResponse(eps * x[i], c);
    num += std::norm(u.field.values(i, 0) - exact);
    den += exact * exact;
  }
  const double homog = std::sqrt(num / den);
  return {discrepancy <= 1e-3 && homog <= 1e-6,
          fmt::format("Bloch vs FD at eps=0.25: {:.2e} (<= 1e-3); homogeneous closed form: "
                      "{:.2e} (<= 1e-6)",
                      discrepancy, homog)};
}

Outcome SolverHygiene()
{
  Report1D();
  const Hygiene &h = g_hygiene;
  const bool ok = h.orthonormality <= 1e-10 && h.zero_mean <= kConstraintTol &&
                  h.compatibility <= kCompatibilityTol && h.residual <= 1e-10;
  return {ok, fmt::format("B-orthonormality {:.1e}, zero-mean {:.1e}, compatibility {:.1e}, "
                          "bordered residual {:.1e}",
                          h.orthonormality, h.zero_mean, h.compatibility, h.residual)};
}

Outcome SmokeRun2D()
{
  ConvergenceConfig c;
  c.medium = DiskSpec();
  c.cutoff = 8;
  c.p = 0;
  c.eps_list = {0.5};
  c.quad_points = 48;
  c.reference.n_dom = 6;
  c.reference.n_cell = 24;
  c.reference.decay_tol = 5e-2;
  c.bloch_reference = false;
  c.diagram_samples = 8;
  const ConvergenceReport r = RunConvergence(c);
  g_hygiene.Add(r.cell_stats);
  const EpsilonRun &run = r.runs.front();
  return {run.error_fd[2] < run.error_fd[0],
          fmt::format("eps=0.5 N_dom=6 n_cell=24: e0 {:.3e}, e1 {:.3e}, e2 {:.3e}, boundary "
                      "ratio {:.1e}",
                      run.error_fd[0], run.error_fd[1], run.error_fd[2], run.boundary_ratio)};
}

}  // namespace

int main()
{
  struct Criterion
  {
    const char *label;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 convergence rates", ConvergenceRates},
      {"2 error ordering", ErrorOrdering},
      {"3 band structure", BandStructure},
      {"4 vanishing diagnostics", VanishingDiagnostics},
      {"5 dispersion expansion remainder", ExpansionRemainder},
      {"6 classical limit", ClassicalLimit},
      {"7 oracle cross-validation", OracleCrossValidation},
      {"2D smoke run", SmokeRun2D},
      {"8 solver hygiene", SolverHygiene}};
  int failures = 0;
  for (const auto &c : criteria)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = c.run();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.label << ": " << o.detail
              << fmt::format(" ({:.1f} s)", seconds) << std::endl;
    failures += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} checks passed", criteria.size() - failures, criteria.size())
            << std::endl;
  return failures == 0 ? 0 : 1;
}
