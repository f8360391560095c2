// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>
#include "blochhom/fit.hpp"
#include "blochhom/parallel.hpp"

namespace blochhom
{

namespace
{

CellTensor Zeros(int dim, int rank, int size)
{
  return CellTensor(dim, rank, VectorC::Zero(size));
}

// (grad T)_{a,...} = i D_a T_{...}: the derivative index is placed first.
CellTensor Gradient(const BlochOperator &op, const CellTensor &T)
{
  const int d = op.Dim();
  CellTensor out = Zeros(d, T.Rank() + 1, op.Size());
  for (int a = 0; a < d; a++)
  {
    for (std::size_t f = 0; f < T.Size(); f++)
    {
      out[a * T.Size() + f] = kI * op.Derivative(a, T[f]);
    }
  }
  return out;
}

// (I (x) T)_{a,b,...} = delta_ab T_{...}.
CellTensor IdentityOuter(const CellTensor &T, int size)
{
  const int d = T.Dim();
  CellTensor out = Zeros(d, T.Rank() + 2, size);
  for (int a = 0; a < d; a++)
  {
    for (std::size_t f = 0; f < T.Size(); f++)
    {
      out[(a * d + a) * T.Size() + f] = T[f];
    }
  }
  return out;
}

// (T (x) S)_{...,...} with scalar tensor S on the right.
CellTensor OuterScalar(const CellTensor &T, const TensorC &S)
{
  CellTensor out(T.Dim(), T.Rank() + S.Rank());
  for (std::size_t ft = 0; ft < T.Size(); ft++)
  {
    for (std::size_t fs = 0; fs < S.Size(); fs++)
    {
      out[ft * S.Size() + fs] = T[ft] * S[fs];
    }
  }
  return out;
}

CellTensor Apply(const MatrixC &A, const CellTensor &T)
{
  CellTensor out = T;
  for (std::size_t f = 0; f < T.Size(); f++)
  {
    out[f] = A * T[f];
  }
  return out;
}

void AddInPlace(CellTensor &a, const CellTensor &b, double scale = 1.0)
{
  for (std::size_t f = 0; f < a.Size(); f++)
  {
    a[f] += scale * b[f];
  }
}

CellTensor AsTensor(int dim, const VectorC &phi)
{
  return CellTensor(dim, 0, phi);
}

//
// The cell problem of order n has the right-hand side
//
//   b = i sum_i D_i G [flux]_{i,...} + G [grad] - [dens],
//
// with flux = {I (x) chi^(n-1)}', grad = {grad chi^(n-1)} + {I (x) chi^(n-2)} and
// dens = {rho chi^(n-2) (x) mu0} / rho0; chi^(0) is phi and chi^(-1) is absent.
//
CellTensor AssembleRhs(const BlochOperator &op, const std::vector<CellTensor> &chis, int order,
                       const ZerothOrder &zeroth)
{
  const int d = op.Dim();
  const int M = op.Size();
  const CellTensor &prev = chis[order - 1];
  const CellTensor flux = SymmetrizePartial(IdentityOuter(prev, M));
  CellTensor grad = SymmetrizeFull(Gradient(op, prev));
  CellTensor dens = Zeros(d, order, M);
  if (order >= 2)
  {
    const CellTensor &prev2 = chis[order - 2];
    AddInPlace(grad, SymmetrizeFull(IdentityOuter(prev2, M)));
    dens = SymmetrizeFull(OuterScalar(Apply(op.Mass(), prev2), zeroth.mu0));
    for (std::size_t f = 0; f < dens.Size(); f++)
    {
      dens[f] /= zeroth.rho0;
    }
  }
  CellTensor rhs = Zeros(d, order, M);
  for (std::size_t f = 0; f < rhs.Size(); f++)
  {
    VectorC b = op.Flux() * grad[f] - dens[f];
    for (int i = 0; i < d; i++)
    {
      b += kI * op.Derivative(i, op.Flux() * flux[i * rhs.Size() + f]);
    }
    rhs[f] = b;
  }
  return rhs;
}

//
// alpha {<G (grad high + I (x) low) conj(phi)> - <G high (x) grad conj(phi)>}, where
// cell averages of products are inner products of coefficient vectors.
//
struct RawEffective
{
  TensorC symmetric;
  double asymmetry = 0.0;
};

RawEffective EffectiveTensor(const BlochOperator &op, const VectorC &phi, double alpha,
                             const CellTensor &high, const CellTensor &low)
{
  const int d = op.Dim();
  const int M = op.Size();
  CellTensor U = Gradient(op, high);
  AddInPlace(U, IdentityOuter(low, M));
  const VectorC gphi = op.Flux() * phi;
  TensorC raw(d, high.Rank() + 1);
  for (std::size_t f = 0; f < raw.Size(); f++)
  {
    raw[f] = gphi.dot(U[f]);
  }
  for (std::size_t f = 0; f < high.Size(); f++)
  {
    const VectorC ghigh = op.Flux() * high[f];
    for (int z = 0; z < d; z++)
    {
      const VectorC dphi = op.Derivative(z, phi);
      raw[f * d + z] -= -kI * dphi.dot(ghigh);
    }
  }
  for (std::size_t f = 0; f < raw.Size(); f++)
  {
    raw[f] *= alpha;
  }
  RawEffective out;
  out.symmetric = SymmetrizeFull(raw);
  const double scale = MaxAbs(out.symmetric);
  double diff = 0.0;
  for (std::size_t f = 0; f < raw.Size(); f++)
  {
    diff = std::max(diff, std::abs(raw[f] - out.symmetric[f]));
  }
  out.asymmetry = (scale > 0.0) ? diff / scale : diff;
  return out;
}

}  // namespace

void SolveStats::Merge(const SolveStats &other)
{
  solves += other.solves;
  compatibility = std::max(compatibility, other.compatibility);
  residual = std::max(residual, other.residual);
  zero_mean = std::max(zero_mean, other.zero_mean);
}

CellSolver::CellSolver(const BlochOperator &op, const GammaPair &gamma, double compatibility_tol)
  : op_(op), gamma_(gamma), compatibility_tol_(compatibility_tol)
{
  if (!gamma.simple)
  {
    throw NotSimple(fmt::format(
        "w_{}^2(0) = {} is not simple (relative separation {:.3e}); cell problems need a "
        "simple eigenvalue",
        gamma.p, gamma.omega2, gamma.separation));
  }
  const int M = op.Size();
  shifted_ = op.Stiffness({0.0, 0.0}) - gamma.omega2 * op.Mass();
  bphi_ = op.Mass() * gamma.phi;
  MatrixC bordered = MatrixC::Zero(M + 1, M + 1);
  bordered.topLeftCorner(M, M) = shifted_;
  bordered.topRightCorner(M, 1) = bphi_;
  bordered.bottomLeftCorner(1, M) = bphi_.adjoint();
  lu_.compute(bordered);
  scale_ = bordered.cwiseAbs().rowwise().sum().maxCoeff();
  const double rcond = lu_.rcond();
  if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon()))
  {
    throw SingularSystem(
        fmt::format("bordered cell matrix is singular (reciprocal condition {:.3e})", rcond));
  }
}

double CellSolver::Compatibility(const VectorC &rhs) const
{
  const double nb = rhs.norm();
  if (nb == 0.0)
  {
    return 0.0;
  }
  return std::abs(gamma_.phi.dot(rhs)) / (gamma_.phi.norm() * nb);
}

VectorC CellSolver::Solve(const VectorC &rhs, SolveStats *stats) const
{
  const int M = op_.Size();
  if (rhs.size() != M)
  {
    throw ValidationError(
        fmt::format("cell right-hand side has {} coefficients, expected {}", rhs.size(), M));
  }
  const double compat = Compatibility(rhs);
  if (compat > compatibility_tol_)
  {
    throw CompatibilityViolation(fmt::format(
        "right-hand side is not orthogonal to phi_{}: relative projection {:.3e} > {:.1e}",
        gamma_.p, compat, compatibility_tol_));
  }
  VectorC b = VectorC::Zero(M + 1);
  b.head(M) = rhs;
  auto apply = [&](const VectorC &x)
  {
    VectorC y(M + 1);
    y.head(M) = shifted_ * x.head(M) + bphi_ * x(M);
    y(M) = bphi_.dot(x.head(M));
    return y;
  };
  VectorC x = lu_.solve(b);
  x += lu_.solve(b - apply(x));
  const VectorC r = apply(x) - b;
  if (stats != nullptr)
  {
    stats->solves++;
    stats->compatibility = std::max(stats->compatibility, compat);
    const double denom = scale_ * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
    stats->residual =
        std::max(stats->residual, (denom > 0.0) ? r.cwiseAbs().maxCoeff() / denom : 0.0);
    stats->zero_mean = std::max(stats->zero_mean, std::abs(bphi_.dot(x.head(M))));
  }
  return x.head(M);
}

CellTensor CellSolver::Solve(const CellTensor &rhs, SolveStats *stats) const
{
  CellTensor out = rhs;
  std::vector<SolveStats> local(rhs.Size());
  ParallelFor(rhs.Size(), [&](std::size_t f) { out[f] = Solve(rhs[f], &local[f]); });
  if (stats != nullptr)
  {
    for (const auto &s : local)
    {
      stats->Merge(s);
    }
  }
  return out;
}

CellTensor CellRhs(const BlochOperator &op, const GammaPair &gamma, int order,
                   const CellTensor &chi1, const CellTensor &chi2, const ZerothOrder &zeroth)
{
  if (order < 1 || order > 3)
  {
    throw ValidationError(fmt::format("cell problem order must be 1, 2 or 3, got {}", order));
  }
  const std::vector<CellTensor> chis = {AsTensor(op.Dim(), gamma.phi), chi1, chi2};
  return AssembleRhs(op, chis, order, zeroth);
}

CellTensor SolveChi1(const CellSolver &solver, SolveStats *stats)
{
  const auto &op = solver.Operator();
  return solver.Solve(CellRhs(op, solver.Gamma(), 1, {}, {}, {}), stats);
}

ZerothOrder ComputeZerothOrder(const BlochOperator &op, const GammaPair &gamma,
                               const CellTensor &chi1)
{
  ZerothOrder out;
  out.alpha = 1.0 / gamma.phi.squaredNorm();
  out.rho0 = out.alpha * std::real(gamma.phi.dot(op.Mass() * gamma.phi));
  out.mu0 = EffectiveTensor(op, gamma.phi, out.alpha, chi1, AsTensor(op.Dim(), gamma.phi))
                .symmetric;
  return out;
}

CellTensor SolveChi2(const CellSolver &solver, const CellTensor &chi1, const ZerothOrder &zeroth,
                     SolveStats *stats)
{
  return solver.Solve(CellRhs(solver.Operator(), solver.Gamma(), 2, chi1, {}, zeroth), stats);
}

CellTensor SolveChi3(const CellSolver &solver, const CellTensor &chi1, const CellTensor &chi2,
                     const ZerothOrder &zeroth, SolveStats *stats)
{
  return solver.Solve(CellRhs(solver.Operator(), solver.Gamma(), 3, chi1, chi2, zeroth), stats);
}

EffectiveCoefficients ComputeEffectiveCoefficients(const BlochOperator &op,
                                                   const GammaPair &gamma,
                                                   const CellFunctions &cells,
                                                   double diagnostic_tol)
{
  const int d = op.Dim();
  const ZerothOrder zeroth = ComputeZerothOrder(op, gamma, cells.chi1);
  EffectiveCoefficients out;
  out.dim = d;
  out.p = gamma.p;
  out.omega2 = gamma.omega2;
  out.alpha = zeroth.alpha;
  out.rho0 = zeroth.rho0;
  out.mu0 = zeroth.mu0;
  out.mu1 = EffectiveTensor(op, gamma.phi, out.alpha, cells.chi2, cells.chi1).symmetric;
  const RawEffective mu2 = EffectiveTensor(op, gamma.phi, out.alpha, cells.chi3, cells.chi2);
  out.mu2 = mu2.symmetric;
  out.mu2_asymmetry = mu2.asymmetry;

  const VectorC bphi = op.Mass() * gamma.phi;
  out.rho1 = TensorC(d, 1);
  for (std::size_t f = 0; f < out.rho1.Size(); f++)
  {
    out.rho1[f] = out.alpha * bphi.dot(cells.chi1[f]);
  }
  out.rho2 = TensorC(d, 2);
  for (std::size_t f = 0; f < out.rho2.Size(); f++)
  {
    out.rho2[f] = out.alpha * bphi.dot(cells.chi2[f]);
  }
  out.C1 = TensorC(d, 2);
  for (int a = 0; a < d; a++)
  {
    const VectorC bchi = op.Mass() * cells.chi1[a];
    for (int b = 0; b < d; b++)
    {
      out.C1({a, b}) = cells.chi1[b].dot(bchi);
    }
  }
  const double mu_scale = std::max(MaxAbs(out.mu0), std::numeric_limits<double>::min());
  out.tolerances_met = out.Rho1Norm() <= diagnostic_tol * out.rho0 &&
                       out.Rho2Norm() <= diagnostic_tol * out.rho0 &&
                       out.Mu1Norm() <= diagnostic_tol * mu_scale;
  return out;
}

Homogenization Homogenize(const BlochOperator &op, int p, double simplicity_tol)
{
  Homogenization out;
  out.gamma = EigenpairAtGamma(op, p, simplicity_tol);
  const CellSolver solver(op, out.gamma);
  out.cells.p = p;
  out.cells.chi1 = SolveChi1(solver, &out.cells.stats);
  const ZerothOrder zeroth = ComputeZerothOrder(op, out.gamma, out.cells.chi1);
  out.cells.chi2 = SolveChi2(solver, out.cells.chi1, zeroth, &out.cells.stats);
  out.cells.chi3 = SolveChi3(solver, out.cells.chi1, out.cells.chi2, zeroth, &out.cells.stats);
  out.coeffs = ComputeEffectiveCoefficients(op, out.gamma, out.cells);
  return out;
}

DispersionExpansion DispersionExpansion::From(const EffectiveCoefficients &coeffs)
{
  DispersionExpansion out;
  out.dim = coeffs.dim;
  out.p = coeffs.p;
  out.omega0_2 = coeffs.omega2;
  out.mu0_ratio = coeffs.mu0;
  out.mu2_ratio = coeffs.mu2;
  for (std::size_t f = 0; f < out.mu0_ratio.Size(); f++)
  {
    out.mu0_ratio[f] /= coeffs.rho0;
  }
  for (std::size_t f = 0; f < out.mu2_ratio.Size(); f++)
  {
    out.mu2_ratio[f] /= coeffs.rho0;
  }
  return out;
}

double DispersionExpansion::Omega2(const Vec2 &khat) const
{
  return -std::real(ContractPower(mu0_ratio, {kI * khat[0], kI * khat[1]}));
}

double DispersionExpansion::Omega4(const Vec2 &khat) const
{
  return -std::real(ContractPower(mu2_ratio, {kI * khat[0], kI * khat[1]}));
}

double DispersionExpansion::Evaluate(double eps, const Vec2 &khat) const
{
  const double e2 = eps * eps;
  return omega0_2 + e2 * Omega2(khat) + e2 * e2 * Omega4(khat);
}

ExpansionCheck DispersionExpansionCheck(const BlochOperator &op,
                                        const DispersionExpansion &expansion, const Vec2 &khat,
                                        const std::vector<double> &eps_list)
{
  ExpansionCheck out;
  out.eps = eps_list;
  out.exact.resize(eps_list.size());
  out.remainder.resize(eps_list.size());
  ParallelFor(eps_list.size(),
              [&](std::size_t i)
              {
                const double eps = eps_list[i];
                const Vec2 k = {eps * khat[0], eps * khat[1]};
                const BandSolution bands =
                    SolveBands(op.Stiffness(k), op.Mass(), expansion.p + 1, false);
                out.exact[i] = bands.omega2(expansion.p);
                out.remainder[i] = std::abs(out.exact[i] - expansion.Evaluate(eps, khat));
              });
  const bool fittable =
      eps_list.size() >= 3 &&
      std::all_of(out.remainder.begin(), out.remainder.end(), [](double r) { return r > 0.0; });
  if (fittable)
  {
    const SlopeResult fit = SlopeFit(out.eps, out.remainder);
    out.slope = fit.slope;
    out.fit_residual = fit.residual;
  }
  else
  {
    // An exactly vanishing remainder (or too few samples) leaves the slope undefined.
    out.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace blochhom
