// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_CELL_HPP
#define BLOCHHOM_CELL_HPP

#include <vector>
#include <Eigen/LU>
#include "blochhom/bloch.hpp"
#include "blochhom/common.hpp"
#include "blochhom/tensor.hpp"

namespace blochhom
{

// Tensor-valued periodic cell function: every entry is a coefficient vector in the basis.
using CellTensor = Tensor<VectorC>;

//
// Worst-case residuals over a batch of constrained solves. Compatibility is the relative
// size of the right-hand side's component along phi before solving; residual is the
// normwise backward error of the bordered solve; zero_mean is |<rho x conj(phi)>|.
//
struct SolveStats
{
  int solves = 0;
  double compatibility = 0.0;
  double residual = 0.0;
  double zero_mean = 0.0;

  void Merge(const SolveStats &other);
};

inline constexpr double kCompatibilityTol = 1e-9;
inline constexpr double kConstraintTol = 1e-10;
inline constexpr double kDiagnosticTol = 1e-7;

//
// Solves (K(0) - w_p^2 B) x = b subject to <rho x conj(phi_p)> = 0 through the bordered
// system [[K(0) - w_p^2 B, B phi], [(B phi)^H, 0]], factorized once and shared by every
// right-hand side. Right-hand sides that are not orthogonal to phi_p are rejected.
//
class CellSolver
{
public:
  CellSolver(const BlochOperator &op, const GammaPair &gamma,
             double compatibility_tol = kCompatibilityTol);

  const BlochOperator &Operator() const { return op_; }
  const GammaPair &Gamma() const { return gamma_; }

  // |phi^H b| / (|phi| |b|); zero for b = 0.
  double Compatibility(const VectorC &rhs) const;

  VectorC Solve(const VectorC &rhs, SolveStats *stats = nullptr) const;

  // Component-wise solve, parallel over components.
  CellTensor Solve(const CellTensor &rhs, SolveStats *stats = nullptr) const;

private:
  const BlochOperator &op_;
  GammaPair gamma_;
  double compatibility_tol_;
  MatrixC shifted_;
  VectorC bphi_;
  Eigen::PartialPivLU<MatrixC> lu_;
  double scale_ = 1.0;
};

struct CellFunctions
{
  int p = 0;
  CellTensor chi1, chi2, chi3;
  SolveStats stats;
};

// Normalization factor and leading-order coefficients, needed before chi2 can be formed.
struct ZerothOrder
{
  double alpha = 0.0;
  double rho0 = 0.0;
  TensorC mu0;
};

CellTensor SolveChi1(const CellSolver &solver, SolveStats *stats = nullptr);
ZerothOrder ComputeZerothOrder(const BlochOperator &op, const GammaPair &gamma,
                               const CellTensor &chi1);
CellTensor SolveChi2(const CellSolver &solver, const CellTensor &chi1, const ZerothOrder &zeroth,
                     SolveStats *stats = nullptr);
CellTensor SolveChi3(const CellSolver &solver, const CellTensor &chi1, const CellTensor &chi2,
                     const ZerothOrder &zeroth, SolveStats *stats = nullptr);

// Right-hand side of the cell problem of the given order (1, 2 or 3), built from the
// lower-order cell functions; exposed for independent compatibility checks.
CellTensor CellRhs(const BlochOperator &op, const GammaPair &gamma, int order,
                   const CellTensor &chi1, const CellTensor &chi2, const ZerothOrder &zeroth);

struct EffectiveCoefficients
{
  int dim = 1;
  int p = 0;
  double omega2 = 0.0;  // w_p^2(0)
  double alpha = 0.0;
  double rho0 = 0.0;
  TensorC mu0, mu2;  // mu2 fully symmetrized
  TensorC C1;        // <rho chi1 (x) conj(chi1)>

  // Quantities that vanish in exact arithmetic.
  TensorC rho1, mu1, rho2;
  double mu2_asymmetry = 0.0;  // relative size of the antisymmetric part before symmetrization
  bool tolerances_met = false;

  double Rho1Norm() const { return MaxAbs(rho1); }
  double Mu1Norm() const { return MaxAbs(mu1); }
  double Rho2Norm() const { return MaxAbs(rho2); }
};

EffectiveCoefficients ComputeEffectiveCoefficients(const BlochOperator &op,
                                                   const GammaPair &gamma,
                                                   const CellFunctions &cells,
                                                   double diagnostic_tol = kDiagnosticTol);

struct Homogenization
{
  GammaPair gamma;
  CellFunctions cells;
  EffectiveCoefficients coeffs;
};

// Full chain for branch p: eigenpair at Gamma, the three cell problems and the effective
// coefficients. Throws NotSimple when w_p^2(0) is degenerate.
Homogenization Homogenize(const BlochOperator &op, int p, double simplicity_tol = 1e-6);

//
// Small-k expansion of the branch: w^2(eps k) ~ w0^2 + eps^2 w2^2(k) + eps^4 w4^2(k) with
// w2^2 = -(mu0/rho0):(ik)^2 and w4^2 = -(mu2/rho0):(ik)^4.
//
struct DispersionExpansion
{
  int dim = 1;
  int p = 0;
  double omega0_2 = 0.0;
  TensorC mu0_ratio, mu2_ratio;

  static DispersionExpansion From(const EffectiveCoefficients &coeffs);

  double Omega2(const Vec2 &khat) const;
  double Omega4(const Vec2 &khat) const;
  double Evaluate(double eps, const Vec2 &khat) const;
};

struct ExpansionCheck
{
  std::vector<double> eps;
  std::vector<double> exact;
  std::vector<double> remainder;
  double slope = 0.0;
  double fit_residual = 0.0;
};

ExpansionCheck DispersionExpansionCheck(const BlochOperator &op,
                                        const DispersionExpansion &expansion, const Vec2 &khat,
                                        const std::vector<double> &eps_list);

}  // namespace blochhom

#endif  // BLOCHHOM_CELL_HPP
