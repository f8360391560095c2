// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include "blochhom/parallel.hpp"

namespace blochhom
{

namespace
{

MatrixC Toeplitz(const CoefficientTable &table, Field field, const PlaneWaveBasis &basis)
{
  const int M = basis.Size();
  MatrixC T(M, M);
  for (int r = 0; r < M; r++)
  {
    const auto &jr = basis.Index(r);
    for (int c = 0; c < M; c++)
    {
      const auto &jc = basis.Index(c);
      T(r, c) = table(field, jr[0] - jc[0], jr[1] - jc[1]);
    }
  }
  return T;
}

MatrixC HermitianPart(const MatrixC &A)
{
  return 0.5 * (A + A.adjoint());
}

MatrixC BuildFlux(const CoefficientTable &table, const PlaneWaveBasis &basis, StiffnessRule rule)
{
  if (ResolveRule(rule, basis.Dim()) == StiffnessRule::Laurent)
  {
    return Toeplitz(table, Field::Stiffness, basis);
  }
  const MatrixC T = Toeplitz(table, Field::Compliance, basis);
  Eigen::LLT<MatrixC> llt(T);
  if (llt.info() != Eigen::Success)
  {
    throw NumericalError("FluxFactorization",
                         "Toeplitz matrix of 1/G is not positive definite; increase the cutoff");
  }
  return HermitianPart(llt.solve(MatrixC::Identity(T.rows(), T.cols())));
}

void CheckTable(const CoefficientTable &table, const PlaneWaveBasis &basis)
{
  if (table.Dim() != basis.Dim())
  {
    throw ValidationError("coefficient table and basis have different dimensions");
  }
  if (table.Cutoff() < 2 * basis.Cutoff())
  {
    throw ValidationError(fmt::format(
        "coefficient table cutoff {} is below twice the basis cutoff ({})", table.Cutoff(),
        2 * basis.Cutoff()));
  }
}

MatrixC ShiftedStiffness(const MatrixC &flux, const PlaneWaveBasis &basis, const Vec2 &k)
{
  const int M = basis.Size();
  MatrixC S(M, M);
  const VectorR &d0 = basis.Wavenumbers(0);
  const VectorR &d1 = basis.Wavenumbers(1);
  const double k1 = (basis.Dim() == 2) ? k[1] : 0.0;
  for (int c = 0; c < M; c++)
  {
    for (int r = 0; r < M; r++)
    {
      double w = (d0(r) + k[0]) * (d0(c) + k[0]);
      if (basis.Dim() == 2)
      {
        w += (d1(r) + k1) * (d1(c) + k1);
      }
      S(r, c) = flux(r, c) * w;
    }
  }
  return S;
}

}  // namespace

StiffnessRule ResolveRule(StiffnessRule rule, int dim)
{
  if (rule == StiffnessRule::Auto)
  {
    return (dim == 1) ? StiffnessRule::Inverse : StiffnessRule::Laurent;
  }
  return rule;
}

std::string ToString(StiffnessRule rule)
{
  switch (rule)
  {
    case StiffnessRule::Auto:
      return "auto";
    case StiffnessRule::Laurent:
      return "laurent";
    case StiffnessRule::Inverse:
      break;
  }
  return "inverse";
}

StiffnessRule ParseStiffnessRule(const std::string &name)
{
  if (name == "auto")
  {
    return StiffnessRule::Auto;
  }
  if (name == "laurent")
  {
    return StiffnessRule::Laurent;
  }
  if (name == "inverse")
  {
    return StiffnessRule::Inverse;
  }
  throw ValidationError(
      fmt::format("unknown stiffness rule '{}' (expected auto, laurent or inverse)", name));
}

OperatorPair AssembleOperator(const CoefficientTable &table, const PlaneWaveBasis &basis,
                              const Vec2 &k, StiffnessRule rule)
{
  CheckTable(table, basis);
  OperatorPair out;
  out.mass = Toeplitz(table, Field::Density, basis);
  out.stiffness = ShiftedStiffness(BuildFlux(table, basis, rule), basis, k);
  return out;
}

OperatorPair AssembleOperator(const Medium &medium, const PlaneWaveBasis &basis, const Vec2 &k,
                              StiffnessRule rule)
{
  return AssembleOperator(medium.FourierTable(2 * basis.Cutoff()), basis, k, rule);
}

BlochOperator::BlochOperator(const Medium &medium, int cutoff, StiffnessRule rule)
  : medium_(medium), basis_(medium.Dim(), cutoff), rule_(ResolveRule(rule, medium.Dim()))
{
  const CoefficientTable table = medium.FourierTable(2 * cutoff);
  mass_ = Toeplitz(table, Field::Density, basis_);
  flux_ = BuildFlux(table, basis_, rule_);
}

MatrixC BlochOperator::Stiffness(const Vec2 &k) const
{
  return ShiftedStiffness(flux_, basis_, k);
}

MatrixC BlochOperator::FirstOrder(int axis) const
{
  const VectorR &d = basis_.Wavenumbers(axis);
  return d.asDiagonal() * flux_ + flux_ * d.asDiagonal();
}

VectorC BlochOperator::Derivative(int axis, const VectorC &v) const
{
  return basis_.Wavenumbers(axis).cast<Complex>().cwiseProduct(v);
}

BandSolution SolveBands(const MatrixC &stiffness, const MatrixC &mass, int count, bool vectors)
{
  const int M = static_cast<int>(mass.rows());
  if (stiffness.rows() != M || stiffness.cols() != M || mass.cols() != M)
  {
    throw ValidationError("stiffness and mass matrices must be square and of equal size");
  }
  if (count < 1 || count > M)
  {
    throw ValidationError(fmt::format("band count {} outside [1, {}]", count, M));
  }
  Eigen::LLT<MatrixC> llt(mass);
  if (llt.info() != Eigen::Success)
  {
    throw NumericalError("MassNotPositiveDefinite",
                         "mass matrix is not numerically positive definite");
  }
  const int options =
      (vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly) | Eigen::Ax_lBx;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixC> solver(stiffness, mass, options);
  if (solver.info() != Eigen::Success)
  {
    throw NumericalError("EigensolverFailure", "generalized eigensolver did not converge");
  }
  BandSolution out;
  out.omega2 = solver.eigenvalues().head(count);
  if (vectors)
  {
    out.vectors = solver.eigenvectors().leftCols(count);
    const MatrixC gram = out.vectors.adjoint() * mass * out.vectors;
    out.orthonormality_residual =
        (gram - MatrixC::Identity(count, count)).cwiseAbs().maxCoeff();
  }
  return out;
}

std::vector<Vec2> BrillouinPath(int per_segment)
{
  if (per_segment < 1)
  {
    throw ValidationError("Brillouin path needs at least one sample per segment");
  }
  const std::array<Vec2, 4> corners = {Vec2{0.0, 0.0}, Vec2{kPi, 0.0}, Vec2{kPi, kPi},
                                       Vec2{0.0, 0.0}};
  std::vector<Vec2> out;
  for (int s = 0; s < 3; s++)
  {
    for (int i = 0; i < per_segment; i++)
    {
      const double t = static_cast<double>(i) / per_segment;
      out.push_back({corners[s][0] + t * (corners[s + 1][0] - corners[s][0]),
                     corners[s][1] + t * (corners[s + 1][1] - corners[s][1])});
    }
  }
  out.push_back(corners[3]);
  return out;
}

std::vector<Vec2> UniformZone1D(int samples)
{
  if (samples < 2)
  {
    throw ValidationError("a 1D zone sampling needs at least two samples");
  }
  std::vector<Vec2> out;
  for (int i = 0; i < samples; i++)
  {
    out.push_back({-kPi + 2.0 * kPi * i / (samples - 1), 0.0});
  }
  return out;
}

DispersionDiagram ComputeDispersion(const BlochOperator &op, const std::vector<Vec2> &k_samples,
                                    int count)
{
  DispersionDiagram out;
  out.dim = op.Dim();
  out.count = count;
  out.k = k_samples;
  out.omega2.resize(k_samples.size());
  ParallelFor(k_samples.size(),
              [&](std::size_t i)
              {
                try
                {
                  out.omega2[i] =
                      SolveBands(op.Stiffness(k_samples[i]), op.Mass(), count, false).omega2;
                }
                catch (const Error &e)
                {
                  throw NumericalError(e.Name(), fmt::format("at k = ({}, {}): {}",
                                                             k_samples[i][0], k_samples[i][1],
                                                             e.what()));
                }
              });
  out.path.resize(k_samples.size(), 0.0);
  for (std::size_t i = 1; i < k_samples.size(); i++)
  {
    out.path[i] = out.path[i - 1] + std::hypot(k_samples[i][0] - k_samples[i - 1][0],
                                               k_samples[i][1] - k_samples[i - 1][1]);
  }
  return out;
}

BranchRange RangeOfBranch(const DispersionDiagram &diagram, int m)
{
  if (m < 0 || m >= diagram.count || diagram.omega2.empty())
  {
    throw ValidationError(fmt::format("branch {} not present in the diagram", m));
  }
  BranchRange range{std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
  for (const auto &w : diagram.omega2)
  {
    range.min = std::min(range.min, w(m));
    range.max = std::max(range.max, w(m));
  }
  return range;
}

std::vector<BandGap> FindBandGaps(const DispersionDiagram &diagram)
{
  std::vector<BandGap> gaps;
  for (int m = 0; m + 1 < diagram.count; m++)
  {
    const double lower = RangeOfBranch(diagram, m).max;
    const double upper = RangeOfBranch(diagram, m + 1).min;
    // Branches touching at a degenerate point differ only by roundoff.
    const double tol = 1e-9 * std::max(1.0, std::abs(upper));
    if (upper - lower > tol)
    {
      gaps.push_back({lower, upper, m, m + 1});
    }
  }
  return gaps;
}

void FixPhase(VectorC &v)
{
  Eigen::Index ref = 0;
  if (std::abs(v(0)) < 1e-8)
  {
    v.cwiseAbs().maxCoeff(&ref);
  }
  const double mag = std::abs(v(ref));
  if (mag > 0.0)
  {
    v *= std::conj(v(ref)) / mag;
  }
}

GammaPair EigenpairAtGamma(const BlochOperator &op, int p, double simplicity_tol)
{
  if (p < 0 || p >= op.Size())
  {
    throw ValidationError(fmt::format("branch index p = {} outside [0, {})", p, op.Size()));
  }
  const int count = std::min(p + 2, op.Size());
  const BandSolution bands = SolveBands(op.Stiffness({0.0, 0.0}), op.Mass(), count, true);
  GammaPair out;
  out.p = p;
  out.omega2 = bands.omega2(p);
  out.phi = bands.vectors.col(p);
  FixPhase(out.phi);
  double sep = std::numeric_limits<double>::infinity();
  auto relative = [&](double other)
  {
    const double scale = std::max(std::abs(out.omega2), std::abs(other));
    return (scale > 0.0) ? std::abs(out.omega2 - other) / scale : 0.0;
  };
  if (p > 0)
  {
    sep = std::min(sep, relative(bands.omega2(p - 1)));
  }
  if (p + 1 < count)
  {
    sep = std::min(sep, relative(bands.omega2(p + 1)));
  }
  out.separation = sep;
  out.simple = sep > simplicity_tol;
  return out;
}

}  // namespace blochhom
