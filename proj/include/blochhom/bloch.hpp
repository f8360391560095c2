// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_BLOCH_HPP
#define BLOCHHOM_BLOCH_HPP

#include <string>
#include <vector>
#include "blochhom/basis.hpp"
#include "blochhom/common.hpp"
#include "blochhom/medium.hpp"

namespace blochhom
{

//
// How the stiffness weight G enters the plane-wave operator. Laurent uses the Toeplitz
// matrix of G directly; Inverse uses the inverse of the Toeplitz matrix of 1/G, which is
// the correct factorization across sharp interfaces in 1D. Auto picks Inverse in 1D and
// Laurent in 2D.
//
enum class StiffnessRule
{
  Auto,
  Laurent,
  Inverse
};

StiffnessRule ResolveRule(StiffnessRule rule, int dim);
std::string ToString(StiffnessRule rule);
StiffnessRule ParseStiffnessRule(const std::string &name);

struct OperatorPair
{
  MatrixC stiffness;
  MatrixC mass;
};

// Galerkin matrices of the shifted operator at wavevector k from a precomputed table; the
// table cutoff must be at least twice the basis cutoff.
OperatorPair AssembleOperator(const CoefficientTable &table, const PlaneWaveBasis &basis,
                              const Vec2 &k, StiffnessRule rule = StiffnessRule::Auto);
OperatorPair AssembleOperator(const Medium &medium, const PlaneWaveBasis &basis, const Vec2 &k,
                              StiffnessRule rule = StiffnessRule::Auto);

//
// Cached k-independent pieces of the Bloch operator: the mass matrix B, the flux matrix
// Ghat and the derivative symbols. The stiffness at k is sum_a (D_a + k_a) Ghat (D_a + k_a).
//
class BlochOperator
{
public:
  BlochOperator(const Medium &medium, int cutoff, StiffnessRule rule = StiffnessRule::Auto);

  const Medium &GetMedium() const { return medium_; }
  const PlaneWaveBasis &Basis() const { return basis_; }
  int Dim() const { return basis_.Dim(); }
  int Size() const { return basis_.Size(); }
  StiffnessRule Rule() const { return rule_; }

  const MatrixC &Mass() const { return mass_; }
  const MatrixC &Flux() const { return flux_; }
  MatrixC Stiffness(const Vec2 &k) const;

  // D_a Ghat + Ghat D_a: the derivative of the stiffness with respect to k_a.
  MatrixC FirstOrder(int axis) const;

  // D_a v, with D_a = diag(2 pi j_a).
  VectorC Derivative(int axis, const VectorC &v) const;

private:
  Medium medium_;
  PlaneWaveBasis basis_;
  StiffnessRule rule_;
  MatrixC mass_, flux_;
};

struct BandSolution
{
  Vec2 k{0.0, 0.0};
  VectorR omega2;                     // ascending
  MatrixC vectors;                    // columns are mass-orthonormal eigenvectors (may be empty)
  double orthonormality_residual = 0.0;  // max |V^H B V - I|, when vectors are present
};

// Lowest `count` eigenpairs of K v = w B v by Cholesky reduction of B.
BandSolution SolveBands(const MatrixC &stiffness, const MatrixC &mass, int count,
                        bool vectors = true);

struct DispersionDiagram
{
  int dim = 1;
  int count = 0;
  std::vector<Vec2> k;
  std::vector<double> path;  // arc length along the sample path
  std::vector<VectorR> omega2;
};

// Gamma-X-M-Gamma path with `per_segment` samples per leg (closing Gamma included).
std::vector<Vec2> BrillouinPath(int per_segment);
// Uniform samples of [-pi, pi] including both ends.
std::vector<Vec2> UniformZone1D(int samples);

DispersionDiagram ComputeDispersion(const BlochOperator &op, const std::vector<Vec2> &k_samples,
                                    int count);

struct BandGap
{
  double lower = 0.0;  // max over k of the lower branch
  double upper = 0.0;  // min over k of the upper branch
  int lower_branch = 0;
  int upper_branch = 1;
};

struct BranchRange
{
  double min = 0.0, max = 0.0;
};

BranchRange RangeOfBranch(const DispersionDiagram &diagram, int m);
std::vector<BandGap> FindBandGaps(const DispersionDiagram &diagram);

//
// Eigenpair at k = 0 with phase fixing: the cell average of phi is made real and positive
// (or, when it vanishes, the largest Fourier coefficient).
//
struct GammaPair
{
  int p = 0;
  double omega2 = 0.0;
  VectorC phi;             // mass-normalized coefficients
  bool simple = false;
  double separation = 0.0;  // relative distance to the nearest neighbour eigenvalue
};

GammaPair EigenpairAtGamma(const BlochOperator &op, int p, double simplicity_tol = 1e-6);

// Rotates v so that the chosen reference coefficient is real and positive.
void FixPhase(VectorC &v);

}  // namespace blochhom

#endif  // BLOCHHOM_BLOCH_HPP
