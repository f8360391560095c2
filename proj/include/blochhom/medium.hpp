// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_MEDIUM_HPP
#define BLOCHHOM_MEDIUM_HPP

#include <vector>
#include "blochhom/common.hpp"

namespace blochhom
{

enum class Shape
{
  Interval,
  Disk
};

// Material constants of one phase: stiffness G and density rho.
struct Phase
{
  double G = 1.0;
  double rho = 1.0;
};

struct Inclusion
{
  Shape shape = Shape::Interval;
  Vec2 center{0.0, 0.0};
  double radius = 0.0;  // half-length for intervals
  Phase phase;
};

struct MediumSpec
{
  int dim = 1;
  Phase background;
  std::vector<Inclusion> inclusions;
  double smoothing = 0.0;  // Gaussian mollifier width in cell units
};

// Which periodic field to query. Compliance is 1/G, needed by the inverse factorization
// rule for the stiffness operator.
enum class Field
{
  Stiffness,
  Density,
  Compliance
};

//
// Truncated Fourier coefficients of G, rho and 1/G with respect to exp(i 2 pi n.x) on the
// unit cell, stored for all |n|_inf <= cutoff.
//
class CoefficientTable
{
public:
  CoefficientTable(int dim, int cutoff);

  int Dim() const { return dim_; }
  int Cutoff() const { return cutoff_; }

  // Coefficient at multi-index (n0, n1); n1 must be 0 in 1D. Throws if out of range.
  Complex operator()(Field field, int n0, int n1 = 0) const;
  Complex &Ref(Field field, int n0, int n1 = 0);
  bool Contains(int n0, int n1 = 0) const;

private:
  std::size_t Index(int n0, int n1) const;
  std::vector<Complex> &Data(Field field);
  const std::vector<Complex> &Data(Field field) const;

  int dim_, cutoff_, width_;
  std::vector<Complex> G_, rho_, compliance_;
};

//
// Validated periodic medium: pointwise evaluation of the sharp coefficients and analytic
// Fourier tables.
//
class Medium
{
public:
  explicit Medium(MediumSpec spec);

  const MediumSpec &Spec() const { return spec_; }
  int Dim() const { return spec_.dim; }

  // Exact piecewise value at a point given in cell coordinates; the point is wrapped into
  // [-1/2, 1/2)^d first. The smoothing width does not enter this path.
  double Evaluate(Field field, const Vec2 &x) const;

  // Cell average of the sharp field (analytic).
  double Average(Field field) const;

  // Analytic Fourier table with |n|_inf <= cutoff, mollified when smoothing > 0.
  CoefficientTable FourierTable(int cutoff) const;

  // Exact integral of the sharp field over [a, b] (1D media only). The finite-difference
  // reference uses it for face and node averages.
  double Integral1D(Field field, double a, double b) const;

private:
  double Value(Field field, const Phase &phase) const;

  MediumSpec spec_;
};

// Convenience factory used by tests and the CLI recipes.
MediumSpec HomogeneousSpec(int dim, double G = 1.0, double rho = 1.0);
MediumSpec TwoPhaseLayeredSpec(double half_length = 0.25, Phase inclusion = {6.0, 20.0},
                               Phase background = {1.0, 1.0}, double smoothing = 0.0);
MediumSpec DiskSpec(double radius = 0.3, Phase inclusion = {6.0, 20.0},
                    Phase background = {1.0, 1.0}, double smoothing = 0.0);

}  // namespace blochhom

#endif  // BLOCHHOM_MEDIUM_HPP
