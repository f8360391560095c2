// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_CONFIG_HPP
#define BLOCHHOM_CONFIG_HPP

#include <string>
#include <vector>
#include <json.hpp>
#include "blochhom/bloch.hpp"
#include "blochhom/convergence.hpp"
#include "blochhom/medium.hpp"
#include "blochhom/quadrature.hpp"
#include "blochhom/reference.hpp"
#include "blochhom/source.hpp"

namespace blochhom
{

//
// Run configuration shared by every subcommand. Parsing fills defaults, rejects unknown
// keys at every level and validates ranges before any computation starts.
//
struct RunConfig
{
  MediumSpec medium;
  int cutoff = 0;  // 0 = 64 in 1D, 10 in 2D
  StiffnessRule rule = StiffnessRule::Auto;

  int p = 0;
  double simplicity_tol = 1e-6;
  int sigma = -1;
  double omega_hat = 1.0;
  std::vector<double> eps = {0.5, 0.375, 0.25};

  SourceSpec source;
  QuadratureRule quad_rule = QuadratureRule::GaussLegendre;
  int quad_points = 256;
  int mode_count = kDefaultModeCount;

  int dispersion_samples = 0;  // 0 = 65 uniform samples in 1D, 8 per leg in 2D
  int dispersion_branches = 14;

  Vec2 expansion_khat{8.0, 0.0};
  std::vector<double> expansion_eps = {0.04, 0.02, 0.01};

  ReferenceConfig reference;
  bool bloch_reference = true;
  int eval_half_width = 0;

  int field_samples_per_cell = 16;
  double field_half_width = 0.0;  // fast-frame half-width; 0 = the reference domain

  std::string output_dir = "out";

  int Cutoff() const;
  int DispersionSamples() const;
  ConvergenceConfig Convergence() const;
};

RunConfig ParseConfig(const nlohmann::json &doc);
RunConfig LoadConfig(const std::string &path);

// Canonical JSON of the semantic content (defaults filled, output directory excluded).
nlohmann::json CanonicalJson(const RunConfig &config);

// 64-bit FNV-1a hash of the canonical JSON, as 16 hex digits.
std::string ConfigHash(const RunConfig &config);

MediumSpec ParseMedium(const nlohmann::json &doc);
nlohmann::json MediumToJson(const MediumSpec &spec);

}  // namespace blochhom

#endif  // BLOCHHOM_CONFIG_HPP
