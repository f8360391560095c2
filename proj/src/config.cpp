// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/config.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <fmt/format.h>

namespace blochhom
{

using nlohmann::json;

namespace
{

void CheckKeys(const json &j, const std::string &where, const std::set<std::string> &allowed)
{
  if (!j.is_object())
  {
    throw ValidationError(fmt::format("config section '{}' must be a JSON object", where));
  }
  for (const auto &item : j.items())
  {
    if (allowed.count(item.key()) == 0)
    {
      throw ValidationError(fmt::format("unknown config key '{}{}{}'", where,
                                        where.empty() ? "" : ".", item.key()));
    }
  }
}

template <typename T>
T Get(const json &j, const std::string &where, const std::string &key, const T &fallback)
{
  if (!j.contains(key))
  {
    return fallback;
  }
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &)
  {
    throw ValidationError(fmt::format("config key '{}.{}' has the wrong type", where, key));
  }
}

const json &Section(const json &doc, const std::string &key)
{
  static const json empty = json::object();
  return doc.contains(key) ? doc.at(key) : empty;
}

Vec2 ParsePoint(const json &j, int dim, const std::string &where)
{
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
  {
    throw ValidationError(fmt::format("'{}' must be an array of {} numbers", where, dim));
  }
  Vec2 out{0.0, 0.0};
  for (int a = 0; a < dim; a++)
  {
    if (!j[a].is_number())
    {
      throw ValidationError(fmt::format("'{}' must contain numbers", where));
    }
    out[a] = j[a].get<double>();
  }
  return out;
}

void RequirePositiveList(const std::vector<double> &v, const std::string &where)
{
  if (v.empty())
  {
    throw ValidationError(fmt::format("'{}' must not be empty", where));
  }
  for (double x : v)
  {
    if (!(x > 0.0))
    {
      throw ValidationError(fmt::format("'{}' entries must be positive, got {}", where, x));
    }
  }
}

}  // namespace

MediumSpec ParseMedium(const json &doc)
{
  CheckKeys(doc, "medium", {"d", "background", "inclusions", "smoothing"});
  MediumSpec spec;
  spec.dim = Get<int>(doc, "medium", "d", 1);
  const json &bg = Section(doc, "background");
  CheckKeys(bg, "medium.background", {"G", "rho"});
  spec.background.G = Get<double>(bg, "medium.background", "G", 1.0);
  spec.background.rho = Get<double>(bg, "medium.background", "rho", 1.0);
  spec.smoothing = Get<double>(doc, "medium", "smoothing", 0.0);
  if (doc.contains("inclusions"))
  {
    const json &list = doc.at("inclusions");
    if (!list.is_array())
    {
      throw ValidationError("'medium.inclusions' must be an array");
    }
    for (const auto &inc : list)
    {
      CheckKeys(inc, "medium.inclusions[]", {"shape", "center", "radius", "G", "rho"});
      Inclusion out;
      const std::string shape = Get<std::string>(inc, "medium.inclusions[]", "shape", "");
      if (shape == "interval")
      {
        out.shape = Shape::Interval;
      }
      else if (shape == "disk")
      {
        out.shape = Shape::Disk;
      }
      else
      {
        throw ValidationError(
            fmt::format("inclusion shape must be 'interval' or 'disk', got '{}'", shape));
      }
      if (spec.dim == 1 || spec.dim == 2)
      {
        out.center = inc.contains("center")
                         ? ParsePoint(inc.at("center"), spec.dim, "medium.inclusions[].center")
                         : Vec2{0.0, 0.0};
      }
      out.radius = Get<double>(inc, "medium.inclusions[]", "radius", 0.0);
      out.phase.G = Get<double>(inc, "medium.inclusions[]", "G", 1.0);
      out.phase.rho = Get<double>(inc, "medium.inclusions[]", "rho", 1.0);
      spec.inclusions.push_back(out);
    }
  }
  // Construction performs the geometric and positivity checks.
  const Medium validated(spec);
  return spec;
}

json MediumToJson(const MediumSpec &spec)
{
  json inclusions = json::array();
  for (const auto &inc : spec.inclusions)
  {
    json center = json::array();
    for (int a = 0; a < spec.dim; a++)
    {
      center.push_back(inc.center[a]);
    }
    inclusions.push_back({{"shape", inc.shape == Shape::Disk ? "disk" : "interval"},
                          {"center", center},
                          {"radius", inc.radius},
                          {"G", inc.phase.G},
                          {"rho", inc.phase.rho}});
  }
  return {{"d", spec.dim},
          {"background", {{"G", spec.background.G}, {"rho", spec.background.rho}}},
          {"inclusions", inclusions},
          {"smoothing", spec.smoothing}};
}

int RunConfig::Cutoff() const
{
  return (cutoff > 0) ? cutoff : ((medium.dim == 1) ? 64 : 10);
}

int RunConfig::DispersionSamples() const
{
  return (dispersion_samples > 0) ? dispersion_samples : ((medium.dim == 1) ? 65 : 8);
}

ConvergenceConfig RunConfig::Convergence() const
{
  ConvergenceConfig c;
  c.medium = medium;
  c.cutoff = Cutoff();
  c.rule = rule;
  c.p = p;
  c.sigma = sigma;
  c.omega_hat = omega_hat;
  c.eps_list = eps;
  c.quad_rule = quad_rule;
  c.quad_points = quad_points;
  c.source = source;
  c.reference = reference;
  c.mode_count = mode_count;
  c.bloch_reference = bloch_reference;
  c.eval_half_width = eval_half_width;
  c.diagram_samples = DispersionSamples();
  return c;
}

RunConfig ParseConfig(const json &doc)
{
  CheckKeys(doc, "", {"medium", "basis", "branch", "frequency", "source", "quadrature",
                      "dispersion", "expansion", "reference", "converge", "fields", "output"});
  RunConfig c;
  if (!doc.contains("medium"))
  {
    throw ValidationError("config needs a 'medium' section");
  }
  c.medium = ParseMedium(doc.at("medium"));
  const int d = c.medium.dim;

  const json &basis = Section(doc, "basis");
  CheckKeys(basis, "basis", {"cutoff", "stiffness_rule"});
  c.cutoff = Get<int>(basis, "basis", "cutoff", 0);
  c.rule = ParseStiffnessRule(Get<std::string>(basis, "basis", "stiffness_rule", "auto"));
  if (c.cutoff < 0)
  {
    throw ValidationError("basis.cutoff must be >= 1 (or 0 for the default)");
  }

  const json &branch = Section(doc, "branch");
  CheckKeys(branch, "branch", {"p", "simplicity_tol"});
  c.p = Get<int>(branch, "branch", "p", 0);
  c.simplicity_tol = Get<double>(branch, "branch", "simplicity_tol", 1e-6);
  if (c.p < 0)
  {
    throw ValidationError("branch.p must be >= 0");
  }

  const json &freq = Section(doc, "frequency");
  CheckKeys(freq, "frequency", {"sigma", "omega_hat", "eps"});
  c.sigma = Get<int>(freq, "frequency", "sigma", -1);
  c.omega_hat = Get<double>(freq, "frequency", "omega_hat", 1.0);
  c.eps = Get<std::vector<double>>(freq, "frequency", "eps", c.eps);
  if (c.sigma != 1 && c.sigma != -1)
  {
    throw ValidationError("frequency.sigma must be +1 or -1");
  }
  if (!(c.omega_hat > 0.0))
  {
    throw ValidationError("frequency.omega_hat must be positive");
  }
  RequirePositiveList(c.eps, "frequency.eps");

  const json &src = Section(doc, "source");
  CheckKeys(src, "source", {"envelope", "amplitude", "k_max"});
  c.source.envelope = Get<std::string>(src, "source", "envelope", "gaussian");
  c.source.amplitude = Get<double>(src, "source", "amplitude", 1.0);
  c.source.k_max = Get<double>(src, "source", "k_max", kDefaultKMax);
  c.source.Validate();

  const json &quad = Section(doc, "quadrature");
  CheckKeys(quad, "quadrature", {"rule", "points", "mode_count"});
  c.quad_rule = ParseQuadratureRule(Get<std::string>(quad, "quadrature", "rule", "gauss-legendre"));
  c.quad_points = Get<int>(quad, "quadrature", "points", (d == 1) ? 256 : 48);
  c.mode_count = Get<int>(quad, "quadrature", "mode_count", kDefaultModeCount);
  if (c.quad_points < 2)
  {
    throw ValidationError("quadrature.points must be >= 2");
  }

  const json &disp = Section(doc, "dispersion");
  CheckKeys(disp, "dispersion", {"samples", "branches"});
  c.dispersion_samples = Get<int>(disp, "dispersion", "samples", 0);
  c.dispersion_branches = Get<int>(disp, "dispersion", "branches", 14);
  if (c.dispersion_samples < 0 || c.dispersion_branches < 1)
  {
    throw ValidationError("dispersion.samples must be >= 0 and dispersion.branches >= 1");
  }

  const json &exp = Section(doc, "expansion");
  CheckKeys(exp, "expansion", {"khat", "eps"});
  if (exp.contains("khat"))
  {
    c.expansion_khat = ParsePoint(exp.at("khat"), d, "expansion.khat");
  }
  c.expansion_eps = Get<std::vector<double>>(exp, "expansion", "eps", c.expansion_eps);
  RequirePositiveList(c.expansion_eps, "expansion.eps");

  const json &ref = Section(doc, "reference");
  CheckKeys(ref, "reference", {"n_dom", "n_cell", "decay_tol", "subsamples"});
  c.reference.n_dom = Get<int>(ref, "reference", "n_dom", 0);
  c.reference.n_cell = Get<int>(ref, "reference", "n_cell", 64);
  c.reference.decay_tol = Get<double>(ref, "reference", "decay_tol", 1e-6);
  c.reference.subsamples = Get<int>(ref, "reference", "subsamples", 4);
  c.reference.Validate();

  const json &conv = Section(doc, "converge");
  CheckKeys(conv, "converge", {"bloch_reference", "eval_half_width"});
  c.bloch_reference = Get<bool>(conv, "converge", "bloch_reference", d == 1);
  c.eval_half_width = Get<int>(conv, "converge", "eval_half_width", 0);

  const json &fields = Section(doc, "fields");
  CheckKeys(fields, "fields", {"samples_per_cell", "half_width"});
  c.field_samples_per_cell = Get<int>(fields, "fields", "samples_per_cell", 16);
  c.field_half_width = Get<double>(fields, "fields", "half_width", 0.0);
  if (c.field_samples_per_cell < static_cast<int>(kMinSamplesPerCell))
  {
    throw ValidationError(fmt::format("fields.samples_per_cell must be >= {}",
                                      static_cast<int>(kMinSamplesPerCell)));
  }

  const json &out = Section(doc, "output");
  CheckKeys(out, "output", {"directory"});
  c.output_dir = Get<std::string>(out, "output", "directory", "out");
  return c;
}

RunConfig LoadConfig(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ValidationError(fmt::format("cannot open config file '{}'", path));
  }
  json doc;
  try
  {
    in >> doc;
  }
  catch (const json::exception &e)
  {
    throw ValidationError(fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
  }
  return ParseConfig(doc);
}

json CanonicalJson(const RunConfig &c)
{
  json khat = json::array();
  for (int a = 0; a < c.medium.dim; a++)
  {
    khat.push_back(c.expansion_khat[a]);
  }
  return {
      {"medium", MediumToJson(c.medium)},
      {"basis", {{"cutoff", c.Cutoff()}, {"stiffness_rule", ToString(ResolveRule(c.rule, c.medium.dim))}}},
      {"branch", {{"p", c.p}, {"simplicity_tol", c.simplicity_tol}}},
      {"frequency", {{"sigma", c.sigma}, {"omega_hat", c.omega_hat}, {"eps", c.eps}}},
      {"source",
       {{"envelope", c.source.envelope}, {"amplitude", c.source.amplitude}, {"k_max", c.source.k_max}}},
      {"quadrature",
       {{"rule", ToString(c.quad_rule)}, {"points", c.quad_points}, {"mode_count", c.mode_count}}},
      {"dispersion", {{"samples", c.DispersionSamples()}, {"branches", c.dispersion_branches}}},
      {"expansion", {{"khat", khat}, {"eps", c.expansion_eps}}},
      {"reference",
       {{"n_dom", c.reference.n_dom},
        {"n_cell", c.reference.n_cell},
        {"decay_tol", c.reference.decay_tol},
        {"subsamples", c.reference.subsamples}}},
      {"converge", {{"bloch_reference", c.bloch_reference}, {"eval_half_width", c.eval_half_width}}},
      {"fields", {{"samples_per_cell", c.field_samples_per_cell}, {"half_width", c.field_half_width}}},
  };
}

std::string ConfigHash(const RunConfig &config)
{
  const std::string text = CanonicalJson(config).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text)
  {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace blochhom
