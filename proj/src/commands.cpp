// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <fmt/format.h>
#include "blochhom/cell.hpp"
#include "blochhom/convergence.hpp"
#include "blochhom/fields.hpp"
#include "blochhom/io.hpp"
#include "blochhom/reference.hpp"

namespace blochhom
{

using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

struct Context
{
  const RunConfig &config;
  const CommandOptions &options;
  std::string command;
  std::string hash;
  fs::path out;
  CommandResult result;

  Context(const RunConfig &c, const CommandOptions &o, std::string name)
    : config(c), options(o), command(std::move(name)), hash(ConfigHash(c)),
      out(o.out_dir.empty() ? c.output_dir : o.out_dir)
  {
  }

  void Log(const std::string &message) const
  {
    if (options.verbose)
    {
      std::cerr << "[" << command << "] " << message << "\n";
    }
  }

  void Write(const std::string &name, const std::string &content)
  {
    const fs::path path = out / name;
    WriteFile(path, content);
    result.files.push_back(path.string());
    Log("wrote " + path.string());
  }

  void WriteJson(const std::string &name, json payload)
  {
    payload["provenance"] = ProvenanceJson(command, hash);
    Write(name, payload.dump(2) + "\n");
  }
};

std::vector<Vec2> DiagramSamples(const RunConfig &config)
{
  return (config.medium.dim == 1) ? UniformZone1D(config.DispersionSamples())
                                  : BrillouinPath(config.DispersionSamples());
}

DispersionDiagram BuildDiagram(const BlochOperator &op, const RunConfig &config, int branches)
{
  return ComputeDispersion(op, DiagramSamples(config), std::min(branches, op.Size()));
}

json VectorToJson(const VectorC &v)
{
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

json CellTensorToJson(const CellTensor &T)
{
  json comps = json::array();
  for (std::size_t f = 0; f < T.Size(); f++)
  {
    comps.push_back(VectorToJson(T[f]));
  }
  return {{"rank", T.Rank()}, {"components", comps}};
}

std::string EpsTag(double eps)
{
  return fmt::format("eps_{}", eps);
}

}  // namespace

double ParseLineOption(const std::string &text)
{
  const std::string prefix = "y0=";
  if (text.rfind(prefix, 0) != 0)
  {
    throw ValidationError(fmt::format("--line expects y0=<value>, got '{}'", text));
  }
  try
  {
    std::size_t used = 0;
    const std::string number = text.substr(prefix.size());
    const double v = std::stod(number, &used);
    if (used != number.size())
    {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  }
  catch (const std::exception &)
  {
    throw ValidationError(fmt::format("--line value in '{}' is not a number", text));
  }
}

CommandResult RunDispersionCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "dispersion");
  const Medium medium(config.medium);
  const BlochOperator op(medium, config.Cutoff(), config.rule);
  ctx.Log(fmt::format("basis size {}, {} k samples", op.Size(), DiagramSamples(config).size()));
  const DispersionDiagram diagram = BuildDiagram(op, config, config.dispersion_branches);
  const double k0 = options.normalized ? kPi : 1.0;
  const double w0 =
      options.normalized ? std::sqrt(config.medium.background.G / config.medium.background.rho)
                         : 1.0;
  std::string csv = ProvenanceComment(ctx.command, ctx.hash) + "\n";
  csv += "k_index,k_1,k_2,m,omega\n";
  for (std::size_t i = 0; i < diagram.k.size(); i++)
  {
    for (int m = 0; m < diagram.count; m++)
    {
      const double omega = std::sqrt(std::max(diagram.omega2[i](m), 0.0));
      csv += fmt::format("{},{},{},{},{}\n", i, diagram.k[i][0] / k0, diagram.k[i][1] / k0, m,
                         omega / w0);
    }
  }
  ctx.Write("dispersion.csv", csv);
  ctx.result.summary = fmt::format("{} k samples x {} branches", diagram.k.size(), diagram.count);
  return ctx.result;
}

CommandResult RunGapsCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "gaps");
  const Medium medium(config.medium);
  const BlochOperator op(medium, config.Cutoff(), config.rule);
  const DispersionDiagram diagram = BuildDiagram(op, config, config.dispersion_branches);
  const std::vector<BandGap> gaps = FindBandGaps(diagram);
  json list = json::array();
  for (const auto &g : gaps)
  {
    list.push_back({{"lower_branch", g.lower_branch},
                    {"upper_branch", g.upper_branch},
                    {"omega2_lower", g.lower},
                    {"omega2_upper", g.upper},
                    {"omega_lower", std::sqrt(std::max(g.lower, 0.0))},
                    {"omega_upper", std::sqrt(std::max(g.upper, 0.0))}});
  }
  ctx.WriteJson("gaps.json", {{"branches", diagram.count},
                              {"samples", diagram.k.size()},
                              {"count", gaps.size()},
                              {"gaps", list}});
  ctx.result.summary = fmt::format("{} complete gaps among {} branches", gaps.size(), diagram.count);
  return ctx.result;
}

CommandResult RunCellCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "cell");
  const Medium medium(config.medium);
  const BlochOperator op(medium, config.Cutoff(), config.rule);
  const Homogenization hom = Homogenize(op, config.p, config.simplicity_tol);
  json indices = json::array();
  for (int a = 0; a < op.Size(); a++)
  {
    const auto &j = op.Basis().Index(a);
    indices.push_back((op.Dim() == 2) ? json::array({j[0], j[1]}) : json::array({j[0]}));
  }
  ctx.WriteJson("cell.json",
                {{"p", config.p},
                 {"omega2", hom.gamma.omega2},
                 {"separation", hom.gamma.separation},
                 {"basis", indices},
                 {"phi", VectorToJson(hom.gamma.phi)},
                 {"chi1", CellTensorToJson(hom.cells.chi1)},
                 {"chi2", CellTensorToJson(hom.cells.chi2)},
                 {"chi3", CellTensorToJson(hom.cells.chi3)},
                 {"solve_stats", StatsToJson(hom.cells.stats)}});
  ctx.result.summary = fmt::format("{} constrained solves, worst compatibility {:.2e}",
                                   hom.cells.stats.solves, hom.cells.stats.compatibility);
  return ctx.result;
}

CommandResult RunEffectiveCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "effective");
  const Medium medium(config.medium);
  const BlochOperator op(medium, config.Cutoff(), config.rule);
  const Homogenization hom = Homogenize(op, config.p, config.simplicity_tol);
  const DispersionExpansion expansion = DispersionExpansion::From(hom.coeffs);
  for (double e : config.expansion_eps)
  {
    const double kmax = e * std::max(std::abs(config.expansion_khat[0]),
                                     std::abs(config.expansion_khat[1]));
    if (kmax > kPi)
    {
      throw ValidationError(fmt::format(
          "expansion eps {} moves eps * khat outside the Brillouin zone", e));
    }
  }
  const ExpansionCheck check =
      DispersionExpansionCheck(op, expansion, config.expansion_khat, config.expansion_eps);
  json payload = EffectiveToJson(hom.coeffs);
  payload["solve_stats"] = StatsToJson(hom.cells.stats);
  payload["expansion"] = {{"khat", {config.expansion_khat[0], config.expansion_khat[1]}},
                          {"omega0_2", expansion.omega0_2},
                          {"omega2_2", expansion.Omega2(config.expansion_khat)},
                          {"omega4_2", expansion.Omega4(config.expansion_khat)},
                          {"eps", check.eps},
                          {"exact", check.exact},
                          {"remainder", check.remainder},
                          {"slope", std::isfinite(check.slope) ? json(check.slope) : json()}};
  ctx.WriteJson("effective.json", payload);
  ctx.result.summary = fmt::format("mu0/rho0 = {}, tolerances met: {}",
                                   hom.coeffs.mu0[0].real() / hom.coeffs.rho0,
                                   hom.coeffs.tolerances_met);
  return ctx.result;
}

CommandResult RunFieldsCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "fields");
  const Medium medium(config.medium);
  const int d = medium.Dim();
  if (options.line_y0 && d != 2)
  {
    throw ValidationError("--line is only meaningful for 2D media");
  }
  const BlochOperator op(medium, config.Cutoff(), config.rule);
  const Homogenization hom = Homogenize(op, config.p, config.simplicity_tol);
  const DispersionDiagram diagram = BuildDiagram(op, config, config.p + 3);
  const WavenumberQuadrature quad(d, config.quad_rule, config.quad_points, config.source.k_max);
  json summary = json::array();
  for (double eps : config.eps)
  {
    const FrequencySpec freq =
        MakeFrequency(hom.gamma, diagram, config.sigma, config.omega_hat, eps);
    const double half = (config.field_half_width > 0.0)
                            ? config.field_half_width
                            : config.reference.DomainHalfWidth(eps) + 0.5;
    Grid grid = CenteredGrid(d, Frame::Fast, half, config.field_samples_per_cell);
    if (options.line_y0)
    {
      grid.count[1] = 1;
      grid.origin[1] = *options.line_y0 / eps;
    }
    CheckResolution(grid, eps);
    ctx.Log(fmt::format("eps = {}: {} grid points", eps, grid.Size()));
    std::vector<FieldOnGrid> fields;
    json info = {{"eps", eps}, {"omega2", freq.Omega2()}};
    if (config.bloch_reference)
    {
      const BlochSynthesis u =
          ExactBlochSolution(op, hom.gamma, freq, config.source, quad, config.mode_count, grid);
      const BlochSynthesis up = BranchSolution(op, hom.gamma, freq, config.source, quad, grid);
      info["tail"] = u.tail;
      info["min_denominator"] = u.min_denominator;
      fields.push_back(u.field);
      fields.push_back(up.field);
    }
    fields.push_back(EffectiveEnvelope(hom.coeffs, freq, config.source, quad, 0, grid));
    fields.push_back(EffectiveEnvelope(hom.coeffs, freq, config.source, quad, 2, grid));
    for (int m = 0; m < 3; m++)
    {
      fields.push_back(HomogenizedField(op, hom, freq, config.source, quad, m, grid));
    }
    FieldOnGrid f = SampleSource(op, hom.gamma, config.source, freq, grid);
    fields.push_back(f);
    json residues = json::object();
    for (const auto &field : fields)
    {
      const std::string base = EpsTag(eps) + "/" + field.meta.name;
      ctx.Write(base + ".csv",
                FieldToCsv(field, ProvenanceComment(ctx.command, ctx.hash)));
      const fs::path bin = ctx.out / (base + ".bin");
      WriteFieldBinary(bin, field, ctx.hash);
      ctx.result.files.push_back(bin.string());
      residues[field.meta.name] = field.ImagResidue();
    }
    info["imag_residue"] = residues;
    summary.push_back(info);
  }
  ctx.WriteJson("fields.json", {{"runs", summary}});
  ctx.result.summary = fmt::format("{} files written", ctx.result.files.size());
  return ctx.result;
}

CommandResult RunConvergeCommand(const RunConfig &config, const CommandOptions &options)
{
  Context ctx(config, options, "converge");
  const ConvergenceReport report = RunConvergence(config.Convergence());
  std::string csv = ProvenanceComment(ctx.command, ctx.hash) + "\n";
  csv += "eps,order,error,error_bloch\n";
  json runs = json::array();
  for (const auto &r : report.runs)
  {
    for (int m = 0; m < 3; m++)
    {
      csv += fmt::format("{},{},{},{}\n", r.eps, m, r.error_fd[m],
                         report.has_bloch ? fmt::format("{}", r.error_bloch[m]) : "");
    }
    runs.push_back({{"eps", r.eps},
                    {"n_dom", r.n_dom},
                    {"omega2", r.omega2},
                    {"boundary_ratio", r.boundary_ratio},
                    {"error", r.error_fd},
                    {"error_bloch", report.has_bloch ? json(r.error_bloch) : json()},
                    {"fd_vs_bloch", report.has_bloch ? json(r.fd_vs_bloch) : json()},
                    {"imag_residue", r.imag_residue},
                    {"tail", r.tail}});
  }
  json slopes = json::object();
  if (report.slopes_fitted)
  {
    for (int m = 0; m < 3; m++)
    {
      slopes[fmt::format("m{}", m)] = {
          {"slope", report.slopes_fd[m].slope},
          {"residual", report.slopes_fd[m].residual},
          {"slope_bloch", report.has_bloch ? json(report.slopes_bloch[m].slope) : json()}};
    }
  }
  const bool ordering = report.OrderingHolds();
  bool pass = ordering;
  if (report.slopes_fitted)
  {
    pass = pass && report.SlopesInBands() && report.MonotoneInEps();
    if (report.has_bloch)
    {
      pass = pass && report.ReferencesAgree();
    }
  }
  csv += "# slopes";
  for (int m = 0; m < 3 && report.slopes_fitted; m++)
  {
    csv += fmt::format(" m{}={}", m, report.slopes_fd[m].slope);
  }
  csv += "\n";
  ctx.Write("converge.csv", csv);
  ctx.WriteJson("converge.json", {{"runs", runs},
                                  {"slopes", slopes},
                                  {"ordering_holds", ordering},
                                  {"acceptance", pass},
                                  {"effective", EffectiveToJson(report.coeffs)},
                                  {"solve_stats", StatsToJson(report.cell_stats)}});
  ctx.result.exit_code = pass ? kExitOk : kExitAcceptance;
  if (report.slopes_fitted)
  {
    ctx.result.summary = pass ? "convergence bands met" : "convergence bands violated";
  }
  else
  {
    ctx.result.summary = fmt::format("error ordering {} (slopes need at least two eps values)",
                                     ordering ? "holds" : "violated");
  }
  return ctx.result;
}

int RunCommand(const std::string &name, const RunConfig &config, const CommandOptions &options)
{
  try
  {
    CommandResult result;
    if (name == "dispersion")
    {
      result = RunDispersionCommand(config, options);
    }
    else if (name == "gaps")
    {
      result = RunGapsCommand(config, options);
    }
    else if (name == "cell")
    {
      result = RunCellCommand(config, options);
    }
    else if (name == "effective")
    {
      result = RunEffectiveCommand(config, options);
    }
    else if (name == "fields")
    {
      result = RunFieldsCommand(config, options);
    }
    else if (name == "converge")
    {
      result = RunConvergeCommand(config, options);
    }
    else
    {
      throw ValidationError(fmt::format("unknown subcommand '{}'", name));
    }
    std::cout << name << ": " << result.summary << "\n";
    return result.exit_code;
  }
  catch (const Error &e)
  {
    std::cerr << "blochhom " << name << ": " << e.what() << "\n";
    return (e.Category() == ErrorCategory::Validation) ? kExitValidation : kExitNumerical;
  }
  catch (const std::filesystem::filesystem_error &e)
  {
    std::cerr << "blochhom " << name << ": " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace blochhom
