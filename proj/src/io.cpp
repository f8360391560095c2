// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "blochhom/io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <fmt/format.h>

namespace blochhom
{

using nlohmann::json;

namespace
{

constexpr char kMagic[8] = {'B', 'H', 'F', 'I', 'E', 'L', 'D', '1'};

template <typename T>
void Put(std::ofstream &out, const T &value)
{
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
T Take(std::ifstream &in)
{
  T value{};
  in.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!in)
  {
    throw ValidationError("binary field file is truncated");
  }
  return value;
}

}  // namespace

std::string ToolVersion()
{
  return BLOCHHOM_VERSION;
}

std::string ProvenanceComment(const std::string &command, const std::string &hash)
{
  return fmt::format("# blochhom {} command={} config_hash={}", ToolVersion(), command, hash);
}

json ProvenanceJson(const std::string &command, const std::string &hash)
{
  return {{"tool", "blochhom"}, {"version", ToolVersion()}, {"command", command},
          {"config_hash", hash}};
}

void WriteFile(const std::filesystem::path &path, const std::string &content)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  }
  out << content;
}

std::string FormatNumber(double value)
{
  return fmt::format("{}", value);
}

std::string FieldToCsv(const FieldOnGrid &field, const std::string &provenance)
{
  const Grid &g = field.grid;
  std::string out = provenance + "\n";
  out += fmt::format("# field={} frame={} eps={} p={} sigma={} omega_hat={}\n", field.meta.name,
                     ToString(g.frame), FormatNumber(field.meta.eps), field.meta.p,
                     field.meta.sigma, FormatNumber(field.meta.omega_hat));
  out += (g.dim == 2) ? "x1,x2,re,im\n" : "x1,re,im\n";
  const auto a0 = g.Axis(0);
  const auto a1 = g.Axis(1);
  for (int i = 0; i < g.count[0]; i++)
  {
    for (int j = 0; j < g.count[1]; j++)
    {
      const Complex v = field.values(i, j);
      if (g.dim == 2)
      {
        out += fmt::format("{},{},{},{}\n", a0[i], a1[j], v.real(), v.imag());
      }
      else
      {
        out += fmt::format("{},{},{}\n", a0[i], v.real(), v.imag());
      }
    }
  }
  return out;
}

void WriteFieldBinary(const std::filesystem::path &path, const FieldOnGrid &field,
                      const std::string &hash)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  }
  const Grid &g = field.grid;
  out.write(kMagic, sizeof(kMagic));
  Put<std::int32_t>(out, g.dim);
  Put<std::int32_t>(out, g.frame == Frame::Fast ? 0 : 1);
  Put<std::int32_t>(out, g.count[0]);
  Put<std::int32_t>(out, g.count[1]);
  Put<double>(out, field.meta.eps);
  Put<double>(out, g.origin[0]);
  Put<double>(out, g.origin[1]);
  Put<double>(out, g.spacing[0]);
  Put<double>(out, g.spacing[1]);
  std::array<char, 16> h{};
  std::memcpy(h.data(), hash.data(), std::min<std::size_t>(hash.size(), h.size()));
  out.write(h.data(), h.size());
  for (int i = 0; i < g.count[0]; i++)
  {
    for (int j = 0; j < g.count[1]; j++)
    {
      Put<double>(out, field.values(i, j).real());
      Put<double>(out, field.values(i, j).imag());
    }
  }
}

FieldOnGrid ReadFieldBinary(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ValidationError(fmt::format("cannot read '{}'", path.string()));
  }
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
  {
    throw ValidationError(fmt::format("'{}' is not a blochhom field file", path.string()));
  }
  FieldOnGrid f;
  f.grid.dim = Take<std::int32_t>(in);
  f.grid.frame = (Take<std::int32_t>(in) == 0) ? Frame::Fast : Frame::Slow;
  f.grid.count[0] = Take<std::int32_t>(in);
  f.grid.count[1] = Take<std::int32_t>(in);
  f.meta.eps = Take<double>(in);
  f.grid.origin[0] = Take<double>(in);
  f.grid.origin[1] = Take<double>(in);
  f.grid.spacing[0] = Take<double>(in);
  f.grid.spacing[1] = Take<double>(in);
  std::array<char, 16> h{};
  in.read(h.data(), h.size());
  f.values.resize(f.grid.count[0], f.grid.count[1]);
  for (int i = 0; i < f.grid.count[0]; i++)
  {
    for (int j = 0; j < f.grid.count[1]; j++)
    {
      const double re = Take<double>(in);
      const double im = Take<double>(in);
      f.values(i, j) = Complex(re, im);
    }
  }
  return f;
}

json TensorToJson(const TensorC &tau)
{
  json re = json::array(), im = json::array();
  for (std::size_t f = 0; f < tau.Size(); f++)
  {
    re.push_back(tau[f].real());
    im.push_back(tau[f].imag());
  }
  return {{"dim", tau.Dim()}, {"rank", tau.Rank()}, {"re", re}, {"im", im}};
}

json EffectiveToJson(const EffectiveCoefficients &c)
{
  return {{"p", c.p},
          {"omega2", c.omega2},
          {"alpha", c.alpha},
          {"rho0", c.rho0},
          {"mu0", TensorToJson(c.mu0)},
          {"mu2", TensorToJson(c.mu2)},
          {"C1", TensorToJson(c.C1)},
          {"diagnostics",
           {{"rho1", TensorToJson(c.rho1)},
            {"mu1", TensorToJson(c.mu1)},
            {"rho2", TensorToJson(c.rho2)},
            {"rho1_norm", c.Rho1Norm()},
            {"mu1_norm", c.Mu1Norm()},
            {"rho2_norm", c.Rho2Norm()},
            {"mu2_asymmetry", c.mu2_asymmetry},
            {"tolerances_met", c.tolerances_met}}}};
}

json StatsToJson(const SolveStats &s)
{
  return {{"solves", s.solves},
          {"compatibility", s.compatibility},
          {"residual", s.residual},
          {"zero_mean", s.zero_mean}};
}

}  // namespace blochhom
