// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <CLI11.hpp>
#include "blochhom/commands.hpp"
#include "blochhom/io.hpp"

using namespace blochhom;

int main(int argc, char **argv)
{
  CLI::App app{"Bloch-wave homogenization of periodic media near band edges"};
  app.set_version_flag("--version", ToolVersion());
  app.require_subcommand(1, 1);

  std::string config_path, out_dir, line;
  bool normalized = false, verbose = false;

  struct Entry
  {
    const char *name;
    const char *help;
  };
  const Entry entries[] = {
      {"dispersion", "sample the dispersion diagram along the Brillouin zone"},
      {"gaps", "list complete band gaps"},
      {"cell", "solve the first three cell problems at k = 0"},
      {"effective", "effective coefficients and the small-k dispersion check"},
      {"fields", "exact, branch and homogenized fields on a grid"},
      {"converge", "error sweep over eps against the reference solutions"}};
  for (const auto &e : entries)
  {
    CLI::App *sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->add_flag("--verbose", verbose, "progress messages on stderr");
    if (std::string(e.name) == "dispersion")
    {
      sub->add_flag("--normalized", normalized, "k in units of pi, omega in units of c_1");
    }
    if (std::string(e.name) == "fields")
    {
      sub->add_option("--line", line, "2D only: transect y = y0 in slow coordinates (y0=<v>)");
    }
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return (code == 0) ? kExitOk : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CommandOptions options;
  options.out_dir = out_dir;
  options.normalized = normalized;
  options.verbose = verbose;
  RunConfig config;
  try
  {
    if (!line.empty())
    {
      options.line_y0 = ParseLineOption(line);
    }
    config = LoadConfig(config_path);
  }
  catch (const Error &e)
  {
    std::cerr << "blochhom " << command << ": " << e.Name() << ": " << e.what() << "\n";
    return kExitValidation;
  }
  return RunCommand(command, config, options);
}
