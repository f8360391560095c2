// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_COMMANDS_HPP
#define BLOCHHOM_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>
#include "blochhom/config.hpp"

namespace blochhom
{

// Process exit codes of the command-line tool.
enum ExitCode : int
{
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumerical = 3,
  kExitAcceptance = 4
};

struct CommandOptions
{
  std::string out_dir;  // overrides the config's output directory when non-empty
  bool normalized = false;
  std::optional<double> line_y0;  // slow-frame transect y = y0 for 2D fields
  bool verbose = false;
};

struct CommandResult
{
  int exit_code = kExitOk;
  std::vector<std::string> files;
  std::string summary;
};

CommandResult RunDispersionCommand(const RunConfig &config, const CommandOptions &options);
CommandResult RunGapsCommand(const RunConfig &config, const CommandOptions &options);
CommandResult RunCellCommand(const RunConfig &config, const CommandOptions &options);
CommandResult RunEffectiveCommand(const RunConfig &config, const CommandOptions &options);
CommandResult RunFieldsCommand(const RunConfig &config, const CommandOptions &options);
CommandResult RunConvergeCommand(const RunConfig &config, const CommandOptions &options);

// Dispatches by subcommand name; library errors are mapped to exit codes 2 and 3 and
// reported on stderr together with the error name.
int RunCommand(const std::string &name, const RunConfig &config, const CommandOptions &options);

// Parses "y0=<value>".
double ParseLineOption(const std::string &text);

}  // namespace blochhom

#endif  // BLOCHHOM_COMMANDS_HPP
