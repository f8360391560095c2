// Copyright (c) 2026 The blochhom authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BLOCHHOM_IO_HPP
#define BLOCHHOM_IO_HPP

#include <filesystem>
#include <string>
#include <json.hpp>
#include "blochhom/cell.hpp"
#include "blochhom/grid.hpp"
#include "blochhom/tensor.hpp"

namespace blochhom
{

std::string ToolVersion();

// "# blochhom <version> command=<cmd> config_hash=<hash>", the first line of every CSV.
std::string ProvenanceComment(const std::string &command, const std::string &hash);
nlohmann::json ProvenanceJson(const std::string &command, const std::string &hash);

// Writes text to a file, creating parent directories as needed.
void WriteFile(const std::filesystem::path &path, const std::string &content);

// Shortest round-trip decimal form.
std::string FormatNumber(double value);

// CSV with columns x1[,x2],re,im in the grid's frame.
std::string FieldToCsv(const FieldOnGrid &field, const std::string &provenance);

//
// Binary layout (little endian): 8-byte magic "BHFIELD1", int32 dim, int32 frame (0 fast,
// 1 slow), int32 count0, int32 count1, float64 eps, float64 origin[2], float64 spacing[2],
// 16-byte ASCII config hash, then count0 * count1 (re, im) float64 pairs, row-major.
//
void WriteFieldBinary(const std::filesystem::path &path, const FieldOnGrid &field,
                      const std::string &hash);
FieldOnGrid ReadFieldBinary(const std::filesystem::path &path);

nlohmann::json TensorToJson(const TensorC &tau);
nlohmann::json EffectiveToJson(const EffectiveCoefficients &coeffs);
nlohmann::json StatsToJson(const SolveStats &stats);

}  // namespace blochhom

#endif  // BLOCHHOM_IO_HPP
