// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hashtopics contributors

#pragma once

#include <filesystem>
#include <string>

namespace hashtopics {

/// Shortest exact decimal rendering of a double (%.17g round-trips, then
/// trimmed). Used everywhere a floating value lands in a text artifact so
/// that repeated runs produce byte-identical files.
std::string format_double(double value);

/// Hex-encoded SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

/// Reads a whole file into a string. Throws on missing file.
std::string read_file(const std::filesystem::path& path);

/// Writes a string to a file, replacing any previous contents.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace hashtopics
