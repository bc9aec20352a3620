#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sphangle/matrix.hpp"

namespace sphangle {

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

/// One matrix as CSV text: comma separator, '.' decimal, one row per line,
/// no header, shortest round-trip floats.
std::string matrix_to_csv(std::size_t n, std::size_t p, const double* values);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Reads a numeric CSV matrix. A non-numeric first line is treated as an
/// optional header; any other unparsable token, inconsistent column count or
/// non-finite value raises std::runtime_error naming the 1-based line.
DataMatrix read_matrix_csv(const std::filesystem::path& path);
DataMatrix parse_matrix_csv(const std::string& text, const std::string& origin);

/// FNV-1a 64-bit digest, hex-encoded; used for output-file digests in
/// manifests and reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace sphangle
