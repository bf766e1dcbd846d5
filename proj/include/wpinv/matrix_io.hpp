#pragma once

// Matrix files. JSON is canonical: {"rows": n, "cols": m, "data": [[re, im], ...]}
// in row-major order. CSV is an importer with one row per line and cells
// "a", "a+bi" or "a-bi" (decimal literals, no whitespace).

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wpinv/core.hpp"

namespace wpinv::io {

enum class MatrixFormat { Json, Csv };

/// Csv for a ".csv" extension (case-insensitive), Json otherwise.
MatrixFormat format_for(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const CMatrix& m);
/// Throws ParseError on a malformed document or non-finite entry.
CMatrix matrix_from_json(const nlohmann::json& j);

CMatrix parse_json_matrix(std::string_view text);
/// Throws ParseError naming the offending line.
CMatrix parse_csv_matrix(std::string_view text);

std::string write_json_matrix(const CMatrix& m);
std::string write_csv_matrix(const CMatrix& m);

/// Parses one CSV cell; throws ParseError.
Complex parse_complex_cell(std::string_view cell);
/// Shortest round-trip spelling of a complex cell.
std::string format_complex_cell(Complex z);

/// Throws ParseError when the file cannot be read or parsed.
CMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const CMatrix& m);

/// Whole file as bytes; throws ParseError when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace wpinv::io
