#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "idemdyn/core.hpp"
#include "idemdyn/dynamics.hpp"

namespace idemdyn {

/// Matrix files are JSON documents {"n": <int>, "entries": [<n*n decimals>]},
/// row-major. Entries must be finite ("-inf" is a measure token, never a
/// matrix entry). Parse failures carry field diagnostics.
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& a);
Matrix parse_matrix_json(std::string_view text, const std::string& origin);
std::string matrix_to_json(const Matrix& a);

/// Measure specs are comma-separated tokens: decimals <= 0 or "-inf", with
/// at least one token equal to 0. Example: "0,-1.5,-inf".
IdempotentMeasure parse_measure_spec(std::string_view spec);
std::string measure_to_spec(std::span<const ExtendedReal> coords);

/// CSV header "step,x1,...,xn"; -inf is rendered as the literal "-inf",
/// finite values as shortest round-trip decimals.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// "fnv1a64:<16 hex digits>" over the raw bytes.
std::string digest_hex(std::string_view bytes);

}  // namespace idemdyn
