#include "idemdyn/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace idemdyn {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::io_error, "write failed: " + path.string());
  }
}

Matrix parse_matrix_json(std::string_view text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw Error(ErrorCode::parse_error, origin + ": expected an object with \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_integer()) {
    throw Error(ErrorCode::parse_error, origin + ": field \"n\" must be an integer");
  }
  const long n = doc["n"].get<long>();
  if (n < 2 || n > 4096) {
    throw Error(ErrorCode::parse_error, origin + ": dimension n must be in [2, 4096]");
  }
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != static_cast<size_t>(n * n)) {
    throw Error(ErrorCode::parse_error,
                origin + ": \"entries\" must be an array of " + std::to_string(n * n) +
                    " numbers");
  }
  std::vector<double> values;
  values.reserve(entries.size());
  for (size_t k = 0; k < entries.size(); ++k) {
    if (!entries[k].is_number()) {
      throw Error(ErrorCode::parse_error,
                  origin + ": entries[" + std::to_string(k) + "] is not a number");
    }
    const double v = entries[k].get<double>();
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::parse_error,
                  origin + ": entries[" + std::to_string(k) + "] is not finite");
    }
    values.push_back(v);
  }
  return Matrix(static_cast<int>(n), std::move(values));
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix_json(read_file(path), path.string());
}

std::string matrix_to_json(const Matrix& a) {
  nlohmann::ordered_json doc;
  doc["n"] = a.size();
  doc["entries"] = std::vector<double>(a.entries().begin(), a.entries().end());
  return doc.dump();
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& a) {
  write_file(path, matrix_to_json(a) + "\n");
}

IdempotentMeasure parse_measure_spec(std::string_view spec) {
  std::vector<ExtendedReal> coords;
  size_t start = 0;
  while (start <= spec.size()) {
    size_t comma = spec.find(',', start);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view token = spec.substr(start, comma - start);
    // trim surrounding blanks
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    const auto value = parse_token(token);
    if (!value) {
      throw Error(ErrorCode::parse_error,
                  "bad measure token '" + std::string(token) + "' (want a decimal or -inf)");
    }
    coords.push_back(*value);
    if (comma == spec.size()) break;
    start = comma + 1;
  }
  return make_measure(std::move(coords));
}

std::string measure_to_spec(std::span<const ExtendedReal> coords) {
  std::string out;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i > 0) out += ',';
    out += to_token(coords[i]);
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "step";
  for (int i = 1; i <= traj.op.size(); ++i) os << ",x" << i;
  os << "\n";
  for (size_t m = 0; m < traj.points.size(); ++m) {
    os << m;
    for (const ExtendedReal& v : traj.points[m]) os << ',' << to_token(v);
    os << "\n";
  }
}

std::string digest_hex(std::string_view bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xF];
  return out;
}

}  // namespace idemdyn
