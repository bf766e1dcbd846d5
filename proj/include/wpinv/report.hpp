#pragma once

// Machine-readable record of one command-line run.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace wpinv {

struct InputDigest {
  std::string path;
  std::string digest;  // FNV-1a 64-bit of the file bytes, 16 hex digits

  bool operator==(const InputDigest&) const = default;
};

struct RunReport {
  std::vector<std::string> command;
  std::vector<InputDigest> inputs;
  nlohmann::json outputs = nlohmann::json::object();
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  int exit_status = 0;
  std::vector<std::string> notes;

  bool operator==(const RunReport&) const = default;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Non-finite residuals are written as the strings "inf", "-inf" or "nan".
nlohmann::json to_json(const RunReport& report);
/// Throws ParseError.
RunReport report_from_json(const nlohmann::json& j);

}  // namespace wpinv
