#include "wpinv/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "wpinv/errors.hpp"

namespace wpinv {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

nlohmann::json encode(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError("expected a number in report");
}

nlohmann::json encode_map(const std::map<std::string, double>& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : m) out[k] = encode(v);
  return out;
}

std::map<std::string, double> decode_map(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("expected an object in report");
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) out[k] = decode(v);
  return out;
}

}  // namespace

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : report.inputs) inputs.push_back({{"path", in.path}, {"digest", in.digest}});
  return {{"command", report.command},
          {"inputs", std::move(inputs)},
          {"outputs", report.outputs},
          {"residuals", encode_map(report.residuals)},
          {"tolerances", encode_map(report.tolerances)},
          {"exit_status", report.exit_status},
          {"notes", report.notes}};
}

RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::vector<std::string>>();
    for (const auto& in : j.at("inputs")) {
      r.inputs.push_back({in.at("path").get<std::string>(), in.at("digest").get<std::string>()});
    }
    r.outputs = j.at("outputs");
    r.residuals = decode_map(j.at("residuals"));
    r.tolerances = decode_map(j.at("tolerances"));
    r.exit_status = j.at("exit_status").get<int>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace wpinv
