#include "coopdyn/record.hpp"

#include <chrono>
#include <ctime>

#ifndef COOPDYN_VERSION
#define COOPDYN_VERSION "0.0.0"
#endif

namespace coopdyn {

std::string artifact_version() { return COOPDYN_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

OutputRecord make_record(std::string command, nlohmann::json parameters, nlohmann::json results) {
  return {std::move(command), std::move(parameters), std::move(results), artifact_version(),
          utc_timestamp()};
}

void to_json(nlohmann::json& j, const OutputRecord& record) {
  j = {{"command", record.command},     {"parameters", record.parameters},
       {"results", record.results},     {"version", record.version},
       {"timestamp", record.timestamp}};
}

void from_json(const nlohmann::json& j, OutputRecord& record) {
  j.at("command").get_to(record.command);
  record.parameters = j.at("parameters");
  record.results = j.at("results");
  j.at("version").get_to(record.version);
  j.at("timestamp").get_to(record.timestamp);
}

void to_json(nlohmann::json& j, const Thresholds& t) { j = {{"k1", t.k1}, {"k2", t.k2}}; }

void to_json(nlohmann::json& j, const FixedPoint& fp) {
  j = {{"x", fp.location},
       {"origin", to_string(fp.origin)},
       {"stability", to_string(fp.stability)}};
}

void from_json(const nlohmann::json& j, FixedPoint& fp) {
  fp.location = j.at("x").get<double>();
  fp.origin = j.at("origin").get<std::string>() == "Boundary" ? FixedPointOrigin::Boundary
                                                               : FixedPointOrigin::Internal;
  fp.stability = parse_stability(j.at("stability").get<std::string>());
}

void to_json(nlohmann::json& j, const RegimeReport& report) {
  j = {{"regime", to_string(report.regime)},
       {"thresholds", report.thresholds},
       {"fixed_points", report.fixed_points}};
}

void from_json(const nlohmann::json& j, RegimeReport& report) {
  report.regime = parse_regime(j.at("regime").get<std::string>());
  report.thresholds.k1 = j.at("thresholds").at("k1").get<double>();
  report.thresholds.k2 = j.at("thresholds").at("k2").get<double>();
  report.fixed_points = j.at("fixed_points").get<std::vector<FixedPoint>>();
}

void to_json(nlohmann::json& j, const InteractionStrength& strength) {
  if (strength.kind() == StrengthKind::Constant) {
    j = {{"kind", "constant"}, {"p", strength.parameter()}};
  } else {
    j = {{"kind", "linear"}, {"k", strength.parameter()}};
  }
}

void to_json(nlohmann::json& j, const BifurcationRow& row) {
  j = {{"param", row.parameter}, {"fixed_points", row.fixed_points}};
  if (row.regime) {
    j["regime"] = to_string(*row.regime);
  } else {
    j["regime"] = nullptr;
    j["error"] = row.error;
  }
}

void to_json(nlohmann::json& j, const MemberSummary& member) {
  j = {{"x0", member.x0},
       {"x_final", member.x_final},
       {"slow_decay", member.slow_decay},
       {"status", to_string(member.status)}};
  if (member.attractor) {
    j["attractor"] = *member.attractor;
  } else {
    j["attractor"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const Basin& basin) {
  j = {{"x", basin.location}, {"stability", to_string(basin.stability)}, {"count", basin.count}};
}

}  // namespace coopdyn
