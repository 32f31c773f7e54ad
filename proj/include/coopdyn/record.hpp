#pragma once

#include <string>

#include <json.hpp>

#include "coopdyn/analysis.hpp"
#include "coopdyn/simulation.hpp"

namespace coopdyn {

// Envelope of every machine-readable CLI result.
struct OutputRecord {
  std::string command;
  nlohmann::json parameters;
  nlohmann::json results;
  std::string version;
  std::string timestamp;  // ISO 8601, UTC

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

OutputRecord make_record(std::string command, nlohmann::json parameters, nlohmann::json results);
std::string artifact_version();
std::string utc_timestamp();

void to_json(nlohmann::json& j, const OutputRecord& record);
void from_json(const nlohmann::json& j, OutputRecord& record);

void to_json(nlohmann::json& j, const Thresholds& t);
void to_json(nlohmann::json& j, const FixedPoint& fp);
void from_json(const nlohmann::json& j, FixedPoint& fp);
void to_json(nlohmann::json& j, const RegimeReport& report);
void from_json(const nlohmann::json& j, RegimeReport& report);
void to_json(nlohmann::json& j, const InteractionStrength& strength);
void to_json(nlohmann::json& j, const BifurcationRow& row);
void to_json(nlohmann::json& j, const MemberSummary& member);
void to_json(nlohmann::json& j, const Basin& basin);

}  // namespace coopdyn
