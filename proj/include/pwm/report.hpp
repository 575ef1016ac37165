#pragma once

// Structured reports for the command-line tool. JSON is the stable format;
// text is rendered from the same JSON.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwm/map_spec.hpp"
#include "pwm/orbit.hpp"
#include "pwm/transfer.hpp"

namespace pwm {

inline constexpr const char* report_version = "dimgroup-report/1";

struct ReportOptions {
    std::optional<std::size_t> bound; ///< overrides every search bound
    std::size_t levels = 8;
    unsigned threads = 1;
    std::size_t max_points = OrbitBounds{}.max_points;
    std::vector<StepTerm> terms;      ///< transfer input
    std::size_t steps = 1;            ///< transfer iterations
};

/// Orbit and Markov-detection bound for a spec.
OrbitBounds orbit_bounds(const MapSpec& spec, const ReportOptions& opts);
/// Bound used by classification and orbit conditions.
std::size_t condition_bound(const MapSpec& spec, const ReportOptions& opts);

nlohmann::json map_json(const PwmMap& map);
nlohmann::json orbit_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json markov_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json transfer_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json dimgroup_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json classify_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json bratteli_report(const MapSpec& spec, const ReportOptions& opts);
nlohmann::json analyze_report(const MapSpec& spec, const ReportOptions& opts);

/// Dispatch by subcommand name; the result carries "version" and "command".
nlohmann::json build_report(const std::string& command, const MapSpec& spec, const ReportOptions& opts);

std::string render_text(const nlohmann::json& report);

/// Some verdict in the report is Unknown, or the classification is Unknown.
bool has_unknown(const nlohmann::json& report);

} // namespace pwm
