#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pierce/geometry.hpp"
#include "pierce/pipeline.hpp"

namespace pierce {

struct Instance {
    CurveModel curve;
    std::vector<ConvexBody> bodies;
    int p = 2;
    std::map<std::string, std::string> meta;
};

using RunConfig = PipelineConfig;

// Throws PierceError(Argument) on non-positive tolerances, trials, denominator
// or cloud resolution.
void validate_run_config(const RunConfig& config);

// Throws PierceError(Validation) on empty bodies, p < 2, or an invalid body/curve.
void validate_instance(const Instance& inst);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TransversalReport& rep);
TransversalReport report_from_json(const nlohmann::json& j);

// File helpers; PierceError(Io) on missing files or malformed text.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& inst);
TransversalReport read_report(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const TransversalReport& rep);

}  // namespace pierce
