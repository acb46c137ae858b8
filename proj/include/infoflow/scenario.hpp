#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace infoflow {

struct TaskInfo {
    std::string task;
    std::string module;
    std::string summary;
};

// The stable task registry: every scenario "task" value with the module
// that implements it.
const std::vector<TaskInfo>& task_registry();

struct RunOptions {
    std::optional<std::uint64_t> seed;   // overrides the scenario seed
    std::optional<int> max_width;        // sequent width bound override
    std::string base_dir = ".";          // for resolving csv paths
};

struct ScenarioResult {
    nlohmann::ordered_json report;
    int exit_code = 0; // 0 ok, 2 invalid input, 3 undefined operation, 4 budget
};

// Validates and executes one scenario document. Library errors are encoded
// as {"error": {...}} reports with the matching exit code; only malformed
// JSON types escape as exceptions from the caller's parse step.
ScenarioResult run_scenario(const nlohmann::json& scenario, const RunOptions& options);

// Renders a report as an indented human-readable listing.
std::string render_pretty(const nlohmann::ordered_json& report);

// Rounds to 12 significant digits so reports are reproducible byte-for-byte.
double round12(double value);

} // namespace infoflow
