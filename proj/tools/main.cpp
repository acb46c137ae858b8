#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoflow/scenario.hpp"

namespace {

int run_file(const std::string& path, const infoflow::RunOptions& options, bool pretty,
             const std::string& out_path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open scenario file: " << path << "\n";
        return 2;
    }
    nlohmann::json scenario;
    infoflow::ScenarioResult result;
    try {
        in >> scenario;
        result = infoflow::run_scenario(scenario, options);
    } catch (const nlohmann::json::exception& e) {
        nlohmann::ordered_json report;
        report["schema"] = 1;
        report["error"] = {{"kind", "invalid-input"},
                           {"message", std::string("scenario does not parse: ") + e.what()}};
        result.report = std::move(report);
        result.exit_code = 2;
    }

    std::string text = pretty ? infoflow::render_pretty(result.report)
                              : result.report.dump() + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write to " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return result.exit_code;
}

int list_tasks(bool pretty) {
    if (pretty) {
        for (const auto& info : infoflow::task_registry())
            std::cout << info.task << "\t" << info.module << "\t" << info.summary << "\n";
        return 0;
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& info : infoflow::task_registry()) {
        nlohmann::ordered_json entry;
        entry["task"] = info.task;
        entry["module"] = info.module;
        entry["summary"] = info.summary;
        out.push_back(std::move(entry));
    }
    std::cout << out.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"infoflow: channel-structured toolkit for imperfect information"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    bool pretty = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int max_width = 0;
    bool width_set = false;

    auto* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_flag("--pretty", pretty, "human-readable output");
    run->add_option("--seed", seed, "seed override for sampling tasks")
        ->each([&](const std::string&) { seed_set = true; });
    run->add_option("--max-width", max_width, "sequent width bound")
        ->each([&](const std::string&) { width_set = true; });
    run->add_option("--out", out_path, "write the report to a file");

    auto* tasks = app.add_subcommand("tasks", "list the task registry");
    tasks->add_flag("--pretty", pretty, "tab-separated output");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(tasks)) return list_tasks(pretty);

    infoflow::RunOptions options;
    if (seed_set) options.seed = seed;
    if (width_set) options.max_width = max_width;
    auto slash = scenario_path.find_last_of('/');
    options.base_dir = slash == std::string::npos ? "." : scenario_path.substr(0, slash);
    return run_file(scenario_path, options, pretty, out_path);
}
