#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include <json.hpp>

#include "infoflow/scenario.hpp"

using namespace infoflow;
using json = nlohmann::json;

namespace {

std::string scenario_dir() {
    if (const char* env = std::getenv("INFOFLOW_SCENARIOS")) return env;
    for (const char* candidate : {"scenarios", "../scenarios", "../../scenarios"}) {
        std::ifstream probe(std::string(candidate) + "/manifest.json");
        if (probe) return candidate;
    }
    return "scenarios";
}

json load(const std::string& name) {
    std::ifstream in(scenario_dir() + "/" + name);
    REQUIRE(in);
    json j;
    in >> j;
    return j;
}

ScenarioResult run(const json& scenario) {
    RunOptions options;
    options.base_dir = scenario_dir();
    return run_scenario(scenario, options);
}

} // namespace

TEST_CASE("task registry is stable and complete") {
    const auto& registry = task_registry();
    CHECK(registry.size() == 19);
    std::set<std::string> names;
    for (const auto& info : registry) {
        CHECK(names.insert(info.task).second);
        CHECK_FALSE(info.module.empty());
        CHECK_FALSE(info.summary.empty());
    }
    for (const char* expected :
         {"bayes", "bn-joint", "entropy", "channel", "ds-combine", "ds-bounds", "rough",
          "possibility", "fuse", "audit", "kripke-check", "kripke-update", "prob-validity",
          "defaults", "mcs", "cwa", "sorites", "ir", "infomorphism-check"})
        CHECK(names.count(expected) == 1);
}

TEST_CASE("every bundled scenario matches its documented exit code, reproducibly") {
    auto manifest = load("manifest.json");
    std::set<std::string> tasks_seen;
    for (const auto& entry : manifest.at("scenarios")) {
        std::string file = entry.at("file").get<std::string>();
        INFO("scenario " << file);
        auto scenario = load(file);
        tasks_seen.insert(scenario.at("task").get<std::string>());
        auto first = run(scenario);
        CHECK(first.exit_code == entry.at("expect_exit").get<int>());
        auto second = run(scenario);
        CHECK(first.report.dump() == second.report.dump());
    }
    // At least one bundled example per registry task.
    for (const auto& info : task_registry()) CHECK(tasks_seen.count(info.task) == 1);
}

TEST_CASE("bayes scenario reproduces the hand-computed posterior") {
    auto result = run(load("bayes.json"));
    REQUIRE(result.exit_code == 0);
    auto probs = result.report.at("posterior").at("probs");
    CHECK(probs[0].get<double>() == doctest::Approx(0.009 / 0.108).epsilon(1e-9));
    CHECK(probs[1].get<double>() == doctest::Approx(0.099 / 0.108).epsilon(1e-9));
}

TEST_CASE("vacuous combination echoes the first mass") {
    auto result = run(load("ds-combine-vacuous.json"));
    REQUIRE(result.exit_code == 0);
    auto combined = result.report.at("combined");
    REQUIRE(combined.size() == 2);
    CHECK(combined[0].at("set") == json::array({"a"}));
    CHECK(combined[0].at("mass").get<double>() == doctest::Approx(0.6));
}

TEST_CASE("total conflict exits with the undefined-operation code") {
    auto result = run(load("ds-combine-conflict.json"));
    CHECK(result.exit_code == 3);
    CHECK(result.report.at("error").at("kind") == "undefined-operation");
    CHECK(result.report.at("error").at("message").get<std::string>().find("conflict") !=
          std::string::npos);
}

TEST_CASE("csv-backed rough scenario returns the worked approximation") {
    auto result = run(load("rough.json"));
    REQUIRE(result.exit_code == 0);
    CHECK(result.report.at("lower").empty());
    CHECK(result.report.at("upper").size() == 4);
    CHECK(result.report.at("boundary").size() == 4);
    CHECK(result.report.at("crisp") == false);
}

TEST_CASE("sorites scenario reports a witness chain") {
    auto result = run(load("sorites.json"));
    REQUIRE(result.exit_code == 0);
    CHECK(result.report.at("derivable") == false);
    REQUIRE(result.report.contains("witness"));
    CHECK(result.report.at("witness").at("objects").size() == 20);
    auto heights = result.report.at("witness").at("heights");
    CHECK(heights.front().get<double>() <= 166.0);
    CHECK(heights.back().get<double>() >= 180.0);

    auto derivable = run(load("sorites-derivable.json"));
    CHECK(derivable.report.at("derivable") == true);
}

TEST_CASE("audit scenarios: the reassigning rule passes, min conjunction does not") {
    auto dp = run(load("audit.json"));
    REQUIRE(dp.exit_code == 0);
    CHECK(dp.report.at("all_pass") == true);

    auto min = run(load("audit-min.json"));
    REQUIRE(min.exit_code == 0);
    CHECK(min.report.at("all_pass") == false);
    bool consistency_failed = false;
    for (const auto& p : min.report.at("postulates"))
        if (p.at("name") == "consistency-enforcement" && p.at("pass") == false)
            consistency_failed = true;
    CHECK(consistency_failed);
}

TEST_CASE("seeds are required for sampling tasks") {
    auto scenario = load("prob-validity.json");
    scenario.erase("seed");
    auto result = run(scenario);
    CHECK(result.exit_code == 2);
    CHECK(result.report.at("error").at("kind") == "invalid-input");
    // A seed provided via the flag substitutes for the scenario field.
    RunOptions options;
    options.base_dir = scenario_dir();
    options.seed = 42;
    auto with_flag = run_scenario(scenario, options);
    CHECK(with_flag.exit_code == 0);
}

TEST_CASE("malformed scenarios report invalid-input") {
    auto result = run(json{{"schema", 1}, {"task", "nonsense"}});
    CHECK(result.exit_code == 2);
    auto no_schema = run(json{{"task", "bayes"}});
    CHECK(no_schema.exit_code == 2);
    auto missing_field = run(json{{"schema", 1}, {"task", "bayes"}});
    CHECK(missing_field.exit_code == 2);
    CHECK(missing_field.report.at("error").at("message").get<std::string>().find("prior") !=
          std::string::npos);
}

TEST_CASE("kripke scenarios") {
    auto plain = run(load("kripke-check.json"));
    REQUIRE(plain.exit_code == 0);
    CHECK(plain.report.at("holds") == true);

    auto prob = run(load("kripke-check-prob.json"));
    REQUIRE(prob.exit_code == 0);
    CHECK(prob.report.at("holds") == true);

    auto update = run(load("kripke-update.json"));
    REQUIRE(update.exit_code == 0);
    CHECK(update.report.at("holds") == true);
    CHECK(update.report.at("model").at("worlds").size() == 4);
}

TEST_CASE("infomorphism scenarios") {
    auto channel = run(load("infomorphism-check.json"));
    REQUIRE(channel.exit_code == 0);
    CHECK(channel.report.at("valid") == true);
    CHECK(channel.report.at("legs") == 2);
    CHECK(channel.report.at("intensional_constraints").get<std::size_t>() > 0);

    auto explicit_check = run(load("infomorphism-check-explicit.json"));
    REQUIRE(explicit_check.exit_code == 0);
    CHECK(explicit_check.report.at("valid") == false);
    CHECK(explicit_check.report.at("violations").size() == 1);
}

TEST_CASE("pretty renderer covers the report") {
    auto result = run(load("bayes.json"));
    auto text = render_pretty(result.report);
    CHECK(text.find("posterior") != std::string::npos);
    CHECK(text.find("probs") != std::string::npos);
}

TEST_CASE("reals are serialized with twelve significant digits") {
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
    CHECK(round12(0.1 + 0.2) == 0.3);
    auto result = run(load("entropy.json"));
    CHECK(result.report.at("bits").get<double>() == round12(std::log2(6.0)));
}
