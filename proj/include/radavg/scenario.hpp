#pragma once

#include "radavg/constructions.hpp"
#include "radavg/report_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radavg {

/// A named weight triple with exponents and (for built-ins) the expected
/// verdict of each evaluator. The meta-verdict "Diverges" matches any
/// non-Bounded outcome.
struct Scenario {
    std::string name;
    std::string description;
    WeightTriple triple;
    double p = 2.0;
    std::optional<double> q;
    std::map<std::string, std::string> expected;
    std::uint64_t seed = 0;
};

/// The built-in catalogue exercised by the verdict-equivalence suite.
std::vector<Scenario> builtin_scenarios();

struct ScenarioResult {
    std::string name;
    bool ok = true;
    std::vector<std::string> mismatches;
    nlohmann::json report;
};

/// Runs every evaluator applicable to the scenario (classification,
/// condition profiles, norm estimates), writes summary.json and per-
/// profile CSVs under out_dir/<name>/ (skipped when out_dir is empty),
/// and diffs the verdicts against the expectations.
ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir,
                            int levels = 40);

} // namespace radavg
