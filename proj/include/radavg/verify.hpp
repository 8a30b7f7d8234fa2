#pragma once

#include <string>
#include <vector>

namespace radavg {

/// One acceptance check: a property of the implementation verified at a
/// pinned tolerance. `detail` carries the measured numbers.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

/// Runs the acceptance checks (all of them when `which` is empty; ids are
/// 1..9) and returns one result per check.
std::vector<CheckResult> run_acceptance(const std::vector<int>& which = {});

} // namespace radavg
