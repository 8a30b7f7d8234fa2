#pragma once

#include "radavg/classify.hpp"
#include "radavg/norm_estimates.hpp"
#include "radavg/profile.hpp"

#include <json.hpp>

#include <string>

namespace radavg {

/// +-inf encoded as strings (JSON has no infinities).
nlohmann::json json_num(double x);

nlohmann::json profile_json(const ConditionProfile& p);
nlohmann::json report_json(const DoublingReport& r);
nlohmann::json estimate_json(const NormEstimate& e);

/// CSV columns: level, r, value, running_sup (+ aux when present).
void write_profile_csv(const std::string& path, const ConditionProfile& p);

} // namespace radavg
