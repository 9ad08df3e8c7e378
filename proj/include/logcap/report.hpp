#pragma once

// JSON and markdown renderings of verification reports.

#include <string>
#include <vector>

#include "json.hpp"

#include "logcap/verifier.hpp"

namespace logcap {

nlohmann::json report_json(const InstanceReport& r);
nlohmann::json aggregate_json(const std::vector<InstanceReport>& reports);
std::string aggregate_markdown(const std::vector<InstanceReport>& reports);
/// Markdown from a previously written aggregate_json document.
std::string aggregate_markdown(const nlohmann::json& aggregate);
nlohmann::json validation_json(const ValidationReport& v);

}  // namespace logcap
