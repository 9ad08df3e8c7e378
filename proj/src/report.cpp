#include "logcap/report.hpp"

#include <sstream>

namespace logcap {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

std::string key_data(const json& w) {
  std::ostringstream os;
  bool first = true;
  for (const char* k : {"index", "trace_image_order", "delta", "kappa", "preimage_index", "mode", "U_order",
                        "capitulation_kernel_order", "reason"}) {
    if (!w.is_object() || !w.contains(k)) continue;
    os << (first ? "" : ", ") << k << "=";
    const json& x = w[k];
    os << (x.is_string() ? x.get<std::string>() : x.dump());
    first = false;
  }
  if (w.is_object() && w.contains("failed")) {
    for (const auto& f : w["failed"]) os << (first ? "" : "; ") << f.get<std::string>(), first = false;
  }
  if (w.is_object() && w.contains("validation"))
    for (const auto& [name, _] : w["validation"].items()) os << (first ? "" : ", ") << name, first = false;
  if (w.is_object() && w.contains("hypothesis"))
    for (const auto& [name, _] : w["hypothesis"].items()) os << (first ? "" : ", ") << name, first = false;
  std::string s = os.str();
  for (auto& c : s)
    if (c == '|') c = '/';
  return s;
}

std::string cell(const json& x) {
  if (x.is_null()) return "-";
  return x.is_string() ? x.get<std::string>() : x.dump();
}

}  // namespace

json validation_json(const ValidationReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"hypothesis", c.hypothesis}, {"detail", c.detail}});
  return {{"ok", v.ok()}, {"checks", checks}, {"failed", v.failed()}};
}

json report_json(const InstanceReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"check", v.check_id}, {"status", to_string(v.status)}, {"witness", v.witness}});
  return {{"instance", r.label},
          {"instance_hash", r.instance_hash},
          {"ok", r.ok()},
          {"validation", validation_json(r.validation)},
          {"verdicts", verdicts},
          {"delta", opt(r.delta)},
          {"certificate_hash", opt(r.certificate_hash)},
          {"certificate", r.certificate},
          {"trace_image_order", opt(r.trace_image_order)},
          {"trace_kernel_order", opt(r.trace_kernel_order)},
          {"ambiguous_index", opt(r.ambiguous_index)},
          {"boundary_order", opt(r.boundary_order)}};
}

json aggregate_json(const std::vector<InstanceReport>& reports) {
  json items = json::array();
  std::size_t ok = 0;
  json counts = json::object();
  for (const auto& r : reports) {
    items.push_back(report_json(r));
    ok += r.ok();
    for (const auto& v : r.verdicts) {
      auto& slot = counts[v.check_id][to_string(v.status)];
      slot = slot.is_null() ? 1 : slot.get<int>() + 1;
    }
  }
  return {{"instances", items},
          {"summary", {{"total", reports.size()}, {"ok", ok}, {"not_ok", reports.size() - ok}, {"by_check", counts}}}};
}

std::string aggregate_markdown(const std::vector<InstanceReport>& reports) {
  return aggregate_markdown(aggregate_json(reports));
}

std::string aggregate_markdown(const json& agg) {
  std::ostringstream os;
  const json& items = agg.at("instances");
  os << "# Verification report\n\n";
  os << "| instance | ok | delta | trace image | trace kernel | ambiguous index | certificate |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : items) {
    const json& h = r.at("certificate_hash");
    os << "| " << r.at("instance").get<std::string>() << " | " << (r.at("ok").get<bool>() ? "yes" : "no") << " | "
       << cell(r.at("delta")) << " | " << cell(r.at("trace_image_order")) << " | " << cell(r.at("trace_kernel_order"))
       << " | " << cell(r.at("ambiguous_index")) << " | " << (h.is_string() ? h.get<std::string>().substr(0, 16) : "-")
       << " |\n";
  }
  const json& sum = agg.at("summary");
  os << "\n" << sum.at("ok").get<std::size_t>() << " of " << sum.at("total").get<std::size_t>()
     << " instances without fail or hypothesis-failed verdicts.\n";
  if (!sum.at("by_check").empty()) {
    os << "\n| check | pass | fail | hypothesis-failed | skipped |\n|---|---|---|---|---|\n";
    for (const auto& id : check_ids()) {
      if (!sum.at("by_check").contains(id)) continue;
      const json& c = sum.at("by_check").at(id);
      os << "| " << id;
      for (const char* st : {"pass", "fail", "hypothesis-failed", "skipped"}) os << " | " << c.value(st, 0);
      os << " |\n";
    }
  }
  for (const auto& r : items) {
    os << "\n## " << r.at("instance").get<std::string>() << "\n\n| check | status | key data |\n|---|---|---|\n";
    for (const auto& v : r.at("verdicts"))
      os << "| " << v.at("check").get<std::string>() << " | " << v.at("status").get<std::string>() << " | "
         << key_data(v.at("witness")) << " |\n";
  }
  return os.str();
}

}  // namespace logcap
