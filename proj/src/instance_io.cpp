#include "logcap/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace logcap {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw InstanceFormatError(where.empty() ? "/" : where, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!required.count(k) && !optional.count(k)) throw InstanceFormatError(where + "/" + k, "unknown key");
  for (const auto& k : required)
    if (!j.contains(k)) throw InstanceFormatError(where + "/" + k, "missing required key");
}

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InstanceFormatError(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_positive(const json& j, const std::string& where) {
  const auto v = as_int(j, where);
  if (v <= 0) throw InstanceFormatError(where, "expected a positive integer");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> positive_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InstanceFormatError(where, "expected an array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_positive(j[i], where + "/" + std::to_string(i)));
  return out;
}

Vec int_list(const json& j, const std::string& where, std::size_t len) {
  if (!j.is_array()) throw InstanceFormatError(where, "expected an array");
  if (j.size() != len) throw InstanceFormatError(where, "expected " + std::to_string(len) + " entries");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

std::string cocycle_key(const AbelianLGroup& g, GroupElt s, GroupElt t) { return g.format(s) + "," + g.format(t); }

Instance instance_from_json(const json& j) {
  require_keys(j, "", {"prime", "precision", "G", "A"}, {"cocycle"});
  const auto prime = as_positive(j["prime"], "/prime");
  const auto precision = as_positive(j["precision"], "/precision");
  if (prime > 65535 || precision > 64) throw InstanceFormatError("/prime", "prime or precision out of range");
  std::optional<Modulus> mod;
  try {
    mod.emplace(static_cast<unsigned>(prime), static_cast<unsigned>(precision));
  } catch (const std::exception& e) {
    throw InstanceFormatError("/precision", e.what());
  }

  require_keys(j["G"], "/G", {"orders"});
  const auto orders = positive_list(j["G"]["orders"], "/G/orders");
  GroupPtr group;
  try {
    group = std::make_shared<const AbelianLGroup>(mod->prime(), orders);
  } catch (const std::exception& e) {
    throw InstanceFormatError("/G/orders", e.what());
  }

  require_keys(j["A"], "/A", {"atilde_orders", "action"});
  ClassModule cm;
  cm.atilde_orders = positive_list(j["A"]["atilde_orders"], "/A/atilde_orders");
  const std::size_t r = cm.atilde_orders.size();
  const json& act = j["A"]["action"];
  std::set<std::string> tau_keys;
  for (std::size_t i = 0; i < group->rank(); ++i) tau_keys.insert("tau_" + std::to_string(i + 1));
  require_keys(act, "/A/action", tau_keys);
  for (std::size_t i = 0; i < group->rank(); ++i) {
    const std::string key = "tau_" + std::to_string(i + 1);
    const std::string where = "/A/action/" + key;
    const json& m = act[key];
    if (!m.is_array() || m.size() != r + 1)
      throw InstanceFormatError(where, "expected a " + std::to_string(r + 1) + "x" + std::to_string(r + 1) + " matrix");
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < m.size(); ++k) {
      Vec row = int_list(m[k], where + "/" + std::to_string(k), r + 1);
      for (auto& x : row) x = mod->reduce(x);
      rows.push_back(std::move(row));
    }
    cm.action.emplace_back(*mod, r + 1, rows);
  }

  Cocycle cocycle(group->size(), r);
  if (j.contains("cocycle")) {
    const json& c = j["cocycle"];
    if (!c.is_object()) throw InstanceFormatError("/cocycle", "expected an object");
    for (const auto& [key, value] : c.items()) {
      const std::string where = "/cocycle/" + escape_pointer(key);
      // split "sigma,tau" into its 2s exponents
      std::vector<std::string> parts;
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, ',')) parts.push_back(part);
      if (!key.empty() && key.back() == ',') parts.push_back("");
      const std::size_t s = group->rank();
      std::string left, right;
      if (s == 0) {
        if (key != ",") throw InstanceFormatError(where, "malformed cocycle key");
      } else {
        if (parts.size() != 2 * s) throw InstanceFormatError(where, "cocycle key must list 2s exponents");
        for (std::size_t k = 0; k < s; ++k) left += (k ? "," : "") + parts[k];
        for (std::size_t k = 0; k < s; ++k) right += (k ? "," : "") + parts[s + k];
      }
      GroupElt sg, tg;
      try {
        sg = group->parse(left);
        tg = group->parse(right);
      } catch (const std::exception& e) {
        throw InstanceFormatError(where, e.what());
      }
      Vec v = int_list(value, where, r);
      for (auto& x : v) x = mod->reduce(x);
      cocycle.set(sg, tg, std::move(v));
    }
  }
  try {
    return Instance(*mod, group, std::move(cm), std::move(cocycle));
  } catch (const std::exception& e) {
    throw InstanceFormatError("/A", e.what());
  }
}

json instance_to_json(const Instance& inst) {
  const AbelianLGroup& g = inst.group();
  json j;
  j["prime"] = inst.prime();
  j["precision"] = inst.precision();
  j["G"]["orders"] = g.orders();
  j["A"]["atilde_orders"] = inst.module().atilde_orders;
  j["A"]["action"] = json::object();
  for (std::size_t i = 0; i < inst.module().action.size(); ++i)
    j["A"]["action"]["tau_" + std::to_string(i + 1)] = inst.module().action[i].row_list();
  j["cocycle"] = json::object();
  for (GroupElt s : g.elements())
    for (GroupElt t : g.elements()) {
      const Vec& v = inst.cocycle().at(s, t);
      if (!vec_is_zero(v)) j["cocycle"][cocycle_key(g, s, t)] = v;
    }
  return j;
}

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  return instance_from_json(j);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceFormatError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path.string() + ":" + e.location(), std::string(e.what()).substr(e.location().size() + 2));
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_instance(inst);
}

}  // namespace logcap
