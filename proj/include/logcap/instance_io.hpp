#pragma once

// JSON reading and writing of instances.
//
//   { "prime": 2, "precision": 3,
//     "G": {"orders": [2]},
//     "A": {"atilde_orders": [2], "action": {"tau_1": [[1, 1], [0, 1]]}},
//     "cocycle": {"1,1": [0]} }
//
// Action matrices are row-major with column j the image of basis vector j.
// Cocycle keys are "sigma,tau" with each element written as its exponent
// vector; absent entries are zero.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "logcap/instance.hpp"

namespace logcap {

class InstanceFormatError : public std::runtime_error {
 public:
  InstanceFormatError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  /// JSON pointer (or "<file>" / byte offset) of the offending value.
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);
/// Canonical text: sorted keys, zero cocycle entries omitted, trailing newline.
std::string dump_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

std::string cocycle_key(const AbelianLGroup& g, GroupElt s, GroupElt t);

}  // namespace logcap
