#pragma once

// The check catalogue V1..V10 run against one instance.
//
//   V1  transfer = trace o log on U
//   V2  I_G*B = Atilde + I_G^2
//   V3  det M = Tr and Tr(Btilde) inside I_G*gamma
//   V4  Atilde = U~' + U~^w
//   V5  w*Btilde = U~^w = I_G*gamma, w^2 = 0, Lambda[G]-generation by the b_i
//   V6  Tr = w delta on Btilde and Tr(Btilde) = delta*(I_G*gamma)
//   V7  Tr vanishes on w^{-1}(I_G*Btilde)
//   V8  delta kills the boundary module
//   V9  (w^{-1}(I_G*Btilde) : I_G*Btilde) = |G|
//   V10 agreement with the brute-force oracle

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "logcap/instance.hpp"
#include "logcap/oracle.hpp"
#include "logcap/resolvent.hpp"

namespace logcap {

enum class Status { pass, fail, hypothesis_failed, skipped };

std::string to_string(Status s);

struct Verdict {
  std::string check_id;
  Status status = Status::skipped;
  nlohmann::json witness;
};

struct VerifyOptions {
  std::uint64_t oracle_bound = kDefaultOracleBound;
  /// Run V1 over every element of U when |U| is within the oracle bound.
  bool exhaustive_v1 = true;
};

struct InstanceReport {
  std::string label;
  std::string instance_hash;
  ValidationReport validation;
  std::vector<Verdict> verdicts;
  std::optional<std::string> delta;
  std::optional<std::string> certificate_hash;
  nlohmann::json certificate;
  std::optional<std::uint64_t> trace_image_order;
  std::optional<std::uint64_t> trace_kernel_order;
  std::optional<std::uint64_t> ambiguous_index;
  std::optional<std::uint64_t> boundary_order;

  /// No verdict is fail or hypothesis-failed.
  bool ok() const;
  const Verdict* find(const std::string& id) const;
};

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "V9", "V10"};
  return ids;
}

nlohmann::json certificate_json(const RelationCertificate& cert);

InstanceReport verify_instance(const Instance& inst, const VerifyOptions& opts = {}, const std::string& label = "");

}  // namespace logcap
