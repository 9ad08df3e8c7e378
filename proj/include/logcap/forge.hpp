#pragma once

// Construction of instances: exhaustive enumeration up to coboundary, seeded
// random sampling, admissible coboundary shifts, and the corpus writer.
//
// Search strategy. For each cell (G, Atilde):
//   1. Atilde-block matrices T_i with T_i^{o_i} = 1, pairwise commuting;
//   2. gamma columns x_i in Atilde with (1 + T_i + ... + T_i^{o_i-1}) x_i = 0
//      and (T_i - 1) x_j = (T_j - 1) x_i;
//   3. extension data u_i^{o_i} = c_i and u_k u_j = d_kj u_j u_k (k > j),
//      turned into a cocycle table by collection on the normal-form
//      transversal u_1^{e_1} ... u_s^{e_s}; tables violating the cocycle
//      identity are dropped;
//   4. a coboundary shift making a_{t,t^-1} = 0, then reduction modulo the
//      shifts that preserve that convention gives a canonical table;
//   5. survivors of validate() (which includes H1) are kept, deduplicated
//      on (T, x, canonical table).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "logcap/instance.hpp"
#include "logcap/oracle.hpp"

namespace logcap {

class CeilingExceeded : public std::runtime_error {
 public:
  CeilingExceeded(std::uint64_t estimate, std::uint64_t ceiling)
      : std::runtime_error("search space estimate " + std::to_string(estimate) + " exceeds ceiling " +
                           std::to_string(ceiling)),
        estimate_(estimate),
        ceiling_(ceiling) {}
  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t ceiling() const { return ceiling_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t ceiling_;
};

inline constexpr std::uint64_t kDefaultCeiling = 50'000'000;

struct SearchParams {
  unsigned prime = 2;
  std::vector<std::vector<std::uint64_t>> group_orders;   // candidate G
  std::vector<std::vector<std::uint64_t>> atilde_orders;  // candidate Atilde ({} = trivial)
  unsigned precision = 3;
  std::uint64_t oracle_bound = kDefaultOracleBound;
  std::uint64_t seed = 1;
  std::uint64_t ceiling = kDefaultCeiling;
  /// Per-cell cap on emitted instances (0 = no cap); see enumerate_corpus.
  std::size_t per_cell_cap = 0;
};

nlohmann::json params_json(const SearchParams& p);

/// Candidate count of one cell after the cheap per-generator matrix filter.
std::uint64_t estimate_cell(unsigned prime, const std::vector<std::uint64_t>& g_orders,
                            const std::vector<std::uint64_t>& atilde_orders, std::uint64_t ceiling);
/// Sum over cells; throws CeilingExceeded above p.ceiling.
std::uint64_t estimate(const SearchParams& p);

struct CellResult {
  std::vector<std::uint64_t> g_orders;
  std::vector<std::uint64_t> atilde_orders;
  std::vector<Instance> instances;  // deterministic order, deduplicated
  std::uint64_t candidates = 0;     // tables reaching validation
  std::uint64_t nonzero_boundary = 0;
  /// s = 2 tables with nonzero boundary that failed validation, by check.
  std::uint64_t nonzero_boundary_rejected = 0;
  std::map<std::string, std::uint64_t> nonzero_boundary_rejections;
  /// s = 2 instances whose canonical table has zero boundary but which an
  /// admissible shift moves to a nonzero one: index -> shifted instance.
  std::map<std::size_t, Instance> boundary_representatives;
};

/// All validate-passing instances of one cell, up to coboundary shifts.
CellResult enumerate_cell(const SearchParams& p, const std::vector<std::uint64_t>& g_orders,
                          const std::vector<std::uint64_t>& atilde_orders);

/// Every validate-passing instance over all cells, deterministic order.
std::vector<Instance> enumerate_instances(const SearchParams& p);

/// Rejection sampling: draws G and Atilde from the candidate lists, raw
/// action entries and extension data at random; nullopt when `attempts`
/// draws all fail validation.
std::optional<Instance> random_instance(const SearchParams& p, std::mt19937_64& rng, std::size_t attempts = 2000);

/// Shift maps c (c_1 = 0) for which coboundary_shift keeps a_{t,t^-1} = 0.
/// Returned as generators of that group; combine them for random shifts.
std::vector<std::vector<Vec>> admissible_shift_generators(const Instance& inst);
std::vector<Vec> random_admissible_shift(const Instance& inst, std::mt19937_64& rng);

/// Canonical cocycle table modulo admissible coboundaries (flattened).
Vec canonical_cocycle_key(const Instance& inst);

/// Makes a valid cocycle satisfy a_{t,t^-1} = 0 by a coboundary shift;
/// nullopt when no shift achieves it.
std::optional<Instance> make_inverse_compliant(const Instance& inst);

struct CorpusSummary {
  std::vector<std::filesystem::path> files;
  nlohmann::json manifest;
};

/// Enumerates every cell, applies the per-cell cap by deterministic stride
/// sampling (keeping one s = 2 instance with nonzero boundary when the cell
/// has any), writes one instance file per survivor plus manifest.json.
CorpusSummary write_corpus(const SearchParams& p, const std::filesystem::path& dir);

std::string cell_name(unsigned prime, unsigned precision, const std::vector<std::uint64_t>& g,
                      const std::vector<std::uint64_t>& atilde);

}  // namespace logcap
