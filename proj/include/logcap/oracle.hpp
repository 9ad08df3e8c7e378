#pragma once

// Brute-force oracle: materializes the extension group U element by element
// and computes every group-theoretic quantity by enumeration, independently
// of the module-theoretic shortcuts used elsewhere.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "logcap/extension.hpp"
#include "logcap/instance.hpp"
#include "logcap/lattice.hpp"

namespace logcap {

class OracleUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleBound = 4096;

enum class Exec { serial, parallel };

/// Explicit enumeration of U = A x G. Elements are coded as
/// code = a_index * |G| + tau.index with a_index the mixed-radix index of
/// the canonical A-coordinates (first coordinate most significant).
class UTable {
 public:
  explicit UTable(const Instance& inst, std::uint64_t bound = kDefaultOracleBound);

  const Instance& instance() const { return inst_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t a_size() const { return a_size_; }
  std::uint32_t encode(const UElement& u) const;
  UElement decode(std::uint32_t code) const;
  std::uint32_t encode_a(const Vec& a) const;
  Vec decode_a(std::uint32_t index) const;
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t mul_reference(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t add_a(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inverse(std::uint32_t x) const { return inv_[x]; }
  std::uint32_t commutator(std::uint32_t x, std::uint32_t y) const;
  std::int64_t degree(std::uint32_t x) const;

 private:
  const Instance& inst_;
  std::uint32_t size_;
  std::uint32_t a_size_;
  std::uint32_t og_;
  std::vector<std::uint32_t> radix_;  // order of each A coordinate
  std::vector<std::uint32_t> act_;    // tau * a_size + a -> index of tau.a
  std::vector<std::uint32_t> coc_;    // s * |G| + t -> index of a_{s,t}
  std::vector<std::uint32_t> inv_;
};

struct OracleFacts {
  std::uint64_t u_order = 0;
  Submodule derived{Modulus(2, 1), 0};              // U'  (closure of all commutators)
  Submodule derived_degree_zero{Modulus(2, 1), 0};  // U~' (commutators of the degree-zero part)
  Submodule omega_part{Modulus(2, 1), 0};           // U~^w = {[gamma, u] : u in U~} closure
  std::uint64_t derived_size = 0;
  std::uint64_t derived_degree_zero_size = 0;
  std::uint64_t omega_part_size = 0;
  std::vector<Vec> transfer;  // Ver by coset products, indexed by code
  std::uint64_t abelianization_order = 0;      // |U/U'|
  std::uint64_t degree_zero_quotient = 0;      // |U~/U'|
  std::uint64_t genus_quotient = 0;            // |U~/U~'U~^w|
  std::uint64_t ambiguous_order = 0;           // gamma-fixed classes of U~/U~'
  std::uint64_t capitulation_kernel_order = 0; // ker Ver on U~/U~'
  bool ambiguous_in_kernel = false;
};

/// Indicator over A-indices of the set of commutators [x, y], x, y in U (or
/// in U~ when degree_zero). Serial and OpenMP kernels give identical output.
std::vector<std::uint8_t> commutator_indicator(const UTable& table, bool degree_zero, Exec exec);

/// Throws OracleUnavailable when |U| exceeds `bound`.
OracleFacts oracle_group(const Instance& inst, std::uint64_t bound = kDefaultOracleBound, Exec exec = Exec::serial);

std::uint64_t u_order(const Instance& inst);

}  // namespace logcap
