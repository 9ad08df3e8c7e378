#pragma once

// Canonical (Howell) forms for submodules of (Z/l^n)^r, and the linear
// algebra built on them: membership, solving x*M = v, images, preimages,
// intersections and quotient orders.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "logcap/zmod.hpp"

namespace logcap {

class ContainmentError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A submodule of (Z/l^n)^r stored by its Howell basis: rows sorted by
/// pivot column, pivot entries equal to l^v, entries above a pivot reduced
/// into [0, l^v), and saturated so that the rows whose pivot lies at or
/// after column k span the part of the submodule vanishing before k.
/// Two generator sets of the same submodule give bit-identical bases.
class Submodule {
 public:
  Submodule(const Modulus& mod, std::size_t ambient_rank);  // zero submodule

  const Modulus& modulus() const { return mod_; }
  std::size_t ambient_rank() const { return rank_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  ZModMatrix basis() const { return ZModMatrix(mod_, rank_, rows_); }
  bool is_zero() const { return rows_.empty(); }

  /// Canonical representative of v + S. Zero iff v is in S.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
  bool includes(const Submodule& other) const;

  /// log_l |S|.
  unsigned order_exponent() const;

  bool operator==(const Submodule& o) const {
    return mod_ == o.mod_ && rank_ == o.rank_ && rows_ == o.rows_;
  }

 private:
  friend Submodule normal_form(const ZModMatrix& m);
  Modulus mod_;
  std::size_t rank_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Howell form of the row space of m. Pivot choice: lowest valuation in the
/// leftmost live column, earliest row on ties.
Submodule normal_form(const ZModMatrix& m);
Submodule span(const Modulus& mod, std::size_t rank, const std::vector<Vec>& generators);

Submodule sum(const Submodule& a, const Submodule& b);
Submodule intersection(const Submodule& a, const Submodule& b);

/// Image {x*F : x in S} where F has one row per ambient coordinate of S.
Submodule image(const Submodule& s, const ZModMatrix& map);
/// {x in domain : x*F in target}.
Submodule preimage(const Submodule& domain, const ZModMatrix& map, const Submodule& target);

/// Some x with x*m = v, or nullopt. The returned x is checked by
/// substitution before it is handed out.
std::optional<Vec> solve(const ZModMatrix& m, const Vec& v);

/// |outer / inner|; throws ContainmentError unless inner is inside outer.
std::uint64_t quotient_order(const Submodule& outer, const Submodule& inner);
unsigned quotient_order_exponent(const Submodule& outer, const Submodule& inner);

/// Invariant factors l^{w_1} <= l^{w_2} <= ... of outer/inner (trivial
/// factors dropped), from a Smith reduction over Z/l^n.
std::vector<std::uint64_t> quotient_invariants(const Submodule& outer, const Submodule& inner);

/// A coordinatized module  Z/l^{k_1} + ... + Z/l^{k_r}  (each k_i <= n),
/// realised inside (Z/l^n)^r. Submodules produced through an Ambient always
/// contain the relation lattice spanned by the l^{k_i} e_i, so equality,
/// membership and orders are all meaningful in the quotient.
class Ambient {
 public:
  Ambient(const Modulus& mod, std::vector<unsigned> exponents);

  const Modulus& modulus() const { return mod_; }
  std::size_t rank() const { return exps_.size(); }
  const std::vector<unsigned>& exponents() const { return exps_; }

  /// Reduces coordinate i into [0, l^{k_i}).
  Vec canonical(const Vec& v) const;
  Vec zero_vec() const { return Vec(rank(), 0); }
  Vec unit(std::size_t i) const;
  bool is_zero(const Vec& v) const { return vec_is_zero(canonical(v)); }
  bool equal(const Vec& a, const Vec& b) const { return canonical(a) == canonical(b); }

  const std::vector<Vec>& relations() const { return relations_; }
  const Submodule& zero() const { return zero_; }
  Submodule whole() const;
  Submodule span(const std::vector<Vec>& generators) const;
  Submodule coordinate_span(const std::vector<std::size_t>& coords) const;

  /// log_l of the order of S modulo the relation lattice.
  unsigned order_exponent(const Submodule& s) const;
  std::uint64_t order(const Submodule& s) const;
  /// Total number of elements.
  std::uint64_t size() const;

 private:
  Modulus mod_;
  std::vector<unsigned> exps_;
  std::vector<Vec> relations_;
  Submodule zero_;
};

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace logcap
