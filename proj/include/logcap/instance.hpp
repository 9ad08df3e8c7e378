#pragma once

// The finite data object (l, n, G, A, cocycle): G a finite abelian l-group
// acting on A = Atilde + (Z/l^n) gamma, and a normalized 2-cocycle of G with
// values in Atilde describing the extension U of G by A.

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/group_ring.hpp"
#include "logcap/lattice.hpp"
#include "logcap/zmod.hpp"

namespace logcap {

class RejectedShift : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The module A. Coordinates are (Atilde invariant-factor coordinates,
/// gamma); the degree of an element is its gamma coordinate. Action
/// matrices act on column vectors: column j is the image of basis vector j.
struct ClassModule {
  std::vector<std::uint64_t> atilde_orders;
  std::vector<ZModMatrix> action;  // one per cyclic generator of G
};

/// Table sigma, tau -> a_{sigma,tau}, stored as Atilde coordinates, indexed
/// by sigma.index * |G| + tau.index.
class Cocycle {
 public:
  Cocycle(std::size_t group_order, std::size_t atilde_rank);
  Cocycle(std::size_t group_order, std::size_t atilde_rank, std::vector<Vec> table);

  std::size_t group_order() const { return order_; }
  std::size_t atilde_rank() const { return rank_; }
  const Vec& at(GroupElt s, GroupElt t) const { return table_[s.index * order_ + t.index]; }
  void set(GroupElt s, GroupElt t, Vec v);
  const std::vector<Vec>& table() const { return table_; }
  bool operator==(const Cocycle& o) const { return table_ == o.table_; }

 private:
  std::size_t order_;
  std::size_t rank_;
  std::vector<Vec> table_;
};

class Instance {
 public:
  /// Shapes are checked here (dimensions, orders); the mathematical
  /// hypotheses are left to validate().
  Instance(const Modulus& mod, GroupPtr group, ClassModule module, Cocycle cocycle);

  const Modulus& modulus() const { return mod_; }
  unsigned prime() const { return mod_.prime(); }
  unsigned precision() const { return mod_.precision(); }
  const GroupPtr& group_ptr() const { return group_; }
  const AbelianLGroup& group() const { return *group_; }
  const ClassModule& module() const { return module_; }
  const Cocycle& cocycle() const { return cocycle_; }

  /// The coordinatized module A (rank r+1, gamma last).
  const Ambient& a_module() const { return a_; }
  std::size_t atilde_rank() const { return module_.atilde_orders.size(); }
  std::size_t gamma_index() const { return atilde_rank(); }
  std::size_t a_rank() const { return atilde_rank() + 1; }
  /// m with l^m = exponent of Atilde.
  unsigned atilde_exponent_log() const { return atilde_exp_log_; }
  std::uint64_t atilde_order() const;

  /// Linear map of g on A in row convention (x -> x * map).
  const ZModMatrix& act_map(GroupElt g) const { return act_rows_[g.index]; }
  Vec act(GroupElt g, const Vec& a) const;
  Vec gamma() const { return a_.unit(gamma_index()); }
  Vec degree_zero(const Vec& atilde_coords) const;  // embeds Atilde coords into A
  Vec cocycle_value(GroupElt s, GroupElt t) const { return degree_zero(cocycle_.at(s, t)); }
  /// a_tau = (1 - tau) gamma.
  Vec a_tau(GroupElt t) const;
  std::int64_t degree(const Vec& a) const { return a.at(gamma_index()); }
  Submodule atilde_submodule() const;

  /// Same module and cocycle at another precision (for lifting). The
  /// integer representatives are reinterpreted; valid when every Atilde
  /// order is at most l^precision.
  Instance with_precision(unsigned precision) const;
  Instance with_cocycle(Cocycle c) const;

  bool operator==(const Instance& o) const;

 private:
  Modulus mod_;
  GroupPtr group_;
  ClassModule module_;
  Cocycle cocycle_;
  Ambient a_;
  unsigned atilde_exp_log_ = 0;
  std::vector<ZModMatrix> act_rows_;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool hypothesis = false;  // H1-type gate rather than structural requirement
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  bool structural_ok() const;
  bool hypotheses_ok() const;
  std::vector<std::string> failed() const;
  const ValidationCheck* find(const std::string& name) const;
};

/// Runs every structural invariant plus hypothesis H1 (U' = Atilde).
ValidationReport validate(const Instance& inst);

/// a'_{s,t} = a_{s,t} + c_s + s.c_t - c_{st}. `shift` holds Atilde
/// coordinates indexed by group element; shift[identity] must be zero and
/// the result must satisfy a'_{t,t^{-1}} = 0, else RejectedShift.
Instance coboundary_shift(const Instance& inst, const std::vector<Vec>& shift);

}  // namespace logcap
