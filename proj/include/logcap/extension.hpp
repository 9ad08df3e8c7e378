#pragma once

// The extension group U realised on A x G through the cocycle:
//   (a, s)(b, t) = (a + s.b + a_{s,t}, st),
// with fixed transversal u_t = (0, t).

#include <stdexcept>

#include "logcap/instance.hpp"
#include "logcap/lattice.hpp"
#include "logcap/resolvent.hpp"

namespace logcap {

class InstanceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UElement {
  Vec a;
  GroupElt tau;
  bool operator==(const UElement&) const = default;
};

UElement u_identity(const Instance& inst);
UElement u_mul(const Instance& inst, const UElement& x, const UElement& y);
UElement u_inverse(const Instance& inst, const UElement& x);
/// x y x^-1 y^-1.
UElement u_commutator(const Instance& inst, const UElement& x, const UElement& y);
std::int64_t u_degree(const Instance& inst, const UElement& x);

enum class DerivedFlavor {
  full,         // U'  = I_G A      + span{a_{s,t} - a_{t,s}}
  degree_zero,  // U~' = I_G Atilde + span{a_{s,t} - a_{t,s}}
};

Submodule derived_subgroup(const Instance& inst, DerivedFlavor flavor = DerivedFlavor::full);

/// U~^w = span{a_t}.
Submodule omega_subgroup(const Instance& inst);

/// Transfer U -> A: sum over t of the A-component a(u,t) defined by
/// u * u_t = u_{st} * (a(u,t), 1).
Vec transfer(const Instance& inst, const UElement& u);

/// (a, t) -> a + (t - 1), the logarithm onto B (read modulo I_G * B).
ResolventElt log_iso(const Instance& inst, const UElement& u);

}  // namespace logcap
