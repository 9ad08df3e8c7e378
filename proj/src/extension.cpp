#include "logcap/extension.hpp"

namespace logcap {

namespace {

void check_elt(const Instance& inst, const UElement& x) {
  if (x.a.size() != inst.a_rank() || x.tau.index >= inst.group().size())
    throw InstanceMismatch("extension: element does not belong to this instance");
}

Vec commutator_differences(const Instance& inst, GroupElt s, GroupElt t) {
  return inst.a_module().canonical(vec_sub(inst.modulus(), inst.cocycle_value(s, t), inst.cocycle_value(t, s)));
}

}  // namespace

UElement u_identity(const Instance& inst) { return {inst.a_module().zero_vec(), inst.group().identity()}; }

UElement u_mul(const Instance& inst, const UElement& x, const UElement& y) {
  check_elt(inst, x);
  check_elt(inst, y);
  const Modulus& mod = inst.modulus();
  Vec a = vec_add(mod, x.a, inst.act(x.tau, y.a));
  a = vec_add(mod, a, inst.cocycle_value(x.tau, y.tau));
  return {inst.a_module().canonical(a), inst.group().mul(x.tau, y.tau)};
}

UElement u_inverse(const Instance& inst, const UElement& x) {
  check_elt(inst, x);
  const GroupElt ti = inst.group().inv(x.tau);
  const Vec s = vec_add(inst.modulus(), x.a, inst.cocycle_value(x.tau, ti));
  return {inst.a_module().canonical(vec_scale(inst.modulus(), -1, inst.act(ti, s))), ti};
}

UElement u_commutator(const Instance& inst, const UElement& x, const UElement& y) {
  return u_mul(inst, u_mul(inst, x, y), u_mul(inst, u_inverse(inst, x), u_inverse(inst, y)));
}

std::int64_t u_degree(const Instance& inst, const UElement& x) { return inst.degree(x.a); }

Submodule derived_subgroup(const Instance& inst, DerivedFlavor flavor) {
  const AbelianLGroup& g = inst.group();
  const Ambient& a = inst.a_module();
  const std::size_t coords = flavor == DerivedFlavor::full ? inst.a_rank() : inst.atilde_rank();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const GroupElt t = g.generator(i);
    for (std::size_t j = 0; j < coords; ++j) {
      const Vec e = a.unit(j);
      gens.push_back(vec_sub(inst.modulus(), e, inst.act(t, e)));
    }
  }
  for (GroupElt s : g.elements())
    for (GroupElt t : g.elements())
      if (s < t) gens.push_back(commutator_differences(inst, s, t));
  return a.span(gens);
}

Submodule omega_subgroup(const Instance& inst) {
  std::vector<Vec> gens;
  for (GroupElt t : inst.group().elements()) gens.push_back(inst.a_tau(t));
  return inst.a_module().span(gens);
}

Vec transfer(const Instance& inst, const UElement& u) {
  check_elt(inst, u);
  const AbelianLGroup& g = inst.group();
  const Modulus& mod = inst.modulus();
  // u * u_t = (a + a_{s,t}, st) = u_{st} * ((st)^{-1}(a + a_{s,t}), 1)
  Vec acc = inst.a_module().zero_vec();
  for (GroupElt t : g.elements()) {
    const GroupElt st = g.mul(u.tau, t);
    const Vec v = vec_add(mod, u.a, inst.cocycle_value(u.tau, t));
    acc = vec_add(mod, acc, inst.act(g.inv(st), v));
  }
  return inst.a_module().canonical(acc);
}

ResolventElt log_iso(const Instance& inst, const UElement& u) {
  check_elt(inst, u);
  ResolventElt b{inst.a_module().canonical(u.a), Vec(inst.group().size() - 1, 0)};
  if (u.tau.index != 0) b.lam[u.tau.index - 1] = 1;
  return b;
}

}  // namespace logcap
