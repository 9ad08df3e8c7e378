#include <sstream>

#include "logcap/extension.hpp"
#include "logcap/instance.hpp"

namespace logcap {

namespace {

std::string show(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string elt(const AbelianLGroup& g, GroupElt x) { return "[" + g.format(x) + "]"; }

/// Column-convention matrix applied to a column vector.
Vec column_apply(const ZModMatrix& t, const Vec& x) {
  Vec y(t.rows(), 0);
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) y[i] = t.modulus().add(y[i], t.modulus().mul(t(i, j), x[j]));
  return y;
}

ValidationCheck check(std::string name, bool hypothesis = false) {
  ValidationCheck c;
  c.name = std::move(name);
  c.passed = true;
  c.hypothesis = hypothesis;
  return c;
}

void fail(ValidationCheck& c, const std::string& detail) {
  if (!c.passed) return;  // keep the first counterexample
  c.passed = false;
  c.detail = detail;
}

}  // namespace

ValidationReport validate(const Instance& inst) {
  const Modulus& mod = inst.modulus();
  const AbelianLGroup& g = inst.group();
  const Ambient& a = inst.a_module();
  const auto& action = inst.module().action;
  const std::size_t r1 = inst.a_rank();
  ValidationReport rep;

  {
    auto c = check("precision-rule");
    const unsigned need = inst.atilde_exponent_log() + g.exponent_log() + 1;
    if (inst.precision() < need)
      fail(c, "n = " + std::to_string(inst.precision()) + " < m_Atilde + m_G + 1 = " + std::to_string(need));
    rep.checks.push_back(c);
  }
  {
    auto c = check("action-well-defined");
    for (std::size_t i = 0; i < action.size(); ++i)
      for (std::size_t j = 0; j < r1; ++j) {
        Vec e(r1, 0);
        e[j] = mod.power_of_prime(a.exponents()[j]);
        const Vec img = column_apply(action[i], e);
        if (!a.is_zero(img))
          fail(c, "tau_" + std::to_string(i + 1) + " sends the relation l^k e_" + std::to_string(j + 1) + " to " +
                      show(a.canonical(img)));
      }
    rep.checks.push_back(c);
  }
  {
    auto c = check("action-block-structure");
    const std::size_t gi = inst.gamma_index();
    for (std::size_t i = 0; i < action.size(); ++i)
      for (std::size_t j = 0; j < r1; ++j) {
        const std::int64_t want = j == gi ? 1 : 0;
        if (action[i](gi, j) != want)
          fail(c, "tau_" + std::to_string(i + 1) + " changes the degree of basis vector " + std::to_string(j + 1));
      }
    rep.checks.push_back(c);
  }
  {
    auto c = check("action-commute");
    for (std::size_t i = 0; i < action.size(); ++i)
      for (std::size_t k = i + 1; k < action.size(); ++k)
        for (std::size_t j = 0; j < r1; ++j) {
          const Vec e = a.unit(j);
          const Vec d = vec_sub(mod, column_apply(action[i], column_apply(action[k], e)), column_apply(action[k], column_apply(action[i], e)));
          if (!a.is_zero(d))
            fail(c, "tau_" + std::to_string(i + 1) + " and tau_" + std::to_string(k + 1) + " do not commute on e_" +
                        std::to_string(j + 1));
        }
    rep.checks.push_back(c);
  }
  {
    auto c = check("action-order");
    for (std::size_t i = 0; i < action.size(); ++i)
      for (std::size_t j = 0; j < r1; ++j) {
        const Vec e = a.unit(j);
        Vec x = e;
        for (std::uint64_t k = 0; k < g.orders()[i]; ++k) x = column_apply(action[i], x);
        if (!a.is_zero(vec_sub(mod, x, e)))
          fail(c, "tau_" + std::to_string(i + 1) + "^" + std::to_string(g.orders()[i]) + " moves e_" +
                      std::to_string(j + 1));
      }
    rep.checks.push_back(c);
  }
  {
    auto c = check("cocycle-normalized");
    for (GroupElt t : g.elements()) {
      if (!a.is_zero(inst.cocycle_value(g.identity(), t)))
        fail(c, "a_{1," + elt(g, t) + "} = " + show(inst.cocycle_value(g.identity(), t)));
      if (!a.is_zero(inst.cocycle_value(t, g.identity())))
        fail(c, "a_{" + elt(g, t) + ",1} = " + show(inst.cocycle_value(t, g.identity())));
    }
    rep.checks.push_back(c);
  }
  {
    auto c = check("cocycle-identity");
    for (GroupElt s : g.elements())
      for (GroupElt t : g.elements())
        for (GroupElt r : g.elements()) {
          Vec v = inst.act(s, inst.cocycle_value(t, r));
          v = vec_sub(mod, v, inst.cocycle_value(g.mul(s, t), r));
          v = vec_add(mod, v, inst.cocycle_value(s, g.mul(t, r)));
          v = vec_sub(mod, v, inst.cocycle_value(s, t));
          if (!a.is_zero(v))
            fail(c, "sigma=" + elt(g, s) + " tau=" + elt(g, t) + " rho=" + elt(g, r) + ": residual " +
                        show(a.canonical(v)));
        }
    rep.checks.push_back(c);
  }
  {
    auto c = check("cocycle-inverse-convention");
    for (GroupElt t : g.elements())
      if (!a.is_zero(inst.cocycle_value(t, g.inv(t))))
        fail(c, "a_{" + elt(g, t) + "," + elt(g, g.inv(t)) + "} = " + show(inst.cocycle_value(t, g.inv(t))));
    rep.checks.push_back(c);
  }
  {
    auto c = check("a-tau-in-atilde");
    for (GroupElt t : g.elements())
      if (inst.degree(inst.a_tau(t)) != 0) fail(c, "a_" + elt(g, t) + " = " + show(inst.a_tau(t)) + " has nonzero degree");
    rep.checks.push_back(c);
  }

  const bool structural = rep.structural_ok();
  {
    auto c = check("H1", true);
    if (!structural) {
      fail(c, "not evaluated: structural checks failed");
    } else {
      const Submodule ud = derived_subgroup(inst, DerivedFlavor::full);
      if (!(ud == inst.atilde_submodule()))
        fail(c, "|U'| = " + std::to_string(a.order(ud)) + " but |Atilde| = " + std::to_string(inst.atilde_order()) +
                    (inst.atilde_submodule().includes(ud) ? "" : " (U' not inside Atilde)"));
    }
    rep.checks.push_back(c);
  }
  {
    auto c = check("degree-zero-quotient", true);
    if (!structural) {
      fail(c, "not evaluated: structural checks failed");
    } else {
      // |Utilde / U'| = |Atilde| |G| / |U'| when U' lies in Atilde
      const Submodule ud = derived_subgroup(inst, DerivedFlavor::full);
      const Submodule at = inst.atilde_submodule();
      if (!at.includes(ud)) {
        fail(c, "U' is not inside Atilde");
      } else {
        const std::uint64_t q = quotient_order(at, ud) * g.size();
        if (q != g.size())
          fail(c, "|Utilde/U'| = " + std::to_string(q) + ", expected |G| = " + std::to_string(g.size()));
      }
    }
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace logcap
