#include "logcap/resolvent.hpp"

#include <algorithm>

namespace logcap {

namespace {

std::vector<unsigned> resolvent_exponents(const Instance& inst) {
  std::vector<unsigned> exps = inst.a_module().exponents();
  exps.insert(exps.end(), inst.group().size() - 1, inst.precision());
  return exps;
}

bool all_zero(const std::vector<ResolventElt>& v) {
  return std::all_of(v.begin(), v.end(), [](const ResolventElt& r) { return vec_is_zero(r.a) && vec_is_zero(r.lam); });
}

/// sum_{g != 1} c_g (g - 1) as a group-ring element.
GroupRingElt from_augmentation_coords(const GroupPtr& g, const Modulus& mod, const Vec& c) {
  Vec coeffs(g->size(), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    coeffs[k + 1] = mod.reduce(c[k]);
    coeffs[0] = mod.sub(coeffs[0], c[k]);
  }
  return GroupRingElt(g, mod, std::move(coeffs));
}

}  // namespace

bool RelationCertificate::verified() const { return all_zero(residuals) && all_zero(residuals_gamma); }

Resolvent::Resolvent(const Instance& inst)
    : inst_(inst),
      b_(inst.modulus(), resolvent_exponents(inst)),
      omega_(inst.modulus(), 0, 0),
      trace_(inst.modulus(), 0, 0),
      omega_a_(inst.modulus(), 0, 0) {
  const Modulus& mod = inst_.modulus();
  const AbelianLGroup& g = inst_.group();
  const std::size_t ra = a_rank();
  const std::size_t rb = rank();
  for (GroupElt s : g.elements()) {
    ZModMatrix m(mod, rb, rb);
    const ZModMatrix& act = inst_.act_map(s);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < ra; ++j) m.set(i, j, act(i, j));
    for (GroupElt t : g.elements()) {
      if (t.index == 0) continue;
      const std::size_t row = ra + t.index - 1;
      const Vec c = inst_.cocycle_value(s, t);
      for (std::size_t j = 0; j < ra; ++j) m.set(row, j, c[j]);
      const GroupElt st = g.mul(s, t);
      if (st.index != 0) m.set(row, ra + st.index - 1, m(row, ra + st.index - 1) + 1);
      if (s.index != 0) m.set(row, ra + s.index - 1, m(row, ra + s.index - 1) - 1);
    }
    star_.push_back(std::move(m));
  }
  omega_ = ZModMatrix(mod, rb, rb);
  omega_a_ = ZModMatrix(mod, rb, ra);
  for (GroupElt t : g.elements()) {
    if (t.index == 0) continue;
    const Vec at = inst_.a_tau(t);
    for (std::size_t j = 0; j < ra; ++j) {
      omega_.set(ra + t.index - 1, j, at[j]);
      omega_a_.set(ra + t.index - 1, j, at[j]);
    }
  }
  trace_ = ZModMatrix(mod, rb, ra);
  for (const auto& m : star_)
    for (std::size_t i = 0; i < rb; ++i)
      for (std::size_t j = 0; j < ra; ++j) trace_.set(i, j, trace_(i, j) + m(i, j));
}

Vec Resolvent::coords(const ResolventElt& b) const {
  if (b.a.size() != a_rank() || b.lam.size() != inst_.group().size() - 1)
    throw DimensionMismatch("resolvent: element has wrong shape");
  Vec v(b.a);
  v.insert(v.end(), b.lam.begin(), b.lam.end());
  return b_.canonical(v);
}

ResolventElt Resolvent::split(const Vec& coords) const {
  if (coords.size() != rank()) throw DimensionMismatch("resolvent: coordinate vector has wrong length");
  const Vec c = b_.canonical(coords);
  return {Vec(c.begin(), c.begin() + a_rank()), Vec(c.begin() + a_rank(), c.end())};
}

ResolventElt Resolvent::from_a(const Vec& a) const {
  return {inst_.a_module().canonical(a), Vec(inst_.group().size() - 1, 0)};
}

ResolventElt Resolvent::generator_b(std::size_t i) const { return augmentation_basis(inst_.group().generator(i)); }

ResolventElt Resolvent::augmentation_basis(GroupElt t) const {
  ResolventElt b = from_a(inst_.a_module().zero_vec());
  if (t.index != 0) b.lam.at(t.index - 1) = 1;
  return b;
}

ResolventElt Resolvent::star_act(GroupElt g, const ResolventElt& b) const {
  return split(vec_mat(coords(b), star_.at(g.index)));
}

ResolventElt Resolvent::star_act(const GroupRingElt& x, const ResolventElt& b) const {
  require_same(x.modulus(), modulus());
  if (!(*x.group() == inst_.group())) throw GroupMismatch("resolvent: group ring element over another group");
  const Vec c = coords(b);
  Vec acc(rank(), 0);
  for (GroupElt g : inst_.group().elements()) {
    const auto k = x.coeff(g);
    if (k != 0) vec_axpy(modulus(), k, vec_mat(c, star_[g.index]), acc);
  }
  return split(acc);
}

ResolventElt Resolvent::omega_act(const ResolventElt& b) const { return split(vec_mat(coords(b), omega_)); }

Vec Resolvent::trace(const ResolventElt& b) const {
  const Vec c = coords(b);
  Vec acc(rank(), 0);
  for (const auto& m : star_) acc = vec_add(modulus(), acc, vec_mat(c, m));
  const ResolventElt r = split(acc);
  if (!vec_is_zero(r.lam)) throw std::logic_error("resolvent: trace has a nonzero augmentation-ideal component");
  return r.a;
}

Vec Resolvent::act_on_a(const GroupRingElt& x, const Vec& a) const {
  Vec acc(a_rank(), 0);
  for (GroupElt g : inst_.group().elements()) {
    const auto k = x.coeff(g);
    if (k != 0) vec_axpy(modulus(), k, inst_.act(g, a), acc);
  }
  return inst_.a_module().canonical(acc);
}

Submodule Resolvent::degree_zero_part() const {
  std::vector<std::size_t> cs;
  for (std::size_t i = 0; i < rank(); ++i)
    if (i != inst_.gamma_index()) cs.push_back(i);
  return b_.coordinate_span(cs);
}

Submodule Resolvent::ig_star_b(bool degree_zero) const {
  const AbelianLGroup& g = inst_.group();
  std::vector<Vec> gens;
  const ZModMatrix id = ZModMatrix::identity(modulus(), rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const ZModMatrix d = star_[g.generator(i).index] - id;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (degree_zero && j == inst_.gamma_index()) continue;
      gens.push_back(d.row_vec(j));
    }
  }
  return b_.span(gens);
}

Submodule Resolvent::atilde_plus_ig_squared() const {
  const AbelianLGroup& g = inst_.group();
  const GroupPtr& gp = inst_.group_ptr();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < inst_.atilde_rank(); ++i) gens.push_back(b_.unit(i));
  const GroupRingElt one = GroupRingElt::constant(gp, modulus(), 1);
  for (GroupElt s : g.elements())
    for (GroupElt t : g.elements()) {
      if (s.index == 0 || t.index == 0 || t < s) continue;
      const GroupRingElt p =
          (GroupRingElt::basis(gp, modulus(), s) - one) * (GroupRingElt::basis(gp, modulus(), t) - one);
      Vec v(rank(), 0);
      for (GroupElt x : g.elements())
        if (x.index != 0) v[a_rank() + x.index - 1] = p.coeff(x);
      gens.push_back(v);
    }
  return b_.span(gens);
}

Submodule Resolvent::lambda_span_of_generators() const {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < inst_.group().rank(); ++i) {
    const Vec b = coords(generator_b(i));
    for (const auto& m : star_) {
      const Vec gb = vec_mat(b, m);
      gens.push_back(gb);
      gens.push_back(vec_mat(gb, omega_));
    }
  }
  return b_.span(gens);
}

Submodule Resolvent::embed_a(const Submodule& s) const {
  if (s.ambient_rank() != a_rank()) throw DimensionMismatch("resolvent: submodule is not inside A");
  std::vector<Vec> gens;
  for (const auto& r : s.rows()) {
    Vec v(r);
    v.resize(rank(), 0);
    gens.push_back(v);
  }
  return b_.span(gens);
}

Submodule Resolvent::trace_image(const Submodule& s) const {
  return inst_.a_module().span(image(s, trace_).rows());
}

Submodule Resolvent::omega_image(const Submodule& s) const {
  return inst_.a_module().span(image(s, omega_a_).rows());
}

Submodule Resolvent::ig_gamma() const {
  std::vector<Vec> gens;
  for (GroupElt t : inst_.group().elements()) gens.push_back(inst_.a_tau(t));
  return inst_.a_module().span(gens);
}

Submodule Resolvent::boundary_module() const {
  const AbelianLGroup& g = inst_.group();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = i + 1; j < g.rank(); ++j) {
      const GroupElt ti = g.generator(i);
      const GroupElt tj = g.generator(j);
      gens.push_back(vec_sub(modulus(), inst_.cocycle_value(ti, tj), inst_.cocycle_value(tj, ti)));
    }
  return inst_.a_module().span(gens);
}

RelationCertificate Resolvent::relation_matrices() const {
  const AbelianLGroup& g = inst_.group();
  const GroupPtr& gp = inst_.group_ptr();
  const Modulus& mod = modulus();
  const std::size_t s = g.rank();
  const std::size_t og = g.size();

  if (!(lambda_span_of_generators() == degree_zero_part()))
    throw InfeasibleRelation("relation solver: the b_i do not generate Btilde over Lambda[G]");

  // Over Z/l^n the relations only pin det M down modulo l^{n - m_G}; solving
  // one cyclic factor of precision further up and reducing fixes it exactly.
  const unsigned lifted = inst_.precision() + g.exponent_log();
  std::optional<Resolvent> up;
  try {
    up.emplace(inst_.with_precision(lifted));
  } catch (const std::invalid_argument& e) {
    throw PrecisionModelError(std::string("relation solver: cannot lift precision: ") + e.what());
  }
  const Modulus& umod = up->modulus();
  const std::size_t rb = up->rank();

  std::vector<Vec> cyc_rows;    // (g-1)*b_j  (j major, g != 1)
  std::vector<Vec> omega_rows;  // w*(g*b_j)  (j major, all g)
  for (std::size_t j = 0; j < s; ++j) {
    const Vec bj = up->coords(up->generator_b(j));
    for (GroupElt x : g.elements()) {
      const Vec xb = vec_mat(bj, up->star_[x.index]);
      if (x.index != 0) cyc_rows.push_back(up->module().canonical(vec_sub(umod, xb, bj)));
      omega_rows.push_back(vec_mat(xb, up->omega_));
    }
  }
  std::vector<Vec> gamma_rows;  // (g-1)*gamma, g != 1
  for (GroupElt x : g.elements())
    if (x.index != 0) {
      const Vec gm = up->coords(up->gamma());
      gamma_rows.push_back(up->module().canonical(vec_sub(umod, vec_mat(gm, up->star_[x.index]), gm)));
    }
  const auto& rel = up->module().relations();

  auto stack = [&](std::initializer_list<const std::vector<Vec>*> parts) {
    std::vector<Vec> rows;
    for (auto* p : parts) rows.insert(rows.end(), p->begin(), p->end());
    return ZModMatrix(umod, rb, rows);
  };
  const ZModMatrix sys_omega = stack({&cyc_rows, &omega_rows, &rel});
  const ZModMatrix sys_gamma = stack({&cyc_rows, &gamma_rows, &rel});

  const GroupRingElt zero(gp, mod);
  RelationCertificate cert;
  cert.working_precision = lifted;
  cert.m.assign(s, std::vector<GroupRingElt>(s, zero));
  cert.n.assign(s, std::vector<GroupRingElt>(s, zero));
  cert.m_gamma.assign(s, std::vector<GroupRingElt>(s, zero));
  cert.mu_gamma.assign(s, zero);

  const std::size_t per_j = og - 1;
  for (std::size_t i = 0; i < s; ++i) {
    const std::int64_t ei = static_cast<std::int64_t>(g.orders()[i]);
    const Vec target = up->module().canonical(vec_scale(umod, ei, up->coords(up->generator_b(i))));
    const GroupRingElt eid = GroupRingElt::constant(gp, mod, ei);

    const auto x = solve(sys_omega, target);
    if (!x) throw InfeasibleRelation("relation solver: no relation e_i b_i = sum mu_ij*b_j + w*sum nu_ij*b_j for i = " +
                                     std::to_string(i + 1));
    const auto y = solve(sys_gamma, target);
    if (!y) throw InfeasibleRelation("relation solver: no relation e_i b_i = sum lambda_ij*b_j + mu_i*gamma for i = " +
                                     std::to_string(i + 1));
    for (std::size_t j = 0; j < s; ++j) {
      const Vec mu(x->begin() + j * per_j, x->begin() + (j + 1) * per_j);
      const std::size_t off = s * per_j + j * og;
      const GroupRingElt nu(gp, mod, Vec(x->begin() + off, x->begin() + off + og));
      const GroupRingElt mu_e = from_augmentation_coords(gp, mod, mu);
      cert.m[i][j] = (i == j ? eid : zero) - mu_e;
      cert.n[i][j] = nu;
      const Vec lam(y->begin() + j * per_j, y->begin() + (j + 1) * per_j);
      cert.m_gamma[i][j] = (i == j ? eid : zero) - from_augmentation_coords(gp, mod, lam);
    }
    const Vec mug(y->begin() + s * per_j, y->begin() + (s + 1) * per_j);
    cert.mu_gamma[i] = from_augmentation_coords(gp, mod, mug);
  }

  // residuals, re-verified at the working precision n
  const ResolventElt gam = gamma();
  for (std::size_t i = 0; i < s; ++i) {
    const std::int64_t ei = static_cast<std::int64_t>(g.orders()[i]);
    Vec r = vec_scale(mod, ei, coords(generator_b(i)));
    Vec rg = r;
    Vec nsum(rank(), 0);
    for (std::size_t j = 0; j < s; ++j) {
      const ResolventElt bj = generator_b(j);
      const GroupRingElt mu = GroupRingElt::constant(gp, mod, i == j ? ei : 0) - cert.m[i][j];
      r = vec_sub(mod, r, coords(star_act(mu, bj)));
      nsum = vec_add(mod, nsum, coords(star_act(cert.n[i][j], bj)));
      const GroupRingElt lam = GroupRingElt::constant(gp, mod, i == j ? ei : 0) - cert.m_gamma[i][j];
      rg = vec_sub(mod, rg, coords(star_act(lam, bj)));
    }
    r = vec_sub(mod, r, vec_mat(nsum, omega_));
    rg = vec_sub(mod, rg, coords(star_act(cert.mu_gamma[i], gam)));
    cert.residuals.push_back(split(r));
    cert.residuals_gamma.push_back(split(rg));
  }
  if (!cert.verified()) throw InfeasibleRelation("relation solver: certificate residuals do not vanish at precision n");
  return cert;
}

GroupRingElt Resolvent::delta(const RelationCertificate& cert) const {
  const GroupPtr& gp = inst_.group_ptr();
  const Modulus& mod = modulus();
  const std::size_t s = cert.m.size();
  RingMatrix<OmegaRingElt> w(s, std::vector<OmegaRingElt>(s, OmegaRingElt::from(GroupRingElt(gp, mod))));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) w[i][j] = {cert.m[i][j], -cert.n[i][j]};
  const OmegaRingElt d = det_ring(w, OmegaRingElt::from(GroupRingElt::constant(gp, mod, 1)));
  const Vec& c = d.r0.coeffs();
  if (!std::all_of(c.begin(), c.end(), [&](std::int64_t x) { return x == c[0]; }))
    throw CertificateInconsistent("delta: w^0 part of det(M - wN) is not a multiple of the trace: " + d.r0.format());
  const std::int64_t order = static_cast<std::int64_t>(inst_.group().size());
  if (d.r0.augmentation_residue() != mod.reduce(order))
    throw PrecisionModelError("delta: augmentation of det M is " + std::to_string(d.r0.augmentation_residue()) +
                              ", expected |G| = " + std::to_string(order));
  if (c[0] != 1)
    throw PrecisionModelError("delta: det M = " + std::to_string(c[0]) + " * Tr, expected kappa = 1");
  return -d.r1;
}

}  // namespace logcap
