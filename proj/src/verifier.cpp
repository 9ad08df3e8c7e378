#include "logcap/verifier.hpp"

#include <algorithm>

#include "logcap/extension.hpp"
#include "logcap/hash.hpp"
#include "logcap/instance_io.hpp"

namespace logcap {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::hypothesis_failed: return "hypothesis-failed";
    case Status::skipped: return "skipped";
  }
  return "?";
}

bool InstanceReport::ok() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](const Verdict& v) { return v.status == Status::fail || v.status == Status::hypothesis_failed; });
}

const Verdict* InstanceReport::find(const std::string& id) const {
  for (const auto& v : verdicts)
    if (v.check_id == id) return &v;
  return nullptr;
}

namespace {

json coeff_table(const GroupRingElt& x) {
  json j = json::object();
  for (GroupElt g : x.group()->elements())
    if (x.coeff(g) != 0) j["[" + x.group()->format(g) + "]"] = x.coeff(g);
  return j;
}

json matrix_json(const RingMatrix<GroupRingElt>& m) {
  json j = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(coeff_table(x));
    j.push_back(r);
  }
  return j;
}

json sub_json(const Ambient& amb, const Submodule& s) { return {{"order", amb.order(s)}, {"basis", s.rows()}}; }

/// Collects named conditions for one check; the verdict fails on the first
/// false condition and the witness accumulates key quantities either way.
struct Checker {
  Verdict v;
  explicit Checker(std::string id) {
    v.check_id = std::move(id);
    v.status = Status::pass;
    v.witness = json::object();
  }
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (v.status == Status::pass) v.status = Status::fail;
    v.witness["failed"].push_back(what);
  }
  json& operator[](const std::string& k) { return v.witness[k]; }
};

std::vector<Verdict> gated(Status status, const json& witness) {
  std::vector<Verdict> out;
  for (const auto& id : check_ids()) out.push_back({id, status, witness});
  return out;
}

}  // namespace

json certificate_json(const RelationCertificate& cert) {
  json mu = json::array();
  for (const auto& x : cert.mu_gamma) mu.push_back(coeff_table(x));
  return {{"working_precision", cert.working_precision},
          {"M", matrix_json(cert.m)},
          {"N", matrix_json(cert.n)},
          {"M_gamma", matrix_json(cert.m_gamma)},
          {"mu_gamma", mu}};
}

InstanceReport verify_instance(const Instance& inst, const VerifyOptions& opts, const std::string& label) {
  InstanceReport rep;
  rep.label = label;
  rep.instance_hash = sha256_hex(dump_instance(inst));
  rep.validation = validate(inst);

  if (!rep.validation.structural_ok()) {
    json w = json::object();
    for (const auto& c : rep.validation.checks)
      if (!c.passed && !c.hypothesis) w["validation"][c.name] = c.detail;
    rep.verdicts = gated(Status::fail, w);
    return rep;
  }
  if (!rep.validation.hypotheses_ok()) {
    json w = json::object();
    for (const auto& c : rep.validation.checks)
      if (!c.passed) w["hypothesis"][c.name] = c.detail;
    rep.verdicts = gated(Status::hypothesis_failed, w);
    return rep;
  }

  const Modulus& mod = inst.modulus();
  const AbelianLGroup& g = inst.group();
  const GroupPtr& gp = inst.group_ptr();
  const Ambient& amb_a = inst.a_module();
  const Resolvent res(inst);
  const Ambient& amb_b = res.module();
  const GroupRingElt tr = trace_element(gp, mod);
  const std::uint64_t og = g.size();

  const Submodule bt = res.degree_zero_part();
  const Submodule ig_b = res.ig_star_b(false);
  const Submodule ig_bt = res.ig_star_b(true);
  const Submodule ig_gamma = res.ig_gamma();
  const Submodule u_omega = omega_subgroup(inst);
  const Submodule trace_bt = res.trace_image(bt);
  const Submodule p = preimage(bt, res.omega_map(), ig_bt);
  const Submodule boundary = res.boundary_module();
  const Submodule trace_kernel = preimage(bt, res.trace_map(), amb_a.zero());

  rep.trace_image_order = amb_a.order(trace_bt);
  rep.trace_kernel_order = quotient_order(trace_kernel, ig_bt);
  rep.ambiguous_index = quotient_order(p, ig_bt);
  rep.boundary_order = amb_a.order(boundary);

  std::optional<RelationCertificate> cert;
  std::optional<GroupRingElt> delta;
  std::string cert_error;
  try {
    cert = res.relation_matrices();
    rep.certificate = certificate_json(*cert);
    rep.certificate_hash = sha256_hex(rep.certificate.dump());
    delta = res.delta(*cert);
    rep.delta = delta->format();
  } catch (const std::exception& e) {
    cert_error = e.what();
  }
  auto need_cert = [&](Checker& c) {
    if (!cert_error.empty()) c.require(false, "certificate: " + cert_error);
    if (rep.certificate_hash) c["certificate_hash"] = *rep.certificate_hash;
    return cert_error.empty();
  };

  std::vector<Verdict>& out = rep.verdicts;

  {  // V1
    Checker c("V1");
    std::vector<UElement> elems;
    const bool exhaustive = opts.exhaustive_v1 && u_order(inst) <= opts.oracle_bound;
    if (exhaustive) {
      const UTable t(inst, opts.oracle_bound);
      for (std::uint32_t x = 0; x < t.size(); ++x) elems.push_back(t.decode(x));
    } else {
      for (std::size_t j = 0; j < inst.a_rank(); ++j) elems.push_back({amb_a.unit(j), g.identity()});
      for (std::size_t i = 0; i < g.rank(); ++i) elems.push_back({amb_a.zero_vec(), g.generator(i)});
    }
    std::size_t bad = 0;
    for (const auto& u : elems) {
      const Vec ver = transfer(inst, u);
      const Vec tl = res.trace(log_iso(inst, u));
      if (ver != tl) {
        if (bad++ == 0) c["counterexample"] = {{"a", u.a}, {"tau", g.format(u.tau)}, {"transfer", ver}, {"trace_log", tl}};
      }
    }
    c.require(bad == 0, "transfer differs from trace o log on " + std::to_string(bad) + " elements");
    c["mode"] = exhaustive ? "exhaustive" : "generators";
    c["elements_checked"] = elems.size();
    out.push_back(c.v);
  }
  {  // V2
    Checker c("V2");
    const Submodule want = res.atilde_plus_ig_squared();
    c.require(ig_b == want, "I_G*B differs from Atilde + I_G^2");
    c.require(bt.includes(ig_b), "I_G*B not inside Btilde");
    if (bt.includes(ig_b)) {
      const auto q = quotient_order(bt, ig_b);
      c["index_in_Btilde"] = q;
      c.require(q == og, "|Btilde / I_G*B| != |G|");
    }
    c["I_G*B"] = sub_json(amb_b, ig_b);
    c["Atilde+I_G^2"] = sub_json(amb_b, want);
    out.push_back(c.v);
  }
  {  // V3
    Checker c("V3");
    if (need_cert(c)) {
      const GroupRingElt one = GroupRingElt::constant(gp, mod, 1);
      const GroupRingElt det_m = det_ring(cert->m, one);
      const GroupRingElt det_mg = det_ring(cert->m_gamma, one);
      c["det_M"] = det_m.format();
      c["det_M_gamma"] = det_mg.format();
      c["kappa"] = det_m.coeff(g.identity());
      c["augmentation"] = det_m.augmentation_residue();
      c.require(det_m == tr, "det M != Tr");
      c.require(det_mg == tr, "det M (gamma form) != Tr");
      c.require(det_m.augmentation_residue() == mod.reduce(static_cast<std::int64_t>(og)), "deg det M != |G|");
      for (std::size_t i = 0; i < cert->m.size(); ++i)
        for (std::size_t j = 0; j < cert->m.size(); ++j) {
          const std::int64_t want = i == j ? mod.reduce(static_cast<std::int64_t>(g.orders()[i])) : 0;
          c.require(cert->m[i][j].augmentation_residue() == want && cert->m_gamma[i][j].augmentation_residue() == want,
                    "augmentation pattern of M broken at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
    c.require(ig_gamma.includes(trace_bt), "Tr(Btilde) not inside I_G*gamma");
    c["trace_image"] = sub_json(amb_a, trace_bt);
    out.push_back(c.v);
  }
  {  // V4
    Checker c("V4");
    const Submodule ud0 = derived_subgroup(inst, DerivedFlavor::degree_zero);
    const Submodule ud = derived_subgroup(inst, DerivedFlavor::full);
    const Submodule genus = sum(ud0, u_omega);
    c.require(genus == inst.atilde_submodule(), "Atilde != U~' + U~^w");
    c.require(ud == genus, "U' != U~' + U~^w");
    c["U~'"] = sub_json(amb_a, ud0);
    c["U~^w"] = sub_json(amb_a, u_omega);
    c["Atilde_order"] = inst.atilde_order();
    out.push_back(c.v);
  }
  {  // V5
    Checker c("V5");
    const Submodule wb = res.omega_image(bt);
    c.require(wb == u_omega, "w*Btilde != U~^w");
    c.require(u_omega == ig_gamma, "U~^w != I_G*gamma");
    const auto w2 = (res.omega_map() * res.omega_map()).row_list();
    c.require(std::all_of(w2.begin(), w2.end(), [](const Vec& r) { return vec_is_zero(r); }), "w^2 != 0 on B");
    c.require(res.lambda_span_of_generators() == bt, "b_i do not generate Btilde over Lambda[G]");
    c["w*Btilde"] = sub_json(amb_a, wb);
    out.push_back(c.v);
  }
  {  // V6
    Checker c("V6");
    if (need_cert(c)) {
      c["delta"] = delta->format();
      std::size_t bad = 0;
      for (std::size_t k = 0; k < res.rank(); ++k) {
        if (k == inst.gamma_index()) continue;
        const ResolventElt b = res.split(amb_b.unit(k));
        const Vec lhs = res.trace(b);
        const Vec rhs = res.omega_act(res.star_act(*delta, b)).a;
        if (lhs != rhs && bad++ == 0) c["counterexample"] = {{"generator", k}, {"trace", lhs}, {"w_delta", rhs}};
      }
      c.require(bad == 0, "Tr != w delta on " + std::to_string(bad) + " generators of Btilde");
      std::vector<Vec> gens;
      for (const auto& r : ig_gamma.rows()) gens.push_back(res.act_on_a(*delta, r));
      const Submodule dg = amb_a.span(gens);
      c.require(dg == trace_bt, "Tr(Btilde) != delta*(I_G*gamma)");
      c["delta*(I_G*gamma)"] = sub_json(amb_a, dg);
    }
    c["trace_image_order"] = *rep.trace_image_order;
    out.push_back(c.v);
  }
  {  // V7
    Checker c("V7");
    const Submodule tp = res.trace_image(p);
    c.require(amb_a.order(tp) == 1, "Tr does not vanish on w^{-1}(I_G*Btilde)");
    c["trace_of_preimage"] = sub_json(amb_a, tp);
    c["preimage_index"] = *rep.ambiguous_index;
    c["trace_kernel_index"] = *rep.trace_kernel_order;
    out.push_back(c.v);
  }
  {  // V8
    Checker c("V8");
    if (need_cert(c)) {
      c["delta"] = delta->format();
      for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = i + 1; j < g.rank(); ++j) {
          const Vec d = vec_sub(mod, inst.cocycle_value(g.generator(i), g.generator(j)),
                                inst.cocycle_value(g.generator(j), g.generator(i)));
          const Vec img = res.act_on_a(*delta, d);
          c.require(amb_a.is_zero(img), "delta*(a_{t" + std::to_string(i + 1) + ",t" + std::to_string(j + 1) +
                                            "} - a_{t" + std::to_string(j + 1) + ",t" + std::to_string(i + 1) +
                                            "}) != 0");
        }
    }
    c["boundary"] = sub_json(amb_a, boundary);
    out.push_back(c.v);
  }
  {  // V9
    Checker c("V9");
    c["index"] = *rep.ambiguous_index;
    c["group_order"] = og;
    c.require(*rep.ambiguous_index == og, "(w^{-1}(I_G*Btilde) : I_G*Btilde) != |G|");
    out.push_back(c.v);
  }
  {  // V10
    Checker c("V10");
    if (u_order(inst) > opts.oracle_bound) {
      c.v.status = Status::skipped;
      c["reason"] = "|U| = " + std::to_string(u_order(inst)) + " above oracle bound " + std::to_string(opts.oracle_bound);
    } else {
      const OracleFacts f = oracle_group(inst, opts.oracle_bound);
      const Submodule ud = derived_subgroup(inst, DerivedFlavor::full);
      const Submodule ud0 = derived_subgroup(inst, DerivedFlavor::degree_zero);
      c.require(f.derived == ud && f.derived_size == amb_a.order(ud), "U' differs from enumeration");
      c.require(f.derived_degree_zero == ud0 && f.derived_degree_zero_size == amb_a.order(ud0),
                "U~' differs from enumeration");
      c.require(f.omega_part == u_omega && f.omega_part_size == amb_a.order(u_omega), "U~^w differs from enumeration");
      const UTable t(inst, opts.oracle_bound);
      std::size_t bad = 0;
      for (std::uint32_t x = 0; x < t.size(); ++x)
        if (f.transfer[x] != transfer(inst, t.decode(x))) ++bad;
      c.require(bad == 0, "transfer differs from the coset product on " + std::to_string(bad) + " elements");
      c.require(f.abelianization_order * amb_a.order(ud) == f.u_order, "|U/U'| mismatch");
      c.require(f.degree_zero_quotient == og, "|U~/U'| != |G|");
      c.require(f.genus_quotient == og, "|U~/U~'U~^w| != |G|");
      c.require(f.ambiguous_order == *rep.ambiguous_index, "ambiguous classes differ from the preimage index");
      c.require(f.capitulation_kernel_order == *rep.trace_kernel_order, "capitulation kernel differs from trace kernel");
      c.require(f.ambiguous_in_kernel, "an ambiguous class does not capitulate");
      c["U_order"] = f.u_order;
      c["abelianization_order"] = f.abelianization_order;
      c["ambiguous_order"] = f.ambiguous_order;
      c["capitulation_kernel_order"] = f.capitulation_kernel_order;
    }
    out.push_back(c.v);
  }
  return rep;
}

}  // namespace logcap
