#include "logcap/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <tuple>

namespace logcap {

std::uint64_t u_order(const Instance& inst) { return inst.a_module().size() * inst.group().size(); }

UTable::UTable(const Instance& inst, std::uint64_t bound) : inst_(inst) {
  const std::uint64_t n = u_order(inst);
  if (n > bound)
    throw OracleUnavailable("oracle: |U| = " + std::to_string(n) + " exceeds the bound " + std::to_string(bound));
  size_ = static_cast<std::uint32_t>(n);
  a_size_ = static_cast<std::uint32_t>(inst.a_module().size());
  og_ = static_cast<std::uint32_t>(inst.group().size());
  for (unsigned e : inst.a_module().exponents()) radix_.push_back(static_cast<std::uint32_t>(ipow(inst.prime(), e)));
  act_.resize(static_cast<std::size_t>(og_) * a_size_);
  for (GroupElt t : inst.group().elements())
    for (std::uint32_t a = 0; a < a_size_; ++a) act_[t.index * a_size_ + a] = encode_a(inst.act(t, decode_a(a)));
  coc_.resize(static_cast<std::size_t>(og_) * og_);
  for (GroupElt s : inst.group().elements())
    for (GroupElt t : inst.group().elements()) coc_[s.index * og_ + t.index] = encode_a(inst.cocycle_value(s, t));
  // inverses from powers: x^{-1} = x^{k-1} where x^k = 1
  inv_.assign(size_, 0);
  const std::uint32_t one = encode(u_identity(inst));
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::uint32_t prev = one;
    std::uint32_t p = x;
    while (p != one) {
      prev = p;
      p = mul(p, x);
    }
    inv_[x] = prev;
  }
}

std::uint32_t UTable::encode_a(const Vec& a) const {
  const Vec c = inst_.a_module().canonical(a);
  const auto& exps = inst_.a_module().exponents();
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) idx = idx * ipow(inst_.prime(), exps[i]) + static_cast<std::uint64_t>(c[i]);
  return static_cast<std::uint32_t>(idx);
}

Vec UTable::decode_a(std::uint32_t index) const {
  const auto& exps = inst_.a_module().exponents();
  Vec c(exps.size(), 0);
  std::uint64_t x = index;
  for (std::size_t i = exps.size(); i-- > 0;) {
    const std::uint64_t m = ipow(inst_.prime(), exps[i]);
    c[i] = static_cast<std::int64_t>(x % m);
    x /= m;
  }
  return c;
}

std::uint32_t UTable::encode(const UElement& u) const {
  return encode_a(u.a) * static_cast<std::uint32_t>(inst_.group().size()) + u.tau.index;
}

UElement UTable::decode(std::uint32_t code) const {
  const auto og = static_cast<std::uint32_t>(inst_.group().size());
  return {decode_a(code / og), GroupElt{code % og}};
}

std::uint32_t UTable::add_a(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t out = 0, place = 1;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::uint32_t m = radix_[i];
    out += ((x % m + y % m) % m) * place;
    x /= m;
    y /= m;
    place *= m;
  }
  return out;
}

std::uint32_t UTable::mul(std::uint32_t x, std::uint32_t y) const {
  const std::uint32_t ax = x / og_, tx = x % og_, ay = y / og_, ty = y % og_;
  const std::uint32_t a = add_a(add_a(ax, act_[tx * a_size_ + ay]), coc_[tx * og_ + ty]);
  return a * og_ + inst_.group().mul({tx}, {ty}).index;
}

/// Reference product through the module API, used to cross-check the tables.
std::uint32_t UTable::mul_reference(std::uint32_t x, std::uint32_t y) const {
  const UElement u = decode(x);
  const UElement v = decode(y);
  const Modulus& mod = inst_.modulus();
  Vec a = vec_add(mod, u.a, inst_.act(u.tau, v.a));
  a = vec_add(mod, a, inst_.cocycle_value(u.tau, v.tau));
  return encode({a, inst_.group().mul(u.tau, v.tau)});
}

std::uint32_t UTable::commutator(std::uint32_t x, std::uint32_t y) const {
  return mul(mul(x, y), mul(inv_[x], inv_[y]));
}

std::int64_t UTable::degree(std::uint32_t x) const { return inst_.degree(decode(x).a); }

namespace {

std::vector<std::uint32_t> members(const UTable& t, bool degree_zero) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < t.size(); ++x)
    if (!degree_zero || t.degree(x) == 0) out.push_back(x);
  return out;
}

/// Subgroup of A generated by the flagged A-indices, as an indicator.
std::vector<std::uint8_t> close_subgroup(const UTable& t, const std::vector<std::uint8_t>& gens) {
  const Modulus& mod = t.instance().modulus();
  std::vector<std::uint8_t> in(t.a_size(), 0);
  std::vector<std::uint32_t> elems{t.encode_a(t.instance().a_module().zero_vec())};
  in[elems[0]] = 1;
  for (std::uint32_t g = 0; g < gens.size(); ++g) {
    if (!gens[g] || in[g]) continue;
    const Vec gv = t.decode_a(g);
    // S <- S + <g>
    for (std::size_t k = 0; k < elems.size(); ++k) {
      const std::uint32_t s = t.encode_a(vec_add(mod, t.decode_a(elems[k]), gv));
      if (!in[s]) {
        in[s] = 1;
        elems.push_back(s);
      }
    }
  }
  return in;
}

std::pair<Submodule, std::uint64_t> as_submodule(const UTable& t, const std::vector<std::uint8_t>& ind) {
  std::vector<Vec> gens;
  std::uint64_t count = 0;
  for (std::uint32_t i = 0; i < ind.size(); ++i)
    if (ind[i]) {
      gens.push_back(t.decode_a(i));
      ++count;
    }
  return {t.instance().a_module().span(gens), count};
}

std::uint32_t a_part(const UTable& t, std::uint32_t code) {
  return code / static_cast<std::uint32_t>(t.instance().group().size());
}

}  // namespace

std::vector<std::uint8_t> commutator_indicator(const UTable& table, bool degree_zero, Exec exec) {
  const auto elems = members(table, degree_zero);
  const auto m = static_cast<std::int64_t>(elems.size());
  std::vector<std::uint8_t> ind(table.a_size(), 0);
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = 0; j < m; ++j) ind[a_part(table, table.commutator(elems[i], elems[j]))] = 1;
    return ind;
  }
#pragma omp parallel
  {
    std::vector<std::uint8_t> local(table.a_size(), 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = 0; j < m; ++j) local[a_part(table, table.commutator(elems[i], elems[j]))] = 1;
#pragma omp critical
    for (std::size_t k = 0; k < local.size(); ++k) ind[k] |= local[k];
  }
  return ind;
}

OracleFacts oracle_group(const Instance& inst, std::uint64_t bound, Exec exec) {
  const UTable t(inst, bound);
  const AbelianLGroup& g = inst.group();
  const Modulus& mod = inst.modulus();
  const std::uint32_t og = static_cast<std::uint32_t>(g.size());
  OracleFacts f;
  f.u_order = t.size();

  const auto comm = commutator_indicator(t, false, exec);
  const auto comm0 = commutator_indicator(t, true, exec);
  const auto derived = close_subgroup(t, comm);
  const auto derived0 = close_subgroup(t, comm0);

  const std::uint32_t gamma = t.encode({inst.gamma(), g.identity()});
  const auto utilde = members(t, true);
  std::vector<std::uint8_t> omega_gens(t.a_size(), 0);
  for (auto u : utilde) omega_gens[a_part(t, t.commutator(gamma, u))] = 1;
  const auto omega = close_subgroup(t, omega_gens);
  std::vector<std::uint8_t> genus_gens(t.a_size(), 0);
  for (std::uint32_t i = 0; i < t.a_size(); ++i) genus_gens[i] = derived0[i] | omega[i];
  const auto genus = close_subgroup(t, genus_gens);

  std::tie(f.derived, f.derived_size) = as_submodule(t, derived);
  std::tie(f.derived_degree_zero, f.derived_degree_zero_size) = as_submodule(t, derived0);
  std::tie(f.omega_part, f.omega_part_size) = as_submodule(t, omega);
  const std::uint64_t genus_size = std::count(genus.begin(), genus.end(), 1);

  // Transfer via right cosets A t_s with representatives t_s = (c, s), c the
  // last A-element in index order: t_i u = h_i t_j, Ver(u) = sum h_i.
  const std::uint32_t c = t.a_size() - 1;
  std::vector<std::uint32_t> rep(og), rep_inv(og);
  for (std::uint32_t s = 0; s < og; ++s) {
    rep[s] = c * og + s;
    rep_inv[s] = t.inverse(rep[s]);
  }
  f.transfer.resize(t.size());
  for (std::uint32_t u = 0; u < t.size(); ++u) {
    const GroupElt su = t.decode(u).tau;
    Vec acc = inst.a_module().zero_vec();
    for (std::uint32_t s = 0; s < og; ++s) {
      const std::uint32_t j = g.mul({s}, su).index;
      const std::uint32_t h = t.mul(t.mul(rep[s], u), rep_inv[j]);
      const UElement hu = t.decode(h);
      if (hu.tau.index != 0) throw std::logic_error("oracle: coset product left A");
      acc = vec_add(mod, acc, hu.a);
    }
    f.transfer[u] = inst.a_module().canonical(acc);
  }

  const std::uint64_t d_size = f.derived_size;
  const std::uint64_t d0_size = f.derived_degree_zero_size;
  f.abelianization_order = t.size() / d_size;
  f.degree_zero_quotient = utilde.size() / d_size;
  f.genus_quotient = utilde.size() / genus_size;

  std::uint64_t amb = 0, ker = 0;
  f.ambiguous_in_kernel = true;
  for (auto u : utilde) {
    const bool fixed = derived0[a_part(t, t.commutator(gamma, u))] != 0;
    const bool killed = vec_is_zero(f.transfer[u]);
    amb += fixed;
    ker += killed;
    if (fixed && !killed) f.ambiguous_in_kernel = false;
  }
  f.ambiguous_order = amb / d0_size;
  f.capitulation_kernel_order = ker / d0_size;
  return f;
}

}  // namespace logcap
