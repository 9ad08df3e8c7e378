#include "logcap/forge.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "logcap/hash.hpp"
#include "logcap/instance_io.hpp"

namespace logcap {

using nlohmann::json;

namespace {

unsigned exact_log(std::uint64_t x, unsigned prime) {
  unsigned e = 0;
  while (x > 1) {
    if (x % prime != 0) throw std::invalid_argument("forge: " + std::to_string(x) + " is not a power of the prime");
    x /= prime;
    ++e;
  }
  return e;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return std::min(a * b, cap + 1);
}

/// Atilde with its column-convention endomorphisms.
struct AtildeSpace {
  Modulus mod;
  std::vector<unsigned> k;  // exponents of the invariant factors
  Ambient amb;

  AtildeSpace(const Modulus& m, const std::vector<std::uint64_t>& orders)
      : mod(m), k(exps(m, orders)), amb(m, k) {}

  static std::vector<unsigned> exps(const Modulus& m, const std::vector<std::uint64_t>& orders) {
    std::vector<unsigned> out;
    for (auto o : orders) out.push_back(exact_log(o, m.prime()));
    return out;
  }
  std::size_t rank() const { return k.size(); }
  std::uint64_t size() const { return amb.size(); }

  Vec apply(const ZModMatrix& t, const Vec& x) const {
    Vec y(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) y[i] = mod.add(y[i], mod.mul(t(i, j), x[j]));
    return amb.canonical(y);
  }
  ZModMatrix compose(const ZModMatrix& a, const ZModMatrix& b) const {  // a after b
    ZModMatrix c = a * b;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) c.set(i, j, c(i, j) % static_cast<std::int64_t>(ipow(mod.prime(), k[i])));
    return c;
  }
  bool equal_maps(const ZModMatrix& a, const ZModMatrix& b) const {
    for (std::size_t j = 0; j < rank(); ++j) {
      const Vec e = amb.unit(j);
      if (apply(a, e) != apply(b, e)) return false;
    }
    return true;
  }
  /// Number of values entry (i, j) may take: l^{min(k_i, k_j)}.
  std::uint64_t entry_count(std::size_t i, std::size_t j) const { return ipow(mod.prime(), std::min(k[i], k[j])); }
  std::int64_t entry_step(std::size_t i, std::size_t j) const {
    return static_cast<std::int64_t>(ipow(mod.prime(), k[i] > k[j] ? k[i] - k[j] : 0));
  }
  std::uint64_t raw_matrix_count(std::uint64_t cap) const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) n = sat_mul(n, entry_count(i, j), cap);
    return n;
  }
  ZModMatrix matrix_from_index(std::uint64_t idx) const {
    ZModMatrix t(mod, rank(), rank());
    for (std::size_t i = rank(); i-- > 0;)
      for (std::size_t j = rank(); j-- > 0;) {
        const std::uint64_t c = entry_count(i, j);
        t.set(i, j, static_cast<std::int64_t>(idx % c) * entry_step(i, j));
        idx /= c;
      }
    return t;
  }
  Vec element_from_index(std::uint64_t idx) const {
    Vec v(rank(), 0);
    for (std::size_t i = rank(); i-- > 0;) {
      const std::uint64_t c = ipow(mod.prime(), k[i]);
      v[i] = static_cast<std::int64_t>(idx % c);
      idx /= c;
    }
    return v;
  }
  ZModMatrix power(const ZModMatrix& t, std::uint64_t e) const {
    ZModMatrix p = ZModMatrix::identity(mod, rank());
    for (std::uint64_t i = 0; i < e; ++i) p = compose(t, p);
    return p;
  }
  /// Matrices with t^order = 1, in index order.
  std::vector<ZModMatrix> matrices_of_order_dividing(std::uint64_t order) const {
    std::vector<ZModMatrix> out;
    const ZModMatrix id = ZModMatrix::identity(mod, rank());
    const std::uint64_t n = raw_matrix_count(~0ull >> 2);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      ZModMatrix t = matrix_from_index(idx);
      if (equal_maps(power(t, order), id)) out.push_back(std::move(t));
    }
    return out;
  }
};

/// One fixed (G, Atilde, T) block: group-element actions and the linear
/// algebra of admissible coboundaries.
struct Block {
  const AtildeSpace& at;
  GroupPtr g;
  std::vector<ZModMatrix> t;    // generators
  std::vector<ZModMatrix> act;  // by element index

  Block(const AtildeSpace& a, GroupPtr gp, std::vector<ZModMatrix> gens) : at(a), g(std::move(gp)), t(std::move(gens)) {
    for (GroupElt x : g->elements()) {
      const auto e = g->exponents(x);
      ZModMatrix m = ZModMatrix::identity(at.mod, at.rank());
      for (std::size_t i = 0; i < e.size(); ++i) m = at.compose(m, at.power(t[i], e[i]));
      act.push_back(std::move(m));
    }
  }

  Vec apply(GroupElt x, const Vec& v) const { return at.apply(act[x.index], v); }

  /// Cocycle of the extension with u_i^{o_i} = c_i and u_k u_j = d_kj u_j u_k.
  Cocycle collect(const std::vector<Vec>& c, const std::map<std::pair<std::size_t, std::size_t>, Vec>& d) const {
    const std::size_t s = g->rank();
    const Modulus& mod = at.mod;
    Cocycle out(g->size(), at.rank());
    for (GroupElt sig : g->elements())
      for (GroupElt tau : g->elements()) {
        auto e = g->exponents(sig);
        const auto f = g->exponents(tau);
        Vec acc(at.rank(), 0);
        for (std::size_t j = 0; j < s; ++j)
          for (std::uint64_t rep = 0; rep < f[j]; ++rep) {
            // u^e u_j: move u_j left past u_{j+1}^{e_{j+1}} ... u_s^{e_s}
            Vec dv(at.rank(), 0);
            for (std::size_t k = s; k-- > j + 1;) {
              Vec sk(at.rank(), 0);
              const Vec& dkj = d.at({k, j});
              ZModMatrix p = ZModMatrix::identity(mod, at.rank());
              for (std::uint64_t q = 0; q < e[k]; ++q) {
                sk = vec_add(mod, sk, at.apply(p, dkj));
                p = at.compose(t[k], p);
              }
              dv = vec_add(mod, at.apply(p, dv), sk);
            }
            ZModMatrix prefix = ZModMatrix::identity(mod, at.rank());
            for (std::size_t k = 0; k <= j; ++k) prefix = at.compose(prefix, at.power(t[k], e[k]));
            acc = vec_add(mod, acc, at.apply(prefix, dv));
            if (++e[j] == g->orders()[j]) {
              e[j] = 0;
              ZModMatrix pre = ZModMatrix::identity(mod, at.rank());
              for (std::size_t k = 0; k < j; ++k) pre = at.compose(pre, at.power(t[k], e[k]));
              acc = vec_add(mod, acc, at.apply(pre, c[j]));
            }
            acc = at.amb.canonical(acc);
          }
        out.set(sig, tau, acc);
      }
    return out;
  }

  bool is_cocycle(const Cocycle& a) const {
    const Modulus& mod = at.mod;
    for (GroupElt s : g->elements())
      for (GroupElt t2 : g->elements())
        for (GroupElt r : g->elements()) {
          Vec v = apply(s, a.at(t2, r));
          v = vec_sub(mod, v, a.at(g->mul(s, t2), r));
          v = vec_add(mod, v, a.at(s, g->mul(t2, r)));
          v = vec_sub(mod, v, a.at(s, t2));
          if (!at.amb.is_zero(v)) return false;
        }
    return true;
  }

  // flattened coordinates: shift maps c (|G| r) and tables (|G|^2 r)
  std::vector<unsigned> shift_exps() const {
    std::vector<unsigned> e;
    for (std::size_t x = 0; x < g->size(); ++x) e.insert(e.end(), at.k.begin(), at.k.end());
    return e;
  }
  std::vector<unsigned> table_exps() const {
    std::vector<unsigned> e;
    for (std::size_t x = 0; x < g->size() * g->size(); ++x) e.insert(e.end(), at.k.begin(), at.k.end());
    return e;
  }

  /// Howell form of {delta c : c_1 = 0, (delta c)_{t,t^-1} = 0}, plus the
  /// generators of the c-group itself.
  struct Shifts {
    Submodule c0;
    Submodule bd0;
  };
  Shifts admissible() const {
    const Modulus& mod = at.mod;
    const std::size_t r = at.rank();
    const std::size_t og = g->size();
    const Ambient cs(mod, shift_exps());
    const Ambient ts(mod, table_exps());
    // constraint map c -> (c_1, (c_t + t.c_{t^-1})_t)
    std::vector<unsigned> cons_exps = shift_exps();
    cons_exps.insert(cons_exps.end(), at.k.begin(), at.k.end());
    const Ambient cons(mod, cons_exps);
    ZModMatrix lmap(mod, og * r, (og + 1) * r);
    ZModMatrix dmap(mod, og * r, og * og * r);
    auto add = [&](ZModMatrix& m, std::size_t row, std::size_t col, std::int64_t v) {
      m.set(row, col, m(row, col) + v);
    };
    for (std::size_t x = 0; x < og; ++x)
      for (std::size_t i = 0; i < r; ++i) {
        const std::size_t row = x * r + i;  // coordinate i of c_x
        const Vec e = at.amb.unit(i);
        if (x == 0) add(lmap, row, og * r + i, 1);
        // c_t term for t = x, and t.c_{t^-1} term for t = x^-1
        add(lmap, row, x * r + i, 1);
        const GroupElt tinv = g->inv({static_cast<std::uint32_t>(x)});
        const Vec img = apply(tinv, e);  // t = x^-1 acting on c_x
        for (std::size_t k2 = 0; k2 < r; ++k2) add(lmap, row, tinv.index * r + k2, img[k2]);
        // (delta c)_{s,t} = c_s + s.c_t - c_{st}
        for (GroupElt s : g->elements())
          for (GroupElt t2 : g->elements()) {
            const std::size_t base = (s.index * og + t2.index) * r;
            if (s.index == x) add(dmap, row, base + i, 1);
            if (t2.index == x) {
              const Vec si = apply(s, e);
              for (std::size_t k2 = 0; k2 < r; ++k2) add(dmap, row, base + k2, si[k2]);
            }
            if (g->mul(s, t2).index == x) add(dmap, row, base + i, -1);
          }
      }
    Submodule c0 = preimage(cs.whole(), lmap, cons.zero());
    Submodule bd0 = ts.span(image(c0, dmap).rows());
    return {std::move(c0), std::move(bd0)};
  }

  Vec flatten(const Cocycle& a) const {
    Vec v;
    for (const auto& x : a.table()) v.insert(v.end(), x.begin(), x.end());
    return v;
  }
  Cocycle unflatten(const Vec& v) const {
    const std::size_t r = at.rank();
    std::vector<Vec> table;
    for (std::size_t x = 0; x < g->size() * g->size(); ++x) table.emplace_back(v.begin() + x * r, v.begin() + (x + 1) * r);
    return Cocycle(g->size(), r, std::move(table));
  }

  /// Coboundary shift making a_{t,t^-1} = 0, if one exists.
  std::optional<Cocycle> compliant(const Cocycle& a) const {
    const Modulus& mod = at.mod;
    const std::size_t r = at.rank();
    std::vector<Vec> c(g->size(), Vec(r, 0));
    for (GroupElt t2 : g->elements()) {
      const GroupElt ti = g->inv(t2);
      if (t2.index == 0 || ti < t2) continue;
      const Vec& v = a.at(t2, ti);
      if (ti == t2) {
        // (1 + t) c_t = -a_{t,t}: rows of (1 + t)^T plus relations
        std::vector<Vec> rows;
        for (std::size_t j = 0; j < r; ++j) {
          Vec row = apply(t2, at.amb.unit(j));
          row[j] = mod.add(row[j], 1);
          rows.push_back(row);
        }
        for (const auto& rel : at.amb.relations()) rows.push_back(rel);
        const auto x = solve(ZModMatrix(mod, r, rows), at.amb.canonical(vec_scale(mod, -1, v)));
        if (!x) return std::nullopt;
        c[t2.index] = at.amb.canonical(Vec(x->begin(), x->begin() + r));
      } else {
        c[ti.index] = at.amb.canonical(vec_scale(mod, -1, apply(ti, v)));
      }
    }
    Cocycle out(g->size(), r);
    for (GroupElt s : g->elements())
      for (GroupElt t2 : g->elements()) {
        Vec v = vec_add(mod, a.at(s, t2), c[s.index]);
        v = vec_add(mod, v, apply(s, c[t2.index]));
        v = vec_sub(mod, v, c[g->mul(s, t2).index]);
        out.set(s, t2, at.amb.canonical(v));
      }
    for (GroupElt t2 : g->elements())
      if (!at.amb.is_zero(out.at(t2, g->inv(t2)))) return std::nullopt;
    return out;
  }
};

ZModMatrix full_action(const AtildeSpace& at, const ZModMatrix& t, const Vec& x) {
  const std::size_t r = at.rank();
  ZModMatrix m(at.mod, r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) m.set(i, j, t(i, j));
    m.set(i, r, x[i]);
  }
  m.set(r, r, 1);
  return m;
}

/// Iterates over all tuples of indices into `sizes`, lexicographically.
template <class F>
void for_each_tuple(const std::vector<std::uint64_t>& sizes, F&& f) {
  std::vector<std::uint64_t> idx(sizes.size(), 0);
  for (auto sz : sizes)
    if (sz == 0) return;
  while (true) {
    f(idx);
    std::size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (sizes.empty()) return;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> commutator_pairs(std::size_t s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t j = 0; j < k; ++j) out.push_back({k, j});
  return out;
}

std::string orders_name(const std::vector<std::uint64_t>& o, const char* empty) {
  if (o.empty()) return empty;
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i) s += (i ? "x" : "") + std::to_string(o[i]);
  return s;
}

}  // namespace

std::string cell_name(unsigned prime, unsigned precision, const std::vector<std::uint64_t>& g,
                      const std::vector<std::uint64_t>& atilde) {
  return "l" + std::to_string(prime) + "_n" + std::to_string(precision) + "_G" + orders_name(g, "1") + "_A" +
         orders_name(atilde, "0");
}

json params_json(const SearchParams& p) {
  return {{"prime", p.prime},
          {"G", p.group_orders},
          {"Atilde", p.atilde_orders},
          {"precision", p.precision},
          {"oracle_bound", p.oracle_bound},
          {"seed", p.seed},
          {"ceiling", p.ceiling},
          {"per_cell_cap", p.per_cell_cap}};
}

std::uint64_t estimate_cell(unsigned prime, const std::vector<std::uint64_t>& g_orders,
                            const std::vector<std::uint64_t>& atilde_orders, std::uint64_t ceiling) {
  const unsigned need = [&] {
    unsigned m = 1;
    for (auto o : atilde_orders) m = std::max(m, exact_log(o, prime));
    return m;
  }();
  const Modulus mod(prime, need);
  const AtildeSpace at(mod, atilde_orders);
  const std::uint64_t raw = at.raw_matrix_count(ceiling);
  if (sat_mul(raw, std::max<std::uint64_t>(g_orders.size(), 1), ceiling) > ceiling)
    throw CeilingExceeded(sat_mul(raw, g_orders.size(), ceiling), ceiling);
  std::map<std::uint64_t, std::uint64_t> filtered;
  std::uint64_t est = 1;
  for (auto o : g_orders) {
    if (!filtered.count(o)) filtered[o] = at.matrices_of_order_dividing(o).size();
    est = sat_mul(est, filtered[o], ceiling);
  }
  const std::size_t s = g_orders.size();
  for (std::size_t i = 0; i < s + s * (s + 1) / 2; ++i) est = sat_mul(est, at.size(), ceiling);
  return est;
}

std::uint64_t estimate(const SearchParams& p) {
  std::uint64_t total = 0;
  for (const auto& g : p.group_orders)
    for (const auto& a : p.atilde_orders) {
      total += estimate_cell(p.prime, g, a, p.ceiling);
      if (total > p.ceiling) throw CeilingExceeded(total, p.ceiling);
    }
  return total;
}

CellResult enumerate_cell(const SearchParams& p, const std::vector<std::uint64_t>& g_orders,
                          const std::vector<std::uint64_t>& atilde_orders) {
  const std::uint64_t est = estimate_cell(p.prime, g_orders, atilde_orders, p.ceiling);
  if (est > p.ceiling) throw CeilingExceeded(est, p.ceiling);

  const Modulus mod(p.prime, p.precision);
  const AtildeSpace at(mod, atilde_orders);
  const auto gp = std::make_shared<const AbelianLGroup>(p.prime, g_orders);
  const std::size_t s = gp->rank();
  const std::size_t r = at.rank();
  CellResult res;
  res.g_orders = g_orders;
  res.atilde_orders = atilde_orders;

  std::vector<std::vector<ZModMatrix>> cand(s);
  for (std::size_t i = 0; i < s; ++i) cand[i] = at.matrices_of_order_dividing(g_orders[i]);
  std::vector<std::uint64_t> cand_sizes;
  for (const auto& c : cand) cand_sizes.push_back(c.size());

  const auto pairs = commutator_pairs(s);
  std::set<Vec> seen;

  for_each_tuple(cand_sizes, [&](const std::vector<std::uint64_t>& ti) {
    std::vector<ZModMatrix> t;
    for (std::size_t i = 0; i < s; ++i) t.push_back(cand[i][ti[i]]);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        if (!at.equal_maps(at.compose(t[i], t[j]), at.compose(t[j], t[i]))) return;
    const Block blk(at, gp, t);
    const auto shifts = blk.admissible();

    // gamma columns
    std::vector<std::vector<Vec>> xs;
    {
      std::vector<std::uint64_t> sizes(s, at.size());
      for_each_tuple(sizes, [&](const std::vector<std::uint64_t>& xi) {
        std::vector<Vec> x;
        for (std::size_t i = 0; i < s; ++i) x.push_back(at.element_from_index(xi[i]));
        for (std::size_t i = 0; i < s; ++i) {
          Vec acc(r, 0);
          ZModMatrix pw = ZModMatrix::identity(mod, r);
          for (std::uint64_t m = 0; m < g_orders[i]; ++m) {
            acc = vec_add(mod, acc, at.apply(pw, x[i]));
            pw = at.compose(t[i], pw);
          }
          if (!at.amb.is_zero(acc)) return;
        }
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = i + 1; j < s; ++j) {
            const Vec l = vec_sub(mod, at.apply(t[i], x[j]), x[j]);
            const Vec rr = vec_sub(mod, at.apply(t[j], x[i]), x[i]);
            if (!at.amb.equal(l, rr)) return;
          }
        xs.push_back(std::move(x));
      });
    }
    if (xs.empty()) return;

    // extension data: c_i fixed by t_i, d_kj arbitrary
    std::vector<std::vector<Vec>> cvals(s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::uint64_t v = 0; v < at.size(); ++v) {
        const Vec e = at.element_from_index(v);
        if (at.apply(t[i], e) == e) cvals[i].push_back(e);
      }
    std::vector<std::uint64_t> dsizes;
    for (std::size_t i = 0; i < s; ++i) dsizes.push_back(cvals[i].size());
    for (std::size_t q = 0; q < pairs.size(); ++q) dsizes.push_back(at.size());

    std::vector<Cocycle> tables;  // canonical, deduplicated within this block
    std::set<Vec> block_seen;
    for_each_tuple(dsizes, [&](const std::vector<std::uint64_t>& di) {
      std::vector<Vec> c;
      for (std::size_t i = 0; i < s; ++i) c.push_back(cvals[i][di[i]]);
      std::map<std::pair<std::size_t, std::size_t>, Vec> d;
      for (std::size_t q = 0; q < pairs.size(); ++q) d[pairs[q]] = at.element_from_index(di[s + q]);
      const Cocycle raw = blk.collect(c, d);
      if (!blk.is_cocycle(raw)) return;
      const auto comp = blk.compliant(raw);
      if (!comp) return;
      const Vec key = shifts.bd0.reduce(blk.flatten(*comp));
      if (!block_seen.insert(key).second) return;
      tables.push_back(blk.unflatten(key));
    });

    for (const auto& x : xs)
      for (const auto& table : tables) {
        ClassModule cm;
        cm.atilde_orders = atilde_orders;
        for (std::size_t i = 0; i < s; ++i) cm.action.push_back(full_action(at, t[i], x[i]));
        Instance inst(mod, gp, std::move(cm), table);
        ++res.candidates;
        Vec key;
        for (const auto& m : inst.module().action)
          for (const auto& row : m.row_list()) key.insert(key.end(), row.begin(), row.end());
        const Vec flat = blk.flatten(inst.cocycle());
        key.insert(key.end(), flat.begin(), flat.end());
        if (!seen.insert(key).second) continue;
        bool nonzero_b = false;
        if (s == 2) {
          const Vec b = vec_sub(mod, inst.cocycle_value(gp->generator(0), gp->generator(1)),
                                inst.cocycle_value(gp->generator(1), gp->generator(0)));
          nonzero_b = !inst.a_module().is_zero(b);
        }
        const ValidationReport rep = validate(inst);
        if (!rep.ok()) {
          if (nonzero_b) {
            ++res.nonzero_boundary_rejected;
            for (const auto& f : rep.failed()) ++res.nonzero_boundary_rejections[f];
          }
          continue;
        }
        res.nonzero_boundary += nonzero_b;
        if (s == 2 && !nonzero_b) {
          // the boundary moves by (s-1)c_t - (t-1)c_s under admissible shifts
          for (const auto& row : shifts.c0.rows()) {
            std::vector<Vec> c;
            for (std::size_t x = 0; x < gp->size(); ++x)
              c.push_back(at.amb.canonical(Vec(row.begin() + x * r, row.begin() + (x + 1) * r)));
            const GroupElt s0 = gp->generator(0), s1 = gp->generator(1);
            const Vec moved = vec_sub(mod, vec_sub(mod, blk.apply(s0, c[s1.index]), c[s1.index]),
                                      vec_sub(mod, blk.apply(s1, c[s0.index]), c[s0.index]));
            if (at.amb.is_zero(moved)) continue;
            res.boundary_representatives.emplace(res.instances.size(), coboundary_shift(inst, c));
            break;
          }
        }
        res.instances.push_back(std::move(inst));
      }
  });
  return res;
}

std::vector<Instance> enumerate_instances(const SearchParams& p) {
  estimate(p);
  std::vector<Instance> out;
  for (const auto& g : p.group_orders)
    for (const auto& a : p.atilde_orders) {
      auto cell = enumerate_cell(p, g, a);
      for (auto& i : cell.instances) out.push_back(std::move(i));
    }
  return out;
}

std::optional<Instance> random_instance(const SearchParams& p, std::mt19937_64& rng, std::size_t attempts) {
  if (p.group_orders.empty() || p.atilde_orders.empty()) return std::nullopt;
  const Modulus mod(p.prime, p.precision);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const auto& go = p.group_orders[rng() % p.group_orders.size()];
    const auto& ao = p.atilde_orders[rng() % p.atilde_orders.size()];
    const AtildeSpace at(mod, ao);
    const auto gp = std::make_shared<const AbelianLGroup>(p.prime, go);
    const std::size_t s = gp->rank();
    const std::size_t r = at.rank();
    auto rand_elt = [&] { return at.element_from_index(rng() % at.size()); };
    std::vector<ZModMatrix> t;
    for (std::size_t i = 0; i < s; ++i) {
      ZModMatrix m(mod, r, r);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          m.set(a, b, static_cast<std::int64_t>(rng() % at.entry_count(a, b)) * at.entry_step(a, b));
      t.push_back(m);
    }
    const Block blk(at, gp, t);
    std::vector<Vec> c;
    for (std::size_t i = 0; i < s; ++i) c.push_back(rand_elt());
    std::map<std::pair<std::size_t, std::size_t>, Vec> d;
    for (const auto& pr : commutator_pairs(s)) d[pr] = rand_elt();
    const Cocycle raw = blk.collect(c, d);
    if (!blk.is_cocycle(raw)) continue;
    const auto comp = blk.compliant(raw);
    if (!comp) continue;
    ClassModule cm;
    cm.atilde_orders = ao;
    for (std::size_t i = 0; i < s; ++i) cm.action.push_back(full_action(at, t[i], rand_elt()));
    Instance inst(mod, gp, std::move(cm), *comp);
    if (validate(inst).ok()) return inst;
  }
  return std::nullopt;
}

namespace {

AtildeSpace space_of(const Instance& inst) { return AtildeSpace(inst.modulus(), inst.module().atilde_orders); }

std::vector<ZModMatrix> atilde_blocks(const Instance& inst) {
  const std::size_t r = inst.atilde_rank();
  std::vector<ZModMatrix> out;
  for (const auto& m : inst.module().action) {
    ZModMatrix t(inst.modulus(), r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) t.set(i, j, m(i, j));
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Vec>> admissible_shift_generators(const Instance& inst) {
  const AtildeSpace at = space_of(inst);
  const Block blk(at, inst.group_ptr(), atilde_blocks(inst));
  const auto sh = blk.admissible();
  const std::size_t r = at.rank();
  std::vector<std::vector<Vec>> out;
  for (const auto& row : sh.c0.rows()) {
    std::vector<Vec> c;
    for (std::size_t x = 0; x < inst.group().size(); ++x)
      c.push_back(at.amb.canonical(Vec(row.begin() + x * r, row.begin() + (x + 1) * r)));
    if (std::all_of(c.begin(), c.end(), [](const Vec& v) { return vec_is_zero(v); })) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Vec> random_admissible_shift(const Instance& inst, std::mt19937_64& rng) {
  const auto gens = admissible_shift_generators(inst);
  const Modulus& mod = inst.modulus();
  std::vector<Vec> c(inst.group().size(), Vec(inst.atilde_rank(), 0));
  for (const auto& gen : gens) {
    const auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(mod.value()));
    for (std::size_t x = 0; x < c.size(); ++x) vec_axpy(mod, k, gen[x], c[x]);
  }
  const AtildeSpace at = space_of(inst);
  for (auto& v : c) v = at.amb.canonical(v);
  return c;
}

Vec canonical_cocycle_key(const Instance& inst) {
  const AtildeSpace at = space_of(inst);
  const Block blk(at, inst.group_ptr(), atilde_blocks(inst));
  return blk.admissible().bd0.reduce(blk.flatten(inst.cocycle()));
}

std::optional<Instance> make_inverse_compliant(const Instance& inst) {
  const AtildeSpace at = space_of(inst);
  const Block blk(at, inst.group_ptr(), atilde_blocks(inst));
  const auto c = blk.compliant(inst.cocycle());
  if (!c) return std::nullopt;
  return inst.with_cocycle(*c);
}

CorpusSummary write_corpus(const SearchParams& p, const std::filesystem::path& dir) {
  const std::uint64_t est = estimate(p);
  std::filesystem::create_directories(dir);
  CorpusSummary out;
  json cells = json::array();
  json files = json::array();
  std::uint64_t s2_found = 0, s2_shiftable = 0, s2_emitted = 0, total_found = 0;
  json s2_cells = json::array();
  for (const auto& go : p.group_orders)
    for (const auto& ao : p.atilde_orders) {
      CellResult cell = enumerate_cell(p, go, ao);
      const std::size_t found = cell.instances.size();
      total_found += found;
      std::vector<std::size_t> pick;
      if (p.per_cell_cap == 0 || found <= p.per_cell_cap) {
        for (std::size_t i = 0; i < found; ++i) pick.push_back(i);
      } else {
        for (std::size_t k = 0; k < p.per_cell_cap; ++k) pick.push_back(k * found / p.per_cell_cap);
      }
      auto nonzero_b = [&](const Instance& inst) {
        const auto& g = inst.group();
        if (g.rank() != 2) return false;
        const Vec b = vec_sub(inst.modulus(), inst.cocycle_value(g.generator(0), g.generator(1)),
                              inst.cocycle_value(g.generator(1), g.generator(0)));
        return !inst.a_module().is_zero(b);
      };
      std::size_t emitted_nz = 0;
      for (auto i : pick) emitted_nz += nonzero_b(cell.instances[i]);
      std::optional<std::size_t> shifted;  // pick emitted as its boundary representative
      if (emitted_nz == 0 && !pick.empty()) {
        auto swap_in = [&](std::size_t i) {
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) pick.back() = i;
          std::sort(pick.begin(), pick.end());
        };
        if (cell.nonzero_boundary > 0) {
          for (std::size_t i = 0; i < found; ++i)
            if (nonzero_b(cell.instances[i])) {
              swap_in(i);
              break;
            }
          emitted_nz = 1;
        } else if (!cell.boundary_representatives.empty()) {
          std::size_t chosen = cell.boundary_representatives.begin()->first;
          for (auto i : pick)
            if (cell.boundary_representatives.count(i)) {
              chosen = i;
              break;
            }
          swap_in(chosen);
          shifted = chosen;
          emitted_nz = 1;
        }
      }
      if (go.size() == 2) {
        s2_found += cell.nonzero_boundary;
        s2_shiftable += cell.boundary_representatives.size();
        s2_emitted += emitted_nz;
        s2_cells.push_back({{"G", go},
                            {"Atilde", ao},
                            {"canonical_nonzero_boundary", cell.nonzero_boundary},
                            {"nonzero_boundary_after_shift", cell.boundary_representatives.size()},
                            {"nonzero_boundary_rejected", cell.nonzero_boundary_rejected},
                            {"rejected_by", cell.nonzero_boundary_rejections}});
      }
      const std::string name = cell_name(p.prime, p.precision, go, ao);
      for (std::size_t k = 0; k < pick.size(); ++k) {
        std::ostringstream fn;
        fn << name << "_" << std::setw(4) << std::setfill('0') << pick[k] << ".json";
        const bool use_shift = shifted && *shifted == pick[k];
        const std::string text =
            dump_instance(use_shift ? cell.boundary_representatives.at(pick[k]) : cell.instances[pick[k]]);
        std::ofstream(dir / fn.str()) << text;
        out.files.push_back(dir / fn.str());
        files.push_back({{"path", fn.str()},
                         {"sha256", sha256_hex(text)},
                         {"cell", name},
                         {"representative", use_shift ? "boundary-shift" : "canonical"}});
      }
      cells.push_back({{"name", name},
                       {"G", go},
                       {"Atilde", ao},
                       {"tables_checked", cell.candidates},
                       {"found", found},
                       {"emitted", pick.size()},
                       {"s2_nonzero_boundary", cell.nonzero_boundary + cell.boundary_representatives.size()}});
    }
  out.manifest = {{"params", params_json(p)},
                  {"seed", p.seed},
                  {"estimate", est},
                  {"cells", cells},
                  {"files", files},
                  {"total_found", total_found},
                  {"total_emitted", files.size()},
                  {"s2_nonzero_boundary",
                   {{"canonical_found", s2_found},
                    {"found_after_shift", s2_shiftable},
                    {"emitted", s2_emitted},
                    {"space_exhausted", true},
                    {"cells_searched", s2_cells}}}};
  std::ofstream(dir / "manifest.json") << out.manifest.dump(2) << "\n";
  return out;
}

}  // namespace logcap
