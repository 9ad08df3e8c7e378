#include "logcap/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace logcap {

namespace {

struct TrackedRow {
  Vec v;
  Vec combo;  // coefficients on the input rows; empty when untracked
};

struct Echelon {
  std::vector<TrackedRow> rows;
  std::vector<std::size_t> pivots;
  std::vector<unsigned> vals;
};

void sub_multiple(const Modulus& mod, std::int64_t q, const TrackedRow& src, TrackedRow& dst) {
  if (q == 0) return;
  const std::int64_t nq = mod.neg(q);
  vec_axpy(mod, nq, src.v, dst.v);
  if (!dst.combo.empty()) vec_axpy(mod, nq, src.combo, dst.combo);
}

Echelon howell(const Modulus& mod, std::size_t cols, std::vector<TrackedRow> pool) {
  Echelon out;
  const unsigned n = mod.precision();
  std::erase_if(pool, [](const TrackedRow& r) { return vec_is_zero(r.v); });

  for (std::size_t c = 0; c < cols && !pool.empty(); ++c) {
    std::size_t best = pool.size();
    unsigned best_val = n;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].v[c] == 0) continue;
      const unsigned val = mod.valuation(pool[i].v[c]);
      if (val < best_val) {
        best_val = val;
        best = i;
      }
    }
    if (best == pool.size()) continue;

    TrackedRow piv = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));

    const std::int64_t lv = mod.power_of_prime(best_val);
    const std::int64_t unit = piv.v[c] / lv;
    const std::int64_t inv = mod.inverse(unit);
    piv.v = vec_scale(mod, inv, piv.v);
    if (!piv.combo.empty()) piv.combo = vec_scale(mod, inv, piv.combo);

    for (auto& r : pool) {
      if (r.v[c] == 0) continue;
      sub_multiple(mod, r.v[c] / lv, piv, r);
    }
    std::erase_if(pool, [](const TrackedRow& r) { return vec_is_zero(r.v); });

    // saturation: l^{n-v} * pivot row vanishes at c but may not elsewhere
    TrackedRow sat{vec_scale(mod, mod.power_of_prime(n - best_val), piv.v), {}};
    if (!piv.combo.empty()) sat.combo = vec_scale(mod, mod.power_of_prime(n - best_val), piv.combo);
    if (!vec_is_zero(sat.v)) pool.push_back(std::move(sat));

    out.rows.push_back(std::move(piv));
    out.pivots.push_back(c);
    out.vals.push_back(best_val);
  }

  for (std::size_t j = 0; j < out.rows.size(); ++j)
    for (std::size_t i = j + 1; i < out.rows.size(); ++i) {
      const std::int64_t e = out.rows[j].v[out.pivots[i]];
      const std::int64_t q = e / mod.power_of_prime(out.vals[i]);
      if (q != 0) sub_multiple(mod, q, out.rows[i], out.rows[j]);
    }
  return out;
}

std::vector<TrackedRow> untracked(const std::vector<Vec>& rows) {
  std::vector<TrackedRow> pool;
  pool.reserve(rows.size());
  for (const auto& r : rows) pool.push_back({r, {}});
  return pool;
}

// Rows of a Howell form whose pivot lies at or after column `from`,
// restricted to the columns [from, end).
std::vector<Vec> trailing_block(const Submodule& s, std::size_t from) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < s.rows().size(); ++i) {
    if (s.pivots()[i] < from) continue;
    const Vec& r = s.rows()[i];
    out.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(from), r.end());
  }
  return out;
}

}  // namespace

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) throw std::overflow_error("ipow: result exceeds 64 bits");
    r *= base;
  }
  return r;
}

Submodule::Submodule(const Modulus& mod, std::size_t ambient_rank) : mod_(mod), rank_(ambient_rank) {}

Vec Submodule::reduce(const Vec& v) const {
  if (v.size() != rank_) throw DimensionMismatch("submodule: vector length differs from ambient rank");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = mod_.reduce(v[i]);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::int64_t lv = mod_.power_of_prime(mod_.valuation(rows_[i][pivots_[i]]));
    const std::int64_t q = r[pivots_[i]] / lv;
    if (q != 0) vec_axpy(mod_, mod_.neg(q), rows_[i], r);
  }
  return r;
}

bool Submodule::includes(const Submodule& other) const {
  require_same(mod_, other.mod_);
  if (rank_ != other.rank_) throw DimensionMismatch("submodule: ambient ranks differ");
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& r) { return contains(r); });
}

unsigned Submodule::order_exponent() const {
  unsigned e = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) e += mod_.precision() - mod_.valuation(rows_[i][pivots_[i]]);
  return e;
}

Submodule normal_form(const ZModMatrix& m) {
  Echelon e = howell(m.modulus(), m.cols(), untracked(m.row_list()));
  Submodule s(m.modulus(), m.cols());
  for (auto& r : e.rows) s.rows_.push_back(std::move(r.v));
  s.pivots_ = std::move(e.pivots);
  return s;
}

Submodule span(const Modulus& mod, std::size_t rank, const std::vector<Vec>& generators) {
  return normal_form(ZModMatrix(mod, rank, generators));
}

Submodule sum(const Submodule& a, const Submodule& b) {
  require_same(a.modulus(), b.modulus());
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("sum: ambient ranks differ");
  std::vector<Vec> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return span(a.modulus(), a.ambient_rank(), rows);
}

Submodule intersection(const Submodule& a, const Submodule& b) {
  require_same(a.modulus(), b.modulus());
  const std::size_t r = a.ambient_rank();
  if (r != b.ambient_rank()) throw DimensionMismatch("intersection: ambient ranks differ");
  std::vector<Vec> rows;
  for (const auto& x : a.rows()) {
    Vec row(x);
    row.insert(row.end(), x.begin(), x.end());
    rows.push_back(std::move(row));
  }
  for (const auto& y : b.rows()) {
    Vec row(y);
    row.resize(2 * r, 0);
    rows.push_back(std::move(row));
  }
  const Submodule block = span(a.modulus(), 2 * r, rows);
  return span(a.modulus(), r, trailing_block(block, r));
}

Submodule image(const Submodule& s, const ZModMatrix& map) {
  require_same(s.modulus(), map.modulus());
  if (map.rows() != s.ambient_rank()) throw DimensionMismatch("image: map rows differ from ambient rank");
  std::vector<Vec> rows;
  for (const auto& x : s.rows()) rows.push_back(vec_mat(x, map));
  return span(s.modulus(), map.cols(), rows);
}

Submodule preimage(const Submodule& domain, const ZModMatrix& map, const Submodule& target) {
  require_same(domain.modulus(), map.modulus());
  require_same(domain.modulus(), target.modulus());
  if (map.rows() != domain.ambient_rank() || map.cols() != target.ambient_rank())
    throw DimensionMismatch("preimage: map shape does not match domain/target");
  const std::size_t t = map.cols();
  const std::size_t d = domain.ambient_rank();
  std::vector<Vec> rows;
  for (const auto& x : domain.rows()) {
    Vec row = vec_mat(x, map);
    row.insert(row.end(), x.begin(), x.end());
    rows.push_back(std::move(row));
  }
  for (const auto& y : target.rows()) {
    Vec row(y);
    row.resize(t + d, 0);
    rows.push_back(std::move(row));
  }
  const Submodule block = span(domain.modulus(), t + d, rows);
  return span(domain.modulus(), d, trailing_block(block, t));
}

std::optional<Vec> solve(const ZModMatrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw DimensionMismatch("solve: right-hand side length differs from column count");
  const Modulus& mod = m.modulus();
  std::vector<TrackedRow> pool;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vec combo(m.rows(), 0);
    combo[i] = 1;
    pool.push_back({m.row_vec(i), std::move(combo)});
  }
  const Echelon e = howell(mod, m.cols(), std::move(pool));

  Vec rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) rest[i] = mod.reduce(v[i]);
  Vec x(m.rows(), 0);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const std::int64_t entry = rest[e.pivots[i]];
    if (entry == 0) continue;
    const std::int64_t lv = mod.power_of_prime(e.vals[i]);
    if (entry % lv != 0) return std::nullopt;
    const std::int64_t q = entry / lv;
    vec_axpy(mod, mod.neg(q), e.rows[i].v, rest);
    vec_axpy(mod, q, e.rows[i].combo, x);
  }
  if (!vec_is_zero(rest)) return std::nullopt;

  Vec check = vec_mat(x, m);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (check[i] != mod.reduce(v[i])) throw std::logic_error("solve: substitution check failed");
  return x;
}

unsigned quotient_order_exponent(const Submodule& outer, const Submodule& inner) {
  if (!outer.includes(inner)) throw ContainmentError("quotient_order: inner submodule is not contained in outer");
  return outer.order_exponent() - inner.order_exponent();
}

std::uint64_t quotient_order(const Submodule& outer, const Submodule& inner) {
  return ipow(outer.modulus().prime(), quotient_order_exponent(outer, inner));
}

std::vector<std::uint64_t> quotient_invariants(const Submodule& outer, const Submodule& inner) {
  if (!outer.includes(inner))
    throw ContainmentError("quotient_invariants: inner submodule is not contained in outer");
  const Modulus& mod = outer.modulus();
  const unsigned n = mod.precision();
  const std::size_t k = outer.rows().size();

  // Coordinates of each inner generator on the Howell basis of outer.
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < k; ++i) {
    Vec r(k, 0);
    r[i] = mod.power_of_prime(n - mod.valuation(outer.rows()[i][outer.pivots()[i]]));
    rel.push_back(std::move(r));
  }
  for (const auto& g : inner.rows()) {
    Vec rest(g);
    Vec coef(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t lv = mod.power_of_prime(mod.valuation(outer.rows()[i][outer.pivots()[i]]));
      const std::int64_t q = rest[outer.pivots()[i]] / lv;
      coef[i] = q;
      vec_axpy(mod, mod.neg(q), outer.rows()[i], rest);
    }
    rel.push_back(std::move(coef));
  }

  // Smith reduction over the local ring Z/l^n.
  std::vector<unsigned> diag;
  std::size_t t = 0;
  for (; t < k; ++t) {
    std::size_t bi = rel.size(), bj = k;
    unsigned bv = n;
    for (std::size_t i = t; i < rel.size(); ++i)
      for (std::size_t j = t; j < k; ++j) {
        if (rel[i][j] == 0) continue;
        const unsigned val = mod.valuation(rel[i][j]);
        if (val < bv) {
          bv = val;
          bi = i;
          bj = j;
        }
      }
    if (bi == rel.size()) break;
    std::swap(rel[t], rel[bi]);
    for (auto& r : rel) std::swap(r[t], r[bj]);
    const std::int64_t lv = mod.power_of_prime(bv);
    const std::int64_t inv = mod.inverse(rel[t][t] / lv);
    rel[t] = vec_scale(mod, inv, rel[t]);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (i == t || rel[i][t] == 0) continue;
      vec_axpy(mod, mod.neg(rel[i][t] / lv), rel[t], rel[i]);
    }
    for (std::size_t j = t + 1; j < k; ++j) {
      if (rel[t][j] == 0) continue;
      const std::int64_t q = rel[t][j] / lv;
      for (auto& r : rel) r[j] = mod.sub(r[j], mod.mul(q, r[t]));
    }
    diag.push_back(bv);
  }
  for (; t < k; ++t) diag.push_back(n);

  std::vector<std::uint64_t> out;
  for (unsigned w : diag)
    if (w > 0) out.push_back(ipow(mod.prime(), w));
  std::sort(out.begin(), out.end());
  return out;
}

Ambient::Ambient(const Modulus& mod, std::vector<unsigned> exponents)
    : mod_(mod), exps_(std::move(exponents)), zero_(mod, exps_.size()) {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > mod.precision()) throw std::invalid_argument("ambient: coordinate order exceeds l^n");
    if (exps_[i] < mod.precision()) {
      Vec r(exps_.size(), 0);
      r[i] = mod.power_of_prime(exps_[i]);
      relations_.push_back(std::move(r));
    }
  }
  zero_ = logcap::span(mod_, rank(), relations_);
}

Vec Ambient::canonical(const Vec& v) const {
  if (v.size() != rank()) throw DimensionMismatch("ambient: vector length differs from rank");
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t m = static_cast<std::int64_t>(ipow(mod_.prime(), exps_[i]));
    r[i] = ((v[i] % m) + m) % m;
  }
  return r;
}

Vec Ambient::unit(std::size_t i) const {
  Vec r(rank(), 0);
  r.at(i) = 1;
  return r;
}

Submodule Ambient::whole() const {
  std::vector<std::size_t> all(rank());
  for (std::size_t i = 0; i < rank(); ++i) all[i] = i;
  return coordinate_span(all);
}

Submodule Ambient::span(const std::vector<Vec>& generators) const {
  std::vector<Vec> rows = generators;
  rows.insert(rows.end(), relations_.begin(), relations_.end());
  return logcap::span(mod_, rank(), rows);
}

Submodule Ambient::coordinate_span(const std::vector<std::size_t>& coords) const {
  std::vector<Vec> gens;
  for (auto c : coords) gens.push_back(unit(c));
  return span(gens);
}

unsigned Ambient::order_exponent(const Submodule& s) const {
  if (!s.includes(zero_)) throw ContainmentError("ambient: submodule does not contain the relation lattice");
  return s.order_exponent() - zero_.order_exponent();
}

std::uint64_t Ambient::order(const Submodule& s) const { return ipow(mod_.prime(), order_exponent(s)); }

std::uint64_t Ambient::size() const {
  unsigned e = 0;
  for (auto k : exps_) e += k;
  return ipow(mod_.prime(), e);
}

}  // namespace logcap
