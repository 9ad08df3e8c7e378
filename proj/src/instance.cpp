#include "logcap/instance.hpp"

#include <algorithm>

namespace logcap {

namespace {

unsigned exact_log(std::uint64_t x, unsigned prime, const char* what) {
  unsigned e = 0;
  std::uint64_t y = x;
  while (y > 1 && y % prime == 0) {
    y /= prime;
    ++e;
  }
  if (y != 1 || e == 0)
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(x) + " is not a positive power of " +
                                std::to_string(prime));
  return e;
}

std::vector<unsigned> coordinate_exponents(const Modulus& mod, const std::vector<std::uint64_t>& orders) {
  std::vector<unsigned> exps;
  for (auto o : orders) {
    const unsigned e = exact_log(o, mod.prime(), "atilde order");
    if (e > mod.precision()) throw std::invalid_argument("atilde order " + std::to_string(o) + " exceeds l^n");
    exps.push_back(e);
  }
  exps.push_back(mod.precision());
  return exps;
}

}  // namespace

Cocycle::Cocycle(std::size_t group_order, std::size_t atilde_rank)
    : order_(group_order), rank_(atilde_rank), table_(group_order * group_order, Vec(atilde_rank, 0)) {}

Cocycle::Cocycle(std::size_t group_order, std::size_t atilde_rank, std::vector<Vec> table)
    : order_(group_order), rank_(atilde_rank), table_(std::move(table)) {
  if (table_.size() != order_ * order_) throw DimensionMismatch("cocycle: table must have |G|^2 entries");
  for (const auto& v : table_)
    if (v.size() != rank_) throw DimensionMismatch("cocycle: value has wrong number of Atilde coordinates");
}

void Cocycle::set(GroupElt s, GroupElt t, Vec v) {
  if (v.size() != rank_) throw DimensionMismatch("cocycle: value has wrong number of Atilde coordinates");
  table_.at(s.index * order_ + t.index) = std::move(v);
}

Instance::Instance(const Modulus& mod, GroupPtr group, ClassModule module, Cocycle cocycle)
    : mod_(mod),
      group_(std::move(group)),
      module_(std::move(module)),
      cocycle_(std::move(cocycle)),
      a_(mod, coordinate_exponents(mod, module_.atilde_orders)) {
  if (group_->prime() != mod.prime()) throw std::invalid_argument("instance: group prime differs from modulus prime");
  const std::size_t r1 = a_rank();
  if (module_.action.size() != group_->rank())
    throw DimensionMismatch("instance: need one action matrix per cyclic generator");
  for (auto& m : module_.action) {
    require_same(m.modulus(), mod);
    if (m.rows() != r1 || m.cols() != r1) throw DimensionMismatch("instance: action matrix must be (r+1)x(r+1)");
  }
  if (cocycle_.group_order() != group_->size() || cocycle_.atilde_rank() != atilde_rank())
    throw DimensionMismatch("instance: cocycle shape does not match G and Atilde");
  for (std::size_t i = 0; i < atilde_rank(); ++i) atilde_exp_log_ = std::max(atilde_exp_log_, a_.exponents()[i]);

  // canonical Atilde representatives in the cocycle table
  const Ambient atilde(mod, std::vector<unsigned>(a_.exponents().begin(), a_.exponents().end() - 1));
  std::vector<Vec> table = cocycle_.table();
  for (auto& v : table) v = atilde.canonical(v);
  cocycle_ = Cocycle(group_->size(), atilde_rank(), std::move(table));

  act_rows_.reserve(group_->size());
  for (GroupElt g : group_->elements()) {
    const auto e = group_->exponents(g);
    ZModMatrix m = ZModMatrix::identity(mod, r1);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint64_t k = 0; k < e[i]; ++k) m = module_.action[i] * m;
    act_rows_.push_back(m.transpose());
  }
}

std::uint64_t Instance::atilde_order() const {
  std::uint64_t n = 1;
  for (auto o : module_.atilde_orders) n *= o;
  return n;
}

Vec Instance::act(GroupElt g, const Vec& a) const { return a_.canonical(vec_mat(a, act_rows_.at(g.index))); }

Vec Instance::degree_zero(const Vec& atilde_coords) const {
  if (atilde_coords.size() != atilde_rank()) throw DimensionMismatch("instance: wrong number of Atilde coordinates");
  Vec a(atilde_coords);
  a.push_back(0);
  return a_.canonical(a);
}

Vec Instance::a_tau(GroupElt t) const { return a_.canonical(vec_sub(mod_, gamma(), act(t, gamma()))); }

Submodule Instance::atilde_submodule() const {
  std::vector<std::size_t> coords(atilde_rank());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  return a_.coordinate_span(coords);
}

Instance Instance::with_precision(unsigned precision) const {
  const Modulus m(prime(), precision);
  ClassModule mod2;
  mod2.atilde_orders = module_.atilde_orders;
  for (const auto& t : module_.action) mod2.action.emplace_back(m, t.cols(), t.row_list());
  return Instance(m, group_, std::move(mod2), cocycle_);
}

Instance Instance::with_cocycle(Cocycle c) const { return Instance(mod_, group_, module_, std::move(c)); }

bool Instance::operator==(const Instance& o) const {
  if (!(mod_ == o.mod_) || !(*group_ == *o.group_)) return false;
  if (module_.atilde_orders != o.module_.atilde_orders) return false;
  for (std::size_t i = 0; i < module_.action.size(); ++i)
    if (!(module_.action[i] == o.module_.action[i])) return false;
  return cocycle_ == o.cocycle_;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool ValidationReport::structural_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed || c.hypothesis; });
}

bool ValidationReport::hypotheses_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed || !c.hypothesis; });
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Instance coboundary_shift(const Instance& inst, const std::vector<Vec>& shift) {
  const AbelianLGroup& g = inst.group();
  const Modulus& mod = inst.modulus();
  if (shift.size() != g.size()) throw RejectedShift("coboundary shift: need one value per group element");
  for (const auto& c : shift)
    if (c.size() != inst.atilde_rank()) throw RejectedShift("coboundary shift: values must be Atilde coordinates");
  const Ambient& a = inst.a_module();
  if (!a.is_zero(inst.degree_zero(shift[0]))) throw RejectedShift("coboundary shift: c_1 must vanish");

  Cocycle out(g.size(), inst.atilde_rank());
  for (GroupElt s : g.elements())
    for (GroupElt t : g.elements()) {
      Vec v = inst.cocycle_value(s, t);
      v = vec_add(mod, v, inst.degree_zero(shift[s.index]));
      v = vec_add(mod, v, inst.act(s, inst.degree_zero(shift[t.index])));
      v = vec_sub(mod, v, inst.degree_zero(shift[g.mul(s, t).index]));
      v = a.canonical(v);
      out.set(s, t, Vec(v.begin(), v.end() - 1));
    }
  for (GroupElt t : g.elements())
    if (!vec_is_zero(out.at(t, g.inv(t))))
      throw RejectedShift("coboundary shift: result violates a_{t,t^-1} = 0 at t = [" + g.format(t) + "]");
  return inst.with_cocycle(std::move(out));
}

}  // namespace logcap
