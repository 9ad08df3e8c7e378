#include "logcap/group_ring.hpp"

#include <numeric>
#include <sstream>

namespace logcap {

AbelianLGroup::AbelianLGroup(unsigned prime, std::vector<std::uint64_t> orders)
    : prime_(prime), orders_(std::move(orders)), size_(1), exponent_log_(0) {
  if (!is_prime(prime)) throw std::invalid_argument("group: " + std::to_string(prime) + " is not prime");
  for (auto o : orders_) {
    unsigned e = 0;
    std::uint64_t x = o;
    while (x > 1 && x % prime == 0) {
      x /= prime;
      ++e;
    }
    if (x != 1 || e == 0)
      throw std::invalid_argument("group: cyclic order " + std::to_string(o) + " is not a positive power of " +
                                  std::to_string(prime));
    exponent_log_ = std::max(exponent_log_, e);
    size_ *= o;
    if (size_ > (1u << 16)) throw std::invalid_argument("group: order above 2^16 is not supported");
  }
  mul_.resize(size_ * size_);
  inv_.resize(size_);
  for (std::size_t a = 0; a < size_; ++a) {
    const auto ea = exponents({static_cast<std::uint32_t>(a)});
    for (std::size_t b = 0; b < size_; ++b) {
      const auto eb = exponents({static_cast<std::uint32_t>(b)});
      std::vector<std::uint64_t> ec(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) ec[i] = (ea[i] + eb[i]) % orders_[i];
      mul_[a * size_ + b] = from_exponents(ec).index;
    }
    std::vector<std::uint64_t> ei(ea.size());
    for (std::size_t i = 0; i < ea.size(); ++i) ei[i] = (orders_[i] - ea[i]) % orders_[i];
    inv_[a] = from_exponents(ei).index;
  }
}

GroupElt AbelianLGroup::generator(std::size_t i) const {
  std::vector<std::uint64_t> e(rank(), 0);
  e.at(i) = 1;
  return from_exponents(e);
}

GroupElt AbelianLGroup::pow(GroupElt a, std::uint64_t k) const {
  GroupElt r = identity();
  for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::vector<std::uint64_t> AbelianLGroup::exponents(GroupElt g) const {
  std::vector<std::uint64_t> e(rank());
  std::uint64_t x = g.index;
  for (std::size_t i = rank(); i-- > 0;) {
    e[i] = x % orders_[i];
    x /= orders_[i];
  }
  return e;
}

GroupElt AbelianLGroup::from_exponents(const std::vector<std::uint64_t>& e) const {
  if (e.size() != rank()) throw DimensionMismatch("group: exponent vector has wrong length");
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (e[i] >= orders_[i]) throw std::out_of_range("group: exponent out of range");
    x = x * orders_[i] + e[i];
  }
  return {static_cast<std::uint32_t>(x)};
}

std::vector<GroupElt> AbelianLGroup::elements() const {
  std::vector<GroupElt> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = {static_cast<std::uint32_t>(i)};
  return out;
}

std::uint64_t AbelianLGroup::order_of(GroupElt g) const {
  std::uint64_t k = 1;
  for (GroupElt x = g; x != identity(); x = mul(x, g)) ++k;
  return k;
}

std::string AbelianLGroup::format(GroupElt g) const {
  std::ostringstream os;
  const auto e = exponents(g);
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  return os.str();
}

GroupElt AbelianLGroup::parse(const std::string& s) const {
  std::vector<std::uint64_t> e;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("group: malformed element \"" + s + "\"");
      e.push_back(std::stoull(part));
    }
    if (s.back() == ',') throw std::invalid_argument("group: malformed element \"" + s + "\"");
  }
  if (e.size() != rank()) throw std::invalid_argument("group: element \"" + s + "\" has wrong length");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] >= orders_[i]) throw std::invalid_argument("group: element \"" + s + "\" out of range");
  return from_exponents(e);
}

GroupRingElt::GroupRingElt(GroupPtr group, const Modulus& mod)
    : group_(std::move(group)), mod_(mod), coeffs_(group_->size(), 0) {}

GroupRingElt::GroupRingElt(GroupPtr group, const Modulus& mod, Vec coeffs)
    : group_(std::move(group)), mod_(mod), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != group_->size()) throw DimensionMismatch("group ring: coefficient vector has wrong length");
  for (auto& c : coeffs_) c = mod_.reduce(c);
}

GroupRingElt GroupRingElt::basis(GroupPtr group, const Modulus& mod, GroupElt g) {
  GroupRingElt x(std::move(group), mod);
  x.coeffs_.at(g.index) = 1;
  return x;
}

GroupRingElt GroupRingElt::constant(GroupPtr group, const Modulus& mod, std::int64_t c) {
  GroupRingElt x(std::move(group), mod);
  x.coeffs_[0] = mod.reduce(c);
  return x;
}

void GroupRingElt::check(const GroupRingElt& o) const {
  require_same(mod_, o.mod_);
  if (group_ != o.group_ && !(*group_ == *o.group_)) throw GroupMismatch("group ring: elements over different groups");
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& o) const {
  check(o);
  return GroupRingElt(group_, mod_, vec_add(mod_, coeffs_, o.coeffs_));
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& o) const {
  check(o);
  return GroupRingElt(group_, mod_, vec_sub(mod_, coeffs_, o.coeffs_));
}

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
  check(o);
  const std::size_t n = group_->size();
  Vec c(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::uint32_t b = 0; b < n; ++b) {
      if (o.coeffs_[b] == 0) continue;
      const auto ab = group_->mul({a}, {b}).index;
      c[ab] = mod_.reduce(c[ab] + coeffs_[a] * o.coeffs_[b]);
    }
  }
  return GroupRingElt(group_, mod_, std::move(c));
}

GroupRingElt GroupRingElt::operator-() const { return scaled(-1); }

GroupRingElt GroupRingElt::scaled(std::int64_t s) const { return GroupRingElt(group_, mod_, vec_scale(mod_, s, coeffs_)); }

bool GroupRingElt::operator==(const GroupRingElt& o) const {
  return mod_ == o.mod_ && *group_ == *o.group_ && coeffs_ == o.coeffs_;
}

std::int64_t GroupRingElt::augmentation_residue() const {
  std::int64_t s = 0;
  for (auto c : coeffs_) s = mod_.add(s, c);
  return s;
}

GroupRingElt GroupRingElt::reduced(const Modulus& target) const {
  if (target.prime() != mod_.prime() || target.precision() > mod_.precision())
    throw ModulusMismatch("group ring: can only reduce to a coarser precision of the same prime");
  return GroupRingElt(group_, target, coeffs_);
}

std::string GroupRingElt::format() const {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i];
    if (i != 0) os << "*[" << group_->format({i}) << "]";
  }
  return first ? "0" : os.str();
}

OmegaRingElt OmegaRingElt::omega(GroupPtr group, const Modulus& mod) {
  return {GroupRingElt(group, mod), GroupRingElt::constant(group, mod, 1)};
}

GroupRingElt trace_element(GroupPtr group, const Modulus& mod) {
  Vec ones(group->size(), 1);
  return GroupRingElt(std::move(group), mod, std::move(ones));
}

}  // namespace logcap
