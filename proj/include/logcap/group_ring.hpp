#pragma once

// Finite abelian l-groups, the group ring (Z/l^n)[G] and its first-order
// omega extension (Z/l^n)[G][w]/(w^2).

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "logcap/zmod.hpp"

namespace logcap {

class GroupMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Index of an element in the lexicographic order on exponent vectors
/// (first cyclic factor most significant).
struct GroupElt {
  std::uint32_t index = 0;
  auto operator<=>(const GroupElt&) const = default;
};

/// Product of cyclic groups of orders l^{e_1}, ..., l^{e_s}.
class AbelianLGroup {
 public:
  AbelianLGroup(unsigned prime, std::vector<std::uint64_t> orders);

  unsigned prime() const { return prime_; }
  const std::vector<std::uint64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t size() const { return size_; }
  /// m with l^m = exponent of the group.
  unsigned exponent_log() const { return exponent_log_; }

  GroupElt identity() const { return {0}; }
  GroupElt generator(std::size_t i) const;
  GroupElt mul(GroupElt a, GroupElt b) const { return {mul_[a.index * size_ + b.index]}; }
  GroupElt inv(GroupElt a) const { return {inv_[a.index]}; }
  GroupElt pow(GroupElt a, std::uint64_t k) const;
  std::vector<std::uint64_t> exponents(GroupElt g) const;
  GroupElt from_exponents(const std::vector<std::uint64_t>& e) const;
  std::vector<GroupElt> elements() const;
  std::uint64_t order_of(GroupElt g) const;

  /// "1,0,2" style serialization; the trivial group's only element is "".
  std::string format(GroupElt g) const;
  GroupElt parse(const std::string& s) const;

  bool operator==(const AbelianLGroup& o) const { return prime_ == o.prime_ && orders_ == o.orders_; }

 private:
  unsigned prime_;
  std::vector<std::uint64_t> orders_;
  std::size_t size_;
  unsigned exponent_log_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
};

using GroupPtr = std::shared_ptr<const AbelianLGroup>;

/// Element of (Z/l^n)[G], dense over the element order of G.
class GroupRingElt {
 public:
  GroupRingElt(GroupPtr group, const Modulus& mod);  // zero
  GroupRingElt(GroupPtr group, const Modulus& mod, Vec coeffs);

  static GroupRingElt basis(GroupPtr group, const Modulus& mod, GroupElt g);
  static GroupRingElt constant(GroupPtr group, const Modulus& mod, std::int64_t c);

  const GroupPtr& group() const { return group_; }
  const Modulus& modulus() const { return mod_; }
  const Vec& coeffs() const { return coeffs_; }
  std::int64_t coeff(GroupElt g) const { return coeffs_[g.index]; }
  bool is_zero() const { return vec_is_zero(coeffs_); }

  GroupRingElt operator+(const GroupRingElt& o) const;
  GroupRingElt operator-(const GroupRingElt& o) const;
  GroupRingElt operator*(const GroupRingElt& o) const;
  GroupRingElt operator-() const;
  GroupRingElt scaled(std::int64_t s) const;
  bool operator==(const GroupRingElt& o) const;

  /// Sum of the coefficients.
  ZMod augmentation() const { return ZMod(mod_, augmentation_residue()); }
  std::int64_t augmentation_residue() const;

  /// Reduction to a coarser precision (target precision <= current).
  GroupRingElt reduced(const Modulus& target) const;

  std::string format() const;

 private:
  void check(const GroupRingElt& o) const;
  GroupPtr group_;
  Modulus mod_;
  Vec coeffs_;
};

/// r0 + w*r1 in (Z/l^n)[G][w]/(w^2).
struct OmegaRingElt {
  GroupRingElt r0;
  GroupRingElt r1;

  static OmegaRingElt from(const GroupRingElt& x) { return {x, GroupRingElt(x.group(), x.modulus())}; }
  static OmegaRingElt omega(GroupPtr group, const Modulus& mod);

  OmegaRingElt operator+(const OmegaRingElt& o) const { return {r0 + o.r0, r1 + o.r1}; }
  OmegaRingElt operator-(const OmegaRingElt& o) const { return {r0 - o.r0, r1 - o.r1}; }
  OmegaRingElt operator*(const OmegaRingElt& o) const { return {r0 * o.r0, r0 * o.r1 + r1 * o.r0}; }
  OmegaRingElt operator-() const { return {-r0, -r1}; }
  bool operator==(const OmegaRingElt& o) const { return r0 == o.r0 && r1 == o.r1; }
};

GroupRingElt trace_element(GroupPtr group, const Modulus& mod);

template <class R>
using RingMatrix = std::vector<std::vector<R>>;

inline constexpr std::size_t kDefaultDetBound = 4;

/// Determinant by cofactor expansion; refuses dimensions above `bound`.
template <class R>
R det_ring(const RingMatrix<R>& m, const R& one, std::size_t bound = kDefaultDetBound);

/// Classical adjoint: adj(m) * m = m * adj(m) = det(m) * I.
template <class R>
RingMatrix<R> adjugate(const RingMatrix<R>& m, const R& one, std::size_t bound = kDefaultDetBound);

template <class R>
RingMatrix<R> ring_matmul(const RingMatrix<R>& a, const RingMatrix<R>& b, const R& zero);

// ---- template definitions -------------------------------------------------

namespace detail {

template <class R>
RingMatrix<R> minor_of(const RingMatrix<R>& m, std::size_t row, std::size_t col) {
  RingMatrix<R> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<R> r;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != col) r.push_back(m[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

template <class R>
R det_unbounded(const RingMatrix<R>& m, const R& one) {
  const std::size_t s = m.size();
  if (s == 0) return one;
  if (s == 1) return m[0][0];
  R acc = one - one;
  for (std::size_t j = 0; j < s; ++j) {
    R term = m[0][j] * det_unbounded(minor_of(m, 0, j), one);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

template <class R>
void check_square(const RingMatrix<R>& m, std::size_t bound) {
  for (const auto& r : m)
    if (r.size() != m.size()) throw DimensionMismatch("ring matrix is not square");
  if (m.size() > bound)
    throw SizeError("ring matrix of dimension " + std::to_string(m.size()) + " exceeds cofactor bound " +
                    std::to_string(bound));
}

}  // namespace detail

template <class R>
R det_ring(const RingMatrix<R>& m, const R& one, std::size_t bound) {
  detail::check_square(m, bound);
  return detail::det_unbounded(m, one);
}

template <class R>
RingMatrix<R> adjugate(const RingMatrix<R>& m, const R& one, std::size_t bound) {
  detail::check_square(m, bound);
  const std::size_t s = m.size();
  RingMatrix<R> adj(s, std::vector<R>(s, one));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      R c = detail::det_unbounded(detail::minor_of(m, j, i), one);
      adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

template <class R>
RingMatrix<R> ring_matmul(const RingMatrix<R>& a, const RingMatrix<R>& b, const R& zero) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b.front().size();
  RingMatrix<R> out(rows, std::vector<R>(cols, zero));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != inner) throw DimensionMismatch("ring matrix product: inner dimensions differ");
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < inner; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  }
  return out;
}

}  // namespace logcap
