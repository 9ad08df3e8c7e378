#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "support.hpp"

#include "logcap/group_ring.hpp"

using namespace logcap;

namespace {

GroupPtr group(unsigned p, std::vector<std::uint64_t> orders) {
  return std::make_shared<const AbelianLGroup>(p, std::move(orders));
}

GroupRingElt random_elt(const GroupPtr& g, const Modulus& mod, std::mt19937_64& rng) {
  Vec c(g->size());
  for (auto& x : c) x = static_cast<std::int64_t>(rng() % mod.value());
  return GroupRingElt(g, mod, c);
}

/// Leibniz formula, the brute-force reference for cofactor expansion.
template <class R>
R permutation_det(const RingMatrix<R>& m, const R& zero, const R& one) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  R acc = zero;
  do {
    R term = one;
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    acc = inversions % 2 ? acc - term : acc + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST_CASE("abelian l-group arithmetic") {
  const auto g = group(2, {2, 4});
  CHECK(g->size() == 8);
  CHECK(g->exponent_log() == 2);
  const GroupElt t2 = g->generator(1);
  CHECK(g->order_of(t2) == 4);
  CHECK(g->mul(g->pow(t2, 3), t2) == g->identity());
  CHECK(g->format(g->from_exponents({1, 3})) == "1,3");
  CHECK(g->parse("1,3") == g->from_exponents({1, 3}));
  CHECK_THROWS(AbelianLGroup(2, {3}));
}

TEST_CASE("group ring identities over Z/8[Z/2]") {
  const Modulus m8(2, 3);
  const auto g = group(2, {2});
  const auto one = GroupRingElt::constant(g, m8, 1);
  const auto tau = GroupRingElt::basis(g, m8, g->generator(0));
  CHECK((tau - one) * (tau - one) == GroupRingElt(g, m8, {2, 6}));
  CHECK(((one + tau) * (tau - one)).is_zero());
  CHECK((tau - one).augmentation_residue() == 0);
  CHECK((one.scaled(3) + tau.scaled(2)).augmentation_residue() == 5);
  CHECK(trace_element(g, m8) == one + tau);
  CHECK(trace_element(g, m8).augmentation_residue() == 2);
  CHECK(trace_element(group(2, {}), m8) == GroupRingElt::constant(group(2, {}), m8, 1));
  CHECK((one + tau).format() == "1 + 1*[1]");
  CHECK_THROWS_AS(one + GroupRingElt::constant(group(2, {4}), m8, 1), GroupMismatch);
}

TEST_CASE("omega ring truncates at omega squared") {
  const Modulus m8(2, 3);
  const auto g = group(2, {2});
  const auto w = OmegaRingElt::omega(g, m8);
  const auto zero = OmegaRingElt::from(GroupRingElt(g, m8));
  CHECK(w * w == zero);
  const auto a = OmegaRingElt{GroupRingElt(g, m8, {1, 2}), GroupRingElt(g, m8, {3, 0})};
  const auto b = OmegaRingElt{GroupRingElt(g, m8, {0, 1}), GroupRingElt(g, m8, {1, 1})};
  const auto p = a * b;
  CHECK(p.r0 == a.r0 * b.r0);
  CHECK(p.r1 == a.r0 * b.r1 + a.r1 * b.r0);
}

TEST_CASE("ring laws and augmentation on random elements") {
  std::mt19937_64 rng(5);
  for (const auto& orders : std::vector<std::vector<std::uint64_t>>{{2}, {4}, {2, 2}, {3}}) {
    const unsigned p = static_cast<unsigned>(orders.empty() ? 2 : (orders[0] % 2 == 0 ? 2 : 3));
    const Modulus mod(p, 3);
    const auto g = group(p, orders);
    const auto tr = trace_element(g, mod);
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = random_elt(g, mod, rng), y = random_elt(g, mod, rng), z = random_elt(g, mod, rng);
      CHECK(x * y == y * x);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x * y).augmentation_residue() == mod.mul(x.augmentation_residue(), y.augmentation_residue()));
      CHECK((x + y).augmentation_residue() == mod.add(x.augmentation_residue(), y.augmentation_residue()));
      for (GroupElt s : g->elements())
        CHECK((tr * (GroupRingElt::basis(g, mod, s) - GroupRingElt::constant(g, mod, 1))).is_zero());
    }
  }
}

TEST_CASE("annihilator of the augmentation ideal is Z/l^n times Tr (exhaustive)") {
  for (const auto& [orders, n] : std::vector<std::pair<std::vector<std::uint64_t>, unsigned>>{
           {{2}, 3}, {{4}, 2}, {{4}, 3}, {{2, 2}, 2}, {{2, 2}, 3}}) {
    const Modulus mod(2, n);
    const auto g = group(2, orders);
    const auto one = GroupRingElt::constant(g, mod, 1);
    const auto tr = trace_element(g, mod);
    std::size_t annihilators = 0;
    for (const auto& c : testing::all_vectors(std::vector<std::int64_t>(g->size(), mod.value()))) {
      const GroupRingElt x(g, mod, c);
      bool kills = true;
      for (GroupElt s : g->elements())
        if (!(x * (GroupRingElt::basis(g, mod, s) - one)).is_zero()) kills = false;
      const bool multiple = std::all_of(c.begin(), c.end(), [&](std::int64_t v) { return v == c[0]; });
      CHECK(kills == multiple);
      annihilators += kills;
      if (multiple) CHECK(x == tr.scaled(c[0]));
    }
    CHECK(annihilators == static_cast<std::size_t>(mod.value()));
  }
}

TEST_CASE("determinant and adjugate") {
  const Modulus m8(2, 3);
  const auto g = group(2, {2, 2});
  const auto one = GroupRingElt::constant(g, m8, 1);
  const auto zero = GroupRingElt(g, m8);
  std::mt19937_64 rng(9);
  SUBCASE("small cases") {
    const auto x = random_elt(g, m8, rng);
    CHECK(adjugate<GroupRingElt>({{x}}, one)[0][0] == one);
    const auto a = random_elt(g, m8, rng), b = random_elt(g, m8, rng), c = random_elt(g, m8, rng),
               d = random_elt(g, m8, rng);
    const auto adj = adjugate<GroupRingElt>({{a, b}, {c, d}}, one);
    CHECK(adj[0][0] == d);
    CHECK(adj[0][1] == -b);
    CHECK(adj[1][0] == -c);
    CHECK(adj[1][1] == a);
  }
  SUBCASE("E1 relation matrix") {
    const auto g2 = group(2, {2});
    const auto one2 = GroupRingElt::constant(g2, m8, 1);
    const auto m = RingMatrix<GroupRingElt>{{one2 + GroupRingElt::basis(g2, m8, g2->generator(0))}};
    CHECK(adjugate(m, one2)[0][0] == one2);
    CHECK(det_ring(m, one2) == trace_element(g2, m8));
  }
  SUBCASE("random matrices against the permutation sum") {
    for (std::size_t dim = 1; dim <= 4; ++dim)
      for (int trial = 0; trial < 5; ++trial) {
        RingMatrix<GroupRingElt> m(dim);
        for (auto& row : m)
          for (std::size_t j = 0; j < dim; ++j) row.push_back(random_elt(g, m8, rng));
        const auto det = det_ring(m, one);
        CHECK(det == permutation_det(m, zero, one));
        const auto adj = adjugate(m, one);
        const auto left = ring_matmul(adj, m, zero), right = ring_matmul(m, adj, zero);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) {
            CHECK(left[i][j] == (i == j ? det : zero));
            CHECK(right[i][j] == (i == j ? det : zero));
          }
        // augmentation commutes with the determinant
        RingMatrix<GroupRingElt> augm(dim);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) augm[i].push_back(GroupRingElt::constant(g, m8, m[i][j].augmentation_residue()));
        CHECK(det.augmentation_residue() == det_ring(augm, one).coeff(g->identity()));
      }
  }
  SUBCASE("omega-ring 2x2 against the permutation sum") {
    const auto oone = OmegaRingElt::from(one);
    const auto ozero = OmegaRingElt::from(zero);
    for (int trial = 0; trial < 10; ++trial) {
      RingMatrix<OmegaRingElt> m(2);
      for (auto& row : m)
        for (int j = 0; j < 2; ++j) row.push_back(OmegaRingElt{random_elt(g, m8, rng), random_elt(g, m8, rng)});
      CHECK(det_ring(m, oone) == permutation_det(m, ozero, oone));
      CHECK(det_ring(m, oone) == m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    }
  }
  SUBCASE("diagonal of orders has augmentation |G|") {
    const auto m = RingMatrix<GroupRingElt>{{one.scaled(2), zero}, {zero, one.scaled(2)}};
    CHECK(det_ring(m, one).augmentation_residue() == 4);
  }
  SUBCASE("dimension bound") {
    RingMatrix<GroupRingElt> m(5, std::vector<GroupRingElt>(5, one));
    CHECK_THROWS_AS(det_ring(m, one), SizeError);
  }
}
