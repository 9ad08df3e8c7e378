#include <random>

#include "doctest.h"
#include "support.hpp"

#include "logcap/lattice.hpp"
#include "logcap/zmod.hpp"

using namespace logcap;

TEST_CASE("residues reduce and refuse mixed moduli") {
  const Modulus m8(2, 3);
  CHECK(m8.value() == 8);
  CHECK(ZMod(m8, -3).residue() == 5);
  CHECK((ZMod(m8, 5) * ZMod(m8, 3)).residue() == 7);
  CHECK(m8.valuation(4) == 2);
  CHECK(m8.inverse(3) == 3);
  CHECK_THROWS_AS(ZMod(m8, 1) + ZMod(Modulus(2, 2), 1), ModulusMismatch);
  CHECK_THROWS_AS(ZModMatrix(m8, 2, 2) * ZModMatrix(m8, 3, 3), DimensionMismatch);
}

TEST_CASE("normal form examples") {
  const Modulus m8(2, 3);
  SUBCASE("identity is already canonical") {
    const Submodule s = normal_form(ZModMatrix::identity(m8, 2));
    CHECK(s.rows() == std::vector<Vec>{{1, 0}, {0, 1}});
  }
  SUBCASE("zero matrix has empty basis") { CHECK(normal_form(ZModMatrix(m8, 3, 2)).rows().empty()); }
  SUBCASE("redundant generator does not change the basis") {
    const Submodule a = span(m8, 2, {{2, 0}, {0, 4}, {2, 4}});
    const Submodule b = span(m8, 2, {{2, 0}, {0, 4}});
    CHECK(a.rows() == b.rows());
    CHECK(testing::enumerate_span({{2, 0}, {0, 4}, {2, 4}}, {8, 8}) == testing::enumerate_span({{2, 0}, {0, 4}}, {8, 8}));
    CHECK(testing::enumerate_span(a.rows(), {8, 8}).size() == 8);
  }
  SUBCASE("normal form is idempotent") {
    const Submodule a = span(m8, 3, {{2, 6, 1}, {4, 4, 2}, {0, 2, 7}});
    CHECK(normal_form(a.basis()).rows() == a.rows());
  }
}

TEST_CASE("normal form is canonical on equal spans") {
  std::mt19937_64 rng(7);
  const std::vector<std::pair<Modulus, std::size_t>> shapes{{Modulus(2, 3), 2}, {Modulus(2, 2), 3}, {Modulus(3, 2), 2},
                                                            {Modulus(2, 4), 3}};
  for (const auto& [mod, rank] : shapes) {
    const std::vector<std::int64_t> radix(rank, mod.value());
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Vec> gens;
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) {
        Vec v(rank);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % mod.value());
        gens.push_back(v);
      }
      const auto elems = testing::enumerate_span(gens, radix);
      // another generating set: random members until they span the same set
      std::vector<Vec> pool(elems.begin(), elems.end());
      std::vector<Vec> other;
      while (testing::enumerate_span(other, radix) != elems) other.push_back(pool[rng() % pool.size()]);
      const Submodule a = span(mod, rank, gens);
      const Submodule b = span(mod, rank, other);
      CHECK(a.rows() == b.rows());
      CHECK(testing::enumerate_span(a.rows(), radix) == elems);
      // membership by reduction agrees with the enumerated set
      for (const auto& v : testing::all_vectors(radix)) CHECK(a.contains(v) == (elems.count(v) == 1));
      CHECK(ipow(mod.prime(), a.order_exponent()) == elems.size());
    }
  }
}

TEST_CASE("solve examples and exhaustive agreement") {
  const Modulus m8(2, 3);
  SUBCASE("identity") {
    const auto x = solve(ZModMatrix::identity(m8, 3), {5, 0, 7});
    REQUIRE(x);
    CHECK(*x == Vec{5, 0, 7});
  }
  SUBCASE("2x = 4 over Z/8") {
    const auto x = solve(ZModMatrix(m8, 1, std::vector<Vec>{{2}}), {4});
    REQUIRE(x);
    CHECK(m8.mul(2, (*x)[0]) == 4);
    int scan = 0;
    for (std::int64_t t = 0; t < 8; ++t) scan += m8.mul(2, t) == 4;
    CHECK(scan == 2);
  }
  SUBCASE("2x = 1 has no solution") { CHECK_FALSE(solve(ZModMatrix(m8, 1, std::vector<Vec>{{2}}), {1})); }
  SUBCASE("random systems over Z/4 against exhaustive scan") {
    const Modulus m4(2, 2);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
      std::vector<Vec> m(rows, Vec(cols));
      for (auto& r : m)
        for (auto& x : r) x = static_cast<std::int64_t>(rng() % 4);
      Vec v(cols);
      for (auto& x : v) x = static_cast<std::int64_t>(rng() % 4);
      const ZModMatrix mm(m4, cols, m);
      bool exists = false;
      for (const auto& x : testing::all_vectors(std::vector<std::int64_t>(rows, 4)))
        if (vec_mat(x, mm) == v) exists = true;
      const auto got = solve(mm, v);
      CHECK(got.has_value() == exists);
      if (got) CHECK(vec_mat(*got, mm) == v);
    }
  }
}

TEST_CASE("quotient orders") {
  const Modulus m8(2, 3);
  const Modulus m4(2, 2);
  const Submodule full1 = span(m8, 1, {{1}});
  CHECK(quotient_order(full1, full1) == 1);
  CHECK(quotient_order(full1, span(m8, 1, {{2}})) == 2);
  const Submodule full2 = span(m4, 2, {{1, 0}, {0, 1}});
  const Submodule inner = span(m4, 2, {{2, 0}});
  CHECK(testing::enumerate_span(full2.rows(), {4, 4}).size() / testing::enumerate_span(inner.rows(), {4, 4}).size() ==
        8);
  CHECK(quotient_order(full2, inner) == 8);
  CHECK_THROWS_AS(quotient_order(inner, full2), ContainmentError);
  CHECK(quotient_invariants(full2, inner) == std::vector<std::uint64_t>{2, 4});
}

TEST_CASE("ambient with relations: sums, intersections, images and preimages") {
  const Modulus m8(2, 3);
  const Ambient amb(m8, {1, 3});  // Z/2 x Z/8
  CHECK(amb.size() == 16);
  const auto radix = testing::radix_of(amb);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto rand_vec = [&] { return Vec{static_cast<std::int64_t>(rng() % 2), static_cast<std::int64_t>(rng() % 8)}; };
    const Submodule a = amb.span({rand_vec()});
    const Submodule b = amb.span({rand_vec(), rand_vec()});
    const auto ea = testing::enumerate(amb, a), eb = testing::enumerate(amb, b);
    std::set<Vec> inter;
    for (const auto& v : ea)
      if (eb.count(v)) inter.insert(v);
    CHECK(testing::enumerate(amb, intersection(a, b)) == inter);
    CHECK(amb.order(sum(a, b)) * inter.size() == ea.size() * eb.size());
    // x -> 2x on the Z/8 coordinate, first coordinate kept
    ZModMatrix map(m8, 2, 2);
    map.set(0, 0, 1);
    map.set(1, 1, 2);
    std::set<Vec> pre;
    for (const auto& v : testing::all_vectors(radix))
      if (eb.count(amb.canonical(vec_mat(v, map)))) pre.insert(v);
    CHECK(testing::enumerate(amb, preimage(amb.whole(), map, b)) == pre);
  }
}
