#include <random>

#include "doctest.h"
#include "support.hpp"

#include "logcap/extension.hpp"
#include "logcap/forge.hpp"
#include "logcap/oracle.hpp"
#include "logcap/resolvent.hpp"

using namespace logcap;

namespace {

std::vector<UElement> all_elements(const Instance& inst) {
  std::vector<UElement> out;
  for (const auto& a : testing::all_vectors(testing::radix_of(inst.a_module())))
    for (GroupElt t : inst.group().elements()) out.push_back({a, t});
  return out;
}

}  // namespace

TEST_CASE("E1 products") {
  const Instance e1 = testing::load_fixture("e1.json");
  const GroupElt t = e1.group().generator(0);
  const GroupElt one = e1.group().identity();
  const Vec gamma = e1.gamma();
  CHECK(u_mul(e1, {{3, 0}, one}, {{1, 2}, one}) == UElement{{0, 2}, one});
  CHECK(u_mul(e1, {{0, 0}, t}, {{0, 0}, t}) == UElement{{0, 0}, one});
  CHECK(u_mul(e1, {gamma, one}, {{0, 0}, t}) == UElement{gamma, t});
  CHECK(u_mul(e1, {{0, 0}, t}, {gamma, one}) == UElement{{1, 1}, t});
  CHECK(u_commutator(e1, {gamma, one}, {{0, 0}, t}) == UElement{{1, 0}, one});
  CHECK(u_degree(e1, {{1, 5}, t}) == 5);
}

TEST_CASE("group axioms hold exhaustively") {
  for (const char* name : {"e1.json", "h1_violation.json"}) {
    const Instance inst = testing::load_fixture(name);
    const auto elems = all_elements(inst);
    const UElement id = u_identity(inst);
    for (const auto& x : elems) {
      CHECK(u_mul(inst, x, id) == x);
      CHECK(u_mul(inst, id, x) == x);
      CHECK(u_mul(inst, x, u_inverse(inst, x)) == id);
      for (const auto& y : elems)
        for (const auto& z : elems) CHECK(u_mul(inst, u_mul(inst, x, y), z) == u_mul(inst, x, u_mul(inst, y, z)));
    }
  }
}

TEST_CASE("table products agree with the module formula") {
  const Instance k = testing::load_fixture("klein_boundary.json");
  const UTable t(k);
  CHECK(t.size() == 256);
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    CHECK(t.decode(t.encode(t.decode(x))) == t.decode(x));
    for (std::uint32_t y = 0; y < t.size(); y += 3) {
      CHECK(t.mul(x, y) == t.mul_reference(x, y));
      CHECK(t.decode(t.mul(x, y)) == u_mul(k, t.decode(x), t.decode(y)));
    }
  }
}

TEST_CASE("derived subgroups") {
  const Instance e1 = testing::load_fixture("e1.json");
  CHECK(derived_subgroup(e1) == e1.atilde_submodule());
  CHECK(derived_subgroup(e1, DerivedFlavor::degree_zero) == e1.a_module().zero());
  CHECK(omega_subgroup(e1) == e1.atilde_submodule());
  const Instance h = testing::load_fixture("h1_violation.json");
  CHECK(derived_subgroup(h) == h.a_module().zero());
  const Instance k = testing::load_fixture("klein_boundary.json");
  CHECK(derived_subgroup(k) == k.atilde_submodule());
}

TEST_CASE("transfer") {
  const Instance e1 = testing::load_fixture("e1.json");
  const GroupElt t = e1.group().generator(0);
  const GroupElt one = e1.group().identity();
  CHECK(transfer(e1, {{0, 0}, t}) == Vec{0, 0});
  CHECK(transfer(e1, {e1.gamma(), one}) == Vec{1, 2});
  SUBCASE("trivial G gives the identity on A") {
    const Modulus mod(2, 3);
    auto g = std::make_shared<const AbelianLGroup>(2, std::vector<std::uint64_t>{});
    ClassModule cm;
    cm.atilde_orders = {4};
    const Instance triv(mod, g, cm, Cocycle(1, 1));
    for (const auto& a : testing::all_vectors({4, 8})) CHECK(transfer(triv, {a, g->identity()}) == a);
  }
  SUBCASE("homomorphism, kills U', multiplies the degree by |G|") {
    for (const char* name : {"e1.json", "klein_boundary.json"}) {
      const Instance inst = testing::load_fixture(name);
      const Ambient& a = inst.a_module();
      const auto elems = all_elements(inst);
      const Submodule d = derived_subgroup(inst);
      std::mt19937_64 rng(1);
      for (const auto& x : elems) {
        const Vec vx = transfer(inst, x);
        CHECK(a.canonical(vx) == vx);
        CHECK(inst.degree(vx) ==
              inst.modulus().mul(static_cast<std::int64_t>(inst.group().size()), u_degree(inst, x)));
        if (x.tau == inst.group().identity() && d.contains(x.a)) CHECK(a.is_zero(vx));
        for (int k = 0; k < 8; ++k) {
          const auto& y = elems[rng() % elems.size()];
          CHECK(a.equal(transfer(inst, u_mul(inst, x, y)), vec_add(inst.modulus(), vx, transfer(inst, y))));
        }
      }
    }
  }
  SUBCASE("independent of the transversal") {
    std::mt19937_64 rng(23);
    const Instance k = testing::load_fixture("klein_boundary.json");
    for (int trial = 0; trial < 5; ++trial) {
      const auto c = random_admissible_shift(k, rng);
      const Instance s = coboundary_shift(k, c);
      // old (a, t) = new (a - c_t, t)
      for (const auto& x : all_elements(k)) {
        const UElement y{vec_sub(k.modulus(), x.a, k.degree_zero(c[x.tau.index])), x.tau};
        CHECK(k.a_module().equal(transfer(k, x), transfer(s, y)));
      }
    }
  }
}

TEST_CASE("the logarithm is a homomorphism onto B/I_G*B with kernel U'") {
  for (const char* name : {"e1.json", "klein_boundary.json"}) {
    const Instance inst = testing::load_fixture(name);
    const Resolvent res(inst);
    const Submodule ig = res.ig_star_b(false);
    const Submodule d = derived_subgroup(inst);
    const auto elems = all_elements(inst);
    const Modulus& mod = inst.modulus();
    std::mt19937_64 rng(2);
    CHECK(res.coords(log_iso(inst, {inst.gamma(), inst.group().identity()})) ==
          res.coords(res.from_a(inst.gamma())));
    for (const auto& x : elems) {
      const Vec lx = res.coords(log_iso(inst, x));
      const bool in_kernel = ig.contains(lx);
      CHECK(in_kernel == (x.tau == inst.group().identity() && d.contains(x.a)));
      const std::size_t reps = std::string(name) == "e1.json" ? elems.size() : 6;
      for (std::size_t k = 0; k < reps; ++k) {
        const auto& y = std::string(name) == "e1.json" ? elems[k] : elems[rng() % elems.size()];
        const Vec lhs = res.coords(log_iso(inst, u_mul(inst, x, y)));
        CHECK(ig.contains(vec_sub(mod, lhs, vec_add(mod, lx, res.coords(log_iso(inst, y))))));
      }
    }
  }
}
