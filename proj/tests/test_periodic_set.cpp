#include <set>

#include <doctest.h>

#include "rieszbasis/error.hpp"
#include "rieszbasis/periodic_set.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rieszbasis;
using rieszbasis::testing::Rng;

namespace {

PeriodicSet mod1(std::int64_t m, IntVector residues) { return PeriodicSet::progression(m, residues); }

std::set<IntVector> as_set(const PeriodicSet& a) {
  const auto r = a.residues();
  return {r.begin(), r.end()};
}

// Points of [-2P, 2P) per axis, P the modulus.
std::vector<IntVector> window(const IntVector& moduli) {
  IntVector lo, hi;
  for (auto m : moduli) {
    lo.push_back(-2 * m);
    hi.push_back(2 * m - 1);
  }
  return rieszbasis::testing::box_points(lo, hi);
}

}  // namespace

TEST_SUITE("periodic_set") {
  TEST_CASE("refine examples") {
    CHECK(refine(mod1(2, {0}), IntVector{4}).same_representation(mod1(4, {0, 2})));
    CHECK(refine(PeriodicSet::lattice(1), IntVector{3}).same_representation(mod1(3, {0, 1, 2})));
    CHECK(refine(mod1(2, {1}), IntVector{6}).same_representation(mod1(6, {1, 3, 5})));
    CHECK_THROWS_AS(refine(mod1(4, {0}), IntVector{6}), ContractError);
  }

  TEST_CASE("boolean operation examples") {
    CHECK(complement(mod1(2, {0})) == mod1(2, {1}));
    CHECK(unite(mod1(2, {0}), mod1(2, {1})) == PeriodicSet::lattice(1));
    CHECK(unite(mod1(2, {0}), mod1(2, {1})).same_representation(PeriodicSet::lattice(1)));
    CHECK(intersect(mod1(4, {0, 1}), mod1(2, {0})).same_representation(mod1(4, {0})));
    CHECK(minus(PeriodicSet::lattice(1), mod1(3, {1})) == mod1(3, {0, 2}));
  }

  TEST_CASE("product examples") {
    const auto p = product(mod1(2, {0}), PeriodicSet::lattice(1));
    CHECK(p.moduli() == IntVector{2, 1});
    CHECK(p.residues() == std::vector<IntVector>{{0, 0}});
    const auto p2 = product(mod1(2, {0}), mod1(2, {1}));
    CHECK(p2.moduli() == IntVector{2, 2});
    CHECK(p2.residues() == std::vector<IntVector>{{0, 1}});
    CHECK(product(PeriodicSet::empty(1), mod1(3, {0, 2})).empty());
    CHECK(product(PeriodicSet::empty(1), mod1(3, {0, 2})).dim() == 2);
  }

  TEST_CASE("shift and scale examples") {
    CHECK(shift(mod1(4, {0}), IntVector{1}) == mod1(4, {1}));
    CHECK(shift(mod1(4, {0, 1}), IntVector{0}).same_representation(mod1(4, {0, 1})));
    CHECK(shift(mod1(4, {0, 1}), IntVector{3}) == mod1(4, {3, 0}));
    CHECK(scale_axis(mod1(2, {0}), 0, 2) == mod1(4, {0}));
    CHECK(scale_axis(PeriodicSet::lattice(1), 0, 3) == mod1(3, {0}));
    CHECK(scale_axis(mod1(2, {1}), 0, 2) == mod1(4, {2}));
  }

  TEST_CASE("subset, density and enumeration examples") {
    CHECK(is_subset(mod1(4, {0}), mod1(2, {0})));
    CHECK_FALSE(is_subset(mod1(2, {0}), mod1(4, {0})));
    CHECK(PeriodicSet({2, 2}, {{0, 0}, {0, 1}, {1, 0}}).density() == Rational(3, 4));
    CHECK(enumerate_box(mod1(2, {1}), IntVector{-2}, IntVector{2}) == std::vector<IntVector>{{-1}, {1}});
    CHECK(PeriodicSet::initial_block(4, 3) == mod1(4, {0, 1, 2}));
    CHECK_THROWS_AS(PeriodicSet::initial_block(4, 5), ContractError);
  }

  TEST_CASE("canonical form reduces the period") {
    const auto c = canonicalize(mod1(6, {1, 3, 5}));
    CHECK(c.same_representation(mod1(2, {1})));
    CHECK(canonicalize(PeriodicSet({2, 3}, {{0, 0}, {0, 1}, {0, 2}})).same_representation(PeriodicSet({2, 1}, {{0, 0}})));
    CHECK(canonicalize(PeriodicSet::empty(2)).empty());
  }

  TEST_CASE("operations agree with membership enumeration") {
    Rng rng(505);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t dim = 1 + static_cast<std::size_t>(trial % 2);
      const auto a = rieszbasis::testing::random_periodic_set(rng, dim, 6);
      const auto b = rieszbasis::testing::random_periodic_set(rng, dim, 6);
      const auto ra = as_set(a);
      const auto rb = as_set(b);
      IntVector v(dim);
      for (auto& x : v) x = rieszbasis::testing::uniform(rng, -7, 7);
      const auto u = unite(a, b);
      const auto i = intersect(a, b);
      const auto m = minus(a, b);
      const auto c = complement(a);
      const auto s = shift(a, v);
      const auto z = scale_axis(a, 0, 3);
      IntVector common(dim);
      for (std::size_t k = 0; k < dim; ++k) common[k] = 3 * lcm_int(a.moduli()[k], b.moduli()[k]);
      bool subset = true;
      for (const auto& p : window(common)) {
        const bool in_a = rieszbasis::testing::naive_member(a.moduli(), ra, p);
        const bool in_b = rieszbasis::testing::naive_member(b.moduli(), rb, p);
        CHECK(a.contains(p) == in_a);
        CHECK(u.contains(p) == (in_a || in_b));
        CHECK(i.contains(p) == (in_a && in_b));
        CHECK(m.contains(p) == (in_a && !in_b));
        CHECK(c.contains(p) == !in_a);
        IntVector back = p;
        for (std::size_t k = 0; k < dim; ++k) back[k] -= v[k];
        CHECK(s.contains(p) == rieszbasis::testing::naive_member(a.moduli(), ra, back));
        IntVector shrunk = p;
        const bool divisible = rieszbasis::testing::floor_mod(p[0], 3) == 0;
        shrunk[0] = divisible ? p[0] / 3 : 0;
        CHECK(z.contains(p) == (divisible && rieszbasis::testing::naive_member(a.moduli(), ra, shrunk)));
        if (in_a && !in_b) subset = false;
      }
      CHECK(is_subset(a, b) == subset);
      CHECK((a == b) == (is_subset(a, b) && is_subset(b, a)));
      CHECK(canonicalize(a) == a);
      CHECK(a.density() == Rational(static_cast<std::int64_t>(ra.size()), a.period_volume()));
    }
  }

  TEST_CASE("enumerate_box matches the membership oracle") {
    Rng rng(606);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = rieszbasis::testing::random_periodic_set(rng, 2, 5);
      const auto ra = as_set(a);
      const IntVector lo{-4, -3};
      const IntVector hi{5, 2};
      std::vector<IntVector> expect;
      for (const auto& p : rieszbasis::testing::box_points(lo, hi)) {
        if (rieszbasis::testing::naive_member(a.moduli(), ra, p)) expect.push_back(p);
      }
      CHECK(enumerate_box(a, lo, hi) == expect);
    }
  }

  TEST_CASE("period volume cap") {
    CHECK_THROWS_AS(refine(PeriodicSet::lattice(2), IntVector{1 << 13, 1 << 13}), CapError);
  }
}
