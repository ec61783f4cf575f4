#include <doctest.h>

#include "rieszbasis/error.hpp"
#include "rieszbasis/interval_union.hpp"
#include "rieszbasis/rational.hpp"
#include "rieszbasis/region.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rieszbasis;
using rieszbasis::testing::Rng;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

IntervalUnion iu(std::vector<Interval> parts, Rational ambient = Rational(1)) {
  return IntervalUnion(std::move(parts), ambient);
}

Region l_shape() {
  return Region(2, {{{q(0), q(1, 2)}, {q(0), q(1, 2)}}, {{q(0), q(1)}, {q(1, 2), q(1)}}});
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-2/4") == q(-1, 2));
    CHECK(parse_rational("5") == q(5));
    CHECK(to_string(q(2, 4)) == "1/2");
    CHECK(to_string(q(3)) == "3");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
  }

  TEST_CASE("integer helpers") {
    CHECK(floor_to_int(q(7, 2)) == 3);
    CHECK(floor_to_int(q(-7, 2)) == -4);
    CHECK(floor_to_int(q(4)) == 4);
    CHECK(lcm_int(4, 6) == 12);
    CHECK(lcm_int(1, 5) == 5);
    CHECK(q(4, 2) == 2);
    CHECK(q(1, 2) != 0);
  }
}

TEST_SUITE("interval_union") {
  TEST_CASE("canonical form merges touching and overlapping parts") {
    const auto x = iu({{q(1, 2), q(3, 4)}, {q(0), q(1, 4)}, {q(1, 4), q(1, 3)}, {q(2, 3), q(1)}});
    REQUIRE(x.component_count() == 2);
    CHECK(x.intervals()[0] == Interval{q(0), q(1, 3)});
    CHECK(x.intervals()[1] == Interval{q(1, 2), q(1)});
    CHECK(x.measure() == q(5, 6));
    CHECK(x.contains(q(0)));
    CHECK_FALSE(x.contains(q(1, 3)));
    CHECK(x.common_denominator() == 6);
    CHECK_THROWS_AS(iu({{q(1, 2), q(1, 4)}}), ContractError);
    CHECK_THROWS_AS(iu({{q(0), q(3, 2)}}), ContractError);
  }

  TEST_CASE("cyclic component count examples") {
    CHECK(cyclic_component_count(iu({{q(0), q(1, 8)}, {q(3, 8), q(1, 2)}}, q(1, 2))) == 1);
    CHECK(cyclic_component_count(iu({{q(0), q(1, 3)}})) == 1);
    CHECK(cyclic_component_count(iu({{q(0), q(1, 8)}, {q(1, 4), q(3, 8)}}, q(1, 2))) == 2);
    CHECK(cyclic_component_count(IntervalUnion::full()) == 1);
    CHECK(cyclic_component_count(iu({})) == 0);
  }

  TEST_CASE("cyclic rotation examples") {
    const auto half = q(1, 2);
    CHECK(cyclic_rotate(iu({{q(1, 4), q(1, 2)}}, half), q(1, 4)) == iu({{q(0), q(1, 4)}}, half));
    CHECK(cyclic_rotate(iu({{q(0), q(1, 8)}, {q(3, 8), q(1, 2)}}, half), q(1, 8)) == iu({{q(0), q(1, 4)}}, half));
    const auto x = iu({{q(1, 5), q(2, 5)}, {q(3, 5), q(4, 5)}});
    CHECK(cyclic_rotate(x, q(0)) == x);
  }

  TEST_CASE("stretch scales the ambient") {
    const auto x = stretch(iu({{q(0), q(1, 8)}}, q(1, 4)), q(4));
    CHECK(x.ambient() == q(1));
    CHECK(x == iu({{q(0), q(1, 2)}}));
  }

  TEST_CASE("fold examples") {
    const auto two = fold(iu({{q(0), q(1, 4)}, {q(1, 2), q(3, 4)}}), 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == iu({{q(0), q(1, 4)}}, q(1, 2)));
    CHECK(two[1] == iu({{q(0), q(1, 4)}}, q(1, 2)));

    const auto full = fold(IntervalUnion::full(), 3);
    REQUIRE(full.size() == 3);
    for (const auto& level : full) CHECK(level.is_full());
    for (const auto& level : full) CHECK(level.ambient() == q(1, 3));
  }

  TEST_CASE("fold agrees with the covering-count oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t den = rieszbasis::testing::uniform(rng, 1, 8);
      const std::int64_t n_mod = rieszbasis::testing::uniform(rng, 1, 6);
      std::vector<Interval> raw;
      const auto pieces = rieszbasis::testing::uniform(rng, 1, 4);
      for (int i = 0; i < pieces; ++i) raw.push_back(rieszbasis::testing::random_interval(rng, den));
      const auto levels = fold(IntervalUnion(raw), n_mod);
      REQUIRE(levels.size() == static_cast<std::size_t>(n_mod));
      // Breakpoints of every level lie on the grid 1/(den * n_mod).
      for (const auto& mid : rieszbasis::testing::cell_midpoints({den * n_mod})) {
        const Rational t = mid[0] / Rational(n_mod);
        const auto count = rieszbasis::testing::covering_count(raw, q(1), n_mod, t);
        for (std::int64_t n = 1; n <= n_mod; ++n) {
          CHECK(levels[static_cast<std::size_t>(n - 1)].contains(t) == (count >= n));
        }
      }
    }
  }
}

TEST_SUITE("region") {
  TEST_CASE("measure examples") {
    CHECK(Region::unit_cube(2).measure() == 1);
    CHECK(l_shape().measure() == q(3, 4));
    CHECK(Region(3).measure() == 0);
    CHECK(Region(2).empty());
  }

  TEST_CASE("overlapping boxes are re-partitioned") {
    const Region r(2, {{{q(0), q(1, 2)}, {q(0), q(1)}}, {{q(1, 4), q(1)}, {q(0), q(1, 2)}}});
    CHECK(r.measure() == q(1, 2) + q(3, 8) - q(1, 8));
    const Region same(2, {{{q(1, 4), q(1)}, {q(0), q(1, 2)}}, {{q(0), q(1, 2)}, {q(0), q(1)}}});
    CHECK(r == same);
    CHECK_THROWS_AS(Region(1, {{{q(0), q(2)}}}), ContractError);
    CHECK_THROWS_AS(Region(2, {{{q(0), q(1)}}}), ContractError);
  }

  TEST_CASE("common denominator examples") {
    CHECK(common_denominator(Region(2, {{{q(0), q(1, 2)}, {q(0), q(1, 3)}}})) == std::vector<std::int64_t>{2, 3});
    CHECK(common_denominator(Region(1, {{{q(0), q(1, 4)}}, {{q(1, 2), q(3, 4)}}})) == std::vector<std::int64_t>{4});
    CHECK(common_denominator(Region::unit_cube(1)) == std::vector<std::int64_t>{1});
  }

  TEST_CASE("set operations agree with point sampling") {
    Rng rng(202);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t dim = 1 + static_cast<std::size_t>(trial % 3);
      const auto grid = rieszbasis::testing::random_grid(rng, dim, 4);
      std::vector<Box> raw_a, raw_b;
      const Region a = rieszbasis::testing::random_region_on(rng, grid, 3);
      const Region b = rieszbasis::testing::random_region_on(rng, grid, 3);
      raw_a = a.boxes();
      raw_b = b.boxes();
      const Region u = unite(a, b);
      const Region i = intersect(a, b);
      const Region c = complement(a);
      Rational count_a(0);
      const auto mids = rieszbasis::testing::cell_midpoints(grid);
      for (const auto& p : mids) {
        const bool in_a = rieszbasis::testing::raw_contains(raw_a, p);
        const bool in_b = rieszbasis::testing::raw_contains(raw_b, p);
        CHECK(a.contains(p) == in_a);
        CHECK(u.contains(p) == (in_a || in_b));
        CHECK(i.contains(p) == (in_a && in_b));
        CHECK(c.contains(p) == !in_a);
        if (in_a) count_a += 1;
      }
      CHECK(a.measure() == count_a / Rational(static_cast<std::int64_t>(mids.size())));
      CHECK(is_subset(i, a));
      CHECK(is_subset(a, u));
      CHECK(is_subset(a, b) == (intersect(a, b) == a));
    }
  }

  TEST_CASE("product and first-axis helpers") {
    const Region half = Region::from_intervals(IntervalUnion({{q(0), q(1, 2)}}));
    const Region p = product(half, Region::unit_cube(1));
    CHECK(p == Region(2, {{{q(0), q(1, 2)}, {q(0), q(1)}}}));
    const Region strip = product(Region::unit_cube(1), half);
    CHECK(tail_of_full_first_axis(strip) == half);
    CHECK_THROWS_AS(tail_of_full_first_axis(p), ContractError);
    CHECK(stretch_first_axis(Region(2, {{{q(0), q(1, 4)}, {q(0), q(1)}}}), q(2)) == p);
    const std::vector<Rational> shift{q(1, 2), q(0)};
    CHECK(cyclic_translate(p, shift) == Region(2, {{{q(1, 2), q(1)}, {q(0), q(1)}}}));
  }

  TEST_CASE("fold_1d_region examples") {
    const auto one = fold_1d_region(Region(1, {{{q(0), q(1, 4)}}, {{q(1, 2), q(3, 4)}}}), 2);
    REQUIRE(one.size() == 2);
    CHECK(one[0] == Region(1, {{{q(0), q(1, 4)}}}));
    CHECK(one[1] == Region(1, {{{q(0), q(1, 4)}}}));

    const auto full = fold_1d_region(Region::unit_cube(1), 3);
    REQUIRE(full.size() == 3);
    for (const auto& level : full) CHECK(level == Region(1, {{{q(0), q(1, 3)}}}));

    const auto sq = fold_1d_region(Region(2, {{{q(0), q(1, 2)}, {q(0), q(1, 2)}}}), 2);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0] == Region(2, {{{q(0), q(1, 2)}, {q(0), q(1, 2)}}}));
    CHECK(sq[1].empty());
  }

  TEST_CASE("fold_1d_region agrees with the covering-count oracle in d = 2") {
    Rng rng(303);
    for (int trial = 0; trial < 40; ++trial) {
      const auto grid = rieszbasis::testing::random_grid(rng, 2, 4);
      const Region x = rieszbasis::testing::random_region_on(rng, grid, 3);
      const std::int64_t n_mod = rieszbasis::testing::uniform(rng, 1, 4);
      const auto levels = fold_1d_region(x, n_mod);
      REQUIRE(levels.size() == static_cast<std::size_t>(n_mod));
      for (auto p : rieszbasis::testing::cell_midpoints({grid[0] * n_mod, grid[1]})) {
        p[0] /= Rational(n_mod);
        std::int64_t count = 0;
        for (std::int64_t j = 0; j < n_mod; ++j) {
          const std::vector<Rational> moved{p[0] + Rational(j, n_mod), p[1]};
          if (rieszbasis::testing::raw_contains(x.boxes(), moved)) ++count;
        }
        for (std::int64_t n = 1; n <= n_mod; ++n) CHECK(levels[static_cast<std::size_t>(n - 1)].contains(p) == (count >= n));
      }
    }
  }

  TEST_CASE("step_decompose examples") {
    const Region fam1[] = {l_shape()};
    const StepRegion s = step_decompose(fam1);
    REQUIRE(s.fibers.size() == 2);
    CHECK(s.fibers[0].base == Region(1, {{{q(0), q(1, 2)}}}));
    CHECK(s.fibers[1].base == Region(1, {{{q(1, 2), q(1)}}}));
    CHECK(s.fibers[0].parts[0] == IntervalUnion({{q(0), q(1, 2)}}));
    CHECK(s.fibers[1].parts[0] == IntervalUnion::full());
    CHECK(s.reassemble(0) == l_shape());

    const Region fam2[] = {Region::unit_cube(2)};
    const StepRegion t = step_decompose(fam2);
    REQUIRE(t.fibers.size() == 1);
    CHECK(t.fibers[0].base == Region::unit_cube(1));
    CHECK(t.fibers[0].parts[0].is_full());

    const Region a(2, {{{q(0), q(1, 2)}, {q(0), q(1, 2)}}});
    const Region b(2, {{{q(1, 2), q(1)}, {q(1, 2), q(1)}}});
    const Region fam3[] = {a, b};
    const StepRegion u = step_decompose(fam3);
    REQUIRE(u.fibers.size() == 2);
    for (const auto& f : u.fibers) CHECK((f.parts[0].empty() != f.parts[1].empty()));
    CHECK(u.reassemble(0) == a);
    CHECK(u.reassemble(1) == b);
  }

  TEST_CASE("step_decompose reassembles random families") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t dim = 2 + static_cast<std::size_t>(trial % 2);
      std::vector<Region> family;
      for (int i = 0; i < 3; ++i) family.push_back(rieszbasis::testing::random_region(rng, dim, 4, 3));
      const StepRegion s = step_decompose(family);
      for (std::size_t i = 0; i < family.size(); ++i) CHECK(s.reassemble(i) == family[i]);
      for (std::size_t j = 0; j < s.fibers.size(); ++j) {
        for (std::size_t k = j + 1; k < s.fibers.size(); ++k) CHECK(intersect(s.fibers[j].base, s.fibers[k].base).empty());
      }
    }
  }
}
