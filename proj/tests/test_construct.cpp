#include <doctest.h>

#include "rieszbasis/construct.hpp"
#include "rieszbasis/error.hpp"
#include "rieszbasis/trace.hpp"
#include "rieszbasis/verify.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rieszbasis;
using rieszbasis::testing::Rng;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }
PeriodicSet mod1(std::int64_t m, IntVector residues) { return PeriodicSet::progression(m, residues); }
IntervalUnion iu(std::vector<Interval> parts) { return IntervalUnion(std::move(parts)); }

const IntervalUnion kTwoQuarters = iu({{q(0), q(1, 4)}, {q(1, 2), q(3, 4)}});

Region l_shape() {
  return Region(2, {{{q(0), q(1, 2)}, {q(0), q(1, 2)}}, {{q(0), q(1)}, {q(1, 2), q(1)}}});
}

const PeriodicSet kLBasis({2, 2}, {{0, 0}, {0, 1}, {1, 0}});

}  // namespace

TEST_SUITE("construct") {
  TEST_CASE("base interval basis examples") {
    CHECK(base_interval_basis(q(1, 2), 2) == mod1(2, {0}));
    CHECK(base_interval_basis(q(1), 1) == PeriodicSet::lattice(1));
    CHECK(base_interval_basis(q(3, 4), 4) == mod1(4, {0, 1, 2}));
    CHECK_THROWS_AS(base_interval_basis(q(1, 3), 4), ContractError);
  }

  TEST_CASE("choose_fold_modulus examples") {
    CHECK(choose_fold_modulus(kTwoQuarters) == 2);
    CHECK(choose_fold_modulus(iu({{q(0), q(1, 8)}, {q(1, 2), q(5, 8)}})) == 2);
    CHECK_THROWS_AS(choose_fold_modulus(iu({{q(0), q(1, 3)}})), ContractError);
    // Folding by 2 keeps both arcs apart; 3 is the first modulus that merges them.
    const auto sevenths = iu({{q(0), q(1, 7)}, {q(2, 7), q(3, 7)}});
    CHECK(choose_fold_modulus(sevenths) == 3);
    CHECK_THROWS_AS(choose_fold_modulus(sevenths, 2), CapError);
    CHECK_THROWS_AS(choose_fold_modulus(sevenths, 1), ContractError);
  }

  TEST_CASE("riesz_basis_1d examples") {
    for (auto s : {Strategy::kDirect, Strategy::kPaper}) {
      CHECK(riesz_basis_1d(iu({{q(0), q(1, 2)}}), s).basis == mod1(2, {0}));
      CHECK(riesz_basis_1d(IntervalUnion::full(), s).basis == PeriodicSet::lattice(1));
    }
    CHECK(riesz_basis_1d(kTwoQuarters, Strategy::kDirect).basis == mod1(4, {0, 1}));
    CHECK(riesz_basis_1d(kTwoQuarters, Strategy::kPaper).basis == mod1(4, {1, 2}));
  }

  TEST_CASE("paper strategy on a seam-wrapping arc uses rotation") {
    const auto x = iu({{q(0), q(1, 6)}, {q(2, 3), q(1)}});
    const Built b = riesz_basis_1d(x, Strategy::kPaper);
    CHECK(b.basis == mod1(2, {0}));
    CHECK(step_name(*b.trace) == "rotate");
    CHECK(replay(*b.trace) == b.basis);
  }

  TEST_CASE("sandwich examples") {
    CHECK(sandwich_basis_1d(iu({{q(0), q(5, 8)}}), 8).basis == mod1(8, {0, 1, 2, 3, 4}));
    CHECK(sandwich_basis_1d(IntervalUnion::full(), 3).basis == PeriodicSet::lattice(1));
    const auto b = sandwich_basis_1d(kTwoQuarters, 4).basis;
    CHECK(b == mod1(4, {0, 1}));
  }

  TEST_CASE("coherent 1-D examples") {
    const IntervalUnion pair[] = {iu({{q(0), q(1, 4)}}), kTwoQuarters};
    const auto fam = coherent_bases_1d(pair);
    CHECK(fam.entries[0].basis == mod1(4, {0}));
    CHECK(fam.entries[1].basis == mod1(4, {0, 1}));

    const IntervalUnion single[] = {IntervalUnion::full()};
    CHECK(coherent_bases_1d(single).entries[0].basis == PeriodicSet::lattice(1));

    const IntervalUnion chain[] = {iu({{q(0), q(1, 8)}}), iu({{q(0), q(1, 2)}}), IntervalUnion::full()};
    const auto c = coherent_bases_1d(chain);
    CHECK(c.entries[0].basis == mod1(8, {0}));
    CHECK(c.entries[1].basis == mod1(8, {0, 1, 2, 3}));
    CHECK(c.entries[2].basis == PeriodicSet::lattice(1));
  }

  TEST_CASE("window coherence policy separates residue windows") {
    const IntervalUnion pair[] = {iu({{q(0), q(1, 4)}}), kTwoQuarters};
    BuildOptions opt;
    opt.coherence = CoherencePolicy::kPaperWindow;
    const auto fam = coherent_bases_1d(pair, opt);
    CHECK(is_subset(fam.entries[0].basis, fam.entries[1].basis));
    for (const auto& e : fam.entries) CHECK(e.basis.density() == to_interval_union(e.region).measure());
  }

  TEST_CASE("combine_product examples") {
    const Piece full1{Region::unit_cube(1), PeriodicSet::lattice(1)};
    const Piece xs1[] = {full1};
    const Piece ys1[] = {full1};
    CHECK(combine_product(xs1, ys1) == PeriodicSet::lattice(2));

    const Region half = Region::from_intervals(iu({{q(0), q(1, 2)}}));
    const Region upper = Region::from_intervals(iu({{q(1, 2), q(1)}}));
    const Piece xs[] = {{half, mod1(2, {0})}, {Region::unit_cube(1), PeriodicSet::lattice(1)}};
    const Piece ys[] = {{Region::unit_cube(1), PeriodicSet::lattice(1)}, {upper, mod1(2, {0})}};
    CHECK(combine_product(xs, ys) == kLBasis);

    const Piece bad_xs[] = {{Region::unit_cube(1), PeriodicSet::lattice(1)}, {half, mod1(2, {0})}};
    CHECK_THROWS_AS(combine_product(bad_xs, ys), ContractError);
  }

  TEST_CASE("fold_assemble examples") {
    const PeriodicSet quarter[] = {mod1(4, {0}), mod1(4, {0})};
    CHECK(fold_assemble(quarter, 2) == mod1(4, {1, 2}));
    const PeriodicSet lattice[] = {PeriodicSet::lattice(1)};
    CHECK(fold_assemble(lattice, 1) == PeriodicSet::lattice(1));
    const PeriodicSet thirds[] = {mod1(3, {0}), mod1(3, {0}), mod1(3, {0})};
    CHECK(fold_assemble(thirds, 3) == PeriodicSet::lattice(1));
    const PeriodicSet off[] = {mod1(4, {1})};
    CHECK_THROWS_AS(fold_assemble(off, 2), ContractError);
    const PeriodicSet coarse[] = {mod1(3, {0})};
    CHECK_THROWS_AS(fold_assemble(coarse, 2), ContractError);
  }

  TEST_CASE("coherent d-dimensional examples") {
    const Region cube[] = {Region::unit_cube(2)};
    CHECK(coherent_bases_d(cube).entries[0].basis == PeriodicSet::lattice(2));

    for (auto s : {Strategy::kDirect, Strategy::kPaper}) {
      const Region l[] = {l_shape()};
      CHECK(coherent_bases_d(l, {s}).entries[0].basis == kLBasis);
      const Region dup[] = {l_shape(), l_shape()};
      const auto fam = coherent_bases_d(dup, {s});
      CHECK(fam.entries[0].basis.same_representation(fam.entries[1].basis));
    }
  }

  TEST_CASE("riesz_basis_d examples") {
    for (std::size_t d = 1; d <= 3; ++d) CHECK(riesz_basis_d(Region::unit_cube(d)).basis == PeriodicSet::lattice(d));
    CHECK(riesz_basis_d(l_shape()).basis == kLBasis);
    CHECK(riesz_basis_d(Region::from_intervals(kTwoQuarters), {Strategy::kPaper}).basis == mod1(4, {1, 2}));
    CHECK(riesz_basis_d(Region(2)).basis.empty());
  }

  TEST_CASE("trace replay reproduces the basis") {
    Rng rng(707);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t dim = 1 + static_cast<std::size_t>(trial % 3);
      const Region x = rieszbasis::testing::random_region(rng, dim, 6, 3);
      for (auto s : {Strategy::kDirect, Strategy::kPaper}) {
        const Built b = riesz_basis_d(x, {s});
        CHECK(replay(*b.trace) == b.basis);
        const TraceStats st = summarize(*b.trace);
        CHECK(st.nodes >= 1);
        CHECK(st.depth >= 1);
      }
    }
  }

  TEST_CASE("declared cap on fold moduli is honoured") {
    const auto x = iu({{q(0), q(1, 7)}, {q(2, 7), q(3, 7)}});
    CHECK_THROWS_AS(riesz_basis_1d(x, Strategy::kPaper, 2), CapError);
    CHECK_NOTHROW(riesz_basis_1d(x, Strategy::kPaper, 0));
  }
}
