#pragma once

// Seeded random inputs shared by the property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rieszbasis/interval_union.hpp"
#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/region.hpp"

namespace rieszbasis::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// A nonempty interval [a/q, b/q] with 0 <= a < b <= q.
inline Interval random_interval(Rng& rng, std::int64_t q) {
  std::int64_t a = uniform(rng, 0, q - 1);
  std::int64_t b = uniform(rng, a + 1, q);
  return {Rational(a, q), Rational(b, q)};
}

/// Per-axis denominators drawn from [1, max_den]; every endpoint on axis k
/// has denominator dividing q_k.
inline std::vector<std::int64_t> random_grid(Rng& rng, std::size_t dim, std::int64_t max_den) {
  std::vector<std::int64_t> q(dim);
  for (auto& v : q) v = uniform(rng, 1, max_den);
  return q;
}

inline Region random_region_on(Rng& rng, const std::vector<std::int64_t>& grid, std::size_t max_boxes) {
  const auto boxes = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_boxes)));
  std::vector<Box> out;
  for (std::size_t b = 0; b < boxes; ++b) {
    Box box;
    for (std::int64_t q : grid) box.push_back(random_interval(rng, q));
    out.push_back(std::move(box));
  }
  return Region(grid.size(), std::move(out));
}

inline Region random_region(Rng& rng, std::size_t dim, std::int64_t max_den = 6, std::size_t max_boxes = 4) {
  return random_region_on(rng, random_grid(rng, dim, max_den), max_boxes);
}

inline IntervalUnion random_interval_union(Rng& rng, std::int64_t q, std::size_t max_pieces) {
  const auto pieces = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_pieces)));
  std::vector<Interval> out;
  for (std::size_t i = 0; i < pieces; ++i) out.push_back(random_interval(rng, q));
  return IntervalUnion(std::move(out));
}

/// X_1 ⊆ X_2 ⊆ ... ⊆ X_len on one shared grid.
inline std::vector<Region> random_chain(Rng& rng, std::size_t dim, std::size_t len, std::int64_t max_den = 6,
                                        std::size_t max_boxes = 4) {
  const auto grid = random_grid(rng, dim, max_den);
  std::vector<Region> chain{random_region_on(rng, grid, max_boxes)};
  while (chain.size() < len) {
    const auto extra_boxes = std::max<std::size_t>(1, max_boxes / 2);
    chain.push_back(unite(chain.back(), random_region_on(rng, grid, extra_boxes)));
  }
  return chain;
}

/// Residues kept independently with probability 1/2 over random moduli.
inline PeriodicSet random_periodic_set(Rng& rng, std::size_t dim, std::int64_t max_modulus) {
  IntVector moduli(dim);
  for (auto& m : moduli) m = uniform(rng, 1, max_modulus);
  const PeriodicSet full = refine(PeriodicSet::lattice(dim), moduli);
  std::vector<IntVector> kept;
  for (const auto& r : full.residues()) {
    if (uniform(rng, 0, 1) == 1) kept.push_back(r);
  }
  return PeriodicSet(moduli, kept);
}

}  // namespace rieszbasis::testing
