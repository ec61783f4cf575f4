#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rieszbasis/interval_union.hpp"
#include "rieszbasis/rational.hpp"

namespace rieszbasis {

/// Axis-parallel box: one half-open interval per axis.
using Box = std::vector<Interval>;

/// A finite union of axis-parallel rational boxes inside [0,1]^d.
///
/// Boxes are stored in a canonical slab form: the first axis is cut where the
/// cross-section changes, adjacent slabs with equal cross-sections are merged,
/// and each cross-section is canonical in d-1 dimensions. Two regions are
/// equal as point sets iff their box lists are equal. Overlapping input boxes
/// are accepted and re-partitioned.
class Region {
 public:
  explicit Region(std::size_t dim = 1);
  Region(std::size_t dim, std::vector<Box> boxes);

  static Region unit_cube(std::size_t dim);
  static Region from_intervals(const IntervalUnion& x);

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  Rational measure() const;
  bool contains(std::span<const Rational> point) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::size_t dim_;
  std::vector<Box> boxes_;
};

inline Rational measure(const Region& r) { return r.measure(); }

/// The 1-D region as an interval union over ambient 1.
IntervalUnion to_interval_union(const Region& r);

Region intersect(const Region& a, const Region& b);
Region unite(const Region& a, const Region& b);
/// [0,1]^d minus r.
Region complement(const Region& r);
bool is_subset(const Region& a, const Region& b);

/// Per-axis lcm of all endpoint denominators; r is a union of grid cells of
/// side 1/q_k on axis k.
std::vector<std::int64_t> common_denominator(const Region& r);

/// Product region a x b (axes of a first).
Region product(const Region& a, const Region& b);

/// Drops the first axis of a region whose boxes all span it as [0,1).
Region tail_of_full_first_axis(const Region& r);

/// Multiplies first-axis coordinates by `factor`; the result must stay in [0,1]^d.
Region stretch_first_axis(const Region& r, const Rational& factor);

/// Translates by `shift` modulo 1 on every axis.
Region cyclic_translate(const Region& r, std::span<const Rational> shift);

/// Folding along the first axis: returns X_{>=1} ⊇ ... ⊇ X_{>=N}, each a
/// subset of [0,1/N] x [0,1]^{d-1} (not rescaled).
std::vector<Region> fold_1d_region(const Region& x, std::int64_t n_mod);

/// One atom of a step decomposition: a base set Y_j in the last d-1
/// coordinates and, per family member i, the first-axis fiber S_{i,j}.
struct StepFiber {
  Region base;
  std::vector<IntervalUnion> parts;
};

/// Decomposition X_i = ⋃_j S_{i,j} x Y_j with pairwise disjoint Y_j.
struct StepRegion {
  std::size_t dim = 0;
  std::vector<StepFiber> fibers;

  /// Reassembles member i from its fibers.
  Region reassemble(std::size_t member) const;
};

/// Cuts the last d-1 coordinates along every box face of every member and
/// groups the resulting cells by their tuple of first-axis fibers. Cells with
/// all fibers empty are dropped. Requires a common dimension d >= 2.
StepRegion step_decompose(std::span<const Region> family);

}  // namespace rieszbasis
