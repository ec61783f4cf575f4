#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rieszbasis/rational.hpp"

namespace rieszbasis {

using IntVector = std::vector<std::int64_t>;

/// A subset of Z^d that is a finite union of cosets of M_1 Z x ... x M_d Z.
///
/// lambda belongs to the set iff (lambda_1 mod M_1, ..., lambda_d mod M_d) is
/// one of the stored residue tuples. The same set has many representations
/// (any common multiple of the periods works); set operations return the
/// canonical one, whose moduli are the minimal per-axis periods. Equality
/// compares sets, not representations.
class PeriodicSet {
 public:
  /// Empty subset of Z^1.
  PeriodicSet();
  /// Validates residues (0 <= r_k < M_k); keeps the given representation.
  PeriodicSet(IntVector moduli, const std::vector<IntVector>& residues);

  static PeriodicSet empty(std::size_t dim);
  static PeriodicSet lattice(std::size_t dim);  // all of Z^d
  /// {r + M*k : r in residues} in one dimension.
  static PeriodicSet progression(std::int64_t modulus, const IntVector& residues);
  /// {0, ..., count-1} + modulus*Z in one dimension.
  static PeriodicSet initial_block(std::int64_t modulus, std::int64_t count);

  std::size_t dim() const { return moduli_.size(); }
  const IntVector& moduli() const { return moduli_; }
  std::size_t residue_count() const { return flat_.size(); }
  bool empty() const { return flat_.empty(); }
  /// Product of the moduli (number of cells in one period).
  std::int64_t period_volume() const;

  /// Residue tuples in lexicographic order.
  std::vector<IntVector> residues() const;
  bool contains(std::span<const std::int64_t> point) const;
  Rational density() const;

  /// True when both the set and the moduli coincide.
  bool same_representation(const PeriodicSet& other) const {
    return moduli_ == other.moduli_ && flat_ == other.flat_;
  }

  friend bool operator==(const PeriodicSet& a, const PeriodicSet& b);

  // Row-major flat indices (first axis most significant). Internal helpers
  // shared by the set algebra.
  const std::vector<std::int64_t>& flat_residues() const { return flat_; }
  static PeriodicSet from_flat(IntVector moduli, std::vector<std::int64_t> sorted_flat);

 private:
  IntVector moduli_;
  std::vector<std::int64_t> flat_;
};

/// Same set, expressed with `target` moduli (each a multiple of the current one).
PeriodicSet refine(const PeriodicSet& a, std::span<const std::int64_t> target);
/// Minimal-period representation.
PeriodicSet canonicalize(const PeriodicSet& a);

PeriodicSet unite(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet intersect(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet complement(const PeriodicSet& a);
PeriodicSet minus(const PeriodicSet& a, const PeriodicSet& b);

/// Cartesian product; the axes of `a` come first.
PeriodicSet product(const PeriodicSet& a, const PeriodicSet& b);
/// {lambda + v : lambda in a}.
PeriodicSet shift(const PeriodicSet& a, std::span<const std::int64_t> v);
/// Multiplies coordinate `axis` of every member by `factor` (>= 1).
PeriodicSet scale_axis(const PeriodicSet& a, std::size_t axis, std::int64_t factor);

bool is_subset(const PeriodicSet& a, const PeriodicSet& b);
inline Rational density(const PeriodicSet& a) { return a.density(); }

/// Members with lo_k <= lambda_k <= hi_k, in lexicographic order.
std::vector<IntVector> enumerate_box(const PeriodicSet& a, std::span<const std::int64_t> lo,
                                     std::span<const std::int64_t> hi);

/// Upper bound on the number of residue cells a single representation may
/// use; exceeding it raises CapError.
inline constexpr std::int64_t kMaxPeriodVolume = std::int64_t{1} << 24;

}  // namespace rieszbasis
