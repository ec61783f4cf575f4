#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rieszbasis/rational.hpp"

namespace rieszbasis {

/// Half-open interval [lo, hi). Empty when lo >= hi.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi > lo ? hi - lo : Rational(0); }
  bool empty() const { return !(lo < hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of intervals inside the segment [0, ambient].
///
/// Always held in canonical form: nonempty intervals, sorted, separated by
/// strictly positive gaps (touching or overlapping input is merged).
/// Membership uses the half-open convention [lo, hi).
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts, Rational ambient = Rational(1));

  static IntervalUnion full(Rational ambient = Rational(1));

  const std::vector<Interval>& intervals() const { return intervals_; }
  const Rational& ambient() const { return ambient_; }

  bool empty() const { return intervals_.empty(); }
  bool is_full() const;
  std::size_t component_count() const { return intervals_.size(); }
  Rational measure() const;
  bool contains(const Rational& t) const;

  /// Least common multiple of all endpoint denominators (and the ambient's).
  std::int64_t common_denominator() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> intervals_;
  Rational ambient_{1};
};

/// Number of maximal arcs once 0 and the ambient length are identified.
std::size_t cyclic_component_count(const IntervalUnion& x);

/// {t + shift mod ambient : t in x}.
IntervalUnion cyclic_rotate(const IntervalUnion& x, Rational shift);

/// Intersection of two unions over the same ambient.
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);

/// Multiplies every coordinate (and the ambient) by `factor`.
IntervalUnion stretch(const IntervalUnion& x, const Rational& factor);

/// The folding chain X_{>=1}, ..., X_{>=N} of x into [0, ambient/N].
///
/// X_{>=n} holds the base points t for which t + j*ambient/N lies in x for at
/// least n values of j in {0, ..., N-1}. Result ambient is ambient/N.
std::vector<IntervalUnion> fold(const IntervalUnion& x, std::int64_t n_mod);

}  // namespace rieszbasis
