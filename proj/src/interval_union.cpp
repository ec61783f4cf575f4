#include "rieszbasis/interval_union.hpp"

#include <algorithm>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

IntervalUnion::IntervalUnion(std::vector<Interval> parts, Rational ambient) : ambient_(ambient) {
  if (ambient_ <= 0) throw ContractError("interval union ambient length must be positive");
  std::vector<Interval> kept;
  kept.reserve(parts.size());
  for (const Interval& iv : parts) {
    if (iv.hi < iv.lo) {
      throw ContractError("interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + ") has lo > hi");
    }
    if (iv.lo < 0 || iv.hi > ambient_) {
      throw ContractError("interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) +
                          ") leaves [0, " + to_string(ambient_) + "]");
    }
    if (!iv.empty()) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : kept) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

IntervalUnion IntervalUnion::full(Rational ambient) { return IntervalUnion({{Rational(0), ambient}}, ambient); }

bool IntervalUnion::is_full() const {
  return intervals_.size() == 1 && intervals_.front().lo == 0 && intervals_.front().hi == ambient_;
}

Rational IntervalUnion::measure() const {
  Rational total(0);
  for (const Interval& iv : intervals_) total += iv.length();
  return total;
}

bool IntervalUnion::contains(const Rational& t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return t < it->hi;
}

std::int64_t IntervalUnion::common_denominator() const {
  std::int64_t q = ambient_.denominator();
  for (const Interval& iv : intervals_) {
    q = lcm_int(q, iv.lo.denominator());
    q = lcm_int(q, iv.hi.denominator());
  }
  return q;
}

std::size_t cyclic_component_count(const IntervalUnion& x) {
  const auto& ivs = x.intervals();
  if (ivs.size() >= 2 && ivs.front().lo == 0 && ivs.back().hi == x.ambient()) return ivs.size() - 1;
  return ivs.size();
}

IntervalUnion cyclic_rotate(const IntervalUnion& x, Rational shift) {
  const Rational c = x.ambient();
  shift -= c * Rational(floor_to_int(shift / c));
  std::vector<Interval> out;
  for (const Interval& iv : x.intervals()) {
    const Rational lo = iv.lo + shift;
    const Rational hi = iv.hi + shift;
    if (hi <= c) {
      out.push_back({lo, hi});
    } else if (lo >= c) {
      out.push_back({lo - c, hi - c});
    } else {
      out.push_back({lo, c});
      out.push_back({Rational(0), hi - c});
    }
  }
  return IntervalUnion(std::move(out), c);
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.ambient() != b.ambient()) throw ContractError("intersect: ambient lengths differ");
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Rational lo = std::max(x[i].lo, y[j].lo);
    const Rational hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) ++i; else ++j;
  }
  return IntervalUnion(std::move(out), a.ambient());
}

IntervalUnion stretch(const IntervalUnion& x, const Rational& factor) {
  if (factor <= 0) throw ContractError("stretch factor must be positive");
  std::vector<Interval> out;
  out.reserve(x.intervals().size());
  for (const Interval& iv : x.intervals()) out.push_back({iv.lo * factor, iv.hi * factor});
  return IntervalUnion(std::move(out), x.ambient() * factor);
}

std::vector<IntervalUnion> fold(const IntervalUnion& x, std::int64_t n_mod) {
  if (n_mod < 1) throw ContractError("fold modulus must be positive");
  const Rational width = x.ambient() / Rational(n_mod);

  // Breakpoints of the covering count inside [0, width].
  std::vector<Rational> cuts{Rational(0), width};
  for (const Interval& iv : x.intervals()) {
    for (const Rational& e : {iv.lo, iv.hi}) {
      const std::int64_t j = floor_to_int(e / width);
      const Rational r = e - width * Rational(j);
      cuts.push_back(r);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::vector<Interval>> levels(static_cast<std::size_t>(n_mod));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational a = cuts[k];
    const Rational b = cuts[k + 1];
    if (b > width) break;
    // Count is constant on (a, b); sample at the midpoint, which is also
    // the value on [a, b) under the half-open convention.
    const Rational mid = (a + b) / Rational(2);
    std::size_t count = 0;
    for (std::int64_t j = 0; j < n_mod; ++j) {
      if (x.contains(mid + width * Rational(j))) ++count;
    }
    for (std::size_t n = 0; n < count; ++n) levels[n].push_back({a, b});
  }

  std::vector<IntervalUnion> out;
  out.reserve(levels.size());
  for (auto& level : levels) out.emplace_back(std::move(level), width);
  return out;
}

}  // namespace rieszbasis
