#include "rieszbasis/region.hpp"

#include <algorithm>
#include <string>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

bool box_is_empty(const Box& b) {
  return std::any_of(b.begin(), b.end(), [](const Interval& iv) { return iv.empty(); });
}

Box tail(const Box& b) { return Box(b.begin() + 1, b.end()); }

bool box_contains(const Box& b, std::span<const Rational> p) {
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (p[k] < b[k].lo || !(p[k] < b[k].hi)) return false;
  }
  return true;
}

std::vector<Box> canonical_boxes(std::size_t dim, std::vector<Box> boxes) {
  std::erase_if(boxes, box_is_empty);
  if (boxes.empty()) return {};
  if (dim == 1) {
    std::vector<Interval> ivs;
    ivs.reserve(boxes.size());
    for (const Box& b : boxes) ivs.push_back(b[0]);
    IntervalUnion u(std::move(ivs));
    std::vector<Box> out;
    for (const Interval& iv : u.intervals()) out.push_back(Box{iv});
    return out;
  }

  std::vector<Rational> cuts;
  for (const Box& b : boxes) {
    cuts.push_back(b[0].lo);
    cuts.push_back(b[0].hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Slab {
    Interval span;
    std::vector<Box> cross;
  };
  std::vector<Slab> slabs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Interval span{cuts[k], cuts[k + 1]};
    std::vector<Box> tails;
    for (const Box& b : boxes) {
      if (b[0].lo <= span.lo && span.hi <= b[0].hi) tails.push_back(tail(b));
    }
    std::vector<Box> cross = canonical_boxes(dim - 1, std::move(tails));
    if (cross.empty()) continue;
    if (!slabs.empty() && slabs.back().span.hi == span.lo && slabs.back().cross == cross) {
      slabs.back().span.hi = span.hi;
    } else {
      slabs.push_back({span, std::move(cross)});
    }
  }

  std::vector<Box> out;
  for (const Slab& s : slabs) {
    for (const Box& c : s.cross) {
      Box b{s.span};
      b.insert(b.end(), c.begin(), c.end());
      out.push_back(std::move(b));
    }
  }
  return out;
}

// Sorted distinct cut points per axis, always including 0 and 1.
std::vector<std::vector<Rational>> axis_cuts(std::size_t dim, std::span<const Region> regions,
                                             std::size_t first_axis) {
  std::vector<std::vector<Rational>> cuts(dim);
  for (std::size_t k = first_axis; k < dim; ++k) cuts[k] = {Rational(0), Rational(1)};
  for (const Region& r : regions) {
    for (const Box& b : r.boxes()) {
      for (std::size_t k = first_axis; k < dim; ++k) {
        cuts[k].push_back(b[k].lo);
        cuts[k].push_back(b[k].hi);
      }
    }
  }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return cuts;
}

// Visits every cell of the grid spanned by cuts[first_axis..dim).
template <typename Fn>
void for_each_cell(const std::vector<std::vector<Rational>>& cuts, std::size_t first_axis, Fn&& fn) {
  const std::size_t dim = cuts.size();
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t k = first_axis; k < dim; ++k) {
    if (cuts[k].size() < 2) return;
  }
  while (true) {
    Box cell;
    std::vector<Rational> mid;
    for (std::size_t k = first_axis; k < dim; ++k) {
      cell.push_back({cuts[k][idx[k]], cuts[k][idx[k] + 1]});
      mid.push_back((cuts[k][idx[k]] + cuts[k][idx[k] + 1]) / Rational(2));
    }
    fn(cell, mid);
    std::size_t k = dim;
    while (k > first_axis) {
      --k;
      if (++idx[k] + 1 < cuts[k].size()) break;
      idx[k] = 0;
      if (k == first_axis) return;
    }
    if (dim == first_axis) return;
  }
}

}  // namespace

Region::Region(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw ContractError("region dimension must be positive");
}

Region::Region(std::size_t dim, std::vector<Box> boxes) : dim_(dim) {
  if (dim_ == 0) throw ContractError("region dimension must be positive");
  for (const Box& b : boxes) {
    if (b.size() != dim_) {
      throw ContractError("box has " + std::to_string(b.size()) + " axes, region has " + std::to_string(dim_));
    }
    for (const Interval& iv : b) {
      if (iv.hi < iv.lo) throw ContractError("box interval has lo > hi");
      if (iv.lo < 0 || iv.hi > 1) {
        throw ContractError("box interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + ") leaves [0,1]");
      }
    }
  }
  boxes_ = canonical_boxes(dim_, std::move(boxes));
}

Region Region::unit_cube(std::size_t dim) {
  return Region(dim, {Box(dim, Interval{Rational(0), Rational(1)})});
}

Region Region::from_intervals(const IntervalUnion& x) {
  if (x.ambient() > 1) throw ContractError("interval union ambient exceeds the unit segment");
  std::vector<Box> boxes;
  for (const Interval& iv : x.intervals()) boxes.push_back(Box{iv});
  return Region(1, std::move(boxes));
}

Rational Region::measure() const {
  Rational total(0);
  for (const Box& b : boxes_) {
    Rational vol(1);
    for (const Interval& iv : b) vol *= iv.length();
    total += vol;
  }
  return total;
}

bool Region::contains(std::span<const Rational> point) const {
  if (point.size() != dim_) throw ContractError("point dimension mismatch");
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return box_contains(b, point); });
}

IntervalUnion to_interval_union(const Region& r) {
  if (r.dim() != 1) throw ContractError("expected a 1-dimensional region");
  std::vector<Interval> ivs;
  for (const Box& b : r.boxes()) ivs.push_back(b[0]);
  return IntervalUnion(std::move(ivs));
}

Region intersect(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw ContractError("dimension mismatch");
  std::vector<Box> out;
  for (const Box& x : a.boxes()) {
    for (const Box& y : b.boxes()) {
      Box c(a.dim());
      bool nonempty = true;
      for (std::size_t k = 0; k < a.dim() && nonempty; ++k) {
        c[k] = {std::max(x[k].lo, y[k].lo), std::min(x[k].hi, y[k].hi)};
        nonempty = !c[k].empty();
      }
      if (nonempty) out.push_back(std::move(c));
    }
  }
  return Region(a.dim(), std::move(out));
}

Region unite(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw ContractError("dimension mismatch");
  std::vector<Box> all = a.boxes();
  all.insert(all.end(), b.boxes().begin(), b.boxes().end());
  return Region(a.dim(), std::move(all));
}

Region complement(const Region& r) {
  const Region single[] = {r};
  const auto cuts = axis_cuts(r.dim(), single, 0);
  std::vector<Box> out;
  for_each_cell(cuts, 0, [&](const Box& cell, const std::vector<Rational>& mid) {
    if (!r.contains(mid)) out.push_back(cell);
  });
  return Region(r.dim(), std::move(out));
}

bool is_subset(const Region& a, const Region& b) { return intersect(a, b).measure() == a.measure(); }

std::vector<std::int64_t> common_denominator(const Region& r) {
  std::vector<std::int64_t> q(r.dim(), 1);
  for (const Box& b : r.boxes()) {
    for (std::size_t k = 0; k < r.dim(); ++k) {
      q[k] = lcm_int(q[k], b[k].lo.denominator());
      q[k] = lcm_int(q[k], b[k].hi.denominator());
    }
  }
  return q;
}

Region product(const Region& a, const Region& b) {
  std::vector<Box> out;
  for (const Box& x : a.boxes()) {
    for (const Box& y : b.boxes()) {
      Box c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return Region(a.dim() + b.dim(), std::move(out));
}

Region tail_of_full_first_axis(const Region& r) {
  if (r.dim() < 2) throw ContractError("tail_of_full_first_axis needs dimension >= 2");
  std::vector<Box> out;
  for (const Box& b : r.boxes()) {
    if (b[0].lo != 0 || b[0].hi != 1) throw ContractError("region does not span the full first axis");
    out.push_back(tail(b));
  }
  return Region(r.dim() - 1, std::move(out));
}

Region stretch_first_axis(const Region& r, const Rational& factor) {
  if (factor <= 0) throw ContractError("stretch factor must be positive");
  std::vector<Box> out = r.boxes();
  for (Box& b : out) {
    b[0].lo *= factor;
    b[0].hi *= factor;
  }
  return Region(r.dim(), std::move(out));
}

Region cyclic_translate(const Region& r, std::span<const Rational> shift) {
  if (shift.size() != r.dim()) throw ContractError("shift dimension mismatch");
  std::vector<Box> out;
  for (const Box& b : r.boxes()) {
    // Each axis may wrap into two pieces; take the product of the pieces.
    std::vector<Box> partial{Box{}};
    for (std::size_t k = 0; k < r.dim(); ++k) {
      const IntervalUnion moved = cyclic_rotate(IntervalUnion({b[k]}), shift[k]);
      std::vector<Box> next;
      for (const Box& p : partial) {
        for (const Interval& iv : moved.intervals()) {
          Box q = p;
          q.push_back(iv);
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return Region(r.dim(), std::move(out));
}

std::vector<Region> fold_1d_region(const Region& x, std::int64_t n_mod) {
  if (n_mod < 1) throw ContractError("fold modulus must be positive");
  if (x.dim() == 1) {
    std::vector<Region> out;
    for (const IntervalUnion& level : fold(to_interval_union(x), n_mod)) {
      std::vector<Box> boxes;
      for (const Interval& iv : level.intervals()) boxes.push_back(Box{iv});
      out.emplace_back(1, std::move(boxes));
    }
    return out;
  }
  const Region single[] = {x};
  const StepRegion steps = step_decompose(single);
  std::vector<std::vector<Box>> levels(static_cast<std::size_t>(n_mod));
  for (const StepFiber& f : steps.fibers) {
    const auto folded = fold(f.parts[0], n_mod);
    for (std::size_t n = 0; n < folded.size(); ++n) {
      for (const Interval& iv : folded[n].intervals()) {
        for (const Box& yb : f.base.boxes()) {
          Box b{iv};
          b.insert(b.end(), yb.begin(), yb.end());
          levels[n].push_back(std::move(b));
        }
      }
    }
  }
  std::vector<Region> out;
  out.reserve(levels.size());
  for (auto& boxes : levels) out.emplace_back(x.dim(), std::move(boxes));
  return out;
}

Region StepRegion::reassemble(std::size_t member) const {
  std::vector<Box> boxes;
  for (const StepFiber& f : fibers) {
    for (const Interval& iv : f.parts.at(member).intervals()) {
      for (const Box& yb : f.base.boxes()) {
        Box b{iv};
        b.insert(b.end(), yb.begin(), yb.end());
        boxes.push_back(std::move(b));
      }
    }
  }
  return Region(dim, std::move(boxes));
}

StepRegion step_decompose(std::span<const Region> family) {
  if (family.empty()) throw ContractError("step_decompose needs a nonempty family");
  const std::size_t dim = family.front().dim();
  if (dim < 2) throw ContractError("step_decompose needs dimension >= 2");
  for (const Region& r : family) {
    if (r.dim() != dim) throw ContractError("dimension mismatch in step_decompose family");
  }

  const auto cuts = axis_cuts(dim, family, 1);
  std::vector<std::vector<IntervalUnion>> signatures;
  std::vector<std::vector<Box>> cells_by_signature;

  for_each_cell(cuts, 1, [&](const Box& cell, const std::vector<Rational>& mid) {
    std::vector<IntervalUnion> sig;
    sig.reserve(family.size());
    bool any = false;
    for (const Region& r : family) {
      std::vector<Interval> fiber;
      for (const Box& b : r.boxes()) {
        if (box_contains(tail(b), mid)) fiber.push_back(b[0]);
      }
      sig.emplace_back(std::move(fiber));
      any = any || !sig.back().empty();
    }
    if (!any) return;
    auto it = std::find(signatures.begin(), signatures.end(), sig);
    if (it == signatures.end()) {
      signatures.push_back(std::move(sig));
      cells_by_signature.push_back({cell});
    } else {
      cells_by_signature[static_cast<std::size_t>(it - signatures.begin())].push_back(cell);
    }
  });

  StepRegion out;
  out.dim = dim;
  for (std::size_t j = 0; j < signatures.size(); ++j) {
    out.fibers.push_back({Region(dim - 1, std::move(cells_by_signature[j])), std::move(signatures[j])});
  }
  return out;
}

}  // namespace rieszbasis
