#include "rieszbasis/construct.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

// Guard against runaway recursion; the component-count induction terminates
// long before this on any input the library accepts.
constexpr std::size_t kMaxDepth = 256;

Built empty_built(std::size_t dim) { return {PeriodicSet::empty(dim), make_trace(EmptyStep{dim})}; }

Built lattice_built(std::size_t dim) { return {PeriodicSet::lattice(dim), make_trace(LatticeStep{dim})}; }

Built fold_built(const std::vector<Built>& pieces, std::int64_t n_mod, std::int64_t first_shift, std::string reason) {
  std::vector<PeriodicSet> scaled;
  FoldStep step{n_mod, first_shift, {}, std::move(reason)};
  scaled.reserve(pieces.size());
  for (const Built& p : pieces) {
    scaled.push_back(scale_axis(p.basis, 0, n_mod));
    step.pieces.push_back(p.trace);
  }
  return {fold_assemble(scaled, n_mod, first_shift), make_trace(std::move(step))};
}

// Start of the single arc of a cyclic interval that is neither empty nor full.
Rational arc_start(const IntervalUnion& x) {
  if (x.component_count() == 1) return x.intervals().front().lo;
  return x.intervals().back().lo;
}

Built cyclic_interval_basis(const IntervalUnion& x) {
  const Rational length = x.measure();
  const std::int64_t modulus = length.denominator();
  Rational rotation = x.ambient() - arc_start(x);
  if (rotation == x.ambient()) rotation = 0;
  if (cyclic_rotate(x, rotation) != IntervalUnion({{Rational(0), length}}, x.ambient())) {
    throw ContractError("cyclic_interval_basis: input is not a single arc");
  }
  TracePtr leaf = make_trace(IntervalStep{length, modulus});
  if (rotation != 0) leaf = make_trace(RotateStep{rotation, leaf});
  return {base_interval_basis(length, modulus), leaf};
}

Built riesz_basis_1d_impl(const IntervalUnion& x, Strategy strategy, std::int64_t cap, std::size_t depth) {
  if (depth > kMaxDepth) throw CapError("construction recursion exceeded depth " + std::to_string(kMaxDepth));
  if (x.ambient() != 1) throw ContractError("riesz_basis_1d expects a subset of [0,1]");
  if (x.empty()) return empty_built(1);
  if (x.is_full()) return lattice_built(1);

  if (strategy == Strategy::kDirect) {
    const std::int64_t q = x.common_denominator();
    std::vector<Built> pieces;
    for (const IntervalUnion& level : fold(x, q)) pieces.push_back(level.empty() ? empty_built(1) : lattice_built(1));
    return fold_built(pieces, q, 0, "direct: fold by common denominator");
  }

  if (cyclic_component_count(x) == 1) return cyclic_interval_basis(x);

  const std::int64_t n_mod = choose_fold_modulus(x, cap);
  std::vector<Built> pieces;
  for (const IntervalUnion& level : fold(x, n_mod)) {
    pieces.push_back(riesz_basis_1d_impl(stretch(level, Rational(n_mod)), strategy, cap, depth + 1));
  }
  return fold_built(pieces, n_mod, 1,
                    "paper: fold lowers cyclic components from " + std::to_string(cyclic_component_count(x)));
}

bool interval_union_subset(const IntervalUnion& a, const IntervalUnion& b) {
  return intersect(a, b).measure() == a.measure();
}

std::int64_t window_modulus(const std::vector<IntervalUnion>& members, std::int64_t q, std::int64_t cap) {
  std::size_t max_components = 1;
  for (const auto& x : members) max_components = std::max(max_components, x.component_count());
  const auto big_l = static_cast<std::int64_t>(max_components);

  struct Pair {
    std::size_t small, large;
  };
  std::vector<Pair> pairs;
  Rational min_gap(1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j || !interval_union_subset(members[i], members[j])) continue;
      pairs.push_back({i, j});
      min_gap = std::min(min_gap, members[j].measure() - members[i].measure());
    }
  }
  if (cap == 0) cap = q * (4 * big_l + 2);

  const Pair* violating = nullptr;
  for (std::int64_t n_mod = q; n_mod <= cap; n_mod += q) {
    if (!(Rational(n_mod) * min_gap > Rational(4 * big_l))) continue;
    violating = nullptr;
    for (const Pair& p : pairs) {
      const std::int64_t m_i = floor_to_int(Rational(n_mod) * members[p.small].measure());
      const std::int64_t m_j = floor_to_int(Rational(n_mod) * members[p.large].measure());
      const auto l_i = static_cast<std::int64_t>(members[p.small].component_count());
      const auto l_j = static_cast<std::int64_t>(members[p.large].component_count());
      if (!(m_i + 2 * l_i < m_j - 2 * l_j)) {
        violating = &p;
        break;
      }
    }
    if (violating == nullptr) return n_mod;
  }
  std::string detail;
  if (violating != nullptr) {
    detail = " (members " + std::to_string(violating->small) + " ⊆ " + std::to_string(violating->large) + ")";
  }
  throw CapError("incoherent family under cap " + std::to_string(cap) + detail);
}

std::vector<std::pair<std::size_t, std::size_t>> region_inclusions(std::span<const Region> family) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i != j && is_subset(family[i], family[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Built> coherent_d_impl(const std::vector<Region>& family, const BuildOptions& options, std::size_t depth);

Built direct_d(const Region& x, std::span<const std::int64_t> grid) {
  if (x.empty()) return empty_built(x.dim());
  const std::int64_t q = grid[0];
  std::vector<Built> pieces;
  if (x.dim() == 1) {
    for (const IntervalUnion& level : fold(to_interval_union(x), q)) {
      if (!level.empty() && !level.is_full()) throw ContractError("direct construction: region not aligned to grid");
      pieces.push_back(level.empty() ? empty_built(1) : lattice_built(1));
    }
  } else {
    for (const Region& level : fold_1d_region(x, q)) {
      if (level.empty()) {
        pieces.push_back(empty_built(x.dim()));
        continue;
      }
      const Region base = tail_of_full_first_axis(stretch_first_axis(level, Rational(q)));
      const Built inner = direct_d(base, grid.subspan(1));
      const Built full = lattice_built(1);
      pieces.push_back({product(full.basis, inner.basis), make_trace(ProductStep{{{full.trace, inner.trace}}, {}})});
    }
  }
  return fold_built(pieces, q, 0, "direct: fold by common denominator");
}

// Step 1: every fiber is a single (cyclic) interval.
std::vector<Built> interval_fiber_step(const std::vector<Region>& family, const StepRegion& steps,
                                       const BuildOptions& options, std::size_t depth) {
  const std::size_t dim = family.front().dim();

  std::vector<Rational> lengths;
  for (const StepFiber& f : steps.fibers) {
    for (const IntervalUnion& part : f.parts) {
      if (!part.empty()) lengths.push_back(part.measure());
    }
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  std::vector<IntervalUnion> interval_family;
  for (const Rational& len : lengths) interval_family.push_back(IntervalUnion({{Rational(0), len}}));
  const CoherentFamily interval_bases = coherent_bases_1d(interval_family, options);
  auto interval_basis = [&](const Rational& len) -> const CoherentEntry& {
    const auto it = std::lower_bound(lengths.begin(), lengths.end(), len);
    return interval_bases.entries[static_cast<std::size_t>(it - lengths.begin())];
  };

  // Fiber orderings by length (ties by index) and the suffix unions they use.
  std::vector<std::vector<std::size_t>> orders(family.size());
  std::vector<std::vector<std::size_t>> suffixes;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto& order = orders[i];
    for (std::size_t j = 0; j < steps.fibers.size(); ++j) {
      if (!steps.fibers[j].parts[i].empty()) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return steps.fibers[a].parts[i].measure() < steps.fibers[b].parts[i].measure();
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      std::vector<std::size_t> suffix(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
      std::sort(suffix.begin(), suffix.end());
      if (std::find(suffixes.begin(), suffixes.end(), suffix) == suffixes.end()) suffixes.push_back(suffix);
    }
  }

  std::vector<Region> suffix_regions;
  for (const auto& suffix : suffixes) {
    Region y(dim - 1);
    for (std::size_t j : suffix) y = unite(y, steps.fibers[j].base);
    suffix_regions.push_back(std::move(y));
  }
  const std::vector<Built> suffix_bases = coherent_d_impl(suffix_regions, options, depth + 1);
  auto suffix_index = [&](std::vector<std::size_t> suffix) {
    std::sort(suffix.begin(), suffix.end());
    return static_cast<std::size_t>(std::find(suffixes.begin(), suffixes.end(), suffix) - suffixes.begin());
  };

  std::vector<Built> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& order = orders[i];
    std::vector<Piece> xs, ys;
    ProductStep step;
    step.order = order;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const IntervalUnion& fiber = steps.fibers[order[k]].parts[i];
      const CoherentEntry& lam = interval_basis(fiber.measure());
      const std::size_t s = suffix_index({order.begin() + static_cast<std::ptrdiff_t>(k), order.end()});
      xs.push_back({Region::from_intervals(fiber), lam.basis});
      ys.push_back({suffix_regions[s], suffix_bases[s].basis});
      TracePtr x_trace = lam.trace;
      if (!fiber.is_full() && arc_start(fiber) != 0) {
        x_trace = make_trace(RotateStep{Rational(1) - arc_start(fiber), x_trace});
      }
      step.terms.emplace_back(x_trace, suffix_bases[s].trace);
    }
    if (order.empty()) {
      out.push_back(empty_built(dim));
      continue;
    }
    out.push_back({combine_product(xs, ys), make_trace(std::move(step))});
  }
  return out;
}

// Step 2: fold every member along the first axis by a modulus that lowers the
// component count of the pivot fiber, and recurse on each folded level.
std::vector<Built> folding_step(const std::vector<Region>& family, const StepRegion& steps, std::size_t pivot_member,
                                std::size_t pivot_fiber, const BuildOptions& options, std::size_t depth) {
  const IntervalUnion& pivot = steps.fibers[pivot_fiber].parts[pivot_member];
  const std::int64_t n_mod = choose_fold_modulus(pivot, options.max_fold_modulus);

  std::vector<std::vector<Region>> levels(static_cast<std::size_t>(n_mod));
  for (const Region& x : family) {
    const auto folded = fold_1d_region(x, n_mod);
    for (std::size_t n = 0; n < folded.size(); ++n) levels[n].push_back(stretch_first_axis(folded[n], Rational(n_mod)));
  }
  std::vector<std::vector<Built>> level_bases;
  for (const auto& level : levels) level_bases.push_back(coherent_d_impl(level, options, depth + 1));

  const std::string reason = "paper: pivot member " + std::to_string(pivot_member) + " fiber " +
                             std::to_string(pivot_fiber) + " has " + std::to_string(cyclic_component_count(pivot)) +
                             " cyclic components";
  std::vector<Built> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<Built> pieces;
    for (const auto& bases : level_bases) pieces.push_back(bases[i]);
    out.push_back(fold_built(pieces, n_mod, 1, reason));
  }
  return out;
}

std::vector<Built> paper_family(const std::vector<Region>& family, const BuildOptions& options, std::size_t depth) {
  const StepRegion steps = step_decompose(family);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < steps.fibers.size(); ++j) {
      if (cyclic_component_count(steps.fibers[j].parts[i]) >= 2) {
        return folding_step(family, steps, i, j, options, depth);
      }
    }
  }
  return interval_fiber_step(family, steps, options, depth);
}

// Bases for a family of regions (any dimension), deduplicated, with empties
// mapped to the empty set. Result is index-aligned with `family`.
std::vector<Built> coherent_d_impl(const std::vector<Region>& family, const BuildOptions& options, std::size_t depth) {
  if (depth > kMaxDepth) throw CapError("construction recursion exceeded depth " + std::to_string(kMaxDepth));
  if (family.empty()) return {};
  const std::size_t dim = family.front().dim();
  for (const Region& r : family) {
    if (r.dim() != dim) throw ContractError("dimension mismatch in family");
  }

  if (dim == 1) {
    std::vector<IntervalUnion> intervals;
    for (const Region& r : family) intervals.push_back(to_interval_union(r));
    const CoherentFamily fam = coherent_bases_1d(intervals, options);
    std::vector<Built> out;
    for (const auto& e : fam.entries) out.push_back({e.basis, e.trace});
    return out;
  }

  std::vector<Region> unique;
  std::vector<std::size_t> slot(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) {
      slot[i] = static_cast<std::size_t>(-1);
      continue;
    }
    auto it = std::find(unique.begin(), unique.end(), family[i]);
    slot[i] = static_cast<std::size_t>(it - unique.begin());
    if (it == unique.end()) unique.push_back(family[i]);
  }

  std::vector<Built> unique_bases;
  if (!unique.empty()) {
    if (options.strategy == Strategy::kDirect) {
      std::vector<std::int64_t> grid(dim, 1);
      for (const Region& r : unique) {
        const auto q = common_denominator(r);
        for (std::size_t k = 0; k < dim; ++k) grid[k] = lcm_int(grid[k], q[k]);
      }
      for (const Region& r : unique) unique_bases.push_back(direct_d(r, grid));
    } else {
      unique_bases = paper_family(unique, options, depth);
    }
  }

  std::vector<Built> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    out.push_back(slot[i] == static_cast<std::size_t>(-1) ? empty_built(dim) : unique_bases[slot[i]]);
  }
  return out;
}

}  // namespace

void CoherentFamily::check() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].basis.density() != entries[i].region.measure()) {
      throw ContractError("coherent family entry " + std::to_string(i) + ": density " +
                          to_string(entries[i].basis.density()) + " != measure " +
                          to_string(entries[i].region.measure()));
    }
  }
  for (const auto& [i, j] : inclusions) {
    if (!is_subset(entries[i].basis, entries[j].basis)) {
      throw ContractError("coherent family: region " + std::to_string(i) + " ⊆ region " + std::to_string(j) +
                          " but the bases are not nested");
    }
  }
}

PeriodicSet base_interval_basis(const Rational& length, std::int64_t modulus) {
  if (length <= 0 || length > 1) throw ContractError("interval length must lie in (0, 1]");
  if (modulus < 1) throw ContractError("modulus must be positive");
  const Rational cells = length * Rational(modulus);
  if (cells.denominator() != 1) {
    throw ContractError("non-multiple N: " + std::to_string(modulus) + " is not a multiple of " +
                        std::to_string(length.denominator()));
  }
  return canonicalize(PeriodicSet::initial_block(modulus, cells.numerator()));
}

std::int64_t choose_fold_modulus(const IntervalUnion& x, std::int64_t cap) {
  const std::size_t components = cyclic_component_count(x);
  if (components < 2) throw ContractError("choose_fold_modulus needs at least two cyclic components");
  if (cap == 0) cap = 10 * x.common_denominator();
  if (cap < 2) throw ContractError("fold modulus cap must be at least 2");
  for (std::int64_t n_mod = 2; n_mod <= cap; ++n_mod) {
    const auto levels = fold(x, n_mod);
    const bool ok = std::all_of(levels.begin(), levels.end(), [&](const IntervalUnion& level) {
      return cyclic_component_count(level) <= components - 1;
    });
    if (ok) return n_mod;
  }
  throw CapError("no modulus found under cap " + std::to_string(cap));
}

Built riesz_basis_1d(const IntervalUnion& x, Strategy strategy, std::int64_t cap) {
  return riesz_basis_1d_impl(x, strategy, cap, 0);
}

Built sandwich_basis_1d(const IntervalUnion& x, std::int64_t n_mod, Strategy strategy, std::int64_t cap) {
  if (n_mod < 1) throw ContractError("sandwich modulus must be positive");
  if (x.ambient() != 1) throw ContractError("sandwich_basis_1d expects a subset of [0,1]");
  std::vector<Built> pieces;
  for (const IntervalUnion& level : fold(x, n_mod)) {
    if (level.empty()) {
      pieces.push_back(empty_built(1));
    } else if (level.is_full()) {
      pieces.push_back(lattice_built(1));
    } else {
      pieces.push_back(riesz_basis_1d_impl(stretch(level, Rational(n_mod)), strategy, cap, 1));
    }
  }
  return fold_built(pieces, n_mod, 0, "sandwich: full folds first");
}

CoherentFamily coherent_bases_1d(std::span<const IntervalUnion> family, const BuildOptions& options) {
  std::vector<IntervalUnion> unique;
  std::vector<std::size_t> slot(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].ambient() != 1) throw ContractError("coherent_bases_1d expects subsets of [0,1]");
    auto it = std::find(unique.begin(), unique.end(), family[i]);
    slot[i] = static_cast<std::size_t>(it - unique.begin());
    if (it == unique.end()) unique.push_back(family[i]);
  }

  // Members taking part in a strict inclusion share one modulus.
  std::vector<bool> linked(unique.size(), false);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    for (std::size_t j = 0; j < unique.size(); ++j) {
      if (i != j && !unique[i].empty() && !unique[j].empty() && interval_union_subset(unique[i], unique[j])) {
        linked[i] = linked[j] = true;
      }
    }
  }
  std::vector<IntervalUnion> linked_members;
  std::int64_t q = 1;
  for (std::size_t u = 0; u < unique.size(); ++u) {
    if (!linked[u]) continue;
    linked_members.push_back(unique[u]);
    q = lcm_int(q, unique[u].common_denominator());
  }
  std::int64_t shared = q;
  if (!linked_members.empty() && options.coherence == CoherencePolicy::kPaperWindow) {
    shared = window_modulus(linked_members, q, options.max_fold_modulus);
  }

  std::vector<Built> unique_bases;
  for (std::size_t u = 0; u < unique.size(); ++u) {
    if (unique[u].empty()) {
      unique_bases.push_back(empty_built(1));
    } else if (linked[u]) {
      unique_bases.push_back(sandwich_basis_1d(unique[u], shared, options.strategy, options.max_fold_modulus));
    } else {
      unique_bases.push_back(riesz_basis_1d(unique[u], options.strategy, options.max_fold_modulus));
    }
  }

  CoherentFamily out;
  std::vector<Region> regions;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Built& b = unique_bases[slot[i]];
    regions.push_back(Region::from_intervals(family[i]));
    out.entries.push_back({regions.back(), b.basis, b.trace});
  }
  out.inclusions = region_inclusions(regions);
  out.check();
  return out;
}

PeriodicSet combine_product(std::span<const Piece> xs, std::span<const Piece> ys) {
  if (xs.size() != ys.size()) throw ContractError("combine_product: chains have different lengths");
  if (xs.empty()) throw ContractError("combine_product: empty chains");
  for (std::size_t n = 0; n + 1 < xs.size(); ++n) {
    if (!is_subset(xs[n].basis, xs[n + 1].basis)) {
      throw ContractError("nesting violation: first-factor basis " + std::to_string(n + 1) + " ⊄ basis " +
                          std::to_string(n + 2));
    }
    if (!is_subset(ys[n + 1].basis, ys[n].basis)) {
      throw ContractError("nesting violation: second-factor basis " + std::to_string(n + 2) + " ⊄ basis " +
                          std::to_string(n + 1));
    }
    if (!is_subset(ys[n + 1].region, ys[n].region)) {
      throw ContractError("nesting violation: second-factor region " + std::to_string(n + 2) + " ⊄ region " +
                          std::to_string(n + 1));
    }
  }
  PeriodicSet out = product(xs[0].basis, ys[0].basis);
  for (std::size_t n = 1; n < xs.size(); ++n) out = unite(out, product(xs[n].basis, ys[n].basis));
  return out;
}

PeriodicSet fold_assemble(std::span<const PeriodicSet> pieces, std::int64_t n_mod, std::int64_t first_shift) {
  if (n_mod < 1) throw ContractError("fold modulus must be positive");
  if (pieces.empty()) throw ContractError("fold_assemble: no pieces");
  const std::size_t dim = pieces.front().dim();
  PeriodicSet out = PeriodicSet::empty(dim);
  for (std::size_t n = 0; n < pieces.size(); ++n) {
    const PeriodicSet& piece = pieces[n];
    if (piece.dim() != dim) throw ContractError("fold_assemble: dimension mismatch");
    if (piece.empty()) continue;
    if (piece.moduli()[0] % n_mod != 0) {
      throw ContractError("fold_assemble: first-axis modulus " + std::to_string(piece.moduli()[0]) +
                          " not divisible by N = " + std::to_string(n_mod));
    }
    for (const IntVector& r : piece.residues()) {
      if (r[0] % n_mod != 0) throw ContractError("fold_assemble: piece leaves N Z x Z^(d-1)");
    }
    IntVector offset(dim, 0);
    offset[0] = first_shift + static_cast<std::int64_t>(n);
    out = unite(out, shift(piece, offset));
  }
  return out;
}

CoherentFamily coherent_bases_d(std::span<const Region> family, const BuildOptions& options) {
  const std::vector<Region> members(family.begin(), family.end());
  const std::vector<Built> bases = coherent_d_impl(members, options, 0);
  CoherentFamily out;
  for (std::size_t i = 0; i < members.size(); ++i) out.entries.push_back({members[i], bases[i].basis, bases[i].trace});
  out.inclusions = region_inclusions(members);
  out.check();
  return out;
}

Built riesz_basis_d(const Region& x, const BuildOptions& options) {
  const Region single[] = {x};
  const CoherentFamily fam = coherent_bases_d(single, options);
  return {fam.entries.front().basis, fam.entries.front().trace};
}

}  // namespace rieszbasis
