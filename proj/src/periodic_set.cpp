#include "rieszbasis/periodic_set.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

std::int64_t volume_of(const IntVector& moduli) {
  std::int64_t v = 1;
  for (std::int64_t m : moduli) {
    if (__builtin_mul_overflow(v, m, &v) || v > kMaxPeriodVolume) {
      throw CapError("periodic set needs more than " + std::to_string(kMaxPeriodVolume) + " residue cells");
    }
  }
  return v;
}

IntVector unflatten(std::int64_t flat, const IntVector& moduli) {
  IntVector r(moduli.size());
  for (std::size_t k = moduli.size(); k-- > 0;) {
    r[k] = flat % moduli[k];
    flat /= moduli[k];
  }
  return r;
}

std::int64_t flatten(std::span<const std::int64_t> r, const IntVector& moduli) {
  std::int64_t flat = 0;
  for (std::size_t k = 0; k < moduli.size(); ++k) flat = flat * moduli[k] + r[k];
  return flat;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require_same_dim(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.dim() != b.dim()) {
    throw ContractError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

IntVector lcm_moduli(const PeriodicSet& a, const PeriodicSet& b) {
  IntVector out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) out[k] = lcm_int(a.moduli()[k], b.moduli()[k]);
  return out;
}

// True iff shifting by `step` along `axis` maps the set onto itself.
bool invariant_under(const std::vector<std::int64_t>& flat, const IntVector& moduli, std::size_t axis,
                     std::int64_t step) {
  for (std::int64_t f : flat) {
    IntVector r = unflatten(f, moduli);
    r[axis] = (r[axis] + step) % moduli[axis];
    if (!std::binary_search(flat.begin(), flat.end(), flatten(r, moduli))) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PeriodicSet::PeriodicSet() : moduli_{1} {}

PeriodicSet::PeriodicSet(IntVector moduli, const std::vector<IntVector>& residues) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw ContractError("periodic set needs dimension >= 1");
  for (std::int64_t m : moduli_) {
    if (m < 1) throw ContractError("moduli must be positive");
  }
  volume_of(moduli_);
  flat_.reserve(residues.size());
  for (const IntVector& r : residues) {
    if (r.size() != moduli_.size()) throw ContractError("residue tuple has wrong dimension");
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] < 0 || r[k] >= moduli_[k]) {
        throw ContractError("residue " + std::to_string(r[k]) + " outside [0, " + std::to_string(moduli_[k]) + ")");
      }
    }
    flat_.push_back(flatten(r, moduli_));
  }
  std::sort(flat_.begin(), flat_.end());
  flat_.erase(std::unique(flat_.begin(), flat_.end()), flat_.end());
}

PeriodicSet PeriodicSet::from_flat(IntVector moduli, std::vector<std::int64_t> sorted_flat) {
  PeriodicSet s;
  s.moduli_ = std::move(moduli);
  s.flat_ = std::move(sorted_flat);
  return s;
}

PeriodicSet PeriodicSet::empty(std::size_t dim) { return from_flat(IntVector(dim, 1), {}); }

PeriodicSet PeriodicSet::lattice(std::size_t dim) { return from_flat(IntVector(dim, 1), {0}); }

PeriodicSet PeriodicSet::progression(std::int64_t modulus, const IntVector& residues) {
  std::vector<IntVector> tuples;
  for (std::int64_t r : residues) tuples.push_back({r});
  return PeriodicSet({modulus}, tuples);
}

PeriodicSet PeriodicSet::initial_block(std::int64_t modulus, std::int64_t count) {
  if (count < 0 || count > modulus) throw ContractError("initial block size outside [0, modulus]");
  std::vector<std::int64_t> flat(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) flat[static_cast<std::size_t>(r)] = r;
  return from_flat({modulus}, std::move(flat));
}

std::int64_t PeriodicSet::period_volume() const { return volume_of(moduli_); }

std::vector<IntVector> PeriodicSet::residues() const {
  std::vector<IntVector> out;
  out.reserve(flat_.size());
  for (std::int64_t f : flat_) out.push_back(unflatten(f, moduli_));
  return out;
}

bool PeriodicSet::contains(std::span<const std::int64_t> point) const {
  if (point.size() != dim()) throw ContractError("point dimension mismatch");
  IntVector r(dim());
  for (std::size_t k = 0; k < dim(); ++k) r[k] = mod_floor(point[k], moduli_[k]);
  return std::binary_search(flat_.begin(), flat_.end(), flatten(r, moduli_));
}

Rational PeriodicSet::density() const {
  return Rational(static_cast<std::int64_t>(flat_.size()), period_volume());
}

bool operator==(const PeriodicSet& a, const PeriodicSet& b) {
  if (a.dim() != b.dim()) return false;
  const IntVector m = lcm_moduli(a, b);
  return refine(a, m).flat_residues() == refine(b, m).flat_residues();
}

PeriodicSet refine(const PeriodicSet& a, std::span<const std::int64_t> target) {
  if (target.size() != a.dim()) throw ContractError("dimension mismatch in refine");
  IntVector moduli(target.begin(), target.end());
  IntVector factor(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (moduli[k] < 1 || moduli[k] % a.moduli()[k] != 0) throw ContractError("incompatible refinement");
    factor[k] = moduli[k] / a.moduli()[k];
  }
  if (moduli == a.moduli()) return a;
  volume_of(moduli);

  std::vector<std::int64_t> flat;
  flat.reserve(a.residue_count() * static_cast<std::size_t>(volume_of(moduli) / a.period_volume()));
  IntVector lift(a.dim());
  for (const IntVector& r : a.residues()) {
    std::fill(lift.begin(), lift.end(), 0);
    while (true) {
      IntVector x(a.dim());
      for (std::size_t k = 0; k < a.dim(); ++k) x[k] = r[k] + lift[k] * a.moduli()[k];
      flat.push_back(flatten(x, moduli));
      std::size_t k = a.dim();
      while (k-- > 0) {
        if (++lift[k] < factor[k]) break;
        lift[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  std::sort(flat.begin(), flat.end());
  return PeriodicSet::from_flat(std::move(moduli), std::move(flat));
}

PeriodicSet canonicalize(const PeriodicSet& a) {
  if (a.empty()) return PeriodicSet::empty(a.dim());
  IntVector moduli = a.moduli();
  std::vector<std::int64_t> flat = a.flat_residues();
  for (std::size_t axis = 0; axis < moduli.size(); ++axis) {
    for (std::int64_t p : prime_factors(moduli[axis])) {
      while (moduli[axis] % p == 0 && invariant_under(flat, moduli, axis, moduli[axis] / p)) {
        IntVector reduced = moduli;
        reduced[axis] /= p;
        std::vector<std::int64_t> next;
        for (std::int64_t f : flat) {
          const IntVector r = unflatten(f, moduli);
          if (r[axis] < reduced[axis]) next.push_back(flatten(r, reduced));
        }
        std::sort(next.begin(), next.end());
        moduli = std::move(reduced);
        flat = std::move(next);
      }
    }
  }
  return PeriodicSet::from_flat(std::move(moduli), std::move(flat));
}

PeriodicSet unite(const PeriodicSet& a, const PeriodicSet& b) {
  require_same_dim(a, b);
  const IntVector m = lcm_moduli(a, b);
  const PeriodicSet x = refine(a, m), y = refine(b, m);
  std::vector<std::int64_t> out;
  std::set_union(x.flat_residues().begin(), x.flat_residues().end(), y.flat_residues().begin(),
                 y.flat_residues().end(), std::back_inserter(out));
  return canonicalize(PeriodicSet::from_flat(m, std::move(out)));
}

PeriodicSet intersect(const PeriodicSet& a, const PeriodicSet& b) {
  require_same_dim(a, b);
  const IntVector m = lcm_moduli(a, b);
  const PeriodicSet x = refine(a, m), y = refine(b, m);
  std::vector<std::int64_t> out;
  std::set_intersection(x.flat_residues().begin(), x.flat_residues().end(), y.flat_residues().begin(),
                        y.flat_residues().end(), std::back_inserter(out));
  return canonicalize(PeriodicSet::from_flat(m, std::move(out)));
}

PeriodicSet minus(const PeriodicSet& a, const PeriodicSet& b) {
  require_same_dim(a, b);
  const IntVector m = lcm_moduli(a, b);
  const PeriodicSet x = refine(a, m), y = refine(b, m);
  std::vector<std::int64_t> out;
  std::set_difference(x.flat_residues().begin(), x.flat_residues().end(), y.flat_residues().begin(),
                      y.flat_residues().end(), std::back_inserter(out));
  return canonicalize(PeriodicSet::from_flat(m, std::move(out)));
}

PeriodicSet complement(const PeriodicSet& a) {
  const std::int64_t vol = a.period_volume();
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(vol) - a.residue_count());
  auto it = a.flat_residues().begin();
  for (std::int64_t f = 0; f < vol; ++f) {
    if (it != a.flat_residues().end() && *it == f) {
      ++it;
    } else {
      out.push_back(f);
    }
  }
  return canonicalize(PeriodicSet::from_flat(a.moduli(), std::move(out)));
}

PeriodicSet product(const PeriodicSet& a, const PeriodicSet& b) {
  IntVector m = a.moduli();
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  const std::int64_t bvol = b.period_volume();
  volume_of(m);
  std::vector<std::int64_t> out;
  out.reserve(a.residue_count() * b.residue_count());
  for (std::int64_t fa : a.flat_residues()) {
    for (std::int64_t fb : b.flat_residues()) out.push_back(fa * bvol + fb);
  }
  return canonicalize(PeriodicSet::from_flat(std::move(m), std::move(out)));
}

PeriodicSet shift(const PeriodicSet& a, std::span<const std::int64_t> v) {
  if (v.size() != a.dim()) throw ContractError("dimension mismatch in shift");
  std::vector<std::int64_t> out;
  out.reserve(a.residue_count());
  for (IntVector r : a.residues()) {
    for (std::size_t k = 0; k < a.dim(); ++k) r[k] = mod_floor(r[k] + v[k], a.moduli()[k]);
    out.push_back(flatten(r, a.moduli()));
  }
  std::sort(out.begin(), out.end());
  return canonicalize(PeriodicSet::from_flat(a.moduli(), std::move(out)));
}

PeriodicSet scale_axis(const PeriodicSet& a, std::size_t axis, std::int64_t factor) {
  if (axis >= a.dim()) throw ContractError("scale_axis: axis out of range");
  if (factor < 1) throw ContractError("scale_axis: factor must be >= 1");
  IntVector m = a.moduli();
  m[axis] *= factor;
  volume_of(m);
  std::vector<std::int64_t> out;
  out.reserve(a.residue_count());
  for (IntVector r : a.residues()) {
    r[axis] *= factor;
    out.push_back(flatten(r, m));
  }
  std::sort(out.begin(), out.end());
  return canonicalize(PeriodicSet::from_flat(std::move(m), std::move(out)));
}

bool is_subset(const PeriodicSet& a, const PeriodicSet& b) {
  require_same_dim(a, b);
  const IntVector m = lcm_moduli(a, b);
  const PeriodicSet x = refine(a, m), y = refine(b, m);
  return std::includes(y.flat_residues().begin(), y.flat_residues().end(), x.flat_residues().begin(),
                       x.flat_residues().end());
}

std::vector<IntVector> enumerate_box(const PeriodicSet& a, std::span<const std::int64_t> lo,
                                     std::span<const std::int64_t> hi) {
  if (lo.size() != a.dim() || hi.size() != a.dim()) throw ContractError("dimension mismatch in enumerate_box");
  std::vector<IntVector> out;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (hi[k] < lo[k]) return out;
  }
  IntVector p(lo.begin(), lo.end());
  while (true) {
    if (a.contains(p)) out.push_back(p);
    std::size_t k = a.dim();
    while (k-- > 0) {
      if (++p[k] <= hi[k]) break;
      p[k] = lo[k];
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace rieszbasis
