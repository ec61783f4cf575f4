#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rieszbasis/interval_union.hpp"
#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/region.hpp"
#include "rieszbasis/trace.hpp"

namespace rieszbasis {

/// How a frequency set is produced.
///
/// kDirect folds every axis by its common denominator, so every folded set
/// is full or empty and the result is an initial residue block per fiber.
/// kPaper runs the recursive construction: cyclic rotation to an interval,
/// folding with a modulus that lowers the component count, product assembly
/// over step decompositions, and coherent recursion in lower dimension.
enum class Strategy { kDirect, kPaper };

/// Shared modulus used for 1-D coherent families.
///
/// kAligned takes the lcm of the members' denominators, the smallest modulus
/// at which every member is a union of whole cells. kPaperWindow additionally
/// enlarges it until N > 4L / min|X_j \ X_i| and the residue windows
/// m_i + 2L_i < m_j - 2L_j separate every included pair.
enum class CoherencePolicy { kAligned, kPaperWindow };

struct BuildOptions {
  Strategy strategy = Strategy::kPaper;
  /// Upper bound for modulus searches; 0 selects the default
  /// (10 x denominator for folds, a bound that always succeeds for windows).
  std::int64_t max_fold_modulus = 0;
  CoherencePolicy coherence = CoherencePolicy::kAligned;
};

struct Built {
  PeriodicSet basis;
  TracePtr trace;
};

/// A region paired with a frequency set; input to combine_product.
struct Piece {
  Region region;
  PeriodicSet basis;
};

struct CoherentEntry {
  Region region;
  PeriodicSet basis;
  TracePtr trace;
};

/// Frequency sets for a family of regions such that region inclusion implies
/// frequency-set inclusion.
struct CoherentFamily {
  std::vector<CoherentEntry> entries;
  std::vector<std::pair<std::size_t, std::size_t>> inclusions;  // (i, j): region_i ⊆ region_j

  /// Throws ContractError naming the first broken invariant (inclusion not
  /// mirrored by the bases, or density != measure).
  void check() const;
};

/// {0, ..., m-1} + N Z with m = N * length.
PeriodicSet base_interval_basis(const Rational& length, std::int64_t modulus);

/// Smallest N in [2, cap] whose folds of x all have at most L-1 cyclic
/// components, L being the cyclic component count of x (must be >= 2).
/// cap = 0 selects 10 x common denominator.
std::int64_t choose_fold_modulus(const IntervalUnion& x, std::int64_t cap = 0);

Built riesz_basis_1d(const IntervalUnion& x, Strategy strategy = Strategy::kPaper, std::int64_t cap = 0);

/// Folds x by N and assigns N Z to full folds, nothing to empty folds and a
/// recursive basis to the others, with 0-based shifts. When m/N <= |x| <
/// (m+1)/N the result lies between ⋃_{n<m-2L}(NZ+n) and ⋃_{n<=m+2L}(NZ+n).
Built sandwich_basis_1d(const IntervalUnion& x, std::int64_t n_mod, Strategy strategy = Strategy::kPaper,
                        std::int64_t cap = 0);

CoherentFamily coherent_bases_1d(std::span<const IntervalUnion> family, const BuildOptions& options = {});

/// ⋃_n product(xs[n].basis, ys[n].basis). Requires xs bases increasing and
/// ys bases (and regions) decreasing; violations name the offending index.
PeriodicSet combine_product(std::span<const Piece> xs, std::span<const Piece> ys);

/// ⋃_n shift(pieces[n-1], (first_shift + n - 1, 0, ..., 0)); every piece
/// must have first-axis modulus divisible by N.
PeriodicSet fold_assemble(std::span<const PeriodicSet> pieces, std::int64_t n_mod, std::int64_t first_shift = 1);

CoherentFamily coherent_bases_d(std::span<const Region> family, const BuildOptions& options = {});

Built riesz_basis_d(const Region& x, const BuildOptions& options = {});

}  // namespace rieszbasis
