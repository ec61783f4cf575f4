#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rieszbasis/periodic_set.hpp"
#include "rieszbasis/rational.hpp"
#include "rieszbasis/region.hpp"

namespace rieszbasis {

inline constexpr double kDefaultTolerance = 1e-9;

enum class Verdict { kRieszBasis, kFrameOnly, kRieszSequenceOnly, kNeither };

std::string to_string(Verdict v);

/// Riesz-bound evidence for a grid-aligned pair (S, Sigma).
///
/// With cells C of S and residues R of Sigma on the grid M, the system e(Sigma)
/// on S is unitarily equivalent to the character submatrix A = dft_submatrix(M, C, R)
/// scaled by 1/sqrt(prod M). Hence the Riesz-sequence lower bound is
/// sigma_min(A)^2 / prod M when |R| <= |C| (else 0), the frame lower bound is the
/// same quantity when |C| <= |R| (else 0), and the upper bound is sigma_max^2 / prod M.
struct SpectralReport {
  Verdict verdict = Verdict::kNeither;
  double lower_bound = 0;     // min(sequence_bound, frame_bound)
  double upper_bound = 0;
  double sequence_bound = 0;  // lower Riesz-sequence constant
  double frame_bound = 0;     // lower frame constant
  double condition = 0;       // sigma_max / sigma_min, infinity when singular
  double sigma_min = 0;       // min(|C|, |R|)-th singular value of A
  std::size_t cell_count = 0;
  std::size_t residue_count = 0;
  IntVector moduli;
  std::vector<double> sigma_values;  // descending
  double tolerance = kDefaultTolerance;

  bool is_frame() const { return frame_bound > tolerance; }
  bool is_riesz_sequence() const { return sequence_bound > tolerance; }
};

struct GramSweep {
  std::vector<std::int64_t> radii;
  std::vector<std::size_t> sizes;
  std::vector<double> min_eigenvalue;
  std::vector<double> max_eigenvalue;
  /// Every eigenvalue of every section, ascending per radius.
  std::vector<std::vector<double>> eigenvalues;
};

struct DualReport {
  SpectralReport primary;
  SpectralReport complement;
  Region complement_region;
  PeriodicSet complement_basis;
  /// primary frame <=> complement Riesz sequence, and primary Riesz
  /// sequence <=> complement frame.
  bool consistent = false;
};

struct DensityCheck {
  bool ok = false;
  Rational density;
  Rational measure;
};

struct Selection {
  std::vector<IntVector> residues;
  double sigma_min = 0;
};

struct RowSelectionWitness {
  std::vector<IntVector> rows;
  std::vector<IntVector> columns;  // a column set on which the rows are singular
};

struct UniversalRowCheck {
  bool universal = false;
  std::vector<IntVector> rows;  // first universal row set, when one exists
  std::vector<RowSelectionWitness> witnesses;  // one per failing row set (all of them when not universal)
};

/// Cells of the grid with side 1/M_k covered by r. Throws ContractError when r
/// is not a union of such cells.
std::vector<IntVector> grid_cells(const Region& r, std::span<const std::int64_t> moduli);

/// Entries exp(2 pi i sum_k c_k r_k / M_k) for c in cells (rows), r in residues (columns).
Eigen::MatrixXcd dft_submatrix(std::span<const std::int64_t> moduli, const std::vector<IntVector>& cells,
                               const std::vector<IntVector>& residues);

/// Uses the grid lcm(common_denominator(s), moduli(sigma)).
SpectralReport exact_riesz_bounds(const Region& s, const PeriodicSet& sigma, double tolerance = kDefaultTolerance);
/// Uses the given grid; s must be aligned to it and sigma's moduli must divide it.
SpectralReport exact_riesz_bounds(const Region& s, const PeriodicSet& sigma, std::span<const std::int64_t> moduli,
                                  double tolerance = kDefaultTolerance);

/// G_{lambda,mu} = integral over s of exp(2 pi i <lambda - mu, x>) dx, in closed form.
Eigen::MatrixXcd gram_matrix(const Region& s, const std::vector<IntVector>& freqs);

/// Eigenvalues of gram_matrix over the members of sigma in [-R, R]^d per radius R.
GramSweep gram_truncation_sweep(const Region& s, const PeriodicSet& sigma, std::span<const std::int64_t> radii);

DualReport dual_complement_check(const Region& s, const PeriodicSet& sigma, double tolerance = kDefaultTolerance);

DensityCheck density_check(const Region& s, const PeriodicSet& sigma);

/// Every residue set R with |R| = |C| whose submatrix has sigma_min > tolerance,
/// in lexicographic order of R. Throws CapError when more than
/// `max_candidates` sets would be examined.
std::vector<Selection> brute_force_selection_search(std::span<const std::int64_t> moduli,
                                                    const std::vector<IntVector>& cells,
                                                    double tolerance = kDefaultTolerance,
                                                    std::size_t max_candidates = 200000);

/// Looks for one n-row set of the character table of Z_{M_1} x ... x Z_{M_d}
/// that is invertible against every n-column set.
UniversalRowCheck universal_row_selection_check(std::span<const std::int64_t> moduli, std::size_t size,
                                                double tolerance = kDefaultTolerance,
                                                std::size_t max_pairs = 2000000);

}  // namespace rieszbasis
