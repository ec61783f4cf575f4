#include "rieszbasis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

using Complex = std::complex<double>;

// exp(2 pi i * num / den) with the numerator reduced first.
Complex unit_root(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// exp(2 pi i n x) for integer n and rational x.
Complex exp_at(std::int64_t n, const Rational& x) {
  const std::int64_t den = x.denominator();
  const std::int64_t num = ((x.numerator() % den) * (n % den)) % den;
  return unit_root(num, den);
}

// Integral of exp(2 pi i n t) over [lo, hi).
Complex segment_integral(std::int64_t n, const Interval& iv) {
  if (n == 0) return {to_double(iv.length()), 0.0};
  const Complex diff = exp_at(n, iv.hi) - exp_at(n, iv.lo);
  return diff / Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(n));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t universe) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < universe - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// C(n, k), saturating at `limit + 1`.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (value > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::size_t>(std::llround(value));
}

std::vector<IntVector> all_tuples(std::span<const std::int64_t> moduli) {
  const PeriodicSet full = refine(PeriodicSet::lattice(moduli.size()), moduli);
  return full.residues();
}

std::int64_t volume(std::span<const std::int64_t> moduli) {
  std::int64_t v = 1;
  for (std::int64_t m : moduli) {
    if (m < 1) throw ContractError("moduli must be positive");
    v *= m;
    if (v > kMaxPeriodVolume) throw CapError("grid too large");
  }
  return v;
}

double min_singular_value(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kRieszBasis:
      return "riesz_basis";
    case Verdict::kFrameOnly:
      return "frame_only";
    case Verdict::kRieszSequenceOnly:
      return "riesz_sequence_only";
    case Verdict::kNeither:
      return "neither";
  }
  return "neither";
}

std::vector<IntVector> grid_cells(const Region& r, std::span<const std::int64_t> moduli) {
  if (moduli.size() != r.dim()) throw ContractError("grid dimension mismatch");
  std::vector<IntVector> out;
  for (const Box& b : r.boxes()) {
    IntVector lo(r.dim()), hi(r.dim());
    for (std::size_t k = 0; k < r.dim(); ++k) {
      const Rational a = b[k].lo * Rational(moduli[k]);
      const Rational z = b[k].hi * Rational(moduli[k]);
      if (a.denominator() != 1 || z.denominator() != 1) {
        throw ContractError("non-grid-aligned region: endpoint " + to_string(a.denominator() != 1 ? b[k].lo : b[k].hi) +
                            " is not a multiple of 1/" + std::to_string(moduli[k]));
      }
      lo[k] = a.numerator();
      hi[k] = z.numerator() - 1;
    }
    const PeriodicSet lattice = PeriodicSet::lattice(r.dim());
    for (IntVector& c : enumerate_box(lattice, lo, hi)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXcd dft_submatrix(std::span<const std::int64_t> moduli, const std::vector<IntVector>& cells,
                               const std::vector<IntVector>& residues) {
  std::int64_t common = 1;
  for (std::int64_t m : moduli) common = lcm_int(common, m);
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(residues.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < residues.size(); ++j) {
      std::int64_t num = 0;
      for (std::size_t k = 0; k < moduli.size(); ++k) {
        const std::int64_t term = (cells[i][k] * residues[j][k]) % moduli[k];
        num = (num + term * (common / moduli[k])) % common;
      }
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = unit_root(num, common);
    }
  }
  return a;
}

SpectralReport exact_riesz_bounds(const Region& s, const PeriodicSet& sigma, double tolerance) {
  if (s.dim() != sigma.dim()) throw ContractError("dimension mismatch between region and frequency set");
  IntVector moduli = common_denominator(s);
  for (std::size_t k = 0; k < moduli.size(); ++k) moduli[k] = lcm_int(moduli[k], sigma.moduli()[k]);
  return exact_riesz_bounds(s, sigma, moduli, tolerance);
}

SpectralReport exact_riesz_bounds(const Region& s, const PeriodicSet& sigma, std::span<const std::int64_t> moduli,
                                  double tolerance) {
  if (s.dim() != sigma.dim() || moduli.size() != s.dim()) {
    throw ContractError("dimension mismatch between region, frequency set and grid");
  }
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    if (moduli[k] < 1 || moduli[k] % sigma.moduli()[k] != 0) {
      throw ContractError("incompatible grid: frequency modulus " + std::to_string(sigma.moduli()[k]) +
                          " does not divide " + std::to_string(moduli[k]));
    }
  }
  const double vol = static_cast<double>(volume(moduli));
  const std::vector<IntVector> cells = grid_cells(s, moduli);
  const std::vector<IntVector> residues = refine(sigma, moduli).residues();

  SpectralReport rep;
  rep.tolerance = tolerance;
  rep.moduli.assign(moduli.begin(), moduli.end());
  rep.cell_count = cells.size();
  rep.residue_count = residues.size();

  if (cells.empty() || residues.empty()) {
    // Degenerate systems: L^2(S) = {0} or no vectors at all.
    rep.sequence_bound = residues.empty() ? 1.0 : 0.0;
    rep.frame_bound = cells.empty() ? 1.0 : 0.0;
    rep.upper_bound = (cells.empty() && residues.empty()) ? 1.0 : 0.0;
    rep.sigma_min = 0;
    rep.condition = (cells.empty() && residues.empty()) ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    const Eigen::MatrixXcd a = dft_submatrix(moduli, cells, residues);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const Eigen::VectorXd& sv = svd.singularValues();
    rep.sigma_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    rep.sigma_min = smin;
    const double low = smin * smin / vol;
    rep.sequence_bound = residues.size() <= cells.size() ? low : 0.0;
    rep.frame_bound = cells.size() <= residues.size() ? low : 0.0;
    rep.upper_bound = smax * smax / vol;
    rep.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  }
  rep.lower_bound = std::min(rep.sequence_bound, rep.frame_bound);
  if (rep.is_frame() && rep.is_riesz_sequence()) {
    rep.verdict = Verdict::kRieszBasis;
  } else if (rep.is_frame()) {
    rep.verdict = Verdict::kFrameOnly;
  } else if (rep.is_riesz_sequence()) {
    rep.verdict = Verdict::kRieszSequenceOnly;
  } else {
    rep.verdict = Verdict::kNeither;
  }
  return rep;
}

Eigen::MatrixXcd gram_matrix(const Region& s, const std::vector<IntVector>& freqs) {
  const auto n = static_cast<Eigen::Index>(freqs.size());
  Eigen::MatrixXcd g(n, n);
  IntVector diff(s.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const auto& a = freqs[static_cast<std::size_t>(i)];
      const auto& b = freqs[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < s.dim(); ++k) diff[k] = a[k] - b[k];
      Complex entry(0, 0);
      for (const Box& box : s.boxes()) {
        Complex term(1, 0);
        for (std::size_t k = 0; k < s.dim(); ++k) term *= segment_integral(diff[k], box[k]);
        entry += term;
      }
      g(i, j) = entry;
      g(j, i) = std::conj(entry);
    }
  }
  return g;
}

GramSweep gram_truncation_sweep(const Region& s, const PeriodicSet& sigma, std::span<const std::int64_t> radii) {
  if (s.dim() != sigma.dim()) throw ContractError("dimension mismatch between region and frequency set");
  GramSweep sweep;
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (r > 0 && radii[r] <= radii[r - 1]) throw ContractError("sweep radii must increase");
    const IntVector lo(s.dim(), -radii[r]);
    const IntVector hi(s.dim(), radii[r]);
    const auto freqs = enumerate_box(sigma, lo, hi);
    sweep.radii.push_back(radii[r]);
    sweep.sizes.push_back(freqs.size());
    if (freqs.empty()) {
      sweep.min_eigenvalue.push_back(0);
      sweep.max_eigenvalue.push_back(0);
      sweep.eigenvalues.emplace_back();
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram_matrix(s, freqs), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    sweep.min_eigenvalue.push_back(ev(0));
    sweep.max_eigenvalue.push_back(ev(ev.size() - 1));
    sweep.eigenvalues.emplace_back(ev.data(), ev.data() + ev.size());
  }
  return sweep;
}

DualReport dual_complement_check(const Region& s, const PeriodicSet& sigma, double tolerance) {
  if (s.dim() != sigma.dim()) throw ContractError("dimension mismatch between region and frequency set");
  IntVector moduli = common_denominator(s);
  for (std::size_t k = 0; k < moduli.size(); ++k) moduli[k] = lcm_int(moduli[k], sigma.moduli()[k]);

  DualReport out;
  out.primary = exact_riesz_bounds(s, sigma, moduli, tolerance);
  out.complement_region = complement(s);
  out.complement_basis = complement(refine(sigma, moduli));
  out.complement = exact_riesz_bounds(out.complement_region, out.complement_basis, moduli, tolerance);
  out.consistent = out.primary.is_frame() == out.complement.is_riesz_sequence() &&
                   out.primary.is_riesz_sequence() == out.complement.is_frame();
  return out;
}

DensityCheck density_check(const Region& s, const PeriodicSet& sigma) {
  DensityCheck out;
  out.density = sigma.density();
  out.measure = s.measure();
  out.ok = out.density == out.measure;
  return out;
}

std::vector<Selection> brute_force_selection_search(std::span<const std::int64_t> moduli,
                                                    const std::vector<IntVector>& cells, double tolerance,
                                                    std::size_t max_candidates) {
  const auto universe = static_cast<std::size_t>(volume(moduli));
  const std::size_t k = cells.size();
  if (k == 0 || k > universe) throw ContractError("cell set must be nonempty and fit in the grid");
  if (binomial_capped(universe, k, max_candidates) > max_candidates) {
    throw CapError("enumeration bound exceeded: more than " + std::to_string(max_candidates) + " residue sets");
  }
  const std::vector<IntVector> tuples = all_tuples(moduli);
  const Eigen::MatrixXcd table = dft_submatrix(moduli, cells, tuples);

  std::vector<Selection> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  do {
    Eigen::MatrixXcd sub(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) sub.col(static_cast<Eigen::Index>(j)) = table.col(static_cast<Eigen::Index>(idx[j]));
    const double smin = min_singular_value(sub);
    if (smin > tolerance) {
      Selection sel;
      for (std::size_t j : idx) sel.residues.push_back(tuples[j]);
      sel.sigma_min = smin;
      out.push_back(std::move(sel));
    }
  } while (next_combination(idx, universe));
  return out;
}

UniversalRowCheck universal_row_selection_check(std::span<const std::int64_t> moduli, std::size_t size,
                                                double tolerance, std::size_t max_pairs) {
  const auto universe = static_cast<std::size_t>(volume(moduli));
  if (size == 0 || size > universe) throw ContractError("selection size must lie in [1, |grid|]");
  const std::size_t sets = binomial_capped(universe, size, max_pairs);
  if (sets > max_pairs || sets * sets > max_pairs) {
    throw CapError("enumeration bound exceeded: more than " + std::to_string(max_pairs) + " row/column pairs");
  }
  const std::vector<IntVector> tuples = all_tuples(moduli);
  const Eigen::MatrixXcd table = dft_submatrix(moduli, tuples, tuples);

  UniversalRowCheck out;
  std::vector<std::size_t> rows(size);
  for (std::size_t i = 0; i < size; ++i) rows[i] = i;
  do {
    std::vector<std::size_t> cols(size);
    for (std::size_t i = 0; i < size; ++i) cols[i] = i;
    bool failed = false;
    do {
      Eigen::MatrixXcd sub(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
          sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              table(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
        }
      }
      if (min_singular_value(sub) <= tolerance) {
        RowSelectionWitness w;
        for (std::size_t r : rows) w.rows.push_back(tuples[r]);
        for (std::size_t c : cols) w.columns.push_back(tuples[c]);
        out.witnesses.push_back(std::move(w));
        failed = true;
        break;
      }
    } while (next_combination(cols, universe));
    if (!failed) {
      out.universal = true;
      for (std::size_t r : rows) out.rows.push_back(tuples[r]);
      return out;
    }
  } while (next_combination(rows, universe));
  return out;
}

}  // namespace rieszbasis
