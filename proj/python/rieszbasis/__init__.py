"""Exponential Riesz bases for finite unions of rational axis-parallel boxes.

Rationals are passed in as ``int``, ``str`` ("3/4") or ``fractions.Fraction``
and come back as ``Fraction``.
"""

from fractions import Fraction

try:
    from . import _rieszbasis as _core
except ImportError:  # build-tree layout, extension next to the package
    import _rieszbasis as _core

Region = _core.Region
PeriodicSet = _core.PeriodicSet
Error = _core.Error
ParseError = _core.ParseError
CapError = _core.CapError
ContractError = _core.ContractError

exact_riesz_bounds = _core.exact_riesz_bounds
dft_submatrix = _core.dft_submatrix
grid_cells = _core.grid_cells
gram_matrix = _core.gram_matrix
gram_truncation_sweep = _core.gram_truncation_sweep
dual_complement_check = _core.dual_complement_check
brute_force_selection_search = _core.brute_force_selection_search
universal_row_selection_check = _core.universal_row_selection_check
fold_1d_region = _core.fold_1d_region
complement = _core.region_complement
is_subset = _core.region_is_subset

__version__ = "0.1.0"


def _text(x):
    if isinstance(x, str):
        return x
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def region(boxes, dim=None):
    """Builds a Region from boxes given as sequences of (lo, hi) pairs."""
    boxes = [list(b) for b in boxes]
    if dim is None:
        if not boxes:
            raise ValueError("dim is required for an empty region")
        dim = len(boxes[0])
    return Region(dim, [[(_text(lo), _text(hi)) for lo, hi in b] for b in boxes])


def measure(r):
    return Fraction(r.measure())


def density(s):
    return Fraction(s.density())


def riesz_basis(r, strategy="paper", max_fold_modulus=0):
    """Returns (PeriodicSet, trace summary) for a Riesz basis of L^2(r)."""
    return _core.riesz_basis(r, strategy, max_fold_modulus)


def coherent_bases(family, strategy="paper", max_fold_modulus=0, coherence="aligned"):
    """Returns (bases, inclusions); region inclusion i <= j implies bases[i] <= bases[j]."""
    return _core.coherent_bases(list(family), strategy, max_fold_modulus, coherence)


def density_check(r, s):
    d = _core.density_check(r, s)
    return {"ok": d["ok"], "density": Fraction(d["density"]), "measure": Fraction(d["measure"])}


def run_cli(*args):
    """Runs the command-line tool in process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
