"""Ground state across excitation blocks, level crossings, perturbative formulas."""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import BracketError, CapExhaustedError, ParameterError
from .model import ModelParams, build_block
from .tridiag import DEFAULT_TOL, lowest_eigenpair

TIE_RTOL = 1e-12
CROSSING_GTOL = 1e-10


@dataclass(frozen=True)
class BlockGroundState:
    k: int
    energy: float
    coeffs: np.ndarray


@dataclass(frozen=True)
class ScanPolicy:
    """Stop rule for the upward scan over blocks.

    The scan stops once k > M, the block energy exceeds the running minimum and
    it has risen for ``rise_run`` consecutive blocks (default: M).  ``k_max``
    defaults to 8 M.
    """

    k_max: int | None = None
    rise_run: int | None = None

    def resolve(self, M):
        k_max = 8 * M if self.k_max is None else int(self.k_max)
        run = M if self.rise_run is None else int(self.rise_run)
        if k_max < 0 or run < 1:
            raise ParameterError("scan policy needs k_max >= 0 and rise_run >= 1")
        return k_max, run


@dataclass(frozen=True)
class GroundStateResult:
    params: ModelParams
    k_star: int
    energy: float
    coeffs: np.ndarray
    scanned_k_max: int
    energies: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class PerturbativePrediction:
    k: int
    energy_pert: float
    valid_regime: bool


@dataclass(frozen=True)
class CrossingTable:
    M: int
    eta: float
    entries: list  # (k, g_exact, g_pert); g_exact is nan where no root was bracketed


def block_ground_energy(params: ModelParams, k: int, tol: float = DEFAULT_TOL) -> BlockGroundState:
    """Lowest eigenpair of block ``k`` with non-negative coefficients."""
    blk = build_block(params, k)
    sol = lowest_eigenpair(blk.diag, blk.sub, tol)
    v = sol.vector
    if v.sum() < 0:
        v = -v
    return BlockGroundState(blk.k, sol.value, v)


def _is_tie(a, b):
    return abs(a - b) <= TIE_RTOL * (1.0 + abs(b))


def find_kstar(params: ModelParams, scan_policy: ScanPolicy | None = None) -> GroundStateResult:
    """Global ground state: argmin over blocks of the lowest block energy.

    Ties within TIE_RTOL go to the smaller k.  Raises CapExhaustedError when
    the cap is reached before the stop rule certifies the minimum.
    """
    k_max, run = (scan_policy or ScanPolicy()).resolve(params.M)
    M = params.M
    energies = []
    best = None
    rises = 0
    prev = None
    for k in range(k_max + 1):
        st = block_ground_energy(params, k)
        e = st.energy
        energies.append(e)
        if best is None or (e < best.energy and not _is_tie(e, best.energy)):
            best = st
        rises = rises + 1 if (prev is not None and e > prev) else 0
        prev = e
        if k > M and e > best.energy and rises >= run:
            return GroundStateResult(params, best.k, best.energy, best.coeffs, k, np.array(energies))
    raise CapExhaustedError(
        f"scan cap k_max={k_max} reached before the block energies turned up "
        f"(M={M}, g={params.g}, eta={params.eta})",
        k_max=k_max,
        best_k=best.k,
    )


def valid_regime(params: ModelParams) -> bool:
    """Heuristic: perturbative formulas trusted for eta <= 0.05 and g sqrt(eta) <= 0.3."""
    return params.eta <= 0.05 and params.g * math.sqrt(params.eta) <= 0.3


def perturbative_energy(params: ModelParams, k: int, printed: bool = True) -> PerturbativePrediction:
    """Second-order energy of block ``k`` in powers of sqrt(eta).

    For k > M the published second-order term is ``-g^2 + M/2``; a direct
    second-order calculation gives ``-g^2 (k - M + 1) + M/2`` instead.  The
    published form is the default, ``printed=False`` selects the other.
    """
    M, g, eta = params.M, params.g, params.eta
    if k <= M:
        e = eta * (k - M / 2 - g * g * k * (1 - (k - 1) / M))
    else:
        coupling = g * g if printed else g * g * (k - M + 1)
        e = k - M + eta * (M / 2 - coupling)
    return PerturbativePrediction(int(k), float(e), valid_regime(params))


def crossing_g_perturbative(M: int, k: int) -> float:
    """g at which blocks k-1 and k cross to second order; inf when none exists."""
    denom = M - 2 * k + 2
    if denom <= 0:
        return math.inf
    return math.sqrt(M / denom)


def kstar_perturbative(params: ModelParams) -> int:
    if params.g <= 0:
        raise ParameterError("kstar_perturbative needs g > 0")
    M = params.M
    x = M / 2 * (1 - 1 / params.g**2)
    # land exactly-on-crossing inputs on the lower step despite rounding
    r = round(x)
    if abs(x - r) < 1e-9:
        x = r
    return int(min(max(math.ceil(x), 0), M))


def _energy_gap(M, eta, k, g):
    p = ModelParams(M, g, eta)
    return block_ground_energy(p, k).energy - block_ground_energy(p, k - 1).energy


def _default_bracket(M, eta, k):
    gp = crossing_g_perturbative(M, k)
    if math.isfinite(gp):
        lo, hi = 0.5 * gp, 1.5 * gp
        if _energy_gap(M, eta, k, lo) > 0 and _energy_gap(M, eta, k, hi) <= 0:
            return lo, hi
        top = hi
    else:
        top = 4.0 * math.sqrt(M) + 4.0
    # crossings never precede g = 1; walk a coarse grid for the first sign change
    grid = np.linspace(0.5, top, 200)
    prev = grid[0]
    if _energy_gap(M, eta, k, prev) <= 0:
        raise BracketError(f"blocks {k - 1} and {k} already crossed at g={prev}")
    for gv in grid[1:]:
        if _energy_gap(M, eta, k, gv) <= 0:
            return prev, gv
        prev = gv
    raise BracketError(f"no crossing of blocks {k - 1} and {k} found for g <= {top:.4g}")


def find_crossing(M: int, eta: float, k: int, bracket=None, gtol: float = CROSSING_GTOL) -> float:
    """Coupling where the lowest energies of blocks k-1 and k coincide.

    Plain bisection on E_k - E_{k-1}.  The returned g is the lower end of the
    final bracket, so block k-1 is still (weakly) below block k there.
    """
    if k < 1:
        raise ParameterError("crossing index k must be >= 1")
    ModelParams(M, 0.0, eta)
    if bracket is None:
        lo, hi = _default_bracket(M, eta, k)
    else:
        lo, hi = map(float, bracket)
        if not 0 <= lo < hi:
            raise BracketError(f"invalid bracket {bracket!r}")
    f_lo = _energy_gap(M, eta, k, lo)
    f_hi = _energy_gap(M, eta, k, hi)
    if f_lo < 0 or f_hi > 0 or (f_lo == 0 and f_hi == 0):
        raise BracketError(
            f"E_{k}-E_{k - 1} does not change sign on [{lo}, {hi}] ({f_lo:.3g}, {f_hi:.3g})"
        )
    while hi - lo > gtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _energy_gap(M, eta, k, mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo


def crossing_table(M: int, eta: float, k_from: int = 1, k_to: int | None = None) -> CrossingTable:
    if k_to is None:
        k_to = (M + 1) // 2
    entries = []
    for k in range(k_from, k_to + 1):
        try:
            ge = find_crossing(M, eta, k)
        except BracketError:
            ge = math.nan
        entries.append((k, ge, crossing_g_perturbative(M, k)))
    return CrossingTable(M, float(eta), entries)


def staircase(M: int, eta: float, g_grid, scan_policy: ScanPolicy | None = None):
    """(g, k*) pairs along ``g_grid``; k* is None where the scan cap was hit."""
    g_grid = [float(g) for g in g_grid]
    if any(b < a for a, b in zip(g_grid, g_grid[1:])):
        raise ParameterError("g_grid must be sorted ascending")
    out = []
    for g in g_grid:
        try:
            out.append((g, find_kstar(ModelParams(M, g, eta), scan_policy).k_star))
        except CapExhaustedError:
            out.append((g, None))
    return out
