"""Lowest eigenpair of real symmetric tridiagonal matrices.

The matrix is described by its diagonal ``diag`` (length d) and its
sub-diagonal ``sub`` (length d-1).  The extreme eigenvalue is isolated by
Sturm-sequence bisection and the eigenvector is obtained by shifted inverse
iteration from just below the eigenvalue, where ``T - sigma I`` is positive
definite and an unpivoted LDL^T solve is stable.  The returned eigenvalue is
the Rayleigh quotient of the converged vector.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ContractError

DEFAULT_TOL = 1e-12
MAX_INVERSE_ITERATIONS = 50
DENSE_MAX_DIM = 2000

# smallest pivot magnitude allowed in the Sturm recurrence
_PIVMIN = np.finfo(np.float64).tiny * 2.0**60


@dataclass(frozen=True)
class EigenSolution:
    value: float
    vector: np.ndarray
    iterations: int
    residual: float
    degenerate: bool = False


@njit(cache=True, nogil=True)
def _sturm_count(diag, sub2, x):
    # sub2 holds squared off-diagonal entries; ratio form avoids overflow
    count = 0
    q = diag[0] - x
    if q == 0.0:
        q = _PIVMIN
    if q < 0.0:
        count += 1
    for i in range(1, diag.shape[0]):
        q = diag[i] - x - sub2[i - 1] / q
        if abs(q) < _PIVMIN:
            q = _PIVMIN
        if q < 0.0:
            count += 1
    return count


@njit(cache=True, nogil=True)
def _gershgorin(diag, sub):
    d = diag.shape[0]
    lo = np.inf
    hi = -np.inf
    for i in range(d):
        r = 0.0
        if i > 0:
            r += abs(sub[i - 1])
        if i < d - 1:
            r += abs(sub[i])
        lo = min(lo, diag[i] - r)
        hi = max(hi, diag[i] + r)
    return lo, hi


@njit(cache=True, nogil=True)
def _bisect_lowest(diag, sub, sub2, abstol):
    lo, hi = _gershgorin(diag, sub)
    span = max(hi - lo, 1.0)
    lo -= 1e-3 * span
    hi += 1e-3 * span
    while hi - lo > abstol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _sturm_count(diag, sub2, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


@njit(cache=True, nogil=True)
def _ldl_solve(diag, sub, sigma, rhs, out):
    # factor T - sigma I = L D L^T in place of scratch; returns False on zero pivot
    d = diag.shape[0]
    piv = np.empty(d)
    y = np.empty(d)
    piv[0] = diag[0] - sigma
    if piv[0] <= 0.0:
        return False
    y[0] = rhs[0]
    for i in range(1, d):
        lij = sub[i - 1] / piv[i - 1]
        piv[i] = diag[i] - sigma - lij * sub[i - 1]
        if piv[i] <= 0.0:
            return False
        y[i] = rhs[i] - lij * y[i - 1]
    out[d - 1] = y[d - 1] / piv[d - 1]
    for i in range(d - 2, -1, -1):
        out[i] = y[i] / piv[i] - (sub[i] / piv[i]) * out[i + 1]
    return True


@njit(cache=True, nogil=True)
def _matvec(diag, sub, v, out):
    d = diag.shape[0]
    for i in range(d):
        s = diag[i] * v[i]
        if i > 0:
            s += sub[i - 1] * v[i - 1]
        if i < d - 1:
            s += sub[i] * v[i + 1]
        out[i] = s


@njit(cache=True, nogil=True)
def _lowest_kernel(diag, sub, abstol, resid_tol, max_iter):
    d = diag.shape[0]
    v = np.ones(d) / np.sqrt(d)
    if d == 1:
        return diag[0], v, 0, 0.0, False
    sub2 = sub * sub
    lo, hi = _bisect_lowest(diag, sub, sub2, abstol)
    degenerate = _sturm_count(diag, sub2, hi) >= 2

    tv = np.empty(d)
    w = np.empty(d)
    lam = 0.5 * (lo + hi)
    resid = np.inf
    sigma = lo
    width = max(hi - lo, abstol)
    it = 0
    while it < max_iter:
        it += 1
        ok = _ldl_solve(diag, sub, sigma, v, w)
        if not ok:
            # shift touched the spectrum: restart from a lower shift
            sigma -= width
            width *= 2.0
            continue
        nrm = np.sqrt(np.sum(w * w))
        if not np.isfinite(nrm) or nrm == 0.0:
            sigma -= width
            width *= 2.0
            v[:] = 1.0 / np.sqrt(d)
            continue
        v[:] = w / nrm
        _matvec(diag, sub, v, tv)
        lam = np.sum(v * tv)
        resid = np.sqrt(np.sum((tv - lam * v) ** 2))
        if resid <= resid_tol:
            break
    return lam, v, it, resid, degenerate


def _as_tridiagonal(diag, sub):
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    sub = np.ascontiguousarray(sub, dtype=np.float64)
    if diag.ndim != 1 or sub.ndim != 1:
        raise ContractError("diag and sub must be one-dimensional")
    if diag.shape[0] < 1:
        raise ContractError("empty matrix")
    if sub.shape[0] != diag.shape[0] - 1:
        raise ContractError(
            f"len(sub) must be len(diag) - 1, got {sub.shape[0]} and {diag.shape[0]}"
        )
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(sub))):
        raise ContractError("non-finite matrix entries")
    return diag, sub


def inf_norm(diag, sub) -> float:
    diag = np.asarray(diag, dtype=float)
    sub = np.abs(np.asarray(sub, dtype=float))
    row = np.abs(diag).copy()
    row[1:] += sub
    row[:-1] += sub
    return float(row.max())


def lowest_eigenpair(diag, sub, tol: float = DEFAULT_TOL) -> EigenSolution:
    """Smallest eigenvalue and unit eigenvector of a symmetric tridiagonal matrix.

    ``tol`` is the absolute bisection tolerance, scaled by ``1 + ||T||_inf``.
    The eigenvector is normalised with its first nonzero component positive.
    """
    diag, sub = _as_tridiagonal(diag, sub)
    if not tol > 0:
        raise ContractError("tol must be positive")
    scale = 1.0 + inf_norm(diag, sub)
    lam, v, it, resid, degenerate = _lowest_kernel(
        diag, sub, tol * scale, 1e-13 * scale, MAX_INVERSE_ITERATIONS
    )
    nz = np.flatnonzero(v)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return EigenSolution(float(lam), v, int(it), float(resid), bool(degenerate))


def sturm_count(diag, sub, x: float) -> int:
    """Number of eigenvalues strictly below ``x``."""
    diag, sub = _as_tridiagonal(diag, sub)
    if not np.isfinite(x):
        raise ContractError("x must be finite")
    return int(_sturm_count(diag, sub * sub, float(x)))


def dense_spectrum(diag, sub) -> np.ndarray:
    """Full sorted spectrum via LAPACK; a validation aid for small matrices."""
    diag, sub = _as_tridiagonal(diag, sub)
    if diag.shape[0] > DENSE_MAX_DIM:
        raise ContractError(f"dense_spectrum limited to dimension {DENSE_MAX_DIM}")
    t = np.diag(diag)
    if sub.size:
        t += np.diag(sub, -1) + np.diag(sub, 1)
    return np.linalg.eigvalsh(t)
