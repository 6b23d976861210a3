"""Brute-force reference backends for the block solver.

Two dense constructions of the same Hamiltonian, deliberately independent of
``model.build_block``:

* the collective spin-M/2 representation tensored with a truncated Fock space;
* the full 2^M space of distinguishable qubits (every spin sector included),
  built from embedded Pauli matrices.

Both are diagonalised with LAPACK.  They exist for tests and cross-checks,
not for production sweeps.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
import scipy.linalg as la

from .errors import ParameterError
from .model import ModelParams
from .spectrum import find_kstar, kstar_perturbative

DENSE_MAX_DIM = 4000
QUBIT_MAX_M = 4
QUBIT_MAX_NMAX = 40
CUTOFF_WEIGHT = 1e-8


class CutoffWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ComparisonReport:
    M: int
    n_max: int
    g: float
    eta: float
    block: float
    dense: float
    qubit: float

    @property
    def differences(self):
        return {
            "block-dense": abs(self.block - self.dense),
            "block-qubit": abs(self.block - self.qubit),
            "dense-qubit": abs(self.dense - self.qubit),
        }

    @property
    def max_difference(self):
        return max(self.differences.values())


def _annihilation(n_max):
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)


def collective_spin(M):
    """S_3, S_+ for spin M/2 in the basis m = -M/2 .. M/2."""
    s = M / 2
    m = np.arange(-s, s + 1)
    s3 = np.diag(m)
    # S_+ |s, m> = sqrt(s(s+1) - m(m+1)) |s, m+1>
    sp = np.diag(np.sqrt(s * (s + 1) - m[:-1] * (m[:-1] + 1)), -1)
    return s3, sp


def truncated_dense_hamiltonian(M, n_max, g, eta):
    """H on photons 0..n_max (outer factor) times spin-M/2 (inner factor)."""
    ModelParams(M, g, eta)
    dim = (n_max + 1) * (M + 1)
    if dim > DENSE_MAX_DIM:
        raise ParameterError(f"dense model dimension {dim} exceeds {DENSE_MAX_DIM}")
    a = _annihilation(n_max)
    s3, sp = collective_spin(M)
    sm = sp.T
    ip, isp = np.eye(n_max + 1), np.eye(M + 1)
    c = g * math.sqrt(eta / M)
    return (
        np.kron(a.T @ a, isp)
        + eta * np.kron(ip, s3)
        - c * (np.kron(a.T, sm) + np.kron(a, sp))
    )


def _pauli_embed(op, site, M):
    out = np.array([[1.0]])
    for b in range(M - 1, -1, -1):
        out = np.kron(out, op if b == site else np.eye(2))
    return out


def full_qubit_hamiltonian(M, n_max, g, eta):
    """H on photons 0..n_max (outer factor) times M distinguishable qubits."""
    ModelParams(M, g, eta)
    if M > QUBIT_MAX_M or n_max > QUBIT_MAX_NMAX:
        raise ParameterError(f"qubit backend limited to M <= {QUBIT_MAX_M}, n_max <= {QUBIT_MAX_NMAX}")
    # single-qubit basis (|g>, |e>) so that bit value 1 means excited
    sz = np.diag([-1.0, 1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sy = np.array([[0.0, 1j], [-1j, 0.0]])
    s3 = sum(_pauli_embed(sz, b, M) for b in range(M)) / 2
    s1 = sum(_pauli_embed(sx, b, M) for b in range(M)) / 2
    s2 = sum(_pauli_embed(sy, b, M) for b in range(M)) / 2
    sp = s1 + 1j * s2
    sm = s1 - 1j * s2
    a = _annihilation(n_max)
    ip, iq = np.eye(n_max + 1), np.eye(2**M)
    c = g * math.sqrt(eta / M)
    h = np.kron(a.T @ a, iq) + eta * np.kron(ip, s3) - c * (np.kron(a.T, sm) + np.kron(a, sp))
    return h


def default_n_max(M, g, eta):
    k_exp = kstar_perturbative(ModelParams(M, g, eta)) if g > 0 else 0
    return k_exp + M + 10


def _ground(h, n_fock, warn_label):
    w, v = la.eigh(h, subset_by_index=[0, 0])
    vec = v[:, 0]
    per_fock = np.sum(np.abs(vec.reshape(n_fock, -1)) ** 2, axis=1)
    if per_fock[-2:].sum() > CUTOFF_WEIGHT:
        warnings.warn(
            f"{warn_label}: ground state weight {per_fock[-2:].sum():.2e} on the top two Fock levels",
            CutoffWarning,
            stacklevel=3,
        )
    return float(w[0])


def dense_ground_energy(M, n_max, g, eta):
    h = truncated_dense_hamiltonian(M, n_max, g, eta)
    return _ground(h, n_max + 1, "truncated dense model")


def full_qubit_ground_energy(M, n_max, g, eta):
    h = full_qubit_hamiltonian(M, n_max, g, eta)
    return _ground(h, n_max + 1, "full qubit model")


def sector_spectrum(M, n_max, g, eta, k):
    """Eigenvalues of the truncated dense model restricted to excitation number k."""
    h = truncated_dense_hamiltonian(M, n_max, g, eta)
    p = np.repeat(np.arange(n_max + 1), M + 1)
    n = np.tile(np.arange(M + 1), n_max + 1)
    sel = np.flatnonzero(p + n == k)
    return np.linalg.eigvalsh(h[np.ix_(sel, sel)])


def compare_backends(M, n_max, g, eta):
    if n_max is None:
        n_max = min(default_n_max(M, g, eta), QUBIT_MAX_NMAX)
    block = find_kstar(ModelParams(M, g, eta)).energy
    return ComparisonReport(
        M=int(M), n_max=int(n_max), g=float(g), eta=float(eta),
        block=block,
        dense=dense_ground_energy(M, n_max, g, eta),
        qubit=full_qubit_ground_energy(M, n_max, g, eta),
    )
