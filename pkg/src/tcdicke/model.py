"""Tavis-Cummings Hamiltonian restricted to fixed excitation number.

With energies in units of the cavity frequency the Hamiltonian reads

    H = a^dag a + eta S_3 - g sqrt(eta / M) (a^dag S_- + a S_+)

and commutes with the excitation number ``a^dag a + S_3 + M/2``.  Block ``k``
is spanned by ``|k - n photons, S_3 = n - M/2>`` for ``n = 0 .. min(k, M)``,
on which H is a real symmetric tridiagonal matrix.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class ModelParams:
    M: int
    g: float
    eta: float

    def __post_init__(self):
        if isinstance(self.M, bool) or int(self.M) != self.M or self.M < 1:
            raise ParameterError(f"M must be a positive integer, got {self.M!r}")
        if not math.isfinite(self.g) or self.g < 0:
            raise ParameterError(f"g must be finite and non-negative, got {self.g!r}")
        if not math.isfinite(self.eta) or self.eta <= 0:
            raise ParameterError(f"eta must be finite and positive, got {self.eta!r}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "eta", float(self.eta))

    def with_g(self, g):
        return ModelParams(self.M, g, self.eta)


@dataclass(frozen=True)
class BlockMatrix:
    k: int
    diag: np.ndarray
    sub: np.ndarray

    @property
    def dim(self):
        return self.diag.shape[0]

    def dense(self):
        t = np.diag(self.diag)
        if self.sub.size:
            t += np.diag(self.sub, -1) + np.diag(self.sub, 1)
        return t


def block_dim(M, k):
    return min(k, M) + 1


def _check_k(k):
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ParameterError(f"block index k must be a non-negative integer, got {k!r}")
    return int(k)


def build_block(params: ModelParams, k: int) -> BlockMatrix:
    k = _check_k(k)
    M, eta = params.M, params.eta
    n = np.arange(block_dim(M, k), dtype=np.float64)
    diag = (k - n) + eta * (n - M / 2)
    m = n[1:]
    # a S_+ lifts basis index m-1 -> m: sqrt(k-m+1) from a, sqrt(m(M-m+1)) from S_+
    sub = -(params.g * math.sqrt(eta) / math.sqrt(M)) * np.sqrt((k - m + 1) * m * (M - m + 1))
    return BlockMatrix(k, diag, sub)


def basis_labels(params: ModelParams, k: int):
    """(photon count, S_3 eigenvalue) for each basis index of block ``k``."""
    k = _check_k(k)
    M = params.M
    return [(k - n, n - M / 2) for n in range(block_dim(M, k))]
