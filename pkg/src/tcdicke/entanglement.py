"""Dicke states, entanglement distance, Dicke weights and the photon-measurement protocol.

Qubit statevectors use the convention that bit ``b`` of the basis index is
the state of qubit ``b``, with 1 meaning excited.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ContractError, ParameterError
from .spectrum import GroundStateResult

STATEVECTOR_MAX_M = 14


@dataclass(frozen=True)
class DickeWeights:
    k: int
    weights: np.ndarray  # indexed by number of excited atoms n


@dataclass(frozen=True)
class ProtocolReport:
    M: int
    k_star: int
    samples: int
    seed: int
    successes: int
    empirical_rate: float
    theoretical_rate: float
    mean_attempts: float | None  # trials per success; None without any success
    impossible: bool  # k* > M: no zero-photon component at all


def _check_dicke(M, n):
    if M < 1 or not 0 <= n <= M:
        raise ParameterError(f"Dicke index needs 0 <= n <= M, got M={M}, n={n}")


def dicke_statevector(M: int, n: int) -> np.ndarray:
    _check_dicke(M, n)
    if M > STATEVECTOR_MAX_M:
        raise ParameterError(f"statevectors limited to M <= {STATEVECTOR_MAX_M}")
    idx = np.arange(2**M)
    weight = np.zeros(2**M, dtype=np.int64)
    for b in range(M):
        weight += (idx >> b) & 1
    psi = np.zeros(2**M, dtype=complex)
    psi[weight == n] = 1 / math.sqrt(math.comb(M, n))
    return psi


def bloch_vectors(psi) -> np.ndarray:
    """(M, 3) array of single-qubit expectations <sigma_1>, <sigma_2>, <sigma_3>."""
    psi = np.asarray(psi, dtype=complex)
    M = int(round(math.log2(psi.size)))
    if 2**M != psi.size:
        raise ContractError("statevector length must be a power of two")
    # axis order of the reshape is most-significant bit first
    t = psi.reshape((2,) * M)
    out = np.empty((M, 3))
    for b in range(M):
        ax = M - 1 - b
        ground = np.take(t, 0, axis=ax)
        excited = np.take(t, 1, axis=ax)
        z = np.vdot(excited, ground)
        out[b] = (2 * z.real, 2 * z.imag, np.vdot(excited, excited).real - np.vdot(ground, ground).real)
    return out


def entanglement_distance_pure(psi) -> float:
    psi = np.asarray(psi, dtype=complex)
    if psi.size > 2**STATEVECTOR_MAX_M:
        raise ParameterError(f"statevectors limited to M <= {STATEVECTOR_MAX_M}")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1) > 1e-9:
        raise ContractError(f"state not normalised (norm^2 = {norm})")
    r = bloch_vectors(psi)
    M = r.shape[0]
    return float(1 - np.sum(r * r) / M)


def entanglement_distance_dicke(M: int, n: int) -> float:
    _check_dicke(M, n)
    return 1 - ((2 * n - M) / M) ** 2


def dicke_weights(gs: GroundStateResult) -> DickeWeights:
    """Weights w_n = a_n^2 of the atomic reduced state on the Dicke basis."""
    return DickeWeights(gs.k_star, np.asarray(gs.coeffs, dtype=float) ** 2)


def dicke_weight(gs: GroundStateResult, n: int) -> float:
    w = dicke_weights(gs).weights
    return float(w[n]) if 0 <= n < w.size else 0.0


def photon_distribution(gs: GroundStateResult):
    """(photon count, probability) pairs, ascending in photon count."""
    w = dicke_weights(gs).weights
    k = gs.k_star
    return [(k - n, float(w[n])) for n in range(w.size - 1, -1, -1)]


def run_protocol(gs: GroundStateResult, samples: int, seed: int) -> ProtocolReport:
    """Repeated prepare-and-measure of the photon number.

    Each trial draws one uniform variate from numpy's PCG64 generator seeded
    with ``seed`` and inverts the photon-count distribution; zero photons
    heralds the atoms in the Dicke state with k* excitations.
    """
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    M, k = gs.params.M, gs.k_star
    dist = photon_distribution(gs)
    p0 = dist[0][1] if dist[0][0] == 0 else 0.0
    impossible = k > M
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random(samples)
    cdf = np.cumsum([p for _, p in dist])
    cdf[-1] = 1.0
    outcome = np.searchsorted(cdf, u, side="right")
    photons = np.array([c for c, _ in dist])[outcome]
    hits = np.flatnonzero(photons == 0)
    succ = int(hits.size)
    mean_attempts = float(hits[-1] + 1) / succ if succ else None
    return ProtocolReport(
        M=M, k_star=k, samples=int(samples), seed=int(seed), successes=succ,
        empirical_rate=succ / samples, theoretical_rate=float(p0),
        mean_attempts=mean_attempts, impossible=impossible,
    )
