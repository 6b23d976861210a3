import itertools
import warnings

import numpy as np
import pytest

from tcdicke.errors import ParameterError
from tcdicke.model import ModelParams, build_block
from tcdicke.oracle import (
    CutoffWarning,
    collective_spin,
    compare_backends,
    default_n_max,
    dense_ground_energy,
    full_qubit_ground_energy,
    full_qubit_hamiltonian,
    sector_spectrum,
    truncated_dense_hamiltonian,
)
from tcdicke.spectrum import block_ground_energy
from tcdicke.tridiag import dense_spectrum


def test_spin_algebra():
    for M in (1, 2, 5):
        s3, sp = collective_spin(M)
        sm = sp.T
        assert np.allclose(sp @ sm - sm @ sp, 2 * s3)
        s = M / 2
        s1, s2 = (sp + sm) / 2, (sp - sm) / 2j
        assert np.allclose(s1 @ s1 + s2 @ s2 + s3 @ s3, s * (s + 1) * np.eye(M + 1))


def test_dense_examples():
    assert dense_ground_energy(2, 30, 0.5, 0.3) == pytest.approx(-0.3, abs=1e-12)
    assert dense_ground_energy(2, 30, 2.0, 0.01) == pytest.approx(0.495 - np.sqrt(0.495**2 + 0.04), abs=1e-12)
    eta = 1e-3
    e0 = block_ground_energy(ModelParams(4, 1.0, eta), 0).energy
    e1 = block_ground_energy(ModelParams(4, 1.0, eta), 1).energy
    assert dense_ground_energy(4, 40, 1.0, eta) == pytest.approx(min(e0, e1), abs=1e-12)


def test_qubit_examples():
    assert full_qubit_ground_energy(2, 30, 0.5, 0.3) == pytest.approx(-0.3, abs=1e-12)
    for eta in (0.01, 0.7):
        assert full_qubit_ground_energy(2, 10, 0.0, eta) == pytest.approx(-eta, abs=1e-14)
    e = full_qubit_ground_energy(3, 30, 1.5, 0.01)
    assert e == pytest.approx(dense_ground_energy(3, 30, 1.5, 0.01), abs=1e-10)
    assert e == pytest.approx(compare_backends(3, 30, 1.5, 0.01).block, abs=1e-10)


def test_qubit_hamiltonian_hermitian_and_excitation_conserving():
    M, n_max = 3, 5
    h = full_qubit_hamiltonian(M, n_max, 1.3, 0.2)
    assert np.allclose(h, h.conj().T)
    idx = np.arange(h.shape[0])
    photons, qubits = idx // 2**M, idx % 2**M
    exc = photons + np.array([bin(q).count("1") for q in qubits])
    rows, cols = np.nonzero(np.abs(h) > 1e-14)
    assert np.all(exc[rows] == exc[cols])


def test_guards():
    with pytest.raises(ParameterError):
        truncated_dense_hamiltonian(64, 70, 1.0, 0.1)
    with pytest.raises(ParameterError):
        full_qubit_ground_energy(5, 10, 1.0, 0.1)
    with pytest.raises(ParameterError):
        full_qubit_ground_energy(2, 41, 1.0, 0.1)


def test_cutoff_warning():
    with pytest.warns(CutoffWarning):
        dense_ground_energy(2, 3, 4.0, 0.5)


def test_compare_backends_g0_and_g1():
    r = compare_backends(3, 20, 0.0, 0.2)
    assert r.block == r.dense == pytest.approx(-0.3, abs=1e-14)
    assert r.qubit == pytest.approx(-0.3, abs=1e-14)
    r = compare_backends(4, 30, 1.0, 0.05)
    for e in (r.block, r.dense, r.qubit):
        assert e == pytest.approx(-0.1, abs=1e-12)


def test_default_n_max():
    assert default_n_max(4, 0.5, 0.1) == 14
    assert default_n_max(64, 10.0, 1e-4) == 32 + 64 + 10
    r = compare_backends(2, None, 1.5, 0.01)
    assert r.n_max == default_n_max(2, 1.5, 0.01)
    assert r.max_difference <= 1e-10


@pytest.mark.parametrize("M", [2, 3, 4])
def test_backend_equivalence_and_cutoff_stability(M):
    for g, eta in itertools.product(np.linspace(0.2, 3, 5), np.geomspace(1e-3, 0.5, 5)):
        with warnings.catch_warnings():
            warnings.simplefilter("error", CutoffWarning)
            r = compare_backends(M, 30, g, eta)
            assert r.max_difference <= 1e-10
            assert abs(dense_ground_energy(M, 40, g, eta) - r.dense) <= 1e-10


@pytest.mark.parametrize("M,g,eta", [(2, 2.0, 0.01), (4, 1.7, 0.3), (6, 2.5, 0.02)])
def test_sector_recovery(M, g, eta):
    n_max = 25
    for k in range(n_max - 4):
        blk = build_block(ModelParams(M, g, eta), k)
        assert dense_spectrum(blk.diag, blk.sub) == pytest.approx(sector_spectrum(M, n_max, g, eta, k), abs=1e-9)
