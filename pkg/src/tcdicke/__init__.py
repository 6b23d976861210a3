"""Ground-state control of the off-resonance Tavis-Cummings model.

Exact block diagonalisation over excitation number, level crossings and
their perturbative estimates, Dicke-state weights of the atomic reduced
state, and (g, eta) sweeps of the resulting phase structure.
"""

from .entanglement import (
    DickeWeights,
    ProtocolReport,
    dicke_statevector,
    dicke_weight,
    dicke_weights,
    entanglement_distance_dicke,
    entanglement_distance_pure,
    photon_distribution,
    run_protocol,
)
from .errors import BracketError, CapExhaustedError, ContractError, ParameterError, TCError
from .model import BlockMatrix, ModelParams, basis_labels, build_block
from .spectrum import (
    BlockGroundState,
    CrossingTable,
    GroundStateResult,
    PerturbativePrediction,
    ScanPolicy,
    block_ground_energy,
    crossing_g_perturbative,
    crossing_table,
    find_crossing,
    find_kstar,
    kstar_perturbative,
    perturbative_energy,
    staircase,
)
from .sweep import Axis, RegionMap, SweepSpec, emit_csv, emit_json, run_sweep
from .tridiag import EigenSolution, dense_spectrum, lowest_eigenpair, sturm_count

__version__ = "0.1.0"
