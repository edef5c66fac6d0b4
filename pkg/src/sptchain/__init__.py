"""Stabilizer codes, ground states and topological entanglement entropy of 1D SPT chains."""

from sptchain.pauli import (
    CliffordCircuit,
    ControlledNot,
    ControlledPhase,
    Hadamard,
    PauliString,
    StabilizerGroup,
    canonicalize,
    classical_distance,
    commutes,
    conjugate,
    contains,
    groups_equal,
    multiply,
    stabilizer_entropy,
    x_type_centralizer,
)
from sptchain.hamiltonian import ModelSpec, PauliSumOperator, apply, build, symmetry_generators
from sptchain.state import StateVector
from sptchain.spectra import (
    SpectrumResult,
    dense_spectrum,
    lowest_eigenpairs,
    symmetric_ground_state,
)
from sptchain.entropy import (
    CutLayout,
    TopoEntropyRecord,
    make_layout,
    reduced_density,
    region_entropy,
    topo_entropy,
    von_neumann_bits,
)
from sptchain.transforms import (
    SiteChain,
    apply_circuit,
    build_psi_a,
    build_psi_b,
    cluster_state,
    onsite_circuit,
)

__version__ = "0.1.0"

__all__ = [
    "CliffordCircuit",
    "ControlledNot",
    "ControlledPhase",
    "CutLayout",
    "Hadamard",
    "ModelSpec",
    "PauliString",
    "PauliSumOperator",
    "SiteChain",
    "SpectrumResult",
    "StabilizerGroup",
    "StateVector",
    "TopoEntropyRecord",
    "apply",
    "apply_circuit",
    "build",
    "build_psi_a",
    "build_psi_b",
    "canonicalize",
    "classical_distance",
    "cluster_state",
    "commutes",
    "conjugate",
    "contains",
    "dense_spectrum",
    "groups_equal",
    "lowest_eigenpairs",
    "make_layout",
    "multiply",
    "onsite_circuit",
    "reduced_density",
    "region_entropy",
    "stabilizer_entropy",
    "symmetric_ground_state",
    "symmetry_generators",
    "topo_entropy",
    "von_neumann_bits",
    "x_type_centralizer",
]
