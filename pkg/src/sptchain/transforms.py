"""Isometric-form bond states, the onsite Clifford transformation, and cluster states.

A chain of ``n_sites`` sites carries two qubits per site: site ``i`` (0-based)
owns qubit ``2i`` (left) and ``2i + 1`` (right).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from sptchain.hamiltonian import Boundary
from sptchain.pauli import (
    CliffordCircuit,
    ControlledNot,
    ControlledPhase,
    Hadamard,
    PauliString,
)
from sptchain.state import StateVector


@dataclass(frozen=True)
class SiteChain:
    n_sites: int
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("need at least one site")
        object.__setattr__(self, "boundary", Boundary(self.boundary))

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_sites

    def left(self, i: int) -> int:
        return 2 * i

    def right(self, i: int) -> int:
        return 2 * i + 1

    def inter_site_bonds(self) -> List[Tuple[int, int]]:
        """Qubit pairs ``(i_r, (i+1)_l)``; the periodic chain closes the ring."""
        last = self.n_sites if self.boundary is Boundary.PERIODIC else self.n_sites - 1
        return [(self.right(i), self.left((i + 1) % self.n_sites)) for i in range(last)]

    def onsite_bonds(self) -> List[Tuple[int, int]]:
        return [(self.left(i), self.right(i)) for i in range(self.n_sites)]


def _bond_product(n: int, pairs: List[Tuple[int, int]]) -> StateVector:
    """Bell pairs ``(|00> + |11>)/sqrt(2)`` on ``pairs``; all other qubits in ``|0>``."""
    used = [q for pair in pairs for q in pair]
    if len(set(used)) != len(used):
        raise ValueError("bond pairs overlap")
    amps = np.zeros(1 << n, dtype=complex)
    for bits in range(1 << len(pairs)):
        idx = 0
        for k, (a, b) in enumerate(pairs):
            if bits >> k & 1:
                idx |= (1 << a) | (1 << b)
        amps[idx] = 1.0
    return StateVector(n, amps / np.sqrt(1 << len(pairs)))


def build_psi_a(chain: SiteChain) -> StateVector:
    """Bonds between neighbouring sites; open chains leave the end qubits in ``|0>``."""
    if chain.boundary is Boundary.PERIODIC and chain.n_sites == 1:
        # the single site's right qubit bonds with its own left qubit
        return _bond_product(2, [(1, 0)])
    return _bond_product(chain.n_qubits, chain.inter_site_bonds())


def build_psi_b(chain: SiteChain) -> StateVector:
    """Bonds inside each site: a product state across sites."""
    return _bond_product(chain.n_qubits, chain.onsite_bonds())


def onsite_circuit(chain: SiteChain) -> CliffordCircuit:
    """CNOT (left controls right) followed by a Hadamard on the right qubit, on every site."""
    gates = []
    for i in range(chain.n_sites):
        gates.append(ControlledNot(chain.left(i), chain.right(i)))
        gates.append(Hadamard(chain.right(i)))
    return CliffordCircuit(chain.n_qubits, gates)


def apply_circuit(v: StateVector, c: CliffordCircuit) -> StateVector:
    if v.n != c.n:
        raise ValueError(f"state has {v.n} qubits, circuit {c.n}")
    n = v.n
    t = v.amplitudes.astype(complex).reshape((2,) * n)
    axis = lambda q: n - 1 - q
    for gate in c.gates:
        if isinstance(gate, Hadamard):
            a = axis(gate.q)
            lo = np.take(t, 0, axis=a)
            hi = np.take(t, 1, axis=a)
            t = np.stack([(lo + hi), (lo - hi)], axis=a) / np.sqrt(2)
        elif isinstance(gate, ControlledNot):
            ac, at = axis(gate.control), axis(gate.target)
            t = t.copy()
            sel = [slice(None)] * n
            sel[ac] = 1
            sub = t[tuple(sel)]
            # target axis index shifts down by one if it sat after the control axis
            tgt = at - (1 if at > ac else 0)
            t[tuple(sel)] = np.flip(sub, axis=tgt)
        elif isinstance(gate, ControlledPhase):
            t = t.copy()
            sel = [slice(None)] * n
            sel[axis(gate.a)] = 1
            sel[axis(gate.b)] = 1
            t[tuple(sel)] *= -1
        else:
            raise TypeError(f"unsupported gate {gate!r}")
    return StateVector(n, t.reshape(-1))


def cluster_state(n: int, boundary=Boundary.PERIODIC) -> StateVector:
    """Controlled-phase on every neighbouring pair of ``|+>^n``."""
    if n < 3:
        raise ValueError(f"cluster state needs n >= 3, got {n}")
    boundary = Boundary(boundary)
    pairs = [(j, j + 1) for j in range(n - 1)]
    if boundary is Boundary.PERIODIC:
        pairs.append((n - 1, 0))
    circuit = CliffordCircuit(n, [ControlledPhase(a, b) for a, b in pairs])
    return apply_circuit(StateVector.plus(n), circuit)


def cluster_generators(n: int, boundary=Boundary.PERIODIC) -> List[PauliString]:
    """``Z_{j-1} X_j Z_{j+1}`` for every interior j (every j, mod n, if periodic)."""
    boundary = Boundary(boundary)
    centers = range(n) if boundary is Boundary.PERIODIC else range(1, n - 1)
    out = []
    for j in centers:
        z = (1 << ((j - 1) % n)) | (1 << ((j + 1) % n))
        out.append(PauliString(n, 1 << j, z))
    return out


def bond_stabilizers(chain: SiteChain) -> List[PauliString]:
    """``X X`` and ``Z Z`` on every inter-site bond of ``chain``."""
    n = chain.n_qubits
    out = []
    for a, b in chain.inter_site_bonds():
        out.append(PauliString.on(n, "X", [a, b]))
        out.append(PauliString.on(n, "Z", [a, b]))
    return out
