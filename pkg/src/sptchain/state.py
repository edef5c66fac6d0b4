"""Dense state vectors over the computational basis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from sptchain.pauli import PauliString


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over ``2**n`` basis states; qubit ``j`` is bit ``j`` of the index."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("non-finite amplitude")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "StateVector":
        amps = np.zeros(1 << n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def product(cls, n: int, single: np.ndarray) -> "StateVector":
        """``single`` (a 2-vector) on every qubit."""
        amps = np.ones(1, dtype=complex)
        for _ in range(n):
            amps = np.kron(single, amps)
        return cls(n, amps)

    @classmethod
    def plus(cls, n: int) -> "StateVector":
        return cls.product(n, np.array([1, 1]) / np.sqrt(2))

    @classmethod
    def random(cls, n: int, seed: Optional[int] = None) -> "StateVector":
        rng = np.random.default_rng(seed)
        amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        return cls(n, amps / np.linalg.norm(amps))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        nrm = self.norm
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.n, self.amplitudes / nrm)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        """``|<self|other>|^2`` for normalized inputs."""
        return abs(self.overlap(other)) ** 2

    def apply_pauli(self, p: PauliString) -> "StateVector":
        if p.n != self.n:
            raise ValueError("qubit count mismatch")
        idx = np.arange(1 << self.n, dtype=np.int64)
        src = idx ^ p.x
        signs = 1.0 - 2.0 * (np.bitwise_count(src & p.z) & 1)
        factor = 1j ** (p.phase + (p.x & p.z).bit_count())
        return StateVector(self.n, factor * signs * self.amplitudes[src])

    def expectation(self, p: PauliString) -> complex:
        return complex(np.vdot(self.amplitudes, self.apply_pauli(p).amplitudes))

    def tensor(self, other: "StateVector") -> "StateVector":
        """``self`` on the low qubits, ``other`` on the following ones."""
        return StateVector(self.n + other.n, np.kron(other.amplitudes, self.amplitudes))
