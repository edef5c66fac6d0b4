"""Model Hamiltonians as real-weighted Pauli sums and their matrix-free action.

Three models on an ``n``-qubit chain, each with an optional transverse field
``+b * sum_j X_j``:

* ``cluster``            ``-sum_j Z_{j-1} X_j Z_{j+1}``
* ``symmetry_breaking``  ``-sum_j Z_{j-1} Z_{j+1}``
* ``zxxz``               ``-sum_j Z_{j-1} X_j X_{j+1} Z_{j+2}``

Open chains keep only the terms that fit (``n - 2`` terms for the first two
models, ``n - 3`` for ``zxxz``); periodic chains keep all ``n``, wrapping mod ``n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from sptchain import gf2
from sptchain.pauli import PauliString, SizeMismatchError, StabilizerGroup
from sptchain.state import StateVector

Term = Tuple[float, PauliString]


class Model(str, enum.Enum):
    CLUSTER = "cluster"
    SYMMETRY_BREAKING = "symmetry_breaking"
    ZXXZ = "zxxz"


class Boundary(str, enum.Enum):
    OPEN = "open"
    PERIODIC = "periodic"


# short names used on the command line
MODEL_ALIASES = {
    "clu": Model.CLUSTER,
    "syb": Model.SYMMETRY_BREAKING,
    "zxxz": Model.ZXXZ,
    "cluster": Model.CLUSTER,
    "symmetry_breaking": Model.SYMMETRY_BREAKING,
}

MIN_QUBITS = {Model.CLUSTER: 4, Model.SYMMETRY_BREAKING: 4, Model.ZXXZ: 6}


@dataclass(frozen=True)
class ModelSpec:
    model: Model
    n: int
    field_b: float = 0.0
    boundary: Boundary = Boundary.OPEN

    def __post_init__(self):
        model = self.model
        if isinstance(model, str) and not isinstance(model, Model):
            if model not in MODEL_ALIASES:
                raise ValueError(f"unknown model {model!r}")
            model = MODEL_ALIASES[model]
        object.__setattr__(self, "model", Model(model))
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if self.n < MIN_QUBITS[self.model]:
            raise ValueError(
                f"{self.model.value} needs at least {MIN_QUBITS[self.model]} qubits, got {self.n}"
            )
        if not math.isfinite(self.field_b) or self.field_b < 0:
            raise ValueError(f"field strength must be finite and >= 0, got {self.field_b}")


@dataclass
class PauliSumOperator:
    """``sum_k c_k P_k`` with real ``c_k`` and Hermitian ``P_k``."""

    n: int
    terms: List[Term] = field(default_factory=list)

    def __post_init__(self):
        self.terms = [(float(c), p) for c, p in self.terms]
        for c, p in self.terms:
            if p.n != self.n:
                raise SizeMismatchError(f"term {p} is not on {self.n} qubits")
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient {c}")
            if not p.is_hermitian:
                raise ValueError(f"term {p} is not Hermitian")
        self._diagonals: Optional[Dict[int, np.ndarray]] = None

    def __len__(self):
        return len(self.terms)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def is_real(self) -> bool:
        # i^(phase + #Y) is real iff the Y count is even for phase in {0, 2}
        return all((p.x & p.z).bit_count() % 2 == 0 for _, p in self.terms)

    def diagonals(self) -> Dict[int, np.ndarray]:
        """Terms grouped by X mask: ``H v = sum_x D_x[c ^ x] v[c ^ x]`` (cached)."""
        if self._diagonals is None:
            idx = np.arange(self.dim, dtype=np.int64)
            dtype = np.float64 if self.is_real else np.complex128
            groups: Dict[int, np.ndarray] = {}
            for c, p in self.terms:
                # P|b> = i^(phase + #Y) (-1)^(z.b) |b ^ x>
                factor = c * (1j ** (p.phase + (p.x & p.z).bit_count()))
                if dtype is np.float64:
                    factor = factor.real
                signs = 1.0 - 2.0 * (np.bitwise_count(idx & p.z) & 1)
                if p.x not in groups:
                    groups[p.x] = np.zeros(self.dim, dtype=dtype)
                groups[p.x] += factor * signs
            self._diagonals = groups
        return self._diagonals

    def to_dense(self) -> np.ndarray:
        """Explicit matrix from Kronecker products of the terms (independent of :func:`apply`).

        Real operators give a real matrix.
        """
        if self.n > 12:
            raise ValueError(f"dense matrix refused for n={self.n} > 12")
        if not self.is_real:
            mat = np.zeros((self.dim, self.dim), dtype=complex)
            for c, p in self.terms:
                mat += c * p.to_matrix()
            return mat
        # real path: Y = i * [[0, -1], [1, 0]], and the i's pair up into a sign
        single = {
            "I": np.eye(2),
            "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
            "Z": np.diag([1.0, -1.0]),
            "Y": np.array([[0.0, -1.0], [1.0, 0.0]]),
        }
        mat = np.zeros((self.dim, self.dim))
        for c, p in self.terms:
            term = np.ones((1, 1))
            for j in reversed(range(self.n)):
                term = np.kron(term, single["IXZY"[(p.x >> j & 1) + 2 * (p.z >> j & 1)]])
            sign = (1j ** (p.phase + (p.x & p.z).bit_count())).real
            mat += c * sign * term
        return mat


def _flip_view(v: np.ndarray, n: int, xmask: int) -> np.ndarray:
    """``(2,)*n`` tensor view ``w`` with ``w.ravel()[c] == v[c ^ xmask]``."""
    t = v.reshape((2,) * n)
    if not xmask:
        return t
    # qubit j is bit j, which is axis n-1-j in C order
    axes = tuple(n - 1 - j for j in range(n) if xmask >> j & 1)
    return np.flip(t, axis=axes)


def apply(
    h: PauliSumOperator, v, out: Optional[np.ndarray] = None
) -> Union[np.ndarray, StateVector]:
    """``H v`` term group by term group.  Accepts an array or a StateVector.

    ``out`` is an optional caller-owned buffer that receives the result.
    """
    wrapped = isinstance(v, StateVector)
    arr = v.amplitudes if wrapped else np.asarray(v)
    if arr.shape != (h.dim,):
        raise SizeMismatchError(f"vector of shape {arr.shape} does not match 2**{h.n}")
    diags = h.diagonals()
    dtype = np.result_type(arr.dtype, *(d.dtype for d in diags.values()))
    if out is None:
        out = np.zeros(h.dim, dtype=dtype)
    else:
        out[:] = 0
    shape = (2,) * h.n
    out_t = out.reshape(shape)
    for xmask, d in diags.items():
        # flipped views avoid materializing the permuted vector
        out_t += _flip_view(d * arr, h.n, xmask)
    if wrapped:
        return StateVector(h.n, out)
    return out


def _stabilizer_terms(spec: ModelSpec) -> List[PauliString]:
    n = spec.n
    periodic = spec.boundary is Boundary.PERIODIC
    if spec.model is Model.ZXXZ:
        # term j covers j-1, j, j+1, j+2 (0-based j)
        centers = range(n) if periodic else range(1, n - 2)
        shape = [(-1, "Z"), (0, "X"), (1, "X"), (2, "Z")]
    else:
        centers = range(n) if periodic else range(1, n - 1)
        if spec.model is Model.CLUSTER:
            shape = [(-1, "Z"), (0, "X"), (1, "Z")]
        else:
            shape = [(-1, "Z"), (1, "Z")]
    terms = []
    for j in centers:
        x = z = 0
        for offset, op in shape:
            q = (j + offset) % n
            if op == "X":
                x ^= 1 << q
            else:
                z ^= 1 << q
        terms.append(PauliString(n, x, z))
    return terms


def build(spec: ModelSpec) -> PauliSumOperator:
    terms: List[Term] = [(-1.0, p) for p in _stabilizer_terms(spec)]
    if spec.field_b > 0:
        terms += [(spec.field_b, PauliString.on(spec.n, "X", [j])) for j in range(spec.n)]
    return PauliSumOperator(spec.n, terms)


def symmetry_generators(spec: ModelSpec) -> List[PauliString]:
    """X-type products over residue classes of the 1-based site index.

    Period 2 (odd and even sites) for the cluster and symmetry-breaking
    models, period 3 for ``zxxz``.  For odd ``n`` the odd-site product
    includes the last qubit.
    """
    period = 3 if spec.model is Model.ZXXZ else 2
    return [
        PauliString.on(spec.n, "X", range(r, spec.n, period)) for r in range(period)
    ]


def _independent(paulis: Sequence[PauliString]) -> List[PauliString]:
    gens: List[PauliString] = []
    basis: List[int] = []
    for p in paulis:
        v = p.x | (p.z << p.n)
        if not gf2.in_span(v, basis):
            gens.append(p)
            basis = gf2.rref(basis + [v])
    return gens


def stabilizer_group(spec: ModelSpec) -> StabilizerGroup:
    """The group generated by the field-free terms (redundant terms dropped)."""
    return StabilizerGroup(spec.n, _independent(_stabilizer_terms(spec)))


def symmetric_stabilizer_group(spec: ModelSpec) -> StabilizerGroup:
    """Stabilizer terms plus symmetry generators: the group of the B=0 symmetric ground state.

    Redundant generators are dropped, so the periodic cluster chain yields
    just its ``n`` terms.
    """
    return StabilizerGroup(
        spec.n, _independent(_stabilizer_terms(spec) + symmetry_generators(spec))
    )


def field_sector_generators(spec: ModelSpec) -> List[PauliString]:
    """Symmetry generators signed by their eigenvalue on ``|->^n``.

    The field ``+b sum_j X_j`` favours ``|->`` on every qubit, so for ``b > 0``
    the exact ground state sits in this sector.  It coincides with the all-+1
    sector whenever every generator has even weight.  At ``b = 0`` the two
    sectors' ground states differ by a single edge ``Z``, a local unitary.
    """
    return [
        PauliString(p.n, p.x, p.z, 2 * (p.weight % 2)) for p in symmetry_generators(spec)
    ]
