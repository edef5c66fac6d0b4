"""Binary-symplectic Pauli algebra.

A :class:`PauliString` on ``n`` qubits is ``i**phase`` times a tensor product of
single-qubit Paulis, stored as two bit masks.  Qubit ``j`` carries X if bit ``j``
of ``x`` is set, Z if bit ``j`` of ``z`` is set, and Y if both are set, with
``Y = i X Z`` so that ``X Z = -i Y`` and ``Z X = +i Y``.

Qubit indices are 0-based.  The text form (``"+ZXZIIIII"``, ``"-iXY"``) puts
qubit 0 in the leftmost character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from sptchain import gf2

_PHASE_LABELS = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LABEL_PHASES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class SizeMismatchError(ValueError):
    pass


class InvalidGroupError(ValueError):
    """Generators that are dependent, non-commuting or generate -I."""


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValueError("mask has bits beyond qubit count")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        s = label.strip().replace("−", "-")
        i = 0
        while i < len(s) and s[i] in "+-i":
            i += 1
        prefix, body = s[:i], s[i:]
        if prefix not in _LABEL_PHASES:
            raise ValueError(f"bad phase prefix {prefix!r} in {label!r}")
        if not body:
            raise ValueError(f"empty Pauli label {label!r}")
        x = z = 0
        for j, ch in enumerate(body.upper()):
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli character {ch!r} in {label!r}")
            if ch in "XY":
                x |= 1 << j
            if ch in "ZY":
                z |= 1 << j
        return cls(len(body), x, z, _LABEL_PHASES[prefix])

    @classmethod
    def on(cls, n: int, op: str, qubits: Iterable[int], phase: int = 0) -> "PauliString":
        """The product of ``op`` (one of X, Y, Z) over ``qubits``."""
        mask = 0
        for q in qubits:
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} out of range for n={n}")
            mask |= 1 << q
        op = op.upper()
        if op not in "XYZ" or len(op) != 1:
            raise ValueError(f"unknown single-qubit Pauli {op!r}")
        return cls(
            n,
            mask if op in "XY" else 0,
            mask if op in "YZ" else 0,
            phase,
        )

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return gf2.popcount(self.x | self.z)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def label(self) -> str:
        chars = []
        for j in range(self.n):
            xb, zb = self.x >> j & 1, self.z >> j & 1
            chars.append("IXZY"[xb + 2 * zb])
        return _PHASE_LABELS[self.phase] + "".join(chars)

    def __str__(self):
        return self.label()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __neg__(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n`` square matrix; qubit ``j`` is bit ``j`` of the basis index."""
        mat = np.ones((1, 1), dtype=complex)
        # kron puts its left factor on the most significant bit
        for j in reversed(range(self.n)):
            mat = np.kron(mat, _SINGLE["IXZY"[(self.x >> j & 1) + 2 * (self.z >> j & 1)]])
        return (1j**self.phase) * mat


def _check_size(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise SizeMismatchError(f"qubit counts differ: {p.n} vs {q.n}")


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product ``p @ q`` with exact phase."""
    _check_size(p, q)
    x, z = p.x ^ q.x, p.z ^ q.z
    # Write each factor as i^k X^x Z^z; moving q's X past p's Z costs (-1)^(z_p . x_q).
    phase = (
        p.phase
        + q.phase
        + gf2.popcount(p.x & p.z)
        + gf2.popcount(q.x & q.z)
        + 2 * gf2.popcount(p.z & q.x)
        - gf2.popcount(x & z)
    )
    return PauliString(p.n, x, z, phase)


def product(paulis: Iterable[PauliString], n: Optional[int] = None) -> PauliString:
    paulis = list(paulis)
    if not paulis:
        if n is None:
            raise ValueError("empty product needs an explicit qubit count")
        return PauliString.identity(n)
    return reduce(multiply, paulis)


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_size(p, q)
    return (gf2.popcount(p.x & q.z) + gf2.popcount(p.z & q.x)) % 2 == 0


def _vec(p: PauliString) -> int:
    return p.x | (p.z << p.n)


@dataclass(frozen=True)
class StabilizerGroup:
    """An abelian Pauli group given by independent generators, without -I.

    Pass ``check=False`` to skip validation (used internally on already-valid
    generator sets).
    """

    n: int
    generators: Tuple[PauliString, ...] = ()
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.check:
            self.validate()

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> "StabilizerGroup":
        gens = [PauliString.from_label(s) for s in labels]
        if not gens:
            raise ValueError("cannot infer qubit count from no labels")
        return cls(gens[0].n, gens)

    def __len__(self):
        return len(self.generators)

    def validate(self) -> None:
        gens = self.generators
        for g in gens:
            if g.n != self.n:
                raise SizeMismatchError(f"generator {g} is not on {self.n} qubits")
            if not g.is_hermitian:
                raise InvalidGroupError(f"generator {g} squares to -I")
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if not commutes(gens[a], gens[b]):
                    raise InvalidGroupError(f"{gens[a]} and {gens[b]} anticommute")
        if gf2.rank(_vec(g) for g in gens) != len(gens):
            raise InvalidGroupError("generators are not independent")


def _reduce(gens: Sequence[PauliString], columns: Sequence[int]):
    """Gauss-Jordan elimination over the listed [x|z] columns, tracking phases.

    Returns ``(pivot_rows, rest)``.  Each pivot row owns one column, which is
    clear in every other returned row.  ``rest`` rows vanish on all listed columns.
    """
    rows = list(gens)
    pivots: List[Tuple[int, PauliString]] = []
    for col in columns:
        hit = next((i for i, r in enumerate(rows) if _vec(r) >> col & 1), None)
        if hit is None:
            continue
        piv = rows.pop(hit)
        rows = [multiply(r, piv) if _vec(r) >> col & 1 else r for r in rows]
        pivots = [(c, multiply(r, piv) if _vec(r) >> col & 1 else r) for c, r in pivots]
        pivots.append((col, piv))
    return pivots, rows


def canonicalize(g: StabilizerGroup) -> StabilizerGroup:
    """Reduced row-echelon generators; identical for any generating set of the same group."""
    g.validate()
    pivots, rest = _reduce(g.generators, range(2 * g.n - 1, -1, -1))
    assert not rest
    return StabilizerGroup(g.n, [r for _, r in pivots], check=False)


def _decompose(g: StabilizerGroup, p: PauliString) -> Optional[PauliString]:
    """The group element with the same masks as ``p``, or None if there is none."""
    if p.n != g.n:
        raise SizeMismatchError(f"qubit counts differ: {g.n} vs {p.n}")
    acc = PauliString.identity(g.n)
    target = _vec(p)
    pivots, _ = _reduce(g.generators, range(2 * g.n - 1, -1, -1))
    for col, row in pivots:
        if (target ^ _vec(acc)) >> col & 1:
            acc = multiply(acc, row)
    if _vec(acc) != target:
        return None
    return acc


def contains(g: StabilizerGroup, p: PauliString) -> bool:
    elem = _decompose(g, p)
    return elem is not None and elem.phase == p.phase


def groups_equal(g1: StabilizerGroup, g2: StabilizerGroup) -> bool:
    if g1.n != g2.n:
        raise SizeMismatchError(f"qubit counts differ: {g1.n} vs {g2.n}")
    if len(g1) != len(g2):
        return False
    return all(contains(g2, p) for p in g1.generators) and all(
        contains(g1, p) for p in g2.generators
    )


def x_type_centralizer(g: StabilizerGroup) -> List[int]:
    """Basis of X masks commuting with every generator (the kernel of the z-mask matrix)."""
    return gf2.nullspace((p.z for p in g.generators), g.n)


def x_type_subgroup(g: StabilizerGroup) -> List[int]:
    """Basis (rref) of X masks of group elements that carry no Z."""
    z_cols = range(2 * g.n - 1, g.n - 1, -1)
    _, rest = _reduce(g.generators, z_cols)
    return gf2.rref(r.x for r in rest)


def x_type_logicals(g: StabilizerGroup) -> List[int]:
    """X masks completing the X-type stabilizers to a basis of the centralizer."""
    stab = x_type_subgroup(g)
    logicals: List[int] = []
    current = list(stab)
    for v in x_type_centralizer(g):
        if not gf2.in_span(v, gf2.rref(current)):
            logicals.append(v)
            current.append(v)
    return logicals


def classical_distance(g: StabilizerGroup) -> Union[int, float]:
    """Minimum weight of an X-type logical operator; ``math.inf`` when none exists."""
    if len(g) >= g.n:
        raise ValueError("a stabilizer state encodes nothing; classical distance needs a code")
    kernel = x_type_centralizer(g)
    stab = x_type_subgroup(g)
    best: Union[int, float] = math.inf
    for v in gf2.span(kernel):
        if v and not gf2.in_span(v, stab):
            best = min(best, gf2.popcount(v))
    return best


def classical_distance_bruteforce(g: StabilizerGroup) -> Union[int, float]:
    """Exhaustive search over all ``2**n`` X strings; the test oracle for small n."""
    if g.n > 16:
        raise ValueError("brute force is limited to 16 qubits")
    xs = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(xs.shape, dtype=bool)
    for p in g.generators:
        ok &= np.bitwise_count(xs & p.z) % 2 == 0
    stab = x_type_subgroup(g)
    weights = np.bitwise_count(xs)
    best: Union[int, float] = math.inf
    for v in np.flatnonzero(ok)[np.argsort(weights[ok], kind="stable")]:
        v = int(v)
        if v and not gf2.in_span(v, stab):
            best = gf2.popcount(v)
            break
    return best


def stabilizer_entropy(g: StabilizerGroup, region: Iterable[int]) -> int:
    """Entanglement entropy (bits) of ``region`` in the stabilizer state of ``g``."""
    if len(g) != g.n:
        raise ValueError(f"need {g.n} generators for a stabilizer state, got {len(g)}")
    region = set(region)
    if any(not 0 <= q < g.n for q in region):
        raise ValueError("region index out of range")
    outside = [q for q in range(g.n) if q not in region]
    cols = outside + [q + g.n for q in outside]
    _, inside = _reduce(g.generators, cols)
    return len(region) - len(inside)


# --- Clifford conjugation -----------------------------------------------------


@dataclass(frozen=True)
class Hadamard:
    q: int

    @property
    def qubits(self):
        return (self.q,)


@dataclass(frozen=True)
class ControlledNot:
    control: int
    target: int

    @property
    def qubits(self):
        return (self.control, self.target)


@dataclass(frozen=True)
class ControlledPhase:
    a: int
    b: int

    @property
    def qubits(self):
        return (self.a, self.b)


Gate = Union[Hadamard, ControlledNot, ControlledPhase]


@dataclass(frozen=True)
class CliffordCircuit:
    """Gates in time order: ``gates[0]`` acts on a state first."""

    n: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            qs = gate.qubits
            if any(not 0 <= q < self.n for q in qs):
                raise ValueError(f"{gate} acts outside {self.n} qubits")
            if len(set(qs)) != len(qs):
                raise ValueError(f"{gate} uses the same qubit twice")

    def __add__(self, other: "CliffordCircuit") -> "CliffordCircuit":
        if other.n != self.n:
            raise SizeMismatchError("circuits act on different qubit counts")
        return CliffordCircuit(self.n, self.gates + other.gates)


def _gate_images(gate: Gate, n: int):
    """Images of X_q and Z_q (q in gate.qubits) under conjugation by ``gate``."""
    X = lambda *qs: PauliString.on(n, "X", qs)
    Z = lambda *qs: PauliString.on(n, "Z", qs)
    if isinstance(gate, Hadamard):
        q = gate.q
        return {q: (Z(q), X(q))}
    if isinstance(gate, ControlledNot):
        c, t = gate.control, gate.target
        return {c: (X(c, t), Z(c)), t: (X(t), Z(c, t))}
    if isinstance(gate, ControlledPhase):
        a, b = gate.a, gate.b
        return {a: (X(a) * Z(b), Z(a)), b: (Z(a) * X(b), Z(b))}
    raise TypeError(f"unsupported gate {gate!r}")


def _conjugate_gate(p: PauliString, gate: Gate) -> PauliString:
    images = _gate_images(gate, p.n)
    touched = sum(1 << q for q in images)
    out = PauliString(p.n, p.x & ~touched, p.z & ~touched, p.phase)
    for q, (img_x, img_z) in images.items():
        xb, zb = p.x >> q & 1, p.z >> q & 1
        # P_q = i^(xb*zb) X^xb Z^zb
        if xb:
            out = multiply(out, img_x)
        if zb:
            out = multiply(out, img_z)
        if xb and zb:
            out = PauliString(out.n, out.x, out.z, out.phase + 1)
    return out


def conjugate(p: PauliString, c: CliffordCircuit) -> PauliString:
    """``U p U^dagger`` where ``U`` is the circuit unitary."""
    if p.n != c.n:
        raise SizeMismatchError(f"qubit counts differ: {p.n} vs {c.n}")
    for gate in c.gates:
        p = _conjugate_gate(p, gate)
    return p
