"""Region entropies and the tripartite / quadripartite topological entanglement entropy.

For a cut of the chain into contiguous blocks, the topological entropy is
``S_AB + S_BC - S_B - S_ABC`` (all in bits).  The tripartite cut uses blocks
``A | B | C``; the quadripartite cut uses ``A | B | D | C`` with the bulk block
``D`` traced out, so ``S_ABC`` is the entropy of ``D``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence

import numpy as np

from sptchain.state import StateVector

MAX_SUBSET = 14
CLIP = 1e-12


class CutKind(str, enum.Enum):
    TRIPARTITE = "tripartite"
    QUADRIPARTITE = "quadripartite"


_KIND_ALIASES = {"t": CutKind.TRIPARTITE, "q": CutKind.QUADRIPARTITE}


def as_kind(kind) -> CutKind:
    if isinstance(kind, str) and kind in _KIND_ALIASES:
        return _KIND_ALIASES[kind]
    return CutKind(kind)


@dataclass(frozen=True)
class CutLayout:
    n: int
    regions: Mapping[str, FrozenSet[int]]
    kind: CutKind

    def __post_init__(self):
        kind = as_kind(self.kind)
        object.__setattr__(self, "kind", kind)
        regions = {k: frozenset(v) for k, v in self.regions.items()}
        object.__setattr__(self, "regions", regions)
        expected = {"A", "B", "C"} | ({"D"} if kind is CutKind.QUADRIPARTITE else set())
        if set(regions) != expected:
            raise ValueError(f"{kind.value} layout needs regions {sorted(expected)}")
        seen: set = set()
        for label, qs in regions.items():
            if not qs:
                raise ValueError(f"region {label} is empty")
            if seen & qs:
                raise ValueError("regions overlap")
            seen |= qs
        if seen != set(range(self.n)):
            raise ValueError("regions do not cover the chain")

    def __getitem__(self, label: str) -> FrozenSet[int]:
        return self.regions[label]

    def describe(self) -> str:
        """Regions as 1-based inclusive ranges."""
        parts = []
        for label in ("A", "B", "D", "C"):
            if label in self.regions:
                qs = sorted(self.regions[label])
                parts.append(f"{label}={qs[0] + 1}..{qs[-1] + 1}")
        return " ".join(parts)


def _blocks(sizes: Sequence[int], labels: Sequence[str]) -> Dict[str, FrozenSet[int]]:
    out, start = {}, 0
    for label, size in zip(labels, sizes):
        out[label] = frozenset(range(start, start + size))
        start += size
    return out


def _even_sizes(n: int, parts: int):
    base, extra = divmod(n, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def make_layout(n: int, kind, ends: Optional[Sequence[int]] = None) -> CutLayout:
    """Contiguous blocks, as equal as possible with the remainder placed left-first.

    ``ends`` overrides the block boundaries with 1-based inclusive right ends:
    ``(a_end, b_end)`` for tripartite, ``(a_end, b_end, d_end)`` for quadripartite
    (chain order A, B, D, C).
    """
    kind = as_kind(kind)
    labels = ["A", "B", "C"] if kind is CutKind.TRIPARTITE else ["A", "B", "D", "C"]
    minimum = 6 if kind is CutKind.TRIPARTITE else 8
    if ends is None:
        if n < minimum:
            raise ValueError(f"{kind.value} layout needs n >= {minimum}, got {n}")
        sizes = _even_sizes(n, len(labels))
    else:
        ends = list(ends)
        if len(ends) != len(labels) - 1:
            raise ValueError(f"{kind.value} cuts need {len(labels) - 1} ends, got {len(ends)}")
        bounds = [0] + ends + [n]
        sizes = [b - a for a, b in zip(bounds, bounds[1:])]
        if any(s <= 0 for s in sizes):
            raise ValueError(f"cut ends {ends} do not give nonempty blocks of 1..{n}")
    return CutLayout(n, _blocks(sizes, labels), kind)


def _check_norm(v: StateVector) -> np.ndarray:
    amps = v.amplitudes
    nrm = np.linalg.norm(amps)
    if abs(nrm - 1) > 1e-10:
        warnings.warn(f"state not normalized (norm {nrm:.3e}); normalizing", stacklevel=3)
        amps = amps / nrm
    return amps


def _bipartition(amps: np.ndarray, n: int, subset: Sequence[int]) -> np.ndarray:
    """Amplitudes as a ``2**|subset| x 2**(n-|subset|)`` matrix.

    Row index bit ``i`` is the ``i``-th smallest qubit of ``subset``.
    """
    subset = sorted(subset)
    rest = [q for q in range(n) if q not in set(subset)]
    # qubit j lives on axis n-1-j; list most significant first
    axes = [n - 1 - q for q in reversed(subset)] + [n - 1 - q for q in reversed(rest)]
    t = amps.reshape((2,) * n).transpose(axes)
    return t.reshape(1 << len(subset), 1 << len(rest))


def reduced_density(v: StateVector, subset: Iterable[int], cap: int = MAX_SUBSET) -> np.ndarray:
    subset = sorted(set(subset))
    if any(not 0 <= q < v.n for q in subset):
        raise ValueError("subset index out of range")
    if len(subset) > cap:
        raise ValueError(f"subset of {len(subset)} qubits exceeds cap {cap}")
    m = _bipartition(_check_norm(v), v.n, subset)
    return m @ m.conj().T


def von_neumann_bits(rho: np.ndarray) -> float:
    lam = np.linalg.eigvalsh(rho)
    if lam.min() < -1e-9:
        raise ValueError(f"density matrix has negative eigenvalue {lam.min():.3e}")
    lam = lam[lam > CLIP]
    return float(-np.sum(lam * np.log2(lam))) + 0.0


def region_entropy(v: StateVector, subset: Iterable[int]) -> float:
    """Entropy of ``subset`` in a pure state, evaluated on the smaller side of the cut."""
    subset = set(subset)
    complement = set(range(v.n)) - subset
    smaller = subset if len(subset) <= len(complement) else complement
    if not smaller:
        return 0.0
    return von_neumann_bits(reduced_density(v, smaller))


@dataclass(frozen=True)
class TopoEntropyRecord:
    s_ab: float
    s_bc: float
    s_b: float
    s_abc: float
    s_topo: float
    layout: CutLayout


def topo_regions(layout: CutLayout) -> Dict[str, FrozenSet[int]]:
    """The four regions entering the combination, keyed ``AB``, ``BC``, ``B``, ``ABC``."""
    r = layout.regions
    return {
        "AB": r["A"] | r["B"],
        "BC": r["B"] | r["C"],
        "B": r["B"],
        "ABC": r["A"] | r["B"] | r["C"],
    }


def topo_entropy(v: StateVector, layout: CutLayout) -> TopoEntropyRecord:
    if layout.n != v.n:
        raise ValueError(f"layout is for {layout.n} qubits, state has {v.n}")
    s = {key: region_entropy(v, qs) for key, qs in topo_regions(layout).items()}
    s_topo = s["AB"] + s["BC"] - s["B"] - s["ABC"]
    return TopoEntropyRecord(s["AB"], s["BC"], s["B"], s["ABC"], s_topo, layout)
