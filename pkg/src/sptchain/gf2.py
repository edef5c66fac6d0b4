"""GF(2) linear algebra on int bitsets (bit j of an int is column j)."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, List


def popcount(v: int) -> int:
    return v.bit_count()


def rref(rows: Iterable[int]) -> List[int]:
    """Reduced row-echelon basis of the row span, pivots taken from the highest bit down.

    The result is unique for a given span, so it doubles as a canonical form.
    """
    basis: List[int] = []
    for r in rows:
        for b in basis:
            if r & (1 << (b.bit_length() - 1)):
                r ^= b
        if r:
            lead = 1 << (r.bit_length() - 1)
            basis = [b ^ r if b & lead else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def in_span(v: int, basis: List[int]) -> bool:
    """Membership test; ``basis`` must come from :func:`rref`."""
    for b in basis:
        if v & (1 << (b.bit_length() - 1)):
            v ^= b
    return v == 0


def nullspace(rows: Iterable[int], n_cols: int) -> List[int]:
    """Basis of ``{v : popcount(v & r) even for every r}``, in rref form."""
    basis = rref(rows)
    pivots = [b.bit_length() - 1 for b in basis]
    free = [c for c in range(n_cols) if c not in set(pivots)]
    kernel = []
    for f in free:
        v = 1 << f
        for b, p in zip(basis, pivots):
            if b >> f & 1:
                v |= 1 << p
        kernel.append(v)
    return rref(kernel)


def span(basis: List[int]) -> Iterator[int]:
    """Every element of the span (2**len(basis) of them), zero first."""
    yield 0
    for k in range(1, len(basis) + 1):
        for combo in combinations(basis, k):
            acc = 0
            for b in combo:
                acc ^= b
            yield acc
