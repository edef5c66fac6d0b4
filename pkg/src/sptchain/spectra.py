"""Ground states and low spectra.

:func:`lowest_eigenpairs` is a thick-restart Lanczos solver with full
reorthogonalization.  It converges one eigenpair at a time and locks each
one, so exactly degenerate levels (which a single Krylov sequence cannot
resolve) are recovered one vector per round.  :func:`dense_spectrum` is the
explicit-matrix oracle for small chains.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from sptchain.hamiltonian import PauliSumOperator, apply
from sptchain.pauli import PauliString, commutes, multiply
from sptchain.state import StateVector

log = logging.getLogger(__name__)

DEFAULT_SEED = 1234
DEFAULT_K = 10
DEFAULT_TOL = 1e-10
DEFAULT_KRYLOV_DIM = 40
DEFAULT_MAX_RESTARTS = 300
DENSE_MAX_QUBITS = 12


class ConvergenceError(RuntimeError):
    pass


class SymmetryError(ValueError):
    pass


def degeneracy_tolerance(e0: float) -> float:
    return 1e-8 * max(1.0, abs(e0))


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: List[StateVector]
    converged: bool = True
    iterations: int = 0
    residuals: List[float] = field(default_factory=list)

    @property
    def degeneracy(self) -> int:
        e0 = self.eigenvalues[0]
        return int(np.sum(np.abs(self.eigenvalues - e0) <= degeneracy_tolerance(e0)))

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])


def _orthogonalize(w: np.ndarray, blocks: Sequence[np.ndarray]) -> np.ndarray:
    # classical Gram-Schmidt, repeated once when cancellation is severe
    for _ in range(2):
        before = np.linalg.norm(w)
        for b in blocks:
            if len(b):
                w = w - b.T @ (b.conj() @ w)
        if np.linalg.norm(w) > 0.7 * before:
            break
    return w


def _lowest_unlocked(
    matvec: Callable[[np.ndarray], np.ndarray],
    start: np.ndarray,
    locked: np.ndarray,
    tol: float,
    krylov_dim: int,
    max_restarts: int,
    keep: int = 4,
    check_every: int = 8,
):
    """Lowest eigenpair of ``matvec`` restricted to the complement of ``locked``.

    Returns ``(value, vector, residual, matvecs, converged)``.
    """
    dim = start.shape[0]
    avail = dim - len(locked)
    m = max(2, min(krylov_dim, avail))
    keep = min(keep, m - 1)
    V = np.empty((m, dim), dtype=start.dtype)
    W = np.empty((m, dim), dtype=start.dtype)

    v = _orthogonalize(start, [locked])
    V[0] = v / np.linalg.norm(v)
    W[0] = matvec(V[0])
    size, matvecs, restarts = 1, 1, 0
    while True:
        exhausted = False
        if size < m:
            w = _orthogonalize(W[size - 1], [locked, V[:size]])
            nrm = np.linalg.norm(w)
            if nrm < 1e-12 * max(1.0, np.linalg.norm(W[size - 1])):
                exhausted = True  # invariant subspace reached
            else:
                V[size] = w / nrm
                W[size] = matvec(V[size])
                size += 1
                matvecs += 1
        if not (exhausted or size == m or size % check_every == 0):
            continue
        T = V[:size].conj() @ W[:size].T
        vals, vecs = np.linalg.eigh((T + T.conj().T) / 2)
        theta = float(vals[0])
        x = vecs[:, 0] @ V[:size]
        r = vecs[:, 0] @ W[:size] - theta * x
        res_norm = float(np.linalg.norm(r))
        if res_norm < tol or exhausted:
            return theta, x, res_norm, matvecs, res_norm < max(tol, 1e-9)
        if size < m:
            continue
        if restarts == max_restarts:
            return theta, x, res_norm, matvecs, False
        restarts += 1
        k = min(keep, size)
        V[:k] = vecs[:, :k].T @ V[:size]
        W[:k] = vecs[:, :k].T @ W[:size]
        size = k
        # continue the Krylov sequence from the shared residual direction
        w = _orthogonalize(r, [locked, V[:size]])
        nrm = np.linalg.norm(w)
        if nrm < 1e-14:
            return theta, x, res_norm, matvecs, res_norm < tol
        V[size] = w / nrm
        W[size] = matvec(V[size])
        size += 1
        matvecs += 1


def _start_vector(dim: int, real: bool, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim)
    if not real:
        v = v + 1j * rng.normal(size=dim)
    return v


def _krylov_eigenpairs(
    n: int,
    matvec: Callable[[np.ndarray], np.ndarray],
    real: bool,
    k: int,
    tol: float,
    seed: int,
    krylov_dim: int,
    max_restarts: int,
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> SpectrumResult:
    dim = 1 << n
    if not 1 <= k <= dim:
        raise ValueError(f"k must be in [1, {dim}], got {k}")
    rng = np.random.default_rng(seed)
    dtype = np.float64 if real else np.complex128
    locked = np.empty((0, dim), dtype=dtype)
    values: List[float] = []
    residuals: List[float] = []
    total = 0
    all_converged = True
    for _ in range(k):
        start = None
        for _attempt in range(10):
            cand = _start_vector(dim, real, rng)
            if project is not None:
                cand = project(cand)
            cand = _orthogonalize(cand, [locked])
            if np.linalg.norm(cand) > 1e-8:
                start = cand
                break
        if start is None:
            raise ConvergenceError("start vector annihilated by the sector projector")
        theta, x, res, mv, ok = _lowest_unlocked(
            matvec, start, locked, tol, krylov_dim, max_restarts
        )
        total += mv
        if not ok:
            all_converged = False
            log.warning("Lanczos did not converge: residual %.3e after %d matvecs", res, mv)
        x = x / np.linalg.norm(x)
        values.append(theta)
        residuals.append(res)
        locked = np.vstack([locked, x[None, :]])
    order = np.argsort(values, kind="stable")
    vectors = [StateVector(n, locked[i].astype(np.complex128)) for i in order]
    return SpectrumResult(
        eigenvalues=np.asarray(values)[order],
        eigenvectors=vectors,
        converged=all_converged,
        iterations=total,
        residuals=[residuals[i] for i in order],
    )


def lowest_eigenpairs(
    h: PauliSumOperator,
    k: int = DEFAULT_K,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    krylov_dim: int = DEFAULT_KRYLOV_DIM,
    max_restarts: int = DEFAULT_MAX_RESTARTS,
) -> SpectrumResult:
    """The ``k`` lowest eigenpairs of ``h`` with residuals below ``tol``.

    Non-convergence is logged and reported through ``converged=False``.
    """
    real = h.is_real
    buf = np.empty(h.dim, dtype=np.float64 if real else np.complex128)

    def matvec(v):
        return apply(h, v, out=buf).copy()

    return _krylov_eigenpairs(h.n, matvec, real, k, tol, seed, krylov_dim, max_restarts)


def dense_spectrum(h: PauliSumOperator) -> SpectrumResult:
    if h.n > DENSE_MAX_QUBITS:
        raise ValueError(f"dense spectrum limited to {DENSE_MAX_QUBITS} qubits, got {h.n}")
    vals, vecs = np.linalg.eigh(h.to_dense())
    return SpectrumResult(
        eigenvalues=vals,
        eigenvectors=[StateVector(h.n, vecs[:, i]) for i in range(vecs.shape[1])],
    )


def group_elements(syms: Sequence[PauliString], n: int) -> List[PauliString]:
    """All ``2**len(syms)`` products of subsets of ``syms``."""
    elems = []
    for bits in itertools.product((0, 1), repeat=len(syms)):
        acc = PauliString.identity(n)
        for b, s in zip(bits, syms):
            if b:
                acc = multiply(acc, s)
        elems.append(acc)
    return elems


def sector_projector(syms: Sequence[PauliString], n: int) -> PauliSumOperator:
    """``prod_i (1 + S_i)/2`` written as the average over the generated group."""
    elems = group_elements(syms, n)
    return PauliSumOperator(n, [(1.0 / len(elems), g) for g in elems])


def check_symmetries(h: PauliSumOperator, syms: Sequence[PauliString]) -> None:
    for s in syms:
        if s.n != h.n:
            raise SymmetryError(f"symmetry {s} is not on {h.n} qubits")
        if not s.is_hermitian:
            raise SymmetryError(f"symmetry {s} does not square to +1")
        for _, p in h.terms:
            if not commutes(s, p):
                raise SymmetryError(f"{s} does not commute with term {p}")
    for a, b in itertools.combinations(syms, 2):
        if not commutes(a, b):
            raise SymmetryError(f"symmetries {a} and {b} anticommute")


def symmetric_spectrum(
    h: PauliSumOperator,
    syms: Sequence[PauliString],
    k: int = 1,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    krylov_dim: int = DEFAULT_KRYLOV_DIM,
    max_restarts: int = DEFAULT_MAX_RESTARTS,
) -> SpectrumResult:
    """Lowest eigenpairs of ``h`` inside the joint +1 eigenspace of ``syms``."""
    check_symmetries(h, syms)
    proj = sector_projector(syms, h.n)
    real = h.is_real and proj.is_real
    dtype = np.float64 if real else np.complex128
    hbuf = np.empty(h.dim, dtype=dtype)
    pbuf = np.empty(h.dim, dtype=dtype)

    def project(v):
        return apply(proj, v, out=pbuf).copy()

    def matvec(v):
        # P H P; the outer P removes rounding leakage out of the sector
        return project(apply(h, project(v), out=hbuf))

    return _krylov_eigenpairs(
        h.n, matvec, real, k, tol, seed, krylov_dim, max_restarts, project=project
    )


def symmetric_ground_state(
    h: PauliSumOperator,
    syms: Sequence[PauliString],
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    krylov_dim: int = DEFAULT_KRYLOV_DIM,
) -> StateVector:
    res = symmetric_spectrum(h, syms, 1, tol, seed, krylov_dim)
    v = res.eigenvectors[0]
    for s in syms:
        if np.linalg.norm(v.apply_pauli(s).amplitudes - v.amplitudes) > 1e-8:
            raise SymmetryError(f"returned state is not invariant under {s}")
    return v
