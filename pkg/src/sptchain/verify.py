"""Self-checks run by ``sptchain verify``; each check returns a :class:`Check`."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

import numpy as np

from sptchain import hamiltonian as ham
from sptchain import pauli
from sptchain.entropy import make_layout, topo_entropy, topo_regions, region_entropy
from sptchain.hamiltonian import ModelSpec
from sptchain.pauli import PauliString, StabilizerGroup
from sptchain.spectra import (
    dense_spectrum,
    lowest_eigenpairs,
    symmetric_ground_state,
    symmetric_spectrum,
)
from sptchain.state import StateVector
from sptchain import transforms as tf


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False

    def as_dict(self):
        return asdict(self)


def _pauli_checks() -> List[Check]:
    out = []
    P = PauliString.from_label
    out.append(Check("pauli", "X*Z = -iY", str(P("X") * P("Z")) == "-iY"))
    for n in (8, 10, 12):
        spec = ModelSpec("clu", n)
        opened = StabilizerGroup(
            n, ham.stabilizer_group(spec).generators + tuple(ham.symmetry_generators(spec))
        )
        ring = ham.stabilizer_group(ModelSpec("clu", n, boundary="periodic"))
        eq = pauli.groups_equal(opened, ring)
        out.append(Check("pauli", f"open cluster + logicals == periodic cluster, N={n}", eq))
    n = 9
    spec = ModelSpec("clu", n)
    opened = StabilizerGroup(
        n, ham.stabilizer_group(spec).generators + tuple(ham.symmetry_generators(spec))
    )
    ring = ham.stabilizer_group(ModelSpec("clu", n, boundary="periodic"))
    out.append(
        Check(
            "pauli",
            "odd-N periodic equivalence, N=9 (reported only)",
            True,
            f"groups_equal={pauli.groups_equal(opened, ring)}",
            informational=True,
        )
    )
    for n in range(4, 16):
        d = pauli.classical_distance(ham.stabilizer_group(ModelSpec("clu", n)))
        out.append(Check("pauli", f"cluster classical distance N={n}", d == n // 2, f"d={d}"))
    for n in range(6, 16):
        d = pauli.classical_distance(ham.stabilizer_group(ModelSpec("zxxz", n)))
        out.append(Check("pauli", f"zxxz classical distance N={n}", d == n // 3, f"d={d}"))
    g = ham.stabilizer_group(ModelSpec("clu", 8))
    z1 = PauliString.on(8, "Z", [0])
    witness = all(pauli.commutes(z1, p) for p in g.generators) and not pauli.contains(g, z1)
    out.append(Check("pauli", "Z_1 is a weight-1 logical (quantum distance 1)", witness))
    return out


def _transform_checks() -> List[Check]:
    out = []
    chain = tf.SiteChain(3)
    circ = tf.onsite_circuit(chain)
    n = chain.n_qubits
    for i in range(chain.n_sites):
        ir, jl, jr = chain.right(i), chain.left((i + 1) % 3), chain.right((i + 1) % 3)
        il = chain.left(i)
        xx = PauliString.on(n, "X", [ir, jl])
        zz = PauliString.on(n, "Z", [ir, jl])
        want1 = PauliString.on(n, "Z", [ir, jr]) * PauliString.on(n, "X", [jl])
        want2 = PauliString.on(n, "Z", [il, jl]) * PauliString.on(n, "X", [ir])
        out.append(
            Check("transforms", f"XX bond -> ZXZ, site {i + 1}", pauli.conjugate(xx, circ) == want1)
        )
        out.append(
            Check("transforms", f"ZZ bond -> ZXZ, site {i + 1}", pauli.conjugate(zz, circ) == want2)
        )
    for sites in (4, 5, 6):
        chain = tf.SiteChain(sites)
        circ = tf.onsite_circuit(chain)
        fa = tf.apply_circuit(tf.build_psi_a(chain), circ).fidelity(
            tf.cluster_state(chain.n_qubits, "periodic")
        )
        fb = tf.apply_circuit(tf.build_psi_b(chain), circ).fidelity(
            StateVector.plus(chain.n_qubits)
        )
        out.append(
            Check("transforms", f"Psi_a -> cluster state, 2n={chain.n_qubits}", fa > 1 - 1e-12, f"{fa:.15f}")
        )
        out.append(
            Check("transforms", f"Psi_b -> |+>^2n, 2n={chain.n_qubits}", fb > 1 - 1e-12, f"{fb:.15f}")
        )
    return out


def _spectra_checks() -> List[Check]:
    out = []
    for model, n, want in [("clu", 8, 4), ("clu", 10, 4), ("syb", 8, 4), ("zxxz", 9, 8)]:
        res = lowest_eigenpairs(ham.build(ModelSpec(model, n)), k=10)
        out.append(
            Check("spectra", f"{model} N={n} B=0 degeneracy", res.degeneracy == want, f"{res.degeneracy}")
        )
    for model in ("clu", "syb", "zxxz"):
        h = ham.build(ModelSpec(model, 8, 0.7))
        lan = lowest_eigenpairs(h, k=6).eigenvalues
        den = dense_spectrum(h).eigenvalues[:6]
        err = float(np.max(np.abs(lan - den)))
        out.append(Check("spectra", f"{model} N=8 B=0.7 Lanczos vs dense", err < 1e-10, f"{err:.2e}"))
    spec = ModelSpec("clu", 8)
    v = symmetric_ground_state(ham.build(spec), ham.symmetry_generators(spec))
    f = v.fidelity(tf.cluster_state(8, "periodic"))
    out.append(Check("spectra", "symmetric H_clu(0) state == periodic cluster state", f > 1 - 1e-10, f"{f:.15f}"))
    return out


def _entropy_checks() -> List[Check]:
    out = []
    expected = {"clu": (2, 2), "syb": (2, 0), "zxxz": (3, 2)}
    for model, (st, sq) in expected.items():
        spec = ModelSpec(model, 12)
        v = symmetric_ground_state(ham.build(spec), ham.symmetry_generators(spec))
        group = ham.symmetric_stabilizer_group(spec)
        for kind, want in (("t", st), ("q", sq)):
            layout = make_layout(12, kind)
            rec = topo_entropy(v, layout)
            out.append(
                Check("entropy", f"{model} N=12 S^{kind} = {want}", abs(rec.s_topo - want) < 1e-6, f"{rec.s_topo:.10f}")
            )
            worst = max(
                abs(region_entropy(v, qs) - pauli.stabilizer_entropy(group, qs))
                for qs in topo_regions(layout).values()
            )
            out.append(
                Check("entropy", f"{model} N=12 {kind}-cut regions vs stabilizer oracle", worst < 1e-9, f"{worst:.2e}")
            )
    return out


SUITES: Dict[str, Callable[[], List[Check]]] = {
    "pauli": _pauli_checks,
    "spectra": _spectra_checks,
    "entropy": _entropy_checks,
    "transforms": _transform_checks,
}


def run(suite: str = "all") -> List[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    checks: List[Check] = []
    for name in names:
        checks.extend(SUITES[name]())
    return checks
