import numpy as np
import pytest
from hypothesis import given, strategies as st

from sptchain import hamiltonian as ham
from sptchain import pauli
from sptchain.entropy import (
    CutKind,
    CutLayout,
    make_layout,
    reduced_density,
    region_entropy,
    topo_entropy,
    topo_regions,
    von_neumann_bits,
)
from sptchain.hamiltonian import ModelSpec, build
from sptchain.spectra import symmetric_ground_state
from sptchain.state import StateVector
from sptchain.transforms import cluster_state

BELL = StateVector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))


def ghz(n):
    amps = np.zeros(1 << n)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(n, amps)


def symmetric_state(model, n, b=0.0):
    spec = ModelSpec(model, n, b)
    return symmetric_ground_state(build(spec), ham.symmetry_generators(spec))


def random_unitary(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_local(v, u, qubits):
    """Apply a 2**k unitary ``u`` to ``qubits`` (first listed = most significant)."""
    n = v.n
    axes = [n - 1 - q for q in qubits]
    t = v.amplitudes.reshape((2,) * n)
    t = np.moveaxis(t, axes, range(len(axes)))
    shape = t.shape
    t = (u @ t.reshape(1 << len(qubits), -1)).reshape(shape)
    return StateVector(n, np.moveaxis(t, range(len(axes)), axes).reshape(-1))


# --- layouts -------------------------------------------------------------------


def test_layout_tripartite_n12():
    lay = make_layout(12, "t")
    assert lay.kind is CutKind.TRIPARTITE
    assert lay.describe() == "A=1..4 B=5..8 C=9..12"


def test_layout_quadripartite_n12():
    lay = make_layout(12, "q")
    assert lay.describe() == "A=1..3 B=4..6 D=7..9 C=10..12"


def test_layout_n9_tripartite_sizes():
    lay = make_layout(9, "tripartite")
    assert [len(lay[k]) for k in "ABC"] == [3, 3, 3]


def test_layout_remainder_goes_left():
    lay = make_layout(14, "q")
    assert [len(lay[k]) for k in "ABDC"] == [4, 4, 3, 3]


def test_layout_explicit_ends():
    lay = make_layout(12, "q", ends=[2, 6, 10])
    assert lay.describe() == "A=1..2 B=3..6 D=7..10 C=11..12"
    with pytest.raises(ValueError):
        make_layout(12, "q", ends=[2, 6])
    with pytest.raises(ValueError):
        make_layout(12, "t", ends=[6, 6])
    with pytest.raises(ValueError):
        make_layout(12, "t", ends=[4, 12])


def test_layout_validation():
    with pytest.raises(ValueError):
        make_layout(5, "t")
    with pytest.raises(ValueError):
        make_layout(12, "x")
    with pytest.raises(ValueError):
        CutLayout(4, {"A": frozenset({0, 1}), "B": frozenset({1, 2}), "C": frozenset({3})}, "t")
    with pytest.raises(ValueError):
        CutLayout(4, {"A": frozenset({0}), "B": frozenset({1}), "C": frozenset({2})}, "t")


# --- reduced density and entropy ---------------------------------------------------


def test_bell_marginal_is_maximally_mixed():
    assert np.allclose(reduced_density(BELL, [0]), np.eye(2) / 2)


def test_ghz_marginal():
    rho = reduced_density(ghz(4), [0, 1])
    want = np.zeros((4, 4))
    want[0, 0] = want[3, 3] = 0.5
    assert np.allclose(rho, want)
    assert abs(von_neumann_bits(rho) - 1) < 1e-12


def test_reduced_density_ordering():
    # |q0 q1 q2> = |1 0 0>: index 1
    v = StateVector.basis(3, 0b001)
    rho = reduced_density(v, [0, 2])
    # row bit 0 is qubit 0, bit 1 is qubit 2
    assert rho[0b01, 0b01] == 1


def test_reduced_density_properties():
    v = StateVector.random(8, seed=5)
    for subset in ([0], [1, 5], [0, 2, 3, 7], range(8)):
        rho = reduced_density(v, subset)
        assert np.allclose(rho, rho.conj().T)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_reduced_density_matches_explicit_partial_trace():
    v = StateVector.random(4, seed=6)
    full = np.outer(v.amplitudes, v.amplitudes.conj()).reshape((2,) * 8)
    # axes: out q3 q2 q1 q0 | in q3 q2 q1 q0; trace qubits 1 and 3
    traced = np.einsum("abcdaecf->bdef", full)
    rho = reduced_density(v, [0, 2])
    assert np.allclose(rho, traced.reshape(4, 4))


def test_reduced_density_warns_and_normalizes():
    v = StateVector(2, np.array([2, 0, 0, 2.0]))
    with pytest.warns(UserWarning):
        rho = reduced_density(v, [0])
    assert np.allclose(rho, np.eye(2) / 2)


def test_reduced_density_caps_subset():
    with pytest.raises(ValueError):
        reduced_density(StateVector.plus(6), [0, 1, 2], cap=2)
    with pytest.raises(ValueError):
        reduced_density(StateVector.plus(3), [3])


def test_von_neumann_examples():
    psi = np.array([0.6, 0.8j])
    assert abs(von_neumann_bits(np.outer(psi, psi.conj()))) < 1e-12
    assert abs(von_neumann_bits(np.eye(4) / 4) - 2) < 1e-12
    with pytest.raises(ValueError):
        von_neumann_bits(np.diag([1.5, -0.5]))


def test_cluster_block_matches_stabilizer_oracle():
    v = cluster_state(12, "periodic")
    ring = ham.stabilizer_group(ModelSpec("clu", 12, boundary="periodic"))
    block = [4, 5, 6, 7]
    assert abs(von_neumann_bits(reduced_density(v, block)) - 2) < 1e-10
    assert pauli.stabilizer_entropy(ring, block) == 2


def test_region_entropy_of_product_state_is_zero():
    v = StateVector.plus(7)
    for subset in ([0], [1, 2, 3], [0, 6]):
        assert abs(region_entropy(v, subset)) < 1e-12


def test_region_entropy_uses_smaller_side():
    v = StateVector.random(16, seed=9)
    # a 15-qubit region would exceed the cap if evaluated directly
    assert abs(region_entropy(v, range(15)) - region_entropy(v, [15])) < 1e-10


def test_clu_bc_region_is_four_bits():
    v = symmetric_state("clu", 12)
    lay = make_layout(12, "q")
    assert abs(region_entropy(v, lay["B"] | lay["C"]) - 4) < 1e-8


@given(st.integers(0, 2**20), st.integers(0, (1 << 8) - 1))
def test_entropy_complement_symmetry(seed, mask):
    v = StateVector.random(8, seed=seed)
    region = [q for q in range(8) if mask >> q & 1]
    comp = [q for q in range(8) if not mask >> q & 1]
    assert abs(region_entropy(v, region) - region_entropy(v, comp)) < 1e-10


@given(st.integers(0, 2**20), st.integers(1, (1 << 8) - 2))
def test_entropy_bounds(seed, mask):
    v = StateVector.random(8, seed=seed)
    region = [q for q in range(8) if mask >> q & 1]
    s = region_entropy(v, region)
    assert -1e-12 <= s <= min(len(region), 8 - len(region)) + 1e-12


# --- topological entropy -----------------------------------------------------------


@pytest.mark.parametrize(
    "model,kind,want",
    [
        ("clu", "t", 2),
        ("clu", "q", 2),
        ("syb", "t", 2),
        ("syb", "q", 0),
        ("zxxz", "t", 3),
        ("zxxz", "q", 2),
    ],
)
def test_quantized_values_n12(model, kind, want):
    rec = topo_entropy(symmetric_state(model, 12), make_layout(12, kind))
    assert abs(rec.s_topo - want) < 1e-6
    assert rec.s_topo == rec.s_ab + rec.s_bc - rec.s_b - rec.s_abc


def test_zxxz_small_chain_saturates_at_two():
    rec = topo_entropy(symmetric_state("zxxz", 6), make_layout(6, "t"))
    assert abs(rec.s_topo - 2) < 1e-6


@pytest.mark.parametrize("model", ["clu", "syb", "zxxz"])
@pytest.mark.parametrize("n", [8, 9, 12])
@pytest.mark.parametrize("kind", ["t", "q"])
def test_regions_match_stabilizer_oracle(model, n, kind):
    spec = ModelSpec(model, n)
    v = symmetric_ground_state(build(spec), ham.symmetry_generators(spec))
    group = ham.symmetric_stabilizer_group(spec)
    for qs in topo_regions(make_layout(n, kind)).values():
        assert abs(region_entropy(v, qs) - pauli.stabilizer_entropy(group, qs)) < 1e-9


def test_product_state_has_no_topological_entropy():
    for kind in "tq":
        assert abs(topo_entropy(StateVector.plus(12), make_layout(12, kind)).s_topo) < 1e-12


def test_topo_entropy_checks_size():
    with pytest.raises(ValueError):
        topo_entropy(StateVector.plus(8), make_layout(12, "t"))


@pytest.mark.parametrize("kind", ["t", "q"])
def test_local_unitary_inside_one_region_changes_nothing(kind, rng):
    v = symmetric_state("clu", 12, 0.6)
    lay = make_layout(12, kind)
    before = {k: region_entropy(v, qs) for k, qs in topo_regions(lay).items()}
    inner = sorted(lay["B"])[1:3]
    w = apply_local(v, random_unitary(4, rng), inner)
    after = {k: region_entropy(w, qs) for k, qs in topo_regions(lay).items()}
    for k in before:
        assert abs(before[k] - after[k]) < 1e-10
    assert abs(topo_entropy(v, lay).s_topo - topo_entropy(w, lay).s_topo) < 1e-10


def test_additivity_on_products():
    v = symmetric_state("clu", 9, 0.4)
    w = StateVector.random(3, seed=1)
    lay_v = make_layout(9, "t")
    # v occupies qubits 0..8 and the layout's C block absorbs w's qubits 9..11
    lay_vw = make_layout(12, "t", ends=[3, 6])
    assert abs(topo_entropy(v.tensor(w), lay_vw).s_topo - topo_entropy(v, lay_v).s_topo) < 1e-10


def test_layout_with_d_at_the_end_misses_cluster_signal():
    # chain order A,B,C,D instead of A,B,D,C gives zero for the cluster state
    v = symmetric_state("clu", 12)
    blocks = [frozenset(range(3 * k, 3 * k + 3)) for k in range(4)]
    lay = CutLayout(12, dict(zip("ABCD", blocks)), "q")
    assert abs(topo_entropy(v, lay).s_topo) < 1e-8
