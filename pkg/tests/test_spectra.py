import logging

import numpy as np
import pytest

from sptchain import hamiltonian as ham
from sptchain.hamiltonian import ModelSpec, PauliSumOperator, build
from sptchain.pauli import PauliString
from sptchain.spectra import (
    SymmetryError,
    check_symmetries,
    dense_spectrum,
    group_elements,
    lowest_eigenpairs,
    sector_projector,
    symmetric_ground_state,
    symmetric_spectrum,
)
from sptchain.state import StateVector
from sptchain.transforms import cluster_state

MODELS = ["clu", "syb", "zxxz"]


def _sizes(model):
    return range(6 if model == "zxxz" else 4, 11)


def test_dense_single_term():
    h = PauliSumOperator(1, [(-1.0, PauliString.from_label("X"))])
    assert np.allclose(dense_spectrum(h).eigenvalues, [-1, 1])


def test_dense_refuses_large_chains():
    with pytest.raises(ValueError):
        dense_spectrum(build(ModelSpec("clu", 13)))


def test_cluster_n8_degeneracy_and_gap():
    res = lowest_eigenpairs(build(ModelSpec("clu", 8)), k=6)
    assert res.converged
    assert np.allclose(res.eigenvalues[:4], -6, atol=1e-10)
    assert res.degeneracy == 4
    assert abs(res.eigenvalues[4] - (-4)) < 1e-10


def test_zxxz_n9_degeneracy():
    res = lowest_eigenpairs(build(ModelSpec("zxxz", 9)), k=10)
    assert res.degeneracy == 8


def test_syb_n4_dense_degeneracy():
    res = dense_spectrum(build(ModelSpec("syb", 4)))
    assert res.degeneracy == 4
    assert abs(res.ground_energy + 2) < 1e-12


@pytest.mark.parametrize(
    "model,n,want",
    [("clu", 10, 4), ("clu", 9, 4), ("syb", 10, 4), ("zxxz", 12, 8)],
)
def test_degeneracy_is_two_to_the_logical_count(model, n, want):
    spec = ModelSpec(model, n)
    assert want == 2 ** (n - len(ham.stabilizer_group(spec)))
    assert lowest_eigenpairs(build(spec), k=10).degeneracy == want


def test_periodic_cluster_ground_is_unique():
    assert lowest_eigenpairs(build(ModelSpec("clu", 10, boundary="periodic")), k=3).degeneracy == 1


def test_eigenvectors_are_orthonormal_eigenvectors():
    h = build(ModelSpec("zxxz", 9))
    res = lowest_eigenpairs(h, k=10)
    assert list(res.eigenvalues) == sorted(res.eigenvalues)
    vs = np.array([v.amplitudes for v in res.eigenvectors])
    assert np.allclose(vs.conj() @ vs.T, np.eye(10), atol=1e-8)
    dense = h.to_dense()
    for e, v in zip(res.eigenvalues, res.eigenvectors):
        assert np.linalg.norm(dense @ v.amplitudes - e * v.amplitudes) < 1e-8


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("b", [0.0, 0.5, 1.0, 1.5])
def test_lanczos_matches_dense(model, b):
    for n in _sizes(model):
        h = build(ModelSpec(model, n, b))
        lan = lowest_eigenpairs(h, k=6)
        assert lan.converged
        den = dense_spectrum(h).eigenvalues[:6]
        assert np.max(np.abs(lan.eigenvalues - den)) < 1e-10


def test_lanczos_is_deterministic():
    h = build(ModelSpec("clu", 10, 0.8))
    a = lowest_eigenpairs(h, k=2, seed=7)
    b = lowest_eigenpairs(h, k=2, seed=7)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors[0].amplitudes, b.eigenvectors[0].amplitudes)


def test_lanczos_reports_non_convergence(caplog):
    h = build(ModelSpec("clu", 12, 0.9))
    with caplog.at_level(logging.WARNING):
        res = lowest_eigenpairs(h, k=1, tol=1e-13, krylov_dim=3, max_restarts=2)
    assert not res.converged
    assert "did not converge" in caplog.text


def test_lowest_eigenpairs_rejects_bad_k():
    with pytest.raises(ValueError):
        lowest_eigenpairs(build(ModelSpec("clu", 4)), k=0)


def test_full_spectrum_of_small_chain():
    h = build(ModelSpec("clu", 4, 0.3))
    res = lowest_eigenpairs(h, k=16)
    assert np.allclose(res.eigenvalues, dense_spectrum(h).eigenvalues, atol=1e-10)


def test_group_elements_and_projector():
    syms = ham.symmetry_generators(ModelSpec("zxxz", 6))
    assert len(group_elements(syms, 6)) == 8
    proj = sector_projector(syms, 6).to_dense()
    assert np.allclose(proj @ proj, proj, atol=1e-12)
    assert abs(np.trace(proj).real - 64 / 8) < 1e-12


def test_check_symmetries_rejects_bad_generators():
    h = build(ModelSpec("clu", 6))
    with pytest.raises(SymmetryError):
        check_symmetries(h, [PauliString.on(6, "Z", [2])])
    with pytest.raises(SymmetryError):
        check_symmetries(h, [PauliString.on(6, "X", [0, 2, 4], phase=1)])
    with pytest.raises(SymmetryError):
        check_symmetries(h, [PauliString.on(5, "X", [0])])


def test_syb_n4_symmetric_state_is_equal_superposition():
    spec = ModelSpec("syb", 4)
    v = symmetric_ground_state(build(spec), ham.symmetry_generators(spec))
    want = np.zeros(16)
    want[[0b0000, 0b0101, 0b1010, 0b1111]] = 0.5
    assert abs(v.fidelity(StateVector(4, want)) - 1) < 1e-10


def test_symmetric_cluster_state_is_periodic_cluster_state():
    spec = ModelSpec("clu", 8)
    v = symmetric_ground_state(build(spec), ham.symmetry_generators(spec))
    assert v.fidelity(cluster_state(8, "periodic")) > 1 - 1e-10


def test_strong_field_ground_state_is_all_minus():
    h = build(ModelSpec("clu", 6, 50.0))
    v = dense_spectrum(h).eigenvectors[0]
    minus = StateVector.product(6, np.array([1, -1]) / np.sqrt(2))
    assert v.fidelity(minus) > 1 - 1e-4


def test_symmetric_state_at_strong_field_n8():
    # the field favours |->, which for N=8 lies in the all-+1 sector
    spec = ModelSpec("clu", 8, 10.0)
    v = symmetric_ground_state(build(spec), ham.symmetry_generators(spec))
    minus = StateVector.product(8, np.array([1, -1]) / np.sqrt(2))
    assert v.fidelity(minus) > 0.99


@pytest.mark.parametrize("model", MODELS)
def test_symmetric_state_matches_dense_projection(model):
    for n in (6, 8, 10):
        for b in (0.0, 0.6, 1.4):
            spec = ModelSpec(model, n, b)
            h = build(spec)
            syms = ham.symmetry_generators(spec)
            dense = h.to_dense()
            proj = sector_projector(syms, n).to_dense()
            # orthonormal basis of the sector, then diagonalize inside it
            w, u = np.linalg.eigh(proj)
            basis = u[:, w > 0.5]
            vals, vecs = np.linalg.eigh(basis.conj().T @ dense @ basis)
            ref = StateVector(n, basis @ vecs[:, 0])
            res = symmetric_spectrum(h, syms)
            assert abs(res.ground_energy - vals[0]) < 1e-9
            if vals[1] - vals[0] > 1e-6:
                assert res.eigenvectors[0].fidelity(ref) > 1 - 1e-8


@pytest.mark.parametrize("model", MODELS)
def test_symmetric_energy_bounds_and_purity(model):
    n = 9 if model == "zxxz" else 8
    for b in (0.0, 0.5, 1.0, 2.0):
        spec = ModelSpec(model, n, b)
        h = build(spec)
        syms = ham.symmetry_generators(spec)
        res = symmetric_spectrum(h, syms)
        e0 = lowest_eigenpairs(h, k=1).ground_energy
        assert res.ground_energy >= e0 - 1e-10
        if b == 0:
            assert abs(res.ground_energy - e0) < 1e-10
        for s in syms:
            assert abs(res.eigenvectors[0].expectation(s) - 1) < 1e-8


@pytest.mark.parametrize("model", MODELS)
def test_field_sector_holds_the_exact_ground_state(model):
    for n in (6, 7, 8, 9, 10):
        if model == "zxxz" and n < 6:
            continue
        for b in (0.3, 1.0, 2.0):
            spec = ModelSpec(model, n, b)
            h = build(spec)
            res = symmetric_spectrum(h, ham.field_sector_generators(spec))
            assert abs(res.ground_energy - dense_spectrum(h).ground_energy) < 1e-9


def test_symmetric_spectrum_several_levels():
    spec = ModelSpec("clu", 8, 0.4)
    res = symmetric_spectrum(build(spec), ham.symmetry_generators(spec), k=3)
    assert list(res.eigenvalues) == sorted(res.eigenvalues)
    for v in res.eigenvectors:
        for s in ham.symmetry_generators(spec):
            assert abs(v.expectation(s) - 1) < 1e-8
