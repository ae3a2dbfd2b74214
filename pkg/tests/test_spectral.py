import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsl2r.qspecial import QParams, normalized_asc
from qsl2r.spectral import (JacobiOperator, VerificationError, atom_polynomials, moment_check,
                            orthonormal_polynomials, outliers, predicted_atoms,
                            spectral_measure, truncated_eigendecomposition, twisted_casimir_jacobi,
                            vacuum_atom_weights)

generic_a = st.floats(0.05, 2.45).filter(lambda a: abs(2 * a - round(2 * a)) > 0.02)
signs = st.sampled_from([1, -1])


def _atoms_vs_truncation(sign, c, p, n=200):
    mu = spectral_measure(sign, c, p)
    j = twisted_casimir_jacobi(sign, c, n, p)
    out = np.sort(outliers(j))
    locs = np.array([at.loc for at, _ in mu.atoms])
    return mu, j, out, locs


@given(q=st.floats(0.3, 0.8), a=generic_a, n=st.integers(-6, 6), sign=signs)
def test_measure_matches_truncated_operator(q, a, n, sign):
    p = QParams(q, a)
    mu, j, out, locs = _atoms_vs_truncation(sign, a + n, p)
    assert abs(mu.mass - 1) < 1e-8
    assert len(out) == len(locs)
    assert np.allclose(out, np.sort(locs), rtol=1e-8, atol=1e-8)
    if len(locs):
        emp = vacuum_atom_weights(j, locs)
        assert np.allclose(emp, [w for _, w in mu.atoms], atol=1e-7)
    assert moment_check(mu, j, 8).max() < 1e-6


def test_single_atom_example():
    p = QParams(0.5, 0.3)
    atoms = predicted_atoms("+", 0.3 - 3, p)
    assert [round(at.loc, 12) for at in atoms] == [4.25]


def test_no_atom_at_boundary():
    # s(a - c) = 3 exactly: the candidate k = 1 would sit at +-2 and is excluded
    p = QParams(0.5, 1.4)
    atoms = predicted_atoms("-", 4.4, p)
    assert all(abs(abs(at.loc) - 2) > 1e-6 for at in atoms)
    assert len(atoms) == 1


def test_density_properties():
    p = QParams(0.5, 0.75)
    mu = spectral_measure(1, 0.75 + 4, p)
    lam = np.linspace(-1.99, 1.99, 101)
    g = mu.density(lam)
    assert np.all(g > 0)
    assert mu.density([2.5, -3.0]).tolist() == [0.0, 0.0]


def test_gauge_is_unitary():
    p = QParams(0.5, 0.3)
    j = twisted_casimir_jacobi("+", 1.3, 20, p)
    m = j.original()
    assert np.allclose(m, m.conj().T)
    assert np.allclose(np.linalg.eigvalsh(m), np.linalg.eigvalsh(j.dense()))


def test_eigensolver_against_dense():
    p = QParams(0.6, 1.1)
    j = twisted_casimir_jacobi("-", 0.1, 60, p)
    w, v = truncated_eigendecomposition(j)
    assert np.allclose(w, np.linalg.eigvalsh(j.dense()), atol=1e-10)
    assert np.allclose(v.T @ v, np.eye(60), atol=1e-10)


def test_vacuum_moments_by_matrix_power():
    p = QParams(0.5, 0.3)
    j = twisted_casimir_jacobi("+", 2.3, 15, p)
    d = j.dense()
    direct = [np.linalg.matrix_power(d, k)[0, 0] for k in range(7)]
    assert np.allclose(j.vacuum_moments(6), direct)


def test_moment_check_needs_room():
    p = QParams(0.5, 0.3)
    mu = spectral_measure(1, 0.3, p)
    with pytest.raises(ValueError):
        moment_check(mu, twisted_casimir_jacobi(1, 0.3, 5, p), 8)


def test_missing_eigenvalue_is_reported():
    j = JacobiOperator(np.array([0.0, 0.0]), np.array([1.0]))
    with pytest.raises(VerificationError):
        vacuum_atom_weights(j, [5.0])


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("a,n", [(0.3, 0), (0.75, -3), (1.4, 4)])
def test_polynomials_orthonormal_under_measure(sign, a, n):
    mu = spectral_measure(sign, a + n, QParams(0.5, a))
    assert np.abs(mu.gram(10) - np.eye(11)).max() < 1e-6


@given(lam=st.floats(-1.99, 1.99), sign=signs)
def test_two_polynomial_routes_agree(lam, sign):
    p = QParams(0.5, 0.3)
    j = twisted_casimir_jacobi(sign, 1.3, 12, p)
    assert np.allclose(orthonormal_polynomials(10, lam, j)[0], normalized_asc(10, lam, 1.3, sign, p), atol=1e-10)


def test_atom_values_are_the_eigenvector():
    # at an atom the polynomials are the (decaying) eigenvector, normalised by its first entry
    p = QParams(0.5, 1.4)
    c = 1.4 + 4
    j = twisted_casimir_jacobi(1, c, 200, p)
    w, v = truncated_eigendecomposition(j)
    for at in predicted_atoms(1, c, p):
        i = int(np.argmin(np.abs(w - at.loc)))
        assert np.allclose(atom_polynomials(at, 10, 1, c, p), v[:11, i] / v[0, i], rtol=1e-8, atol=1e-12)


def test_measure_json():
    p = QParams(0.5, 0.3)
    data = json.loads(json.dumps(spectral_measure("-", 0.3 + 4, p).to_json(samples=11)))
    assert data["schema"] == 1 and len(data["density_samples"]) == 11
    assert math.isclose(data["mass"], 1.0, abs_tol=1e-10)


def test_sign_validation():
    with pytest.raises(ValueError):
        twisted_casimir_jacobi("x", 0.3, 5, QParams(0.5, 0.3))
