import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsl2r.harmonic import (branch, casimir_candidates, casimir_scalar, expected_branching, induced_translation,
                            match_casimir, oq_relation_residuals, parity_blocks, predicted_channel_labels,
                            principal_series, principal_series_components, regular_channel, spin_half, spin_half_eigenvector, spin_half_ib,
                            spin_ib_eigenvectors, tensor_ib)
from qsl2r.qspecial import QParams, qbracket
from qsl2r.repkit import casimir_residual, make_label, sl2r_relation_residuals
from qsl2r.spectral import VerificationError


def test_spin_half_is_a_module():
    p = QParams(0.5, 0.3)
    m = spin_half(p)
    k, e, f, ki = m["K"], m["E"], m["F"], m["Ki"]
    q = p.q
    assert np.allclose(k @ e, q ** 2 * e @ k)
    assert np.allclose(e @ f - f @ e, (k - ki) / (q - 1 / q))


@given(st.floats(-3, 3), st.sampled_from(["+", "-"]))
def test_spin_half_eigenvectors(c, sign):
    p = QParams(0.5, 0.3)
    v = spin_half_eigenvector(c, sign, p)
    lam = qbracket(c + (1 if sign == "+" else -1), p)
    assert np.allclose(spin_half_ib(c, p) @ v, lam * v)
    assert math.isclose(np.linalg.norm(v), 1.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_tensor_eigenvectors_lie_in_spin_module(n, sign):
    p = QParams(0.5, 1.0)
    ev = spin_ib_eigenvectors(n, sign, p)
    assert ev.residual < 1e-12 and ev.leakage < 1e-12
    assert math.isclose(ev.eigenvalue, qbracket(1.0 + (n if sign == "+" else -n), p))
    assert tensor_ib(n, p).shape == (2 ** n, 2 ** n)


def test_induced_translation_is_a_unitary_corepresentation():
    p = QParams(0.5, 0.3)
    g = induced_translation(10, p)
    assert max(oq_relation_residuals(g, p).values()) < 1e-12


@given(st.floats(0, 2 * math.pi), st.sampled_from([0.3, 0.5, 0.8]), st.sampled_from([0.3, 1.2]))
def test_principal_series(theta, q, a):
    p = QParams(q, a)
    rep = principal_series(complex(math.cos(theta), -math.sin(theta)), 14, p)
    assert max(sl2r_relation_residuals(rep, p).values()) < 1e-10
    assert casimir_residual(rep, p, 2 * math.sin(theta)) < 1e-10
    assert math.isclose(casimir_scalar(rep, p), 2 * math.sin(theta), abs_tol=1e-10)
    blocks = parity_blocks(rep)
    assert blocks["decoupled"]
    assert len(blocks["even"]) and len(blocks["odd"])


@pytest.mark.parametrize("a,theta,expected", [
    (0.3, 1.0, ["L+:1.68294196962", "L-:1.68294196962"]),
    (0.3, math.pi / 2, ["L+:2", "D+:1", "D-:1"]),
    (Fraction(1), 3 * math.pi / 2, ["L+:-2", "E+:1", "E-:1"]),
    (Fraction(1, 2), 3 * math.pi / 2, ["E+:1", "E-:1", "L-:-2"]),
])
def test_principal_series_components(a, theta, expected):
    p = QParams(0.5, a)
    rep = principal_series(complex(math.cos(theta), -math.sin(theta)), 12, p)
    assert principal_series_components(rep, p) == expected


def test_principal_series_needs_unimodular_z():
    with pytest.raises(ValueError):
        principal_series(0.5, 10, QParams(0.5, 0.3))


def _sweep_labels(p):
    labs = [make_label(f, p, lam=l) for f in ("L+", "L-") for l in (-1, 0, 0.9)]
    labs += [make_label(f, p, n=n) for f in ("D+", "D-", "E+", "E-") for n in range(1, 5)]
    labs.append(make_label("T+", p))
    if p.is_half_integer_a():
        labs.append(make_label("T-", p))
    return labs


@pytest.mark.parametrize("q,a", [(0.5, 0.3), (0.3, 1.0), (0.8, 0.3), (0.5, Fraction(1, 2))])
def test_branching_patterns(q, a):
    p = QParams(q, a)
    for lab in _sweep_labels(p):
        rep = branch(lab, 60, p)
        assert rep.conclusive, (lab.describe(), rep.notes)
        assert rep.components == expected_branching(lab), lab.describe()


def test_branching_json():
    p = QParams(0.5, 0.3)
    data = branch(make_label("D+", p, n=3), 30, p).to_json()
    assert data["schema"] == 1 and data["components"] == {"pi-": 1}


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("n", range(-8, 9))
def test_regular_channels(n, sign):
    p = QParams(0.5, 0.3)
    rep = regular_channel(n, sign, 200, p)
    assert rep.passed, rep.notes
    assert rep.continuous_label == ("L+" if n % 2 == 0 else "L-")
    assert all(o["label"].startswith(("D-", "E+") if sign > 0 else ("D+", "E-")) for o in rep.outliers)
    assert math.isclose(rep.continuous_mass, rep.analytic_continuous_mass, abs_tol=1e-8)


def test_channel_examples():
    p = QParams(0.5, 0.3)
    assert predicted_channel_labels(-3, 1, p) == ["D-:3"]
    assert sorted(predicted_channel_labels(4, -1, p)) == ["D+:2", "D+:4"]
    assert sorted(predicted_channel_labels(4, 1, p)) == ["E+:3", "E+:5"]


def test_casimir_collision_is_resolved_by_atom_index():
    # 2a in 1/2 + Z: E_1 and E_2 share a Casimir value
    p = QParams(0.5, 0.75)
    assert len(casimir_candidates(-(p.q ** 0.5 + p.q ** -0.5), 1, p)) == 2
    with pytest.raises(VerificationError):
        match_casimir(-(p.q ** 0.5 + p.q ** -0.5), 1, p)
    for n in range(-8, 9):
        for sign in (1, -1):
            assert regular_channel(n, sign, 200, p, with_measure=False).passed


def test_match_casimir_unique():
    p = QParams(0.5, 0.3)
    lab = match_casimir(make_label("D-", p, n=3).casimir, 1, p)
    assert lab.describe() == "D-:3"
    with pytest.raises(VerificationError):
        match_casimir(7.77, 1, p)
