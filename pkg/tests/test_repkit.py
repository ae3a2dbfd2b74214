import csv
import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsl2r.ncalg import PODLES, UQ, star
from qsl2r.qspecial import QParams, qdif
from qsl2r.repkit import (InadmissibleLabel, IrrepLabel, TruncationOverflow, casimir_matrix, casimir_residual,
                         character_rep, discrete_casimir, evaluate_poly, gns_model, heisenberg_action, l_window,
                         make_label, matrix_to_csv, matrix_to_json, parse_label, pi_tilde, podles_irrep,
                         podles_relation_residuals, sl2r_irrep, sl2r_relation_residuals, uq_relation_residuals)

generic_a = st.floats(0.05, 2.45).filter(lambda a: abs(2 * a - round(2 * a)) > 0.05)
qs = st.floats(0.3, 0.85)


@st.composite
def l_labels(draw):
    q, a = draw(qs), draw(generic_a)
    p = QParams(q, a)
    fam = draw(st.sampled_from(["L+", "L-"]))
    lo, hi = l_window(fam, p)
    u = draw(st.floats(0.02, 0.98))
    return p, make_label(fam, p, lam=lo + u * (hi - lo))


@st.composite
def discrete_labels(draw):
    q, a = draw(qs), draw(generic_a)
    p = QParams(q, a)
    return p, make_label(draw(st.sampled_from(["D+", "D-", "E+", "E-"])), p, n=draw(st.integers(1, 6)))


def _check_rep(p, label, n, tol):
    rep = sl2r_irrep(label, n, p)
    assert all(r > 0 for r in rep.meta["norm_ratios"])
    res = sl2r_relation_residuals(rep, p)
    assert max(res.values()) < tol, res
    # Casimir scale grows like [c]; compare relative to the label value
    assert casimir_residual(rep, p) < tol * max(1.0, abs(label.casimir))


@given(l_labels())
def test_principal_like_families_are_unitary_modules(case):
    p, label = case
    _check_rep(p, label, 14, 1e-9)


@given(discrete_labels())
def test_discrete_families_are_unitary_modules(case):
    p, label = case
    _check_rep(p, label, 14, 1e-9)


@pytest.mark.parametrize("a", [0, 1, 2])
@pytest.mark.parametrize("label", ["D+:1", "D+:3", "D-:2", "E+:1", "E+:4", "E-:2", "L+:1/3", "L-:-1/2"])
def test_exact_models(a, label):
    p = QParams(Fraction(1, 2), Fraction(a))
    fam, _, arg = label.partition(":")
    lab = make_label(fam, p, lam=Fraction(arg)) if fam[0] == "L" else make_label(fam, p, n=int(arg))
    rep = sl2r_irrep(lab, 5, p, exact=True)
    assert rep.exact and all(g > 0 for g in rep.gram)
    assert all(v == 0 for v in sl2r_relation_residuals(rep, p).values())
    assert casimir_residual(rep, p) == 0


def test_exact_needs_integer_a():
    p = QParams(0.5, Fraction(3, 10))
    with pytest.raises(ValueError):
        sl2r_irrep(make_label("D+", p, n=1), 4, p, exact=True)


def test_casimir_values(p):
    assert math.isclose(parse_label("T+", p).casimir, p.q + 1 / p.q)
    assert math.isclose(parse_label("D+:3", p).casimir, qdif(2, p))
    assert math.isclose(discrete_casimir("D-", 1, p), 2.0)
    rep = sl2r_irrep(parse_label("T+", p), 5, p)
    assert np.allclose(casimir_matrix(rep, p), p.q + 1 / p.q)


@pytest.mark.parametrize("text", ["L+:99", "L-:-7", "D+:0", "E-:-1", "T-", "Q+:1", "L+:x", "D+:1.5", "T+:2"])
def test_inadmissible_labels(p, text):
    with pytest.raises(InadmissibleLabel):
        parse_label(text, p)


def test_window_message_names_the_interval(p):
    with pytest.raises(InadmissibleLabel, match="window"):
        parse_label("L+:99", p)


def test_outside_window_fails_norm_recursion(p):
    bogus = IrrepLabel("L+", 99.0, 0, 0, lam=99.0)
    with pytest.raises(InadmissibleLabel, match="norm ratio"):
        sl2r_irrep(bogus, 6, p)


def test_t_minus_at_half_integer():
    p = QParams(0.5, Fraction(1, 2))
    lab = parse_label("T-", p)
    rep = sl2r_irrep(lab, 5, p)
    assert max(sl2r_relation_residuals(rep, p).values()) < 1e-14
    assert casimir_residual(rep, p) < 1e-14
    assert math.isclose(lab.casimir, -(p.q + 1 / p.q))


def test_label_roundtrip(p):
    for text in ("L+:0.5", "L-:-1.0", "D+:3", "E-:2", "T+"):
        assert parse_label(text, p).describe() == text


@pytest.mark.parametrize("sign", ["+", "-"])
@given(q=qs, a=generic_a)
def test_podles_irreps(sign, q, a):
    p = QParams(q, a)
    rep = podles_irrep(sign, 25, p)
    assert max(podles_relation_residuals(rep, p).values()) < 1e-12


@given(st.floats(0, 2 * math.pi))
def test_characters(theta):
    p = QParams(0.5, 0.3)
    rep = character_rep(complex(math.cos(theta), math.sin(theta)))
    assert max(podles_relation_residuals(rep, p).values()) < 1e-14
    with pytest.raises(ValueError):
        character_rep(2.0)


def test_evaluate_poly_matches_matrix_product(p):
    rep = podles_irrep("+", 8, p)
    g = PODLES.gens()
    x = g["X"] * g["Z"] + g["Y"] * 3
    assert np.allclose(evaluate_poly(x, rep.mats, p), rep["X"] @ rep["Z"] + 3 * rep["Y"])


def test_gns_state(p):
    g = PODLES.gens()
    model = gns_model(40, p)
    assert abs(model.state(PODLES.one()) - 1) < 1e-12
    assert abs(model.state(g["X"])) < 1e-14
    for b in (g["Z"] * g["X"] + g["Y"], g["Y"] * g["X"] + g["Z"] * g["Z"]):
        assert abs(model.inner(model.xi_t(), model.vector(b)) - model.state(b)) < 1e-12


def test_gns_overflow(p):
    model = gns_model(4, p)
    z = PODLES.gen("Z")
    with pytest.raises(TruncationOverflow):
        model.vector(z * z * z * z)


@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("s", [0.7, -1.3])
def test_pi_tilde(sign, s, p):
    rep = pi_tilde(sign, s, 12, p)
    assert max(uq_relation_residuals(rep, p).values()) < 1e-12
    q = p.q
    om = 1j / q * rep["X"] + (q - 1 / q) * rep["Z"] @ rep["iB"] - 1j * q * rep["Y"]
    assert rep.interior_residual(om - rep["Omega_twisted"]) < 1e-12
    # iB = i q^{-1/2}(E - F K) + s K / (q - q^-1)
    ib = 1j * q ** -0.5 * (rep["E"] - rep["F"] @ rep["K"]) + s * rep["K"] / (q - 1 / q)
    assert rep.interior_residual(rep["iB"] - ib, max(1.0, np.abs(rep["K"]).max())) < 1e-12


@pytest.mark.parametrize("sign,block", [("+", 0), ("-", 1)])
def test_pi_tilde_is_adjoint_to_translation_action(sign, block, p):
    n = 20
    model = gns_model(n, p)
    rep = pi_tilde(sign, 0.7, n, p)
    g = PODLES.gens()
    for name in ("E", "F", "K"):
        x = UQ.gen(name)
        for b in (PODLES.one(), g["Z"], g["X"], g["Y"] * g["Z"]):
            w = heisenberg_action(star(x), b, model)[block].ravel()
            v = model.vector(b)[block].ravel()
            for i, k in ((0, 0), (1, 1), (2, 0), (0, 2), (1, 3)):
                eta = np.zeros(n * n)
                eta[i * n + k] = 1
                assert abs(np.vdot(rep[name] @ eta, v) - np.vdot(eta, w)) < 1e-12


def test_matrix_export():
    m = np.array([[1 + 2j, 0], [0, -3]])
    assert matrix_to_json(m) == [[[1.0, 2.0], [0.0, 0.0]], [[0.0, 0.0], [-3.0, 0.0]]]
    rows = list(csv.reader(io.StringIO(matrix_to_csv(m))))
    assert rows[0] == ["row", "col", "re", "im"] and len(rows) == 3


def test_to_json_schema(p):
    data = sl2r_irrep(parse_label("D-:2", p), 4, p).to_json()
    assert data["schema"] == 1 and len(data["matrices"]["Z"]) == 4
