import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qsl2r.qspecial import (QParams, al_salam_chihara, al_salam_chihara_closed, al_salam_chihara_sequence,
                            asc_normalizer, normalized_asc, phi32, q_pochhammer, qbrace, qbracket, qdif)

qs = st.floats(0.2, 0.9)
xs = st.floats(-4, 4)


@given(qs, xs, xs)
def test_dif_product_rule(q, x, y):
    p = QParams(q)
    # <x><y> = <x+y> + <x-y>
    lhs = qdif(x, p) * qdif(y, p)
    assert math.isclose(lhs, qdif(x + y, p) + qdif(x - y, p), rel_tol=1e-12, abs_tol=1e-12)


@given(qs, xs)
def test_bracket_is_brace_over_one(q, x):
    p = QParams(q)
    assert math.isclose(qbracket(x, p) * (q - 1 / q), qbrace(x, p), rel_tol=1e-12, abs_tol=1e-12)


@given(qs)
def test_small_brackets(q):
    p = QParams(q)
    assert qbracket(0, p) == 0
    assert math.isclose(qbracket(1, p), 1.0)
    assert math.isclose(qbracket(2, p), q + 1 / q)


def test_params_validate():
    with pytest.raises(ValueError):
        QParams(1.0)
    assert QParams(0.5, Fraction(1, 2)).is_half_integer_a()
    assert not QParams(0.5, Fraction(3, 10)).is_half_integer_a()
    assert QParams(0.5, 1.5).is_half_integer_a()


@given(st.floats(-0.9, 0.9), st.floats(0.1, 0.9), st.integers(0, 12))
def test_pochhammer_finite_product(x, base, n):
    direct = np.prod([1 - x * base ** k for k in range(n)])
    assert math.isclose(q_pochhammer(x, base, n), direct, rel_tol=1e-12, abs_tol=1e-15)


def test_pochhammer_euler_identity():
    # (x; b)_inf = sum_k (-1)^k b^{k(k-1)/2} x^k / (b; b)_k
    x, b = 0.37, 0.6
    series = sum((-1) ** k * b ** (k * (k - 1) / 2) * x ** k / q_pochhammer(b, b, k) for k in range(80))
    assert math.isclose(q_pochhammer(x, b), series, rel_tol=1e-13)


def test_phi32_terminating_by_hand():
    b = 0.25
    num, den, z = [b ** -2, 0.3, 0.7], [0.5, 0.1], b
    terms = []
    for k in range(3):
        t = 1.0
        for a in num:
            t *= q_pochhammer(a, b, k)
        for d in den:
            t /= q_pochhammer(d, b, k)
        terms.append(t * z ** k / q_pochhammer(b, b, k))
    assert abs(phi32(num, den, b, z) - sum(terms)) < 1e-12


@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("a", [0.3, 1.4])
def test_recursion_matches_closed_form(sign, a):
    p = QParams(0.5, a)
    c = a + 2
    for x in (-0.8, 0.1, 0.95):
        seq = al_salam_chihara_sequence(12, x, c, sign, p)
        for n in (0, 1, 5, 12):
            closed = al_salam_chihara_closed(n, x, c, sign, p)
            assert abs(seq[n] - closed) <= 1e-10 * max(1.0, abs(seq[n]))


def test_sequence_prefix_consistent():
    p = QParams(0.6, 0.3)
    seq = al_salam_chihara_sequence(9, 0.4, 1.3, "+", p)
    assert al_salam_chihara(4, 0.4, 1.3, "+", p) == seq[4]
    with pytest.raises(ValueError):
        al_salam_chihara_sequence(-1, 0.4, 1.3, "+", p)


@given(st.floats(-1.9, 1.9))
def test_normalized_sequence_is_eigenvector_of_jacobi(lam):
    from qsl2r.spectral import twisted_casimir_jacobi
    p = QParams(0.5, 0.3)
    n = 12
    v = normalized_asc(n, lam, 1.3, "+", p)
    j = twisted_casimir_jacobi("+", 1.3, n + 2, p).dense()[: n + 1, : n + 1]
    # formal eigenvector: every row except the last one (truncation)
    r = j @ v - lam * v
    assert np.max(np.abs(r[:-1])) <= 1e-9 * max(1.0, np.max(np.abs(v)))


def test_normalizer_start():
    p = QParams(0.5, 0.3)
    assert asc_normalizer(0, "+", p) == 1.0
