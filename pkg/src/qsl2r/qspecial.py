"""Scalar q-special functions: q-numbers, q-Pochhammer symbols, terminating
3phi2 series and the Al-Salam--Chihara family attached to the twisted Casimir.

Results are double precision and real powers are taken as ``exp(x * log(q))``.
The one exception is the terminating 3phi2 sum, which cancels so badly that
it is accumulated with mpmath at adaptive working precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

import mpmath
import numpy as np

Real = Union[float, int, Fraction]

#: infinite products stop once |x * base**k| drops below this
POCHHAMMER_EPS = 1e-17
#: working precision (decimal digits) for terminating 3phi2 sums
PHI_DPS = 60


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QParams:
    """Deformation parameter ``q`` in (0, 1) and Podles parameter ``a``.

    ``a`` may be a :class:`fractions.Fraction`; exact half-integer tests use it.
    """

    q: float
    a: Real = 0.0

    def __post_init__(self):
        if not 0.0 < float(self.q) < 1.0:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")

    @property
    def af(self) -> float:
        return float(self.a)

    @property
    def t(self) -> float:
        return qpow(self.q, self.af) - qpow(self.q, -self.af)

    def power(self, x: float) -> float:
        return qpow(self.q, x)

    def is_half_integer_a(self, tol: float = 1e-9) -> bool:
        """True when 2a is an integer (exactly for Fractions/ints)."""
        if isinstance(self.a, (Fraction, int)):
            return Fraction(self.a).denominator in (1, 2)
        return abs(2 * self.af - round(2 * self.af)) < tol


def qpow(q: float, x: float) -> float:
    return math.exp(x * math.log(q))


class QScalarKind(Enum):
    BRACKET = "bracket"  # [x] = (q^x - q^-x) / (q - q^-1)
    BRACE = "brace"      # q^x - q^-x
    DIF = "dif"          # q^x + q^-x


def q_number(kind: QScalarKind | str, x: float, p: QParams) -> float:
    kind = QScalarKind(kind)
    up, down = p.power(x), p.power(-x)
    if kind is QScalarKind.BRACE:
        return up - down
    if kind is QScalarKind.DIF:
        return up + down
    return (up - down) / (p.q - 1.0 / p.q)


def qbracket(x: float, p: QParams) -> float:
    return q_number(QScalarKind.BRACKET, x, p)


def qbrace(x: float, p: QParams) -> float:
    return q_number(QScalarKind.BRACE, x, p)


def qdif(x: float, p: QParams) -> float:
    return q_number(QScalarKind.DIF, x, p)


def q_pochhammer(x: complex, base: float, n: int | float | None = None,
                 eps: float = POCHHAMMER_EPS) -> complex:
    """``(x; base)_n``; ``n=None`` or ``math.inf`` gives the infinite product.

    The infinite product stops at the first k with ``|x base^k| < eps``.
    """
    if not 0.0 < base < 1.0:
        raise ValueError("base must lie in (0, 1)")
    if n is not None and n != math.inf:
        n = int(n)
        if n < 0:
            raise ValueError("negative length")
        out = 1.0
        term = x
        for _ in range(n):
            out *= 1.0 - term
            term *= base
        return out
    out = 1.0
    term = x
    k = 0
    while abs(term) >= eps:
        out *= 1.0 - term
        term *= base
        k += 1
        if k > 100000:
            raise ConvergenceError(f"(x; base)_inf did not converge, |x|={abs(x)}")
    return out


def q_pochhammer_multi(xs: Sequence[complex], base: float, n=None) -> complex:
    """``(x1, x2, ...; base)_n`` as a product of single symbols."""
    out = 1.0
    for x in xs:
        out *= q_pochhammer(x, base, n)
    return out


def _terminating_length(first, base) -> int:
    # first = base^{-m} for an integer m >= 0
    first = mpmath.mpc(first)
    if first == 0:
        raise ValueError("first numerator parameter is zero; series is not terminating")
    m = -float(mpmath.re(mpmath.log(first))) / float(mpmath.log(base))
    mi = round(m)
    if mi < 0 or abs(m - mi) > 1e-9 or abs(float(mpmath.arg(first))) > 1e-12:
        raise ValueError(
            f"series does not terminate: first numerator {complex(first)} is not a "
            "nonpositive integer power of the base")
    return mi


def _phi32_mp(num, den, base, z):
    """The sum and the modulus of its largest term."""
    m = _terminating_length(num[0], base)
    a1 = base ** (-m)
    a2, a3 = (mpmath.mpc(v) for v in num[1:])
    b1, b2 = (mpmath.mpc(v) for v in den)
    z = mpmath.mpc(z)
    total = mpmath.mpc(0)
    term = mpmath.mpc(1)
    biggest = mpmath.mpf(0)
    for k in range(m + 1):
        total += term
        biggest = max(biggest, abs(term))
        bk = base ** k
        term *= (1 - a1 * bk) * (1 - a2 * bk) * (1 - a3 * bk) * z
        term /= (1 - b1 * bk) * (1 - b2 * bk) * (1 - base ** (k + 1))
    return total, biggest


def phi32(num: Sequence, den: Sequence, base, z, dps: int = PHI_DPS) -> complex:
    """Terminating basic hypergeometric series 3phi2.

    ``num[0]`` must equal ``base**(-m)`` for an integer ``m >= 0``; the sum then
    has ``m + 1`` terms.  The terms can cancel heavily (the largest term
    exceeds the sum by 1e27 already for m = 20 in the Al-Salam--Chihara
    case), so the sum is accumulated with ``dps`` decimal digits.  Parameters
    may be floats, complex or mpmath numbers; pass mpmath numbers when their
    own rounding matters.
    """
    if len(num) != 3 or len(den) != 2:
        raise ValueError("3phi2 takes three numerator and two denominator parameters")
    with mpmath.workdps(dps):
        return complex(_phi32_mp(num, den, mpmath.mpf(base), z)[0])


def _sign_value(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def asc_diagonal(k: int, c: float, sign, p: QParams) -> float:
    """Diagonal of the twisted Casimir in channel ``sign``: ``+-<c> q^{2k -+ a + 1}``."""
    s = _sign_value(sign)
    return s * qbrace(c, p) * p.power(2 * k - s * p.af + 1)


def asc_offdiag_sq(k: int, sign, p: QParams) -> float:
    """``(1 - q^{2k})(1 + q^{-+2a + 2k})``: squared coupling between k-1 and k."""
    s = _sign_value(sign)
    return (1.0 - p.power(2 * k)) * (1.0 + p.power(-2 * s * p.af + 2 * k))


def al_salam_chihara(n: int, x: float | complex, c: float, sign, p: QParams) -> float:
    """Monic-type Al-Salam--Chihara polynomial ``Q_n(x)`` from the recursion

    ``2x Q_k = Q_{k+1} -+ <c> q^{2k -+ a + 1} Q_k + (1 - q^{2k})(1 + q^{-+2a+2k}) Q_{k-1}``

    with ``Q_{-1} = 0`` and ``Q_0 = 1``.  The spectral variable of the twisted
    Casimir is ``lambda = -2x``.
    """
    return al_salam_chihara_sequence(n, x, c, sign, p)[n]


def al_salam_chihara_sequence(n: int, x, c: float, sign, p: QParams) -> np.ndarray:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    dtype = complex if isinstance(x, complex) else float
    out = np.zeros(n + 1, dtype=dtype)
    out[0] = 1.0
    prev = 0.0
    for k in range(n):
        nxt = (2 * x + asc_diagonal(k, c, sign, p)) * out[k] - asc_offdiag_sq(k, sign, p) * prev
        prev = out[k]
        out[k + 1] = nxt
    return out


def _asc_closed_at(n, x, c, s, p, dps):
    """Value of the closed form and the number of digits lost to cancellation."""
    with mpmath.workdps(dps):
        q = mpmath.mpf(p.q)
        a = mpmath.mpf(p.af)
        c = mpmath.mpf(c)
        base = q ** 2
        alpha = -s * q ** (-s * a + c + 1)
        ab = -q ** (-2 * s * a + 2)
        xm = mpmath.mpc(x)
        e = xm + 1j * mpmath.sqrt(1 - xm ** 2)
        series, biggest = _phi32_mp([base ** (-n), alpha * e, alpha / e], [ab, 0], base, base)
        lost = math.inf if series == 0 else max(0.0, float(mpmath.log10(biggest / abs(series))))
        poch = mpmath.mpf(1)
        for k in range(n):
            poch *= 1 - ab * base ** k
        prefactor = poch / ((-s) ** n * q ** (n * (c - s * a + 1)))
        return complex(prefactor * series), lost


def al_salam_chihara_closed(n: int, x: float | complex, c: float, sign, p: QParams,
                            dps: int = PHI_DPS, spare: int = 20) -> complex:
    """``Q_n(x)`` from its 3phi2 representation (base q^2, argument q^2).

    The series parameters are formed at the working precision too, since
    their rounding is amplified by the same cancellation as the sum.
    Precision is raised until at least ``spare`` digits survive the
    cancellation and two successive evaluations agree to 1e-15.
    """
    s = _sign_value(sign)
    prev = None
    while dps <= 4000:
        cur, lost = _asc_closed_at(n, x, c, s, p, dps)
        if lost + spare <= dps and prev is not None and abs(cur - prev) <= 1e-15 * max(abs(cur), 1e-300):
            return cur
        prev = cur if lost + spare <= dps else None
        dps = max(dps + 40, int(lost) + spare + 10) if math.isfinite(lost) else dps * 2
    raise ConvergenceError("3phi2 evaluation did not stabilise")


def asc_normalizer(n: int, sign, p: QParams) -> float:
    """``sqrt((q^2;q^2)_n (-q^{-+2a+2};q^2)_n)``."""
    s = _sign_value(sign)
    base = p.q ** 2
    return math.sqrt(q_pochhammer(base, base, n).real
                     * q_pochhammer(-p.power(-2 * s * p.af + 2), base, n).real)


def normalized_asc(n: int, lam: float, c: float, sign, p: QParams) -> np.ndarray:
    """Real orthonormal sequence ``(-1)^k Q_k(-lam/2) / normalizer_k`` for k <= n.

    This is the gauged version of the formal eigenvector coefficients (the
    i^k factors are absorbed by the diagonal unitary ``diag(i^k)``), i.e. the
    orthonormal polynomials of the real Jacobi matrix built in
    :mod:`qsl2r.spectral`.
    """
    raw = al_salam_chihara_sequence(n, -lam / 2.0, c, sign, p)
    norms = np.array([asc_normalizer(k, sign, p) for k in range(n + 1)])
    signs = (-1.0) ** np.arange(n + 1)
    return signs * raw / norms


def normalized_asc_ungauged(n: int, lam: float, c: float, sign, p: QParams) -> np.ndarray:
    """Complex coefficients ``Q_k(-lam/2) / (i^k normalizer_k)`` before the gauge."""
    raw = al_salam_chihara_sequence(n, -lam / 2.0, c, sign, p)
    norms = np.array([asc_normalizer(k, sign, p) for k in range(n + 1)])
    return raw / ((1j) ** np.arange(n + 1) * norms)
