"""Exact scalars: Laurent polynomials in ``s = q^(1/2)`` and ``u = q^(a/2)``
over the Gaussian rationals, localized at ``D = q - q^-1 = s^2 - s^-2``.

A value is stored as ``num / D**den`` with ``num`` a sparse map
``(i, j, g) -> Fraction`` meaning ``Fraction * s**i * u**j * I**g`` where
``g`` is 0 or 1 and ``I`` is the imaginary unit.  ``den`` is kept minimal,
which makes the representation canonical.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Tuple

Key = Tuple[int, int, int]
_D = {(2, 0, 0): Fraction(1), (-2, 0, 0): Fraction(-1)}


def _mul_num(x: Dict[Key, Fraction], y: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
    out: Dict[Key, Fraction] = {}
    for (i1, j1, g1), c1 in x.items():
        for (i2, j2, g2), c2 in y.items():
            g = g1 + g2
            c = c1 * c2
            if g == 2:
                g = 0
                c = -c
            key = (i1 + i2, j1 + j2, g)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _add_num(x, y, sign=1):
    out = dict(x)
    for k, c in y.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _times_D(num, power):
    for _ in range(power):
        num = _mul_num(num, _D)
    return num


def _divide_by_s4_minus_1(num):
    """Exact quotient by ``s^4 - 1``, or None if it does not divide."""
    groups: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j, g), c in num.items():
        groups.setdefault((j, g), {})[i] = c
    out = {}
    for (j, g), poly in groups.items():
        rem = dict(poly)
        lo = min(rem)
        while rem:
            top = max(rem)
            if top - 4 < lo:
                return None
            c = rem.pop(top)
            out[(top - 4, j, g)] = c
            v = rem.get(top - 4, 0) + c
            if v:
                rem[top - 4] = v
            else:
                rem.pop(top - 4, None)
    return out


class Coefficient:
    __slots__ = ("num", "den")

    def __init__(self, num=None, den: int = 0):
        self.num: Dict[Key, Fraction] = {k: Fraction(v) for k, v in (num or {}).items() if v}
        self.den = den
        self._reduce()

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value=1, imag=0) -> "Coefficient":
        num = {}
        if value:
            num[(0, 0, 0)] = Fraction(value)
        if imag:
            num[(0, 0, 1)] = Fraction(imag)
        return cls(num)

    @classmethod
    def monomial(cls, s: int = 0, u: int = 0, value=1, imag: bool = False) -> "Coefficient":
        return cls({(s, u, int(imag)): Fraction(value)})

    @classmethod
    def coerce(cls, x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        if isinstance(x, complex):
            re, im = Fraction(x.real), Fraction(x.imag)
            return cls.const(re, im)
        if isinstance(x, (int, Rational)):
            return cls.const(x)
        if isinstance(x, float) and x.is_integer():
            return cls.const(int(x))
        raise TypeError(f"cannot use {x!r} as an exact coefficient")

    # canonical form -----------------------------------------------------
    def _reduce(self):
        while self.den > 0:
            if not self.num:
                self.den = 0
                return
            q = _divide_by_s4_minus_1(self.num)
            if q is None:
                return
            # num / D = num * s^2 / (s^4 - 1)
            self.num = {(i + 2, j, g): c for (i, j, g), c in q.items()}
            self.den -= 1

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    # ring operations ----------------------------------------------------
    def _aligned(self, other):
        k = max(self.den, other.den)
        return _times_D(self.num, k - self.den), _times_D(other.num, k - other.den), k

    def __add__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, k = self._aligned(other)
        return Coefficient(_add_num(a, b), k)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient({k: -v for k, v in self.num.items()}, self.den)

    def __sub__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, k = self._aligned(other)
        return Coefficient(_add_num(a, b, -1), k)

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return Coefficient(_mul_num(self.num, other.num), self.den + other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Coefficient.coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Coefficient.const(1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Coefficient":
        """Inverse of a unit: a Gaussian-rational monomial times a power of D."""
        if self.is_zero():
            raise ZeroDivisionError("zero coefficient")
        num, extra = self.num, 0
        while True:
            quot = _divide_by_s4_minus_1(num)
            if quot is None:
                break
            # num = D * (quot * s^2)
            num = {(i + 2, j, g): c for (i, j, g), c in quot.items()}
            extra += 1
        monos = {}
        for (i, j, g), c in num.items():
            monos.setdefault((i, j), {})[g] = c
        if len(monos) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the coefficient ring")
        (i, j), parts = next(iter(monos.items()))
        x, y = parts.get(0, Fraction(0)), parts.get(1, Fraction(0))
        n2 = x * x + y * y
        inv = {(-i, -j, 0): x / n2, (-i, -j, 1): -y / n2}
        return Coefficient(_times_D(inv, self.den), extra)

    def conjugate(self) -> "Coefficient":
        return Coefficient({(i, j, g): (-c if g else c) for (i, j, g), c in self.num.items()}, self.den)

    def __eq__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((frozenset(self.num.items()), self.den))

    # evaluation -----------------------------------------------------------
    def evaluate(self, q: float, a: float) -> complex:
        s = math.sqrt(q)
        u = q ** (float(a) / 2.0)
        tot = 0j
        for (i, j, g), c in self.num.items():
            term = float(c) * s ** i * u ** j
            tot += term * 1j if g else term
        return tot / (q - 1.0 / q) ** self.den

    def is_real(self) -> bool:
        return all(g == 0 for (_, _, g) in self.num)

    def __repr__(self):
        if not self.num:
            return "0"
        parts = []
        for (i, j, g), c in sorted(self.num.items()):
            factors = [str(c)]
            if g:
                factors.append("I")
            if i:
                factors.append(f"s^{i}")
            if j:
                factors.append(f"u^{j}")
            parts.append("*".join(factors))
        body = " + ".join(parts)
        if self.den:
            return f"({body})/(q-q^-1)^{self.den}"
        return body

    # serialisation ---------------------------------------------------------
    def to_json(self):
        return {"den": self.den,
                "terms": [[i, j, g, str(c)] for (i, j, g), c in sorted(self.num.items())]}

    @classmethod
    def from_json(cls, data) -> "Coefficient":
        return cls({(i, j, g): Fraction(c) for i, j, g, c in data["terms"]}, data["den"])


ONE = Coefficient.const(1)
ZERO = Coefficient()
I = Coefficient.const(0, 1)
S = Coefficient.monomial(s=1)           # q^(1/2)
U = Coefficient.monomial(u=1)           # q^(a/2)


def qc(e: int | Fraction = 1) -> Coefficient:
    """``q**e`` for integer or half-integer ``e``."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError("only half-integer powers of q are exact")
    return Coefficient.monomial(s=int(e2))


def qa(e: int | Fraction = 1) -> Coefficient:
    """``q**(a*e)`` for integer or half-integer ``e``."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError("only half-integer multiples of a are exact")
    return Coefficient.monomial(u=int(e2))


D = Coefficient(_D)                     # q - q^-1
D_INV = Coefficient({(0, 0, 0): 1}, 1)  # 1 / (q - q^-1)
T = qa(1) - qa(-1)                      # t = q^a - q^-a


def q_brace(n: int) -> Coefficient:
    """``q^(a+n) - q^-(a+n)`` (the brace of a shifted parameter)."""
    return qa(1) * qc(n) - qa(-1) * qc(-n)


def q_bracket_shift(n: int) -> Coefficient:
    """``[a+n] = (q^(a+n) - q^-(a+n)) / (q - q^-1)``."""
    return q_brace(n) * D_INV


def evaluate_exact(c: Coefficient, q: Fraction, qa: Fraction) -> Tuple[Fraction, Fraction]:
    """Exact value ``(re, im)`` at rational ``q`` and ``q^a``; needs even exponents."""
    re = im = Fraction(0)
    for (i, j, g), v in c.num.items():
        if i % 2 or j % 2:
            raise ValueError("exact evaluation needs integer powers of q and q^a")
        term = v * Fraction(q) ** (i // 2) * Fraction(qa) ** (j // 2)
        if g:
            im += term
        else:
            re += term
    scale = (Fraction(q) - 1 / Fraction(q)) ** c.den
    return re / scale, im / scale
