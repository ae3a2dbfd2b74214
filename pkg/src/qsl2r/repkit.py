"""Truncated matrix models of the unitary representations.

Every model is a finite window of an infinite banded operator family.  A
window edge is either *genuine* (the representation space really stops
there, e.g. ``p = 0`` for the Podles irreps) or *truncated*.  Identities are
only claimed on interior columns, i.e. columns at least ``margin`` steps away
from every truncated edge; with tridiagonal generators a margin of ``m``
makes all products of ``m + 1`` generators exact there.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .ncalg import NCPoly, translation_action
from .qspecial import QParams, qbracket, qdif

FAMILIES = ("L+", "L-", "D+", "D-", "E+", "E-", "T+", "T-")
SCHEMA_VERSION = 1


class InadmissibleLabel(ValueError):
    pass


class TruncationOverflow(RuntimeError):
    pass


# containers ---------------------------------------------------------------------

@dataclass
class TruncatedRep:
    """A finite window of a representation.

    ``mats`` holds one matrix per generator; ``interior`` flags the basis
    vectors whose columns carry exact identities.  ``gram`` is the diagonal
    of the Gram matrix when the basis is orthogonal but not orthonormal
    (exact models), otherwise None.
    """

    algebra: str
    basis: list
    mats: Dict[str, np.ndarray]
    interior: np.ndarray
    margin: int = 1
    gram: Optional[np.ndarray] = None
    exact: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __getitem__(self, key: str) -> np.ndarray:
        return self.mats[key]

    def interior_residual(self, m: np.ndarray, scale: float = 1.0) -> float:
        """Largest interior-column entry of ``m`` (divided by ``scale``)."""
        cols = m[:, self.interior]
        if cols.size == 0:
            return 0.0
        if self.exact:
            return float(max((abs(v) for v in cols.flat), default=0))
        return float(np.max(np.abs(cols))) / scale

    def adjoint(self, m: np.ndarray) -> np.ndarray:
        if self.gram is None:
            return m.conj().T
        g = self.gram
        out = np.empty_like(m)
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                out[i, j] = m[j, i].conjugate() * g[j] / g[i]
        return out

    def adjoint_residual(self, a: np.ndarray, b: np.ndarray) -> float:
        """max |(a^dagger - b)| on the interior block, scaled by max(1, |a|)."""
        d = self.adjoint(a) - b
        block = d[np.ix_(self.interior, self.interior)]
        if block.size == 0:
            return 0.0
        if self.exact:
            return float(max(abs(v) for v in block.flat))
        scale = max(1.0, float(np.max(np.abs(a))))
        return float(np.max(np.abs(block))) / scale

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "algebra": self.algebra,
            "basis": [_jsonable(b) for b in self.basis],
            "interior": [bool(x) for x in self.interior],
            "margin": self.margin,
            "meta": self.meta,
            "matrices": {k: matrix_to_json(v) for k, v in self.mats.items()},
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


def matrix_to_json(m: np.ndarray) -> list:
    """Row-major nested lists, complex entries as [re, im]."""
    out = []
    for row in m:
        out.append([[float(complex(v).real), float(complex(v).imag)] for v in row])
    return out


def matrix_to_csv(m: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["row", "col", "re", "im"])
    for (i, j), v in np.ndenumerate(m):
        v = complex(v)
        if v != 0:
            w.writerow([i, j, repr(v.real), repr(v.imag)])
    return buf.getvalue()


def _interior_1d(n: int, margin: int, open_low: bool, open_high: bool) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    if open_low:
        mask[:margin] = False
    if open_high and margin:
        mask[n - margin:] = False
    return mask


# numeric evaluation of algebra elements -----------------------------------------

def evaluate_poly(x: NCPoly, mats: Mapping[str, np.ndarray], p: QParams) -> np.ndarray:
    """Substitute matrices for generators; coefficients are evaluated at ``(q, a)``."""
    dim = next(iter(mats.values())).shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim)
    for word, c in x.terms.items():
        m = eye.astype(complex)
        for g in word:
            m = m @ mats[g]
        out += c.evaluate(p.q, p.af) * m
    return out


# Podles irreps and characters -----------------------------------------------------

def _sgn(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def podles_coupling(p_index: int, sign, p: QParams) -> float:
    """``sqrt((1 - q^{2p})(1 + q^{-+2a + 2p}))``: the X matrix element from p to p-1."""
    s = _sgn(sign)
    return math.sqrt((1.0 - p.power(2 * p_index)) * (1.0 + p.power(-2 * s * p.af + 2 * p_index)))


def podles_matrices(sign, n: int, p: QParams) -> Dict[str, np.ndarray]:
    s = _sgn(sign)
    z = np.diag([s * p.power(2 * k - s * p.af + 1) for k in range(n)]).astype(complex)
    x = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        x[k - 1, k] = podles_coupling(k, s, p)
    return {"X": x, "Y": x.conj().T.copy(), "Z": z}


def podles_irrep(sign, n: int, p: QParams) -> TruncatedRep:
    if n < 2:
        raise ValueError("need at least two basis vectors")
    mats = podles_matrices(sign, n, p)
    return TruncatedRep("Podles", list(range(n)), mats, _interior_1d(n, 1, False, True), 1,
                        meta={"rep": f"pi{'+' if _sgn(sign) > 0 else '-'}", "q": p.q, "a": p.af})


def character_rep(z: complex, tol: float = 1e-12) -> TruncatedRep:
    z = complex(z)
    if abs(abs(z) - 1.0) > tol:
        raise ValueError(f"characters need |z| = 1, got |z| = {abs(z)}")
    mats = {"X": np.array([[z]]), "Y": np.array([[z.conjugate()]]), "Z": np.zeros((1, 1), dtype=complex)}
    return TruncatedRep("Podles", [0], mats, np.ones(1, dtype=bool), 0, meta={"rep": "chi", "z": [z.real, z.imag]})


def podles_relation_residuals(rep: TruncatedRep, p: QParams) -> Dict[str, float]:
    x, y, z = rep["X"], rep["Y"], rep["Z"]
    q, t = p.q, p.t
    one = np.eye(rep.dim)
    res = {
        "XZ-q2ZX": rep.interior_residual(x @ z - q ** 2 * z @ x),
        "YZ-q-2ZY": rep.interior_residual(y @ z - q ** -2 * z @ y),
        "XY": rep.interior_residual(x @ y - (one - q * t * z - q ** 2 * z @ z)),
        "YX": rep.interior_residual(y @ x - (one - t * z / q - z @ z / q ** 2)),
        "X*=Y": rep.adjoint_residual(x, y),
        "Z*=Z": rep.adjoint_residual(z, z),
    }
    return res


# labels ----------------------------------------------------------------------------

@dataclass(frozen=True)
class IrrepLabel:
    """An irreducible admissible unitary representation.

    ``base`` and ``step`` describe the lattice of iB-eigenvalues ``[c]``:
    ``c = a + base + step * k`` with ``k >= 0`` for the discrete families,
    ``k`` in Z for ``step == 0`` meaning a two-sided lattice of spacing 2, and a
    single point for the one-dimensional families.  ``base`` is an integer
    offset from ``a`` (``T-`` sits at ``c = -a`` and is flagged by
    ``negate_a``).
    """

    family: str
    casimir: float
    base: int
    step: int
    n: Optional[int] = None
    lam: Optional[float] = None
    negate_a: bool = False

    @property
    def sign_branch(self) -> int:
        """The sign choice in the action formulas."""
        return -1 if self.family in ("D+", "E-") else 1

    @property
    def two_sided(self) -> bool:
        return self.family in ("L+", "L-")

    def describe(self) -> str:
        if self.family in ("L+", "L-"):
            return f"{self.family}:{self.lam}"
        if self.n is not None:
            return f"{self.family}:{self.n}"
        return self.family

    def lattice(self, p: QParams, count: int) -> List[float]:
        """Lattice points c (ascending) for a window of ``count`` points per side."""
        return [p.af + k for k in lattice_offsets(self, count)]


def lattice_offsets(label: IrrepLabel, count: int) -> List[int]:
    """Integer offsets k (c = a + k), ascending."""
    if label.family in ("T+", "T-"):
        return [label.base]
    if label.two_sided:
        return [label.base + 2 * j for j in range(-count, count + 1)]
    pts = [label.base + label.step * j for j in range(count)]
    return sorted(pts)


def l_window(family: str, p: QParams) -> Tuple[float, float]:
    """Open interval of admissible Casimir values for the L families."""
    a = p.af
    if family == "L+":
        s = math.ceil(a) - a
        return -qdif(1 - 2 * s, p), qdif(1, p)
    s = math.ceil(a - 0.5) - (a - 0.5)
    return -qdif(1 - 2 * s, p), qdif(0, p)


def e_floor(sign: int, a) -> int:
    """``floor(-2a)`` for E+ and ``floor(2a)`` for E-, exact for rationals."""
    v = Fraction(a) if isinstance(a, (Fraction, int)) else a
    return math.floor(-2 * v) if sign > 0 else math.floor(2 * v)


def discrete_casimir(family: str, n: int, p: QParams) -> float:
    a = p.af
    if family in ("D+", "D-"):
        return qdif(n - 1, p)
    if family == "E+":
        return -qdif(2 * a + e_floor(1, p.a) + n - 1, p)
    if family == "E-":
        return -qdif(-2 * a + e_floor(-1, p.a) + n - 1, p)
    raise ValueError(family)


def make_label(family: str, p: QParams, lam: Optional[float] = None, n: Optional[int] = None,
               half_tol: float = 1e-9) -> IrrepLabel:
    if family not in FAMILIES:
        raise InadmissibleLabel(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family in ("L+", "L-"):
        if lam is None:
            raise InadmissibleLabel(f"{family} needs a Casimir value")
        lo, hi = l_window(family, p)
        if not lo < lam < hi:
            raise InadmissibleLabel(f"{family}: Casimir {lam} outside the open window ({lo:.12g}, {hi:.12g})")
        return IrrepLabel(family, float(lam), 0 if family == "L+" else 1, 0, lam=float(lam))
    if family in ("D+", "D-", "E+", "E-"):
        if n is None or int(n) != n or n < 1:
            raise InadmissibleLabel(f"{family} needs a positive integer index, got {n!r}")
        n = int(n)
        cas = discrete_casimir(family, n, p)
        if family == "D+":
            base, step = n, 2
        elif family == "D-":
            base, step = -n, -2
        elif family == "E+":
            base, step = e_floor(1, p.a) + n, 2
        else:
            base, step = -e_floor(-1, p.a) - n, -2
        return IrrepLabel(family, cas, base, step, n=n)
    if family == "T+":
        return IrrepLabel("T+", qdif(1, p), 0, 0)
    if not p.is_half_integer_a(half_tol):
        raise InadmissibleLabel(f"T- only exists for a in Z/2, got a = {p.a}")
    # c = -a, i.e. offset -2a from a
    return IrrepLabel("T-", -qdif(1, p), int(round(-2 * p.af)), 0, negate_a=True)


def parse_label(text: str, p: QParams) -> IrrepLabel:
    """Parse ``"L+:0.5"``, ``"D+:3"``, ``"E-:2"``, ``"T+"``."""
    text = text.strip()
    fam, _, arg = text.partition(":")
    fam = fam.strip()
    if fam in ("T+", "T-"):
        if arg:
            raise InadmissibleLabel(f"{fam} takes no argument")
        return make_label(fam, p)
    if fam in ("L+", "L-"):
        try:
            lam = float(arg)
        except ValueError:
            raise InadmissibleLabel(f"cannot read a Casimir value from {text!r}") from None
        return make_label(fam, p, lam=lam)
    if fam in ("D+", "D-", "E+", "E-"):
        try:
            n = int(arg)
        except ValueError:
            raise InadmissibleLabel(f"cannot read an index from {text!r}") from None
        return make_label(fam, p, n=n)
    raise InadmissibleLabel(f"unknown family in {text!r}")


# SL(2,R)_t irreps ----------------------------------------------------------------------

class _Num:
    """q-arithmetic on numbers of the form q^(m a + k), float or exact."""

    def __init__(self, q, qa):
        self.q = q
        self.qa = qa

    def pw(self, m: int, k: int):
        return self.qa ** m * self.q ** k

    def dif(self, m: int, k: int):
        return self.pw(m, k) + self.pw(-m, -k)

    def brace(self, m: int, k: int):
        return self.pw(m, k) - self.pw(-m, -k)


def xi_coefficients(k: int, sigma: int, lam, num: _Num) -> Dict[str, Tuple]:
    """(raise, diagonal, lower) coefficients of Z, iX, iY on xi_[c], c = a + k."""
    dif, brace = num.dif, num.brace
    u_z = -(dif(1 + sigma, sigma * (k + 1)) + sigma * lam) / (dif(1, k) * dif(1, k + 1))
    v_z = (-dif(0, 1) * brace(1, 0) + brace(1, k) * lam) / (dif(1, k - 1) * dif(1, k + 1))
    w_z = -(dif(1 - sigma, -sigma * (k - 1)) - sigma * lam) / (dif(1, k - 1) * dif(1, k))
    v_x = (brace(1, k) * brace(1, 0) + dif(0, 1) * lam) / (dif(1, k - 1) * dif(1, k + 1))
    return {
        "Z": (u_z, v_z, w_z),
        "iX": (-num.pw(1, k + 1) * u_z, v_x, num.pw(-1, -k + 1) * w_z),
        "iY": (-num.pw(-1, -k - 1) * u_z, -v_x, num.pw(1, k - 1) * w_z),
    }


def _exact_params(p: QParams, lam):
    q = Fraction(p.q)
    a = Fraction(p.a)
    if a.denominator != 1:
        raise ValueError("exact models need an integer a (so that q^a is rational)")
    return q, q ** int(a), Fraction(lam)


def _exact_casimir(label: IrrepLabel, p: QParams, num: _Num):
    fam = label.family
    if fam in ("L+", "L-"):
        return Fraction(label.lam)
    n = label.n
    if fam in ("D+", "D-"):
        return num.dif(0, n - 1)
    a = int(Fraction(p.a))
    if fam == "E+":
        return -num.dif(0, 2 * a + e_floor(1, a) + n - 1)
    return -num.dif(0, -2 * a + e_floor(-1, a) + n - 1)


def sl2r_irrep(label: IrrepLabel, n: int, p: QParams, exact: bool = False, margin: int = 1) -> TruncatedRep:
    """Matrices of X, Y, Z and iB on a window of the lattice.

    Two-sided families use ``2n + 1`` lattice points, the discrete families
    ``n`` points starting at the genuine end.  Float models are returned in
    the orthonormal basis; exact models stay in the orthogonal xi-basis with
    the Gram diagonal attached, and carry iX, iY instead of X, Y.
    """
    if label.family in ("T+", "T-"):
        return _one_dim(label, p)
    offsets = lattice_offsets(label, n)
    dim = len(offsets)
    sigma = label.sign_branch
    if exact:
        q, qa, lam = _exact_params(p, label.casimir)
        num = _Num(q, qa)
        lam = _exact_casimir(label, p, num)
        dtype = object
    else:
        num = _Num(p.q, p.power(p.af))
        lam = label.casimir
        dtype = float
    coeffs = [xi_coefficients(k, sigma, lam, num) for k in offsets]

    # norm ratios from self-adjointness of Z
    ratios = []
    for i in range(dim - 1):
        u = coeffs[i]["Z"][0]
        w = coeffs[i + 1]["Z"][2]
        if u == 0 or not (w / u > 0):
            raise InadmissibleLabel(
                f"{label.describe()}: non-positive norm ratio {w}/{u} between c = a{offsets[i]:+d} and "
                f"a{offsets[i + 1]:+d}; the label lies outside the classification windows")
        ratios.append(w / u)

    mats: Dict[str, np.ndarray] = {}
    for g in ("Z", "iX", "iY"):
        m = np.zeros((dim, dim), dtype=dtype)
        if exact:
            m[:] = Fraction(0)
        for i in range(dim):
            up, diag, down = coeffs[i][g]
            m[i, i] = diag
            if i + 1 < dim:
                m[i + 1, i] = up if exact else up * math.sqrt(ratios[i])
            if i > 0:
                m[i - 1, i] = down if exact else down / math.sqrt(ratios[i - 1])
        mats[g] = m
    brackets = [num.brace(1, k) / (num.q - 1 / num.q) for k in offsets]
    ib = np.zeros((dim, dim), dtype=dtype)
    if exact:
        ib[:] = Fraction(0)
    for i, v in enumerate(brackets):
        ib[i, i] = v
    mats["iB"] = ib

    gram = None
    if exact:
        gram = np.empty(dim, dtype=object)
        gram[0] = Fraction(1)
        for i, r in enumerate(ratios):
            gram[i + 1] = gram[i] * r
    else:
        mats = {"X": -1j * mats["iX"], "Y": -1j * mats["iY"], "Z": mats["Z"].astype(complex),
                "iB": mats["iB"].astype(complex)}

    open_low = label.two_sided or label.step < 0
    open_high = label.two_sided or label.step > 0
    interior = _interior_1d(dim, margin, open_low, open_high)
    meta = {"label": label.describe(), "casimir": float(label.casimir), "q": p.q, "a": p.af,
            "offsets": offsets, "norm_ratios": [float(r) for r in ratios]}
    if exact:
        meta["casimir_exact"] = str(lam)
    return TruncatedRep("sl2r", [p.af + k for k in offsets], mats, interior, margin, gram, exact, meta)


def _one_dim(label: IrrepLabel, p: QParams) -> TruncatedRep:
    s = 1 if label.family == "T+" else -1
    mats = {
        "X": np.array([[-s * 1j]]),
        "Y": np.array([[s * 1j]]),
        "Z": np.zeros((1, 1), dtype=complex),
        "iB": np.array([[qbracket(s * p.af, p) + 0j]]),
    }
    return TruncatedRep("sl2r", [s * p.af], mats, np.ones(1, dtype=bool), 0,
                        meta={"label": label.describe(), "casimir": float(label.casimir), "q": p.q, "a": p.af})


def _real_generators(rep: TruncatedRep):
    if rep.exact:
        return rep["iX"], rep["iY"], rep["Z"], rep["iB"]
    return 1j * rep["X"], 1j * rep["Y"], rep["Z"], rep["iB"]


def casimir_matrix(rep: TruncatedRep, p: QParams) -> np.ndarray:
    """``q^-1 iX + (q - q^-1) Z iB - q iY``."""
    px, py, z, ib = _real_generators(rep)
    if rep.exact:
        q = Fraction(p.q)
        return px / q + (q - 1 / q) * z.dot(ib) - q * py
    q = p.q
    return px / q + (q - 1 / q) * z @ ib - q * py


def casimir_residual(rep: TruncatedRep, p: QParams, lam=None) -> float:
    """Interior residual of ``Omega - lam I``; ``lam`` defaults to the label value."""
    om = casimir_matrix(rep, p)
    if rep.exact:
        lam = Fraction(rep.meta["casimir_exact"]) if lam is None else Fraction(lam)
        d = om.copy()
        for i in range(rep.dim):
            d[i, i] = om[i, i] - lam
        return rep.interior_residual(d)
    lam = rep.meta["casimir"] if lam is None else lam
    return rep.interior_residual(om - lam * np.eye(rep.dim))


def sl2r_relation_residuals(rep: TruncatedRep, p: QParams) -> Dict[str, float]:
    """Interior residuals of the defining relations and of the star structure.

    With ``P = iX``, ``Q = iY`` and ``B = iB`` the cross relations read
    ``BP - q^2 PB + qt + (1+q^2) Z = 0``, ``BQ - q^-2 QB + q^-1 t + (1+q^-2) Z = 0``
    and ``BZ - ZB + P + Q = 0``.  Float residuals of relations involving B
    are divided by max(1, |B|) since B grows geometrically along the window.
    """
    px, py, z, ib = _real_generators(rep)
    if rep.exact:
        q, qa, _ = _exact_params(p, 0)
        t = qa - 1 / qa
        one = np.array([[Fraction(int(i == j)) for j in range(rep.dim)] for i in range(rep.dim)], dtype=object)
        mm = lambda a, b: a.dot(b)
        bscale = 1.0
    else:
        q, t = p.q, p.t
        one = np.eye(rep.dim)
        mm = lambda a, b: a @ b
        bscale = max(1.0, float(np.max(np.abs(ib))))
    r = rep.interior_residual
    res = {
        "PZ-q2ZP": r(mm(px, z) - q ** 2 * mm(z, px)),
        "QZ-q-2ZQ": r(mm(py, z) - q ** -2 * mm(z, py)),
        "PQ": r(mm(px, py) + one - q * t * z - q ** 2 * mm(z, z)),
        "QP": r(mm(py, px) + one - t * z / q - mm(z, z) / q ** 2),
        "BP": r(mm(ib, px) - q ** 2 * mm(px, ib) + q * t * one + (1 + q ** 2) * z, bscale),
        "BQ": r(mm(ib, py) - q ** -2 * mm(py, ib) + t / q * one + (1 + q ** -2) * z, bscale),
        "BZ": r(mm(ib, z) - mm(z, ib) + px + py, bscale),
        "P*=-Q": rep.adjoint_residual(px, -py),
        "Z*=Z": rep.adjoint_residual(z, z),
        "B*=B": rep.adjoint_residual(ib, ib) / (1.0 if rep.exact else bscale),
    }
    return res


# GNS model ------------------------------------------------------------------------------

@dataclass
class GnsModel:
    """Truncated GNS space ``(H+ (x) H+) + (H- (x) H-)`` of the restricted Haar state.

    Vectors are arrays of shape ``(2, N, N)``: block 0 is the ``+`` sector,
    block 1 the ``-`` sector, indices ``(p, k)`` label ``xi_p (x) xi_k``.
    """

    n: int
    params: QParams
    pad: int = 8

    @property
    def prefactor(self) -> float:
        p = self.params
        return (1.0 / p.q - p.q) / qdif(p.af, p)

    def trace_weight(self, sign, size: Optional[int] = None) -> np.ndarray:
        """Diagonal of ``T = (q^-1 - q)/<a> |Z|`` in the given sector."""
        size = self.n if size is None else size
        s = _sgn(sign)
        p = self.params
        return self.prefactor * np.array([p.power(2 * k - s * p.af + 1) for k in range(size)])

    def xi_t(self, size: Optional[int] = None) -> np.ndarray:
        size = self.n if size is None else size
        out = np.zeros((2, size, size), dtype=complex)
        for block, s in enumerate((1, -1)):
            out[block] = np.diag(np.sqrt(self.trace_weight(s, size)))
        return out

    def state(self, b: NCPoly) -> complex:
        """``Phi(b) = Tr(pi(b) T)`` using a window padded by the degree of b."""
        size = self.n + b.degree()
        total = 0j
        for s in (1, -1):
            mats = _podles_like(b.algebra.name, s, size, self.params)
            m = evaluate_poly(b, mats, self.params)
            total += np.sum(np.diag(m) * self.trace_weight(s, size))
        return total

    def vector(self, b: NCPoly) -> np.ndarray:
        """``(b (x) 1) xi_T`` cropped to the window."""
        deg = b.degree()
        if deg > self.n - 2:
            raise TruncationOverflow(f"degree {deg} does not fit a window of {self.n}")
        size = self.n + deg
        xi = self.xi_t(size)
        out = np.zeros((2, self.n, self.n), dtype=complex)
        for block, s in enumerate((1, -1)):
            mats = _podles_like(b.algebra.name, s, size, self.params)
            m = evaluate_poly(b, mats, self.params)
            out[block] = (m @ xi[block])[: self.n, : self.n]
        return out

    @staticmethod
    def inner(u: np.ndarray, v: np.ndarray) -> complex:
        """Inner product, linear in the second argument."""
        return complex(np.vdot(u, v))


def _podles_like(name: str, sign, size: int, p: QParams) -> Dict[str, np.ndarray]:
    mats = podles_matrices(sign, size, p)
    if name == "Podles_loc":
        mats["Zi"] = np.diag(1.0 / np.diag(mats["Z"]))
    return mats


def gns_model(n: int, p: QParams) -> GnsModel:
    if n < 2:
        raise ValueError("need N >= 2")
    return GnsModel(n, p)


def heisenberg_action(x: NCPoly, b: NCPoly, model: GnsModel) -> np.ndarray:
    """``pi_Heis(x)`` applied to the GNS vector of ``b``.

    Podles elements act by left multiplication, U_q(su(2)) elements by the
    translation action ``x |> b``.
    """
    name = x.algebra.name
    if name in ("Podles", "Podles_loc"):
        return model.vector(x * b)
    if name == "Uq_su2":
        return model.vector(translation_action(x, b))
    raise ValueError(f"cannot act with an element of {name}")


# decoupled representations -----------------------------------------------------------------

def pi_tilde(sign, s_param: float, n: int, p: QParams, margin: int = 2) -> TruncatedRep:
    """Representation on the grid ``xi_{p,k}`` (flattened as ``p * n + k``).

    Z, X, Y act on the first leg; K, E, F by the two-leg formulas; ``iB`` is
    ``i pi(B_s)`` with ``s = s_param``.
    """
    if n < 3:
        raise ValueError("need N >= 3")
    m = podles_matrices(sign, n, p)
    x, y, z = m["X"], m["Y"], m["Z"]
    zi = np.diag(1.0 / np.diag(z))
    one = np.eye(n)
    q = p.q
    kron = np.kron
    d_inv = 1.0 / (1.0 / q - q)
    mats = {
        "X": kron(x, one),
        "Y": kron(y, one),
        "Z": kron(z, one),
        "K": kron(zi, z),
        "Ki": kron(z, zi),
        "E": d_inv * (q ** -0.5 * kron(zi @ x, one) - q ** 0.5 * kron(zi, y)),
        "F": d_inv * (q ** -0.5 * kron(y, zi) - q ** 0.5 * kron(one, x @ zi)),
    }
    mats["iB"] = (1j * kron((y / q - q * x) @ zi, one) + kron(zi, 1j * (y - x) + s_param * z)) / (q - 1 / q)
    mats["Omega_twisted"] = kron(one, 1j * (y - x) + s_param * z)
    lo = _interior_1d(n, margin, False, True)
    interior = np.outer(lo, lo).ravel()
    basis = [(i, k) for i in range(n) for k in range(n)]
    return TruncatedRep("Heisenberg", basis, mats, interior, margin,
                        meta={"sign": "+" if _sgn(sign) > 0 else "-", "s": s_param, "q": q, "a": p.af})


def uq_relation_residuals(rep: TruncatedRep, p: QParams) -> Dict[str, float]:
    k, ki, e, f = rep["K"], rep["Ki"], rep["E"], rep["F"]
    q = p.q
    r = rep.interior_residual
    one = np.eye(rep.dim)
    scale = max(1.0, float(np.max(np.abs(k))), float(np.max(np.abs(e))))
    return {
        "KE-q2EK": r(k @ e - q ** 2 * e @ k, scale ** 2),
        "KF-q-2FK": r(k @ f - q ** -2 * f @ k, scale ** 2),
        "KKi": r(k @ ki - one, scale),
        "EF-FE": r(e @ f - f @ e - (k - ki) / (q - 1 / q), scale ** 2),
    }
