"""Twisted Casimir as a Jacobi operator and its vacuum spectral measure."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import List, Tuple

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_legendre

from .qspecial import PHI_DPS, POCHHAMMER_EPS, QParams, qbrace, qdif, q_pochhammer

SCHEMA_VERSION = 1
GL_NODES = 2048
#: atoms closer than this to +-2 are reported but flagged
BOUNDARY_FLAG = 1e-4


class VerificationError(AssertionError):
    pass


def _sgn(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


@dataclass(frozen=True)
class JacobiOperator:
    """Real symmetric tridiagonal matrix ``d`` (diagonal), ``o`` (off-diagonal).

    ``gauge`` records the diagonal unitary that turned the original complex
    operator into this real one: ``J = U^* M U`` with ``U = diag(phase^k)``.
    """

    d: np.ndarray
    o: np.ndarray
    gauge: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.d)

    def dense(self) -> np.ndarray:
        return np.diag(self.d) + np.diag(self.o, 1) + np.diag(self.o, -1)

    def original(self) -> np.ndarray:
        """The ungauged complex matrix ``U J U^*``."""
        phase = complex(*self.gauge.get("phase", (1.0, 0.0)))
        u = phase ** np.arange(self.size)
        return (u[:, None] * self.dense()) * u.conj()[None, :]

    def norm_bound(self) -> float:
        return 2 * float(np.max(np.abs(self.o), initial=0.0)) + float(np.max(np.abs(self.d)))

    def vacuum_moments(self, kmax: int) -> np.ndarray:
        """``<e_0, J^k e_0>`` for ``k = 0..kmax`` by repeated banded products."""
        v = np.zeros(self.size)
        v[0] = 1.0
        out = [1.0]
        for _ in range(kmax):
            w = self.d * v
            w[:-1] += self.o * v[1:]
            w[1:] += self.o * v[:-1]
            v = w
            out.append(v[0])
        # <e0, J^k e0> = (J^k e0)_0
        return np.array(out)


def twisted_casimir_jacobi(sign, c: float, n: int, p: QParams) -> JacobiOperator:
    """``pi_+-(i(Y - X) + {c} Z)`` on ``xi_0 .. xi_{n-1}`` after the gauge ``diag(i^k)``."""
    if n < 1:
        raise ValueError("need N >= 1")
    s = _sgn(sign)
    k = np.arange(n)
    d = s * qbrace(c, p) * np.exp((2 * k - s * p.af + 1) * math.log(p.q))
    kk = np.arange(1, n)
    o = np.sqrt((1 - p.q ** (2 * kk)) * (1 + np.exp((-2 * s * p.af + 2 * kk) * math.log(p.q))))
    return JacobiOperator(d, o, {"phase": (0.0, 1.0), "sign": "+" if s > 0 else "-", "c": c,
                                 "q": p.q, "a": p.af})


def truncated_eigendecomposition(j: JacobiOperator, check: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""
    if j.size == 1:
        return j.d.copy(), np.ones((1, 1))
    try:
        w, v = eigh_tridiagonal(j.d, j.o)
    except np.linalg.LinAlgError as exc:
        raise VerificationError(f"tridiagonal eigensolver failed: {exc}") from None
    if check:
        res = np.abs(j.dense() @ v - v * w).max(axis=0)
        bad = np.nonzero(res > 1e-10 * max(1.0, j.norm_bound()))[0]
        if bad.size:
            raise VerificationError(f"eigenpair {bad[0]} has residual {res[bad[0]]:.3e}")
    return w, v


# predicted point spectrum ------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    loc: float
    family: str   # "J(+)" or "J(-)"
    k: int
    near_boundary: bool = False


@dataclass
class AtomSet:
    sign: int
    c: float
    atoms: List[Atom]

    def locations(self) -> np.ndarray:
        return np.array(sorted(a.loc for a in self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)


def _atom_range(m: float, eps: float = 1e-9) -> range:
    """k >= 0 with k < (m - 1)/2; the bound itself (an atom at +-2) is excluded."""
    bound = (m - 1) / 2
    return range(max(math.ceil(bound - eps), 0))


def predicted_atoms(sign, c: float, p: QParams) -> AtomSet:
    s = _sgn(sign)
    a = p.af
    atoms = []
    for family, m, sgn_loc in (("J(+)", s * (a - c), 1.0), ("J(-)", s * (a + c), -1.0)):
        for k in _atom_range(m):
            loc = sgn_loc * qdif(m - 2 * k - 1, p)
            atoms.append(Atom(loc, family, k, abs(abs(loc) - 2.0) < BOUNDARY_FLAG))
    return AtomSet(s, c, atoms)


def atom_polynomials(atom: Atom, deg: int, sign, c: float, p: QParams, dps: int = PHI_DPS) -> np.ndarray:
    """Orthonormal polynomials of the Jacobi operator at an atom, degrees 0..deg.

    At an atom they form the recessive solution of the three-term recursion,
    so the location is recomputed and the recursion run at ``dps`` digits;
    double precision would pick up the dominant solution.
    """
    s = _sgn(sign)
    with mpmath.workdps(dps):
        q, a, cc = mpmath.mpf(p.q), mpmath.mpf(p.af), mpmath.mpf(c)
        m = s * (a - cc) if atom.family == "J(+)" else s * (a + cc)
        e = m - 2 * atom.k - 1
        loc = (1 if atom.family == "J(+)" else -1) * (q ** e + q ** -e)
        brace_c = q ** cc - q ** -cc
        d = [s * brace_c * q ** (2 * k - s * a + 1) for k in range(deg + 1)]
        b = [mpmath.sqrt((1 - q ** (2 * k)) * (1 + q ** (-2 * s * a + 2 * k))) for k in range(deg + 1)]
        vals = [mpmath.mpf(1)]
        prev = mpmath.mpf(0)
        for k in range(deg):
            nxt = ((loc - d[k]) * vals[k] - (b[k] * prev if k else 0)) / b[k + 1]
            prev = vals[k]
            vals.append(nxt)
        return np.array([float(v) for v in vals])


def orthonormal_polynomials(deg: int, lam, j: JacobiOperator) -> np.ndarray:
    """Orthonormal polynomials of ``j`` at the points ``lam`` (rows), degrees 0..deg (columns)."""
    if j.size < deg + 1:
        raise ValueError(f"need N >= {deg + 1}")
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    out = np.zeros((len(lam), deg + 1))
    out[:, 0] = 1.0
    for k in range(deg):
        prev = out[:, k - 1] * j.o[k - 1] if k else 0.0
        out[:, k + 1] = ((lam - j.d[k]) * out[:, k] - prev) / j.o[k]
    return out


# analytic measure -------------------------------------------------------------------

def _abs2_poch(r: float, phi: np.ndarray, base: float) -> np.ndarray:
    """``|(r e^{i phi}; base)_inf|^2`` as a product of ``(1-x)^2 + 4x sin^2(phi/2)``."""
    out = np.ones_like(phi)
    x = r
    while abs(x) >= POCHHAMMER_EPS:
        out *= (1.0 - x) ** 2 + 4.0 * x * np.sin(phi / 2.0) ** 2
        x *= base
    return out


def _poch(x: float, base: float, n=None) -> float:
    return float(np.real(q_pochhammer(x, base, n)))


def atom_weight(atom: Atom, sign, c: float, p: QParams) -> float:
    """Closed-form mass of a predicted atom."""
    s = _sgn(sign)
    a, q, n = p.af, p.q, atom.k
    b = q * q
    pw = p.power
    if atom.family == "J(+)":
        m = s * (a - c)
        inner, outer = -pw(-2 * s * c), -pw(2 + 2 * s * c)
    else:
        m = s * (a + c)
        inner, outer = -pw(2 * s * c), -pw(2 - 2 * s * c)
    num = pw(2 * n) * (1 - pw(2 * m - 4 * n - 2)) * _poch(-pw(2 * s * a - 2 * n), b, n) \
        * _poch(pw(2 * m - 2 * n), b)
    den = _poch(b, b, n) * _poch(inner, b) * _poch(outer, b, n)
    return num / den


@lru_cache(maxsize=8)
def _gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return roots_legendre(n)


@dataclass
class SpectralMeasure:
    sign: int
    c: float
    params: QParams
    atoms: List[Tuple[Atom, float]]
    nodes: int = GL_NODES

    @cached_property
    def _quadrature(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Nodes lambda, weights (including the Jacobian) and density values."""
        x, w = _gauss_legendre(self.nodes)
        theta = (x + 1) * np.pi / 2
        wt = w * np.pi / 2
        # g(2cos th) * |d lambda / d th| = reduced(th) / (2 pi)
        red = self._reduced(theta)
        lam = 2 * np.cos(theta)
        dens = red / (4 * np.pi * np.abs(np.sin(theta)))
        return lam, wt * red / (2 * np.pi), dens

    def _reduced(self, theta: np.ndarray) -> np.ndarray:
        p, s, c = self.params, self.sign, self.c
        b = p.q ** 2
        const = _poch(-p.power(-2 * s * p.af + 2), b) * _poch(b, b)
        num = _abs2_poch(1.0, 2 * theta, b) * const
        r1 = p.power(-s * (p.af - c) + 1)
        r2 = p.power(-s * (p.af + c) + 1)
        den = _abs2_poch(r1, theta, b) * _abs2_poch(r2, theta + np.pi, b)
        return num / den

    def density(self, lam) -> np.ndarray:
        """``g(lambda)`` on (-2, 2); zero outside."""
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        out = np.zeros_like(lam)
        inside = np.abs(lam) < 2
        theta = np.arccos(lam[inside] / 2)
        out[inside] = self._reduced(theta) / (4 * np.pi * np.abs(np.sin(theta)))
        return out

    @property
    def continuous_mass(self) -> float:
        return float(np.sum(self._quadrature[1]))

    @property
    def mass(self) -> float:
        return self.continuous_mass + sum(w for _, w in self.atoms)

    def moment(self, k: int) -> float:
        lam, w, _ = self._quadrature
        return float(np.sum(w * lam ** k)) + sum(wt * at.loc ** k for at, wt in self.atoms)

    def moments(self, kmax: int) -> np.ndarray:
        return np.array([self.moment(k) for k in range(kmax + 1)])

    def gram(self, deg: int) -> np.ndarray:
        """``int P_m P_n dmu`` for the orthonormal polynomials of the Jacobi operator, m, n <= deg."""
        lam, w, _ = self._quadrature
        j = twisted_casimir_jacobi(self.sign, self.c, deg + 2, self.params)
        vals = orthonormal_polynomials(deg, lam, j)
        out = (vals * w[:, None]).T @ vals
        for at, wt in self.atoms:
            v = atom_polynomials(at, deg, self.sign, self.c, self.params)
            out += wt * np.outer(v, v)
        return out

    def to_json(self, samples: int = 201) -> dict:
        lam = np.linspace(-2, 2, samples + 2)[1:-1]
        return {
            "schema": SCHEMA_VERSION,
            "sign": "+" if self.sign > 0 else "-",
            "c": self.c,
            "q": self.params.q,
            "a": self.params.af,
            "atoms": [{"loc": at.loc, "weight": w, "family": at.family, "k": at.k,
                       "near_boundary": at.near_boundary} for at, w in self.atoms],
            "density_samples": [[float(x), float(g)] for x, g in zip(lam, self.density(lam))],
            "mass": self.mass,
        }


def spectral_measure(sign, c: float, p: QParams, nodes: int = GL_NODES, mass_tol: float = 1e-6) -> SpectralMeasure:
    s = _sgn(sign)
    atoms = [(at, atom_weight(at, s, c, p)) for at in predicted_atoms(s, c, p)]
    mu = SpectralMeasure(s, c, p, atoms, nodes)
    if any(w <= 0 for _, w in atoms):
        raise VerificationError(f"non-positive atom weight in {[w for _, w in atoms]}")
    if abs(mu.mass - 1.0) > mass_tol:
        raise VerificationError(f"total mass {mu.mass:.12g} differs from 1 by more than {mass_tol}")
    return mu


def moment_check(mu: SpectralMeasure, j: JacobiOperator, kmax: int, relative: bool = True) -> np.ndarray:
    """``|<e0, J^k e0> - int lambda^k dmu|`` for k = 0..kmax.

    With ``relative`` the k-th residual is divided by ``max(1, |<e0, J^k e0>|)``;
    moments grow like ``max|atom|^k``.
    """
    if j.size < kmax + 2:
        raise ValueError(f"need N >= {kmax + 2} for moments up to {kmax}")
    exact = j.vacuum_moments(kmax)
    res = np.abs(exact - mu.moments(kmax))
    if relative:
        res = res / np.maximum(1.0, np.abs(exact))
    return res


def vacuum_atom_weights(j: JacobiOperator, locs, tol: float = 1e-6) -> List[float]:
    """Squared first eigenvector components at the eigenvalues nearest to ``locs``."""
    w, v = truncated_eigendecomposition(j)
    out = []
    for loc in locs:
        i = int(np.argmin(np.abs(w - loc)))
        if abs(w[i] - loc) > tol * max(1.0, abs(loc)):
            raise VerificationError(f"no truncated eigenvalue near {loc}")
        out.append(float(v[0, i] ** 2))
    return out


def outliers(j: JacobiOperator, margin: float = 1e-9) -> np.ndarray:
    w, _ = truncated_eigendecomposition(j)
    return w[np.abs(w) > 2 + margin]
