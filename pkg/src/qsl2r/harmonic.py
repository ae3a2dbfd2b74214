"""Executable checks of the harmonic-analysis statements: spin-model iB
eigenvectors, induced (principal series) representations, branching to the
Podles sphere and the channel-wise decomposition of the regular
representation."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional

import numpy as np

from .qspecial import QParams, qbracket, qdif
from .repkit import (FAMILIES, IrrepLabel, TruncatedRep, casimir_matrix, discrete_casimir, make_label,
                     sl2r_irrep, sl2r_relation_residuals)
from .spectral import (VerificationError, predicted_atoms, spectral_measure, truncated_eigendecomposition,
                       twisted_casimir_jacobi)

SCHEMA_VERSION = 1
#: relative tolerance for Casimir-to-label matching
MATCH_RTOL = 1e-5


def _sgn(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def _sym(s: int) -> str:
    return "+" if s > 0 else "-"


# spin-1/2 model ----------------------------------------------------------------------

def spin_half(p: QParams) -> Dict[str, np.ndarray]:
    q = p.q
    return {
        "K": np.diag([q, 1 / q]).astype(complex),
        "Ki": np.diag([1 / q, q]).astype(complex),
        "E": np.array([[0, math.sqrt(q)], [0, 0]], dtype=complex),
        "F": np.array([[0, 0], [1 / math.sqrt(q), 0]], dtype=complex),
    }


def spin_half_ib(c: float, p: QParams) -> np.ndarray:
    """``pi_1/2(iB)`` with parameter ``q^c - q^-c``: ``[[q[c], i], [-i, q^-1 [c]]]``."""
    b = qbracket(c, p)
    return np.array([[p.q * b, 1j], [-1j, b / p.q]])


def spin_half_eigenvector(c: float, sign, p: QParams) -> np.ndarray:
    """Unit eigenvector of ``spin_half_ib(c)`` at ``[c +- 1]``."""
    s = _sgn(sign)
    return np.array([p.power(s * c / 2), -s * 1j * p.power(-s * c / 2)]) / math.sqrt(qdif(c, p))


def _kron_all(mats):
    return reduce(np.kron, mats)


def tensor_ib(n: int, p: QParams) -> np.ndarray:
    """The n-fold coproduct of iB on ``V_1/2^{(x) n}``: ``sum_j K^{(x) j} (x) (iB - [a] [j > 0]) (x) 1``."""
    sh = spin_half(p)
    one = np.eye(2)
    ib = spin_half_ib(p.af, p)
    out = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j in range(n):
        mid = ib - (qbracket(p.af, p) * one if j else 0)
        out += _kron_all([sh["K"]] * j + [mid] + [one] * (n - j - 1))
    return out


def _tensor_f(n: int, p: QParams) -> np.ndarray:
    sh = spin_half(p)
    out = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j in range(n):
        out += _kron_all([np.eye(2)] * j + [sh["F"]] + [sh["Ki"]] * (n - j - 1))
    return out


def spin_module_basis(n: int, p: QParams) -> np.ndarray:
    """Orthonormal basis (columns) of ``V_n/2`` inside ``V_1/2^{(x) n}``, from the F-orbit of e_+^n."""
    v = np.zeros(2 ** n, dtype=complex)
    v[0] = 1.0
    f = _tensor_f(n, p)
    cols = [v]
    for _ in range(n):
        cols.append(f @ cols[-1])
    qmat, _ = np.linalg.qr(np.column_stack(cols))
    return qmat


@dataclass
class SpinEigenvector:
    n: int
    sign: int
    eigenvalue: float
    tensor: np.ndarray        # in V_1/2^{(x) n}
    coords: np.ndarray        # in an orthonormal basis of V_n/2
    residual: float           # |Delta(iB) v - [a +- n] v|
    leakage: float            # distance of v from V_n/2


def spin_ib_eigenvectors(n: int, sign, p: QParams) -> SpinEigenvector:
    if n < 1:
        raise ValueError("need n >= 1")
    s = _sgn(sign)
    a = p.af
    factors = [spin_half_eigenvector(a + s * k, s, p) for k in range(n - 1, -1, -1)]
    v = _kron_all(factors)
    lam = qbracket(a + s * n, p)
    res = float(np.linalg.norm(tensor_ib(n, p) @ v - lam * v))
    basis = spin_module_basis(n, p)
    coords = basis.conj().T @ v
    leak = float(np.linalg.norm(v - basis @ coords))
    return SpinEigenvector(n, s, lam, v, coords, res, leak)


# induced representations ----------------------------------------------------------------

def induced_translation(n: int, p: QParams) -> TruncatedRep:
    """``pi_g`` of alpha, beta, gamma, delta on ``e_[c]``, ``c = a + k``, ``|k| <= n``."""
    if n < 3:
        raise ValueError("need N >= 3")
    ks = list(range(-n, n + 1))
    cs = [p.af + k for k in ks]
    dim = len(cs)
    dif = [qdif(c, p) for c in cs]
    sq = math.sqrt(p.q)
    mats = {g: np.zeros((dim, dim), dtype=complex) for g in ("alpha", "beta", "gamma", "delta")}
    for i, c in enumerate(cs):
        if i + 1 < dim:
            s = math.sqrt(dif[i] * dif[i + 1])
            mats["alpha"][i + 1, i] = p.power(0.5 + c) / s
            mats["beta"][i + 1, i] = 1j * sq / s
            mats["gamma"][i + 1, i] = -1j / sq / s
            mats["delta"][i + 1, i] = p.power(-0.5 - c) / s
        if i > 0:
            s = math.sqrt(dif[i] * dif[i - 1])
            mats["alpha"][i - 1, i] = p.power(0.5 - c) / s
            mats["beta"][i - 1, i] = -1j * sq / s
            mats["gamma"][i - 1, i] = 1j / sq / s
            mats["delta"][i - 1, i] = p.power(-0.5 + c) / s
    mats["iB"] = np.diag([qbracket(c, p) for c in cs]).astype(complex)
    interior = np.ones(dim, dtype=bool)
    interior[0] = interior[-1] = False
    return TruncatedRep("Oq_SU2", cs, mats, interior, 1, meta={"q": p.q, "a": p.af, "offsets": ks})


def oq_relation_residuals(rep: TruncatedRep, p: QParams) -> Dict[str, float]:
    al, be, ga, de = (rep[g] for g in ("alpha", "beta", "gamma", "delta"))
    q = p.q
    one = np.eye(rep.dim)
    r = rep.interior_residual
    return {
        "ab-qba": r(al @ be - q * be @ al),
        "ag-qga": r(al @ ga - q * ga @ al),
        "bg-gb": r(be @ ga - ga @ be),
        "bd-qdb": r(be @ de - q * de @ be),
        "gd-qdg": r(ga @ de - q * de @ ga),
        "ad-qbg": r(al @ de - q * be @ ga - one),
        "da-q-1gb": r(de @ al - ga @ be / q - one),
        "a*=d": rep.adjoint_residual(al, de),
        "b*=-qg": rep.adjoint_residual(be, -q * ga),
    }


def principal_series(z: complex, n: int, p: QParams, margin: int = 3, tol: float = 1e-12) -> TruncatedRep:
    """The character ``chi_z`` induced up: X, Y, Z act through ``kappa_z`` and ``pi_g``."""
    z = complex(z)
    if abs(abs(z) - 1) > tol:
        raise ValueError(f"principal series need |z| = 1, got {abs(z)}")
    g = induced_translation(n, p)
    al, be, ga, de = (g[k] for k in ("alpha", "beta", "gamma", "delta"))
    q, t, zb = p.q, p.t, z.conjugate()
    mats = {
        "X": -q * zb * ga @ ga + z * al @ al - t * al @ ga,
        "Z": q * zb * de @ ga - z * be @ al + t * be @ ga,
        "Y": zb * de @ de - z * be @ be / q + t * be @ de / q,
        "iB": g["iB"],
    }
    interior = np.ones(g.dim, dtype=bool)
    interior[:margin] = False
    interior[-margin:] = False
    theta = -math.atan2(z.imag, z.real)
    meta = {"q": p.q, "a": p.af, "z": [z.real, z.imag], "theta": theta, "casimir": (1j * (z - zb)).real,
            "offsets": g.meta["offsets"]}
    return TruncatedRep("sl2r", g.basis, mats, interior, margin, meta=meta)


def parity_blocks(rep: TruncatedRep, tol: float = 1e-14) -> Dict[str, object]:
    """Check that X, Y, Z preserve the even and odd sublattices; return both spectra."""
    ks = np.array(rep.meta["offsets"])
    even = ks % 2 == 0
    leak = max(float(np.max(np.abs(rep[g][np.ix_(even, ~even)]), initial=0.0)) +
               float(np.max(np.abs(rep[g][np.ix_(~even, even)]), initial=0.0)) for g in ("X", "Y", "Z"))
    ib = np.real(np.diag(rep["iB"]))
    return {"even": ib[even], "odd": ib[~even], "cross_coupling": leak, "decoupled": leak <= tol}


def _discrete_with_base(families, base: int, lam: float, p: QParams, max_index: int = 64) -> str:
    for fam in families:
        for m in range(1, max_index + 1):
            lab = make_label(fam, p, n=m)
            if lab.base == base and abs(lab.casimir - lam) <= MATCH_RTOL * max(1.0, abs(lam)):
                return lab.describe()
    raise VerificationError(f"no {'/'.join(families)} label with base a{base:+d} and Casimir {lam:.12g}")


def principal_series_components(rep: TruncatedRep, p: QParams, tol: float = 1e-12) -> List[str]:
    """Irreducible pieces of an induced representation, one parity lattice at a time.

    A parity block is a single L+- unless a coupling between neighbouring
    lattice points vanishes; the half-lattices on either side are then a
    discrete pair (at Casimir 2 the odd block is D+_1 (+) D-_1).
    """
    lam = float(rep.meta["casimir"])
    ks = list(rep.meta["offsets"])
    out = []
    for parity, fam in ((0, "L+"), (1, "L-")):
        idx = [i for i, k in enumerate(ks) if k % 2 == parity]
        cuts = []
        for i, j in zip(idx, idx[1:]):
            if rep.interior[i] and rep.interior[j]:
                link = max(abs(rep[g][i, j]) + abs(rep[g][j, i]) for g in ("X", "Y", "Z"))
                if link <= tol:
                    cuts.append((ks[i], ks[j]))
        if not cuts:
            out.append(f"{fam}:{lam:.12g}")
            continue
        if len(cuts) > 1:
            raise VerificationError(f"parity block {fam} splits more than once: {cuts}")
        lo, hi = cuts[0]
        out.append(_discrete_with_base(("D+", "E+"), hi, lam, p))
        out.append(_discrete_with_base(("D-", "E-"), lo, lam, p))
    return out


# branching -----------------------------------------------------------------------------------

@dataclass
class BranchingReport:
    label: str
    components: Dict[str, int]
    spectra: Dict[str, list]
    conclusive: bool = True
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "label": self.label, "components": self.components,
                "spectra": self.spectra, "conclusive": self.conclusive, "notes": self.notes}


def expected_branching(label: IrrepLabel) -> Dict[str, int]:
    """Restriction pattern predicted by the classification."""
    fam = label.family
    if fam in ("L+", "L-"):
        return {"pi+": 1, "pi-": 1}
    if fam in ("D-", "E+"):
        return {"pi+": 1}
    if fam in ("D+", "E-"):
        return {"pi-": 1}
    return {"chi(-i)" if fam == "T+" else "chi(+i)": 1}


def _char_name(z: complex) -> str:
    if abs(z - 1j) < 1e-6:
        return "chi(+i)"
    if abs(z + 1j) < 1e-6:
        return "chi(-i)"
    return f"chi({z.real:+.6f}{z.imag:+.6f}i)"


def branch(label: IrrepLabel, n: int, p: QParams, threshold: float = 1e-3, tol: float = 1e-6,
           kernel_tol: float = 1e-9) -> BranchingReport:
    """Decompose the restriction to the Podles sphere by matching the spectrum of Z.

    Eigenvalues above ``threshold`` in modulus must lie on one of the
    geometric families ``q^{2p - a + 1}`` (pi+) or ``-q^{2p + a + 1}`` (pi-);
    the multiplicity of a family is the count of its top value.  Vectors in
    the numerical kernel of Z are characters when X acts on them by a
    unimodular scalar.
    """
    rep = sl2r_irrep(label, n, p)
    z = rep["Z"]
    w, v = np.linalg.eigh((z + z.conj().T) / 2)
    notes: List[str] = []
    comps: Counter = Counter()
    top = {1: p.power(1 - p.af), -1: -p.power(1 + p.af)}
    ratio = p.q ** 2
    unmatched = []
    matched_pos, matched_neg = [], []
    for lam in w:
        if abs(lam) < threshold:
            continue
        s = 1 if lam > 0 else -1
        k = math.log(lam / top[s]) / math.log(ratio)
        kr = round(k)
        if kr >= 0 and abs(lam - top[s] * ratio ** kr) <= tol * max(1.0, abs(lam)):
            (matched_pos if s > 0 else matched_neg).append(float(lam))
            if kr == 0:
                comps["pi+" if s > 0 else "pi-"] += 1
        else:
            unmatched.append(float(lam))
    # each matched family must be a full geometric ladder down to the threshold
    for s, vals in ((1, matched_pos), (-1, matched_neg)):
        mult = comps["pi+" if s > 0 else "pi-"]
        if vals and not mult:
            notes.append(f"{_sym(s)} family present without its top eigenvalue")
            unmatched.extend(vals)
    # characters from the kernel of Z
    kernel = v[:, np.abs(w) < kernel_tol]
    if kernel.shape[1]:
        x = rep["X"]
        comp = kernel.conj().T @ x @ kernel
        zvals, zvecs = np.linalg.eig(comp)
        for zval, y in zip(zvals, zvecs.T):
            u = kernel @ y
            u = u / np.linalg.norm(u)
            res = float(np.linalg.norm(x @ u - zval * u))
            if abs(abs(zval) - 1) < 1e-8 and res < 1e-8:
                comps[_char_name(complex(zval))] += 1
    conclusive = not unmatched
    if unmatched:
        notes.append(f"unmatched Z eigenvalues: {unmatched[:5]}")
    spectra = {"pi+": matched_pos[::-1][:10], "pi-": matched_neg[:10], "unmatched": unmatched[:10],
               "kernel_dim": int(kernel.shape[1])}
    return BranchingReport(label.describe(), dict(comps), spectra, conclusive, notes)


# regular representation, channel by channel ------------------------------------------------------

@dataclass
class ChannelReport:
    n: int
    sign: int
    truncation: int
    outliers: List[dict]
    continuous_mass: float
    continuous_label: str
    predicted: List[str]
    analytic_continuous_mass: Optional[float] = None
    passed: bool = True
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "n": self.n, "sign": _sym(self.sign), "truncation": self.truncation,
                "outliers": self.outliers, "continuous_mass": self.continuous_mass,
                "continuous_label": self.continuous_label, "predicted": self.predicted,
                "analytic_continuous_mass": self.analytic_continuous_mass, "passed": self.passed,
                "notes": self.notes}


def hosted_families(sign) -> tuple:
    """Discrete families that can occur in a channel of the given sign."""
    return ("D-", "E+") if _sgn(sign) > 0 else ("D+", "E-")


def predicted_channel_labels(n: int, sign, p: QParams) -> List[str]:
    """Series predicted from the atoms of the twisted Casimir at ``c = a + n``."""
    s = _sgn(sign)
    a = p.af
    out = []
    for at in predicted_atoms(s, a + n, p):
        if at.family == "J(+)":
            idx = (-n if s > 0 else n) - 2 * at.k
            out.append(f"{'D-' if s > 0 else 'D+'}:{idx}")
        elif s > 0:
            out.append(f"E+:{n - 2 * at.k - math.floor(-2 * a)}")
        else:
            out.append(f"E-:{-n - 2 * at.k - math.floor(2 * a)}")
    return out


def casimir_candidates(value: float, sign, p: QParams, max_index: int = 64, rtol: float = MATCH_RTOL) -> List[str]:
    """Hosted D/E labels whose Casimir equals ``value`` within ``rtol``."""
    hits = []
    for fam in hosted_families(sign):
        for m in range(1, max_index + 1):
            if abs(discrete_casimir(fam, m, p) - value) <= rtol * max(1.0, abs(value)):
                hits.append(f"{fam}:{m}")
    return hits


def match_casimir(value: float, sign, p: QParams, max_index: int = 64, rtol: float = MATCH_RTOL) -> IrrepLabel:
    """The unique hosted D/E label with Casimir equal to ``value``; ties are errors."""
    hits = casimir_candidates(value, sign, p, max_index, rtol)
    if not hits:
        raise VerificationError(f"outlier {value:.12g} matches no {'/'.join(hosted_families(sign))} Casimir")
    if len(hits) > 1:
        raise VerificationError(f"outlier {value:.12g} matches several labels: {hits}")
    fam, _, m = hits[0].partition(":")
    return make_label(fam, p, n=int(m))


def regular_channel(n: int, sign, truncation: int, p: QParams, with_measure: bool = True) -> ChannelReport:
    """Decompose one channel ``pi_[a+n]`` restricted to the ``sign`` block."""
    s = _sgn(sign)
    c = p.af + n
    j = twisted_casimir_jacobi(s, c, truncation, p)
    w, v = truncated_eigendecomposition(j)
    mask = np.abs(w) > 2 + 1e-9
    notes = []
    outs = []
    passed = True
    predicted = predicted_channel_labels(n, s, p)
    for lam, vec0 in zip(w[mask], v[0, mask]):
        hits = casimir_candidates(float(lam), s, p)
        lab = None
        if len(hits) == 1:
            lab = hits[0]
        elif not hits:
            passed = False
            notes.append(f"outlier {lam:.12g} matches no {'/'.join(hosted_families(s))} Casimir")
        else:
            # E_1 and E_2 share a Casimir when 2a lies in 1/2 + Z; the atom family decides
            chosen = [h for h in hits if h in predicted]
            notes.append(f"Casimir collision at {lam:.12g} between {hits}")
            if len(chosen) == 1:
                lab = chosen[0]
                notes.append(f"collision resolved to {lab} by the atom index")
            else:
                passed = False
        outs.append({"value": float(lam), "label": lab, "weight": float(vec0 ** 2)})
    labels = [o["label"] for o in outs if o["label"]]
    if len(set(labels)) != len(labels):
        passed = False
        notes.append("a discrete label occurs twice")
    if sorted(labels) != sorted(predicted):
        passed = False
        notes.append(f"outliers {sorted(labels)} differ from the predicted {sorted(predicted)}")
    cont = 1.0 - sum(o["weight"] for o in outs)
    analytic = None
    if with_measure:
        analytic = spectral_measure(s, c, p).continuous_mass
    return ChannelReport(n, s, truncation, outs, cont, "L+" if n % 2 == 0 else "L-", predicted, analytic,
                         passed, notes)


def casimir_scalar(rep: TruncatedRep, p: QParams) -> float:
    """Mean interior diagonal of the Casimir matrix."""
    om = casimir_matrix(rep, p)
    return float(np.mean(np.real(np.diag(om))[rep.interior]))


__all__ = [
    "BranchingReport", "ChannelReport", "SpinEigenvector", "branch", "casimir_candidates", "casimir_scalar", "expected_branching",
    "hosted_families", "induced_translation", "match_casimir", "oq_relation_residuals", "parity_blocks",
    "predicted_channel_labels", "principal_series", "principal_series_components", "regular_channel", "spin_half", "spin_half_eigenvector",
    "spin_half_ib", "spin_ib_eigenvectors", "spin_module_basis", "tensor_ib", "FAMILIES",
    "sl2r_relation_residuals",
]
