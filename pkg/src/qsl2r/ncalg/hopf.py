"""Hopf structure maps, the pairing, the Podles embedding and the actions."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraSpec, NCPoly, TensorPoly, Word
from .coefficient import Coefficient, D_INV, I, ONE, T, ZERO, q_brace, qc
from .presentations import OQ, PODLES_LOC, UQ, uq_deformed

Mat2 = List[List[Coefficient]]

_UQ_SIGNS = {"Uq_su2": (1, 1), "Uq_pm": (1, -1), "Uq_mp": (-1, 1), "Uq_mm": (-1, -1)}
_PODLES_NAMES = ("Podles", "Podles_loc")
HALF = Fraction(1, 2)


class UnsupportedAlgebra(ValueError):
    pass


# generic morphisms ---------------------------------------------------------

def apply_hom(x: NCPoly, images: Mapping[str, NCPoly], target: AlgebraSpec) -> NCPoly:
    """Extend a generator assignment multiplicatively and linearly."""
    out = target.zero()
    for word, c in x.terms.items():
        term = target.scalar(c)
        for g in word:
            term = term * images[g]
        out = out + term
    return out


def apply_anti_hom(x: NCPoly, images: Mapping[str, NCPoly], conjugate: bool = False) -> NCPoly:
    alg = x.algebra
    out = alg.zero()
    for word, c in x.terms.items():
        term = alg.scalar(c.conjugate() if conjugate else c)
        for g in reversed(word):
            term = term * images[g]
        out = out + term
    return out


def star(x: NCPoly) -> NCPoly:
    alg = x.algebra
    if not alg.star:
        raise UnsupportedAlgebra(f"{alg.name} has no star structure")
    images = {g: NCPoly(alg, t) for g, t in alg.star.items()}
    return apply_anti_hom(x, images, conjugate=True)


# counit, antipode -----------------------------------------------------------

_COUNIT = {
    "Oq_SU2": {"alpha": ONE, "beta": ZERO, "gamma": ZERO, "delta": ONE},
    "Uq": {"K": ONE, "Ki": ONE, "E": ZERO, "F": ZERO},
    "Podles": {"X": -I, "Y": I, "Z": ZERO},
}


def counit(x: NCPoly) -> Coefficient:
    name = x.algebra.name
    if name in _UQ_SIGNS:
        table = _COUNIT["Uq"]
    elif name == "Podles":
        table = _COUNIT["Podles"]
    elif name == "Oq_SU2":
        table = _COUNIT["Oq_SU2"]
    else:
        raise UnsupportedAlgebra(f"no counit on {name}")
    out = Coefficient()
    for word, c in x.terms.items():
        v = c
        for g in word:
            v = v * table[g]
        out = out + v
    return out


def antipode(x: NCPoly) -> NCPoly:
    """Antipode of U_q(su(2)); O_q(SU(2)) is deliberately not covered."""
    if x.algebra.name not in _UQ_SIGNS:
        raise UnsupportedAlgebra(f"antipode only implemented for U_q algebras, not {x.algebra.name}")
    alg = x.algebra
    images = {
        "K": alg.gen("Ki"),
        "Ki": alg.gen("K"),
        "E": -(alg.gen("Ki") * alg.gen("E")),
        "F": -(alg.gen("F") * alg.gen("K")),
    }
    return apply_anti_hom(x, images)


# coproduct -------------------------------------------------------------------

_U_ENTRIES = (("alpha", "beta"), ("gamma", "delta"))


def _generator_coproducts(alg: AlgebraSpec, kappa: Optional[int]) -> Tuple[Tuple[AlgebraSpec, AlgebraSpec], Dict[str, TensorPoly]]:
    if alg.name == "Oq_SU2":
        out = {}
        for i in range(2):
            for j in range(2):
                tp = None
                for k in range(2):
                    term = TensorPoly.from_polys(alg.gen(_U_ENTRIES[i][k]), alg.gen(_U_ENTRIES[k][j]))
                    tp = term if tp is None else tp + term
                out[_U_ENTRIES[i][j]] = tp
        return (alg, alg), out
    if alg.name in _UQ_SIGNS:
        mu, nu = _UQ_SIGNS[alg.name]
        if kappa is None:
            if mu != nu:
                raise UnsupportedAlgebra(f"{alg.name} needs an intermediate sign kappa")
            kappa = mu
        l1, l2 = uq_deformed(mu, kappa), uq_deformed(kappa, nu)
        g1, g2 = l1.gens(), l2.gens()
        one1, one2 = l1.one(), l2.one()
        return (l1, l2), {
            "K": TensorPoly.from_polys(g1["K"], g2["K"]),
            "Ki": TensorPoly.from_polys(g1["Ki"], g2["Ki"]),
            "E": TensorPoly.from_polys(g1["E"], one2) + TensorPoly.from_polys(g1["K"], g2["E"]),
            "F": TensorPoly.from_polys(g1["F"], g2["Ki"]) + TensorPoly.from_polys(one1, g2["F"]),
        }
    raise UnsupportedAlgebra(f"no coproduct on {alg.name}")


def coproduct(x: NCPoly, kappa: Optional[int] = None) -> TensorPoly:
    """``Delta(x)``.  Podles elements go through :func:`embed_podles`.

    For the deformed algebras ``U^{mu,nu}`` the coproduct lands in
    ``U^{mu,kappa} (x) U^{kappa,nu}``.
    """
    if x.algebra.name == "Podles":
        x = embed_podles(x)
    legs, gens = _generator_coproducts(x.algebra, kappa)
    out = TensorPoly(legs, {})
    for word, c in x.terms.items():
        term = TensorPoly(legs, {((), ()): c})
        for g in word:
            term = term * gens[g]
        out = out + term
    return out


def iterate_coproduct(x: NCPoly, n: int) -> TensorPoly:
    """``Delta^(n-1)(x)`` with ``n`` legs, splitting the last leg each time."""
    tp = TensorPoly([x.algebra], {(w,): c for w, c in x.terms.items()})
    for _ in range(n - 1):
        last = len(tp.legs) - 1
        alg = tp.legs[last]
        tp = tp.expand_leg(last, lambda w, alg=alg: coproduct(NCPoly(alg, {w: ONE}, normalize=False)))
    return tp


# Podles sphere inside O_q(SU(2)) --------------------------------------------

def _mat_mul(a, b, zero):
    return [[sum((a[i][k] * b[k][j] for k in range(2)), zero) for j in range(2)] for i in range(2)]


def podles_matrix_in_su2() -> List[List[NCPoly]]:
    """``E_t = U* L_t U`` with ``L_t = [[0, i], [-i, -t]]`` as a matrix over O_q(SU(2))."""
    g = OQ.gens()
    u = [[g["alpha"], g["beta"]], [g["gamma"], g["delta"]]]
    ustar = [[star(u[j][i]) for j in range(2)] for i in range(2)]
    lt = [[OQ.zero(), OQ.scalar(I)], [OQ.scalar(-I), OQ.scalar(-T)]]
    return _mat_mul(_mat_mul(ustar, lt, OQ.zero()), u, OQ.zero())


_EMBED_CACHE: Dict[str, NCPoly] = {}


def _embed_images() -> Dict[str, NCPoly]:
    if not _EMBED_CACHE:
        e = podles_matrix_in_su2()
        _EMBED_CACHE.update({"Z": e[0][0] * qc(1), "Y": e[0][1], "X": e[1][0]})
    return _EMBED_CACHE


def embed_podles(x: NCPoly) -> NCPoly:
    if x.algebra.name != "Podles":
        raise UnsupportedAlgebra("embed_podles takes elements of the (non-localized) Podles sphere")
    return apply_hom(x, _embed_images(), OQ)


# pairing ---------------------------------------------------------------------

def spin_half_matrices() -> Dict[str, Mat2]:
    """Exact spin-1/2 matrices of the U_q(su(2)) generators."""
    z = ZERO
    return {
        "K": [[qc(1), z], [z, qc(-1)]],
        "Ki": [[qc(-1), z], [z, qc(1)]],
        "E": [[z, qc(HALF)], [z, z]],
        "F": [[z, z], [qc(-HALF), z]],
    }


_IDENTITY: Mat2 = [[ONE, ZERO], [ZERO, ONE]]


def _leg_terms(letter: str, n: int, pi: Dict[str, Mat2]) -> List[List[Mat2]]:
    """Elementary tensors (lists of n 2x2 matrices) of ``pi^{(x) n}(Delta^(n-1)(letter))``."""
    if letter in ("K", "Ki"):
        return [[pi[letter]] * n]
    if letter == "E":
        return [[pi["K"]] * j + [pi["E"]] + [_IDENTITY] * (n - 1 - j) for j in range(n)]
    if letter == "F":
        return [[_IDENTITY] * j + [pi["F"]] + [pi["Ki"]] * (n - 1 - j) for j in range(n)]
    raise UnsupportedAlgebra(f"unknown U_q generator {letter}")


def _row_apply(row: Dict[Tuple[int, ...], Coefficient], mats: Sequence[Mat2]):
    out: Dict[Tuple[int, ...], Coefficient] = {}
    for idx, c in row.items():
        partial = {(): c}
        for leg, i in enumerate(idx):
            m = mats[leg]
            nxt = {}
            for key, v in partial.items():
                for j in range(2):
                    entry = m[i][j]
                    if not entry.is_zero():
                        nxt[key + (j,)] = v * entry
            partial = nxt
        for key, v in partial.items():
            cur = out.get(key)
            out[key] = v if cur is None else cur + v
    return {k: v for k, v in out.items() if not v.is_zero()}


_ENTRY_INDEX = {"alpha": (0, 0), "beta": (0, 1), "gamma": (1, 0), "delta": (1, 1)}


def pairing_word(word: Sequence[str], x: NCPoly) -> Coefficient:
    """Pairing of a (not necessarily normal) word in the matrix entries with ``x``."""
    if x.algebra.name != "Uq_su2":
        raise UnsupportedAlgebra("the pairing is with U_q(su(2))")
    n = len(word)
    pi = spin_half_matrices()
    rows = tuple(_ENTRY_INDEX[g][0] for g in word)
    cols = tuple(_ENTRY_INDEX[g][1] for g in word)
    total = Coefficient()
    for xw, c in x.terms.items():
        if n == 0:
            total = total + c * counit(NCPoly(x.algebra, {xw: ONE}, normalize=False))
            continue
        row = {rows: ONE}
        for letter in xw:
            acc: Dict[Tuple[int, ...], Coefficient] = {}
            for mats in _leg_terms(letter, n, pi):
                for k, v in _row_apply(row, mats).items():
                    acc[k] = acc[k] + v if k in acc else v
            row = {k: v for k, v in acc.items() if not v.is_zero()}
        total = total + c * row.get(cols, ZERO)
    return total


def pairing(f: NCPoly, x: NCPoly) -> Coefficient:
    """``tau(f, x)`` for f in O_q(SU(2)) and x in U_q(su(2)), exactly."""
    if f.algebra.name != "Oq_SU2":
        raise UnsupportedAlgebra("first argument must lie in O_q(SU(2))")
    total = Coefficient()
    for w, c in f.terms.items():
        total = total + c * pairing_word(w, x)
    return total


def pairing_value(f: NCPoly, x: NCPoly, q: float, a: float) -> complex:
    return pairing(f, x).evaluate(q, a)


# special elements --------------------------------------------------------------

def ib_element(shift: int = 0, alg: AlgebraSpec = UQ) -> NCPoly:
    """``i B`` with parameter ``q^(a+shift) - q^-(a+shift)``:

    ``i q^(-1/2) (E - F K) + (q^(a+shift) - q^-(a+shift)) K / (q - q^-1)``.
    """
    g = alg.gens()
    return (g["E"] - g["F"] * g["K"]) * (I * qc(-HALF)) + g["K"] * (q_brace(shift) * D_INV)


def b_element(shift: int = 0, alg: AlgebraSpec = UQ) -> NCPoly:
    return ib_element(shift, alg) * (-I)


# localization map --------------------------------------------------------------

def psi_images() -> Dict[str, NCPoly]:
    g = PODLES_LOC.gens()
    scale = -D_INV * qc(-HALF)      # q^(-1/2) / (q^-1 - q)
    return {
        "K": g["Zi"],
        "Ki": g["Z"],
        "E": g["Zi"] * g["X"] * scale,
        "F": g["Y"] * scale,
    }


def psi_map(x: NCPoly) -> NCPoly:
    if x.algebra.name != "Uq_pm":
        raise UnsupportedAlgebra("the localization map is defined on U_q^{+,-}")
    return apply_hom(x, psi_images(), PODLES_LOC)


# translation action ------------------------------------------------------------

def _scal_mat_times(m: Mat2, e: List[List[NCPoly]], alg) -> List[List[NCPoly]]:
    return [[sum((e[k][j] * m[i][k] for k in range(2)), alg.zero()) for j in range(2)] for i in range(2)]


def _times_scal_mat(e: List[List[NCPoly]], m: Mat2, alg) -> List[List[NCPoly]]:
    return [[sum((e[i][k] * m[k][j] for k in range(2)), alg.zero()) for j in range(2)] for i in range(2)]


def _podles_matrix(alg: AlgebraSpec) -> List[List[NCPoly]]:
    g = alg.gens()
    return [[g["Z"] * qc(-1), g["Y"]], [g["X"], alg.scalar(-T) - g["Z"] * qc(1)]]


def _neg(m: Mat2) -> Mat2:
    return [[-v for v in row] for row in m]


def _mm(a: Mat2, b: Mat2) -> Mat2:
    return [[sum((a[i][k] * b[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]


class _Action:
    """Left module-algebra action of U_q(su(2)) on a Podles algebra."""

    def __init__(self, alg: AlgebraSpec):
        self.alg = alg
        self.cache: Dict[Tuple[str, Word], NCPoly] = {}
        self.gen_images = self._generator_images()

    def _generator_images(self) -> Dict[Tuple[str, str], NCPoly]:
        alg = self.alg
        pi = spin_half_matrices()
        e = _podles_matrix(alg)
        add = lambda m1, m2: [[m1[i][j] + m2[i][j] for j in range(2)] for i in range(2)]
        mats = {
            "K": _times_scal_mat(_scal_mat_times(pi["Ki"], e, alg), pi["K"], alg),
            "Ki": _times_scal_mat(_scal_mat_times(pi["K"], e, alg), pi["Ki"], alg),
            # Delta(E) = E (x) 1 + K (x) E, S(E) = -K^-1 E, S(K) = K^-1
            "E": add(_scal_mat_times(_neg(_mm(pi["Ki"], pi["E"])), e, alg),
                     _times_scal_mat(_scal_mat_times(pi["Ki"], e, alg), pi["E"], alg)),
            # Delta(F) = F (x) K^-1 + 1 (x) F, S(F) = -F K
            "F": add(_times_scal_mat(_scal_mat_times(_neg(_mm(pi["F"], pi["K"])), e, alg), pi["Ki"], alg),
                     _times_scal_mat(e, pi["F"], alg)),
        }
        eps = {"K": ONE, "Ki": ONE, "E": ZERO, "F": ZERO}
        out = {}
        for y, m in mats.items():
            z_img = m[0][0] * qc(1)
            # the (2,2) entry must equal -t eps(y) - q (y |> Z)
            if not (m[1][1] - (alg.scalar(-T * eps[y]) - z_img * qc(1))).is_zero():
                raise ArithmeticError(f"translation image of the Podles matrix under {y} left the sphere")
            out[(y, "Z")] = z_img
            out[(y, "Y")] = m[0][1]
            out[(y, "X")] = m[1][0]
        if "Zi" in alg.generators:
            zi = alg.gen("Zi")
            out[("K", "Zi")] = zi
            out[("Ki", "Zi")] = zi
            out[("E", "Zi")] = -(zi * out[("E", "Z")] * zi)
            out[("F", "Zi")] = -(zi * out[("F", "Z")] * zi)
        return out

    def letter_on_word(self, y: str, word: Word) -> NCPoly:
        key = (y, word)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        if not word:
            out = alg.scalar(ONE if y in ("K", "Ki") else ZERO)
        else:
            head = self.gen_images[(y, word[0])]
            rest = word[1:]
            head_word = alg.gen(word[0])
            rest_poly = NCPoly(alg, {rest: ONE}, normalize=False)
            if y in ("K", "Ki"):
                out = head * self.letter_on_word(y, rest)
            elif y == "E":
                out = head * rest_poly + self.gen_images[("K", word[0])] * self.letter_on_word("E", rest)
            else:
                out = head * self.letter_on_word("Ki", rest) + head_word * self.letter_on_word("F", rest)
        self.cache[key] = out
        return out

    def letter_on(self, y: str, b: NCPoly) -> NCPoly:
        out = self.alg.zero()
        for w, c in b.terms.items():
            out = out + self.letter_on_word(y, w) * c
        return out


_ACTIONS: Dict[str, _Action] = {}


def translation_action(y: NCPoly, b: NCPoly) -> NCPoly:
    """``y |> b`` for y in U_q(su(2)) and b in the (localized) Podles sphere."""
    if y.algebra.name != "Uq_su2":
        raise UnsupportedAlgebra("the acting element must lie in U_q(su(2))")
    if b.algebra.name not in _PODLES_NAMES:
        raise UnsupportedAlgebra("translation acts on the Podles sphere")
    act = _ACTIONS.get(b.algebra.name)
    if act is None:
        act = _ACTIONS[b.algebra.name] = _Action(b.algebra)
    out = b.algebra.zero()
    for word, c in y.terms.items():
        cur = b
        for letter in reversed(word):
            cur = act.letter_on(letter, cur)
        out = out + cur * c
    return out


def translation_via_pairing(y: NCPoly, b: NCPoly) -> NCPoly:
    """``(id (x) tau(y, -)) Delta(b)`` computed in O_q(SU(2)) (independent route)."""
    tp = coproduct(b)
    return tp.contract_leg(1, lambda w: pairing_word(w, y)).to_poly()
