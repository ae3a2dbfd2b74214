"""Normal-ordered noncommutative polynomials over a presented algebra.

An :class:`AlgebraSpec` is a rewriting system whose left-hand sides are
length-2 words.  Every rule either shortens a word or moves a letter to the
left in the generator order, so rewriting terminates; normal words are the
words containing no left-hand side.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .coefficient import Coefficient, ONE

Word = Tuple[str, ...]
Terms = Dict[Word, Coefficient]

#: rewrite steps allowed in one normal-form computation
REWRITE_BUDGET = 10 ** 6


class RewriteBudgetExceeded(RuntimeError):
    pass


def _accumulate(out: Terms, word: Word, coeff: Coefficient):
    if coeff.is_zero():
        return
    cur = out.get(word)
    new = coeff if cur is None else cur + coeff
    if new.is_zero():
        out.pop(word, None)
    else:
        out[word] = new


@dataclass(eq=False)
class AlgebraSpec:
    """Presentation of an algebra by length-2 rewrite rules.

    ``rules`` maps a pair of generators to the normal-form right-hand side
    (a map from words to coefficients).  ``star`` maps each generator to the
    image of its adjoint.  ``inverse_pairs`` lists generators that are mutual
    inverses (their products appear among the rules as well).
    """

    name: str
    generators: Tuple[str, ...]
    rules: Dict[Tuple[str, str], Terms]
    star: Dict[str, Terms] = field(default_factory=dict)
    inverse_pairs: Tuple[Tuple[str, str], ...] = ()
    relations: Tuple[Tuple[Terms, Terms], ...] = ()
    description: str = ""

    def __post_init__(self):
        self._append_cache: Dict[Tuple[Word, str], Terms] = {}
        self._steps = 0
        for lhs in self.rules:
            if len(lhs) != 2 or any(g not in self.generators for g in lhs):
                raise ValueError(f"bad rule left-hand side {lhs} in {self.name}")

    def __repr__(self):
        return f"AlgebraSpec({self.name!r})"

    # elements -------------------------------------------------------------
    def gen(self, name: str) -> "NCPoly":
        if name not in self.generators:
            raise KeyError(f"{name!r} is not a generator of {self.name}")
        return NCPoly(self, {(name,): ONE})

    def gens(self) -> Dict[str, "NCPoly"]:
        return {g: self.gen(g) for g in self.generators}

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): ONE})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def scalar(self, c) -> "NCPoly":
        return NCPoly(self, {(): Coefficient.coerce(c)})

    def word(self, *letters: str) -> "NCPoly":
        return NCPoly(self, {tuple(letters): ONE})

    # rewriting ----------------------------------------------------------------
    def is_normal(self, word: Word) -> bool:
        return all((word[i], word[i + 1]) not in self.rules for i in range(len(word) - 1))

    def _tick(self):
        self._steps += 1
        if self._steps > REWRITE_BUDGET:
            raise RewriteBudgetExceeded(
                f"more than {REWRITE_BUDGET} rewrite steps in {self.name}; "
                "the presentation is probably not terminating")

    def _append(self, word: Word, letter: str) -> Terms:
        """Normal form of ``word + letter`` for a normal ``word``."""
        key = (word, letter)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        if not word or (word[-1], letter) not in self.rules:
            out = {word + (letter,): ONE}
        else:
            self._tick()
            out: Terms = {}
            head = word[:-1]
            for rhs_word, c in self.rules[(word[-1], letter)].items():
                partial: Terms = {head: c}
                for ch in rhs_word:
                    nxt: Terms = {}
                    for w, cw in partial.items():
                        for w2, c2 in self._append(w, ch).items():
                            _accumulate(nxt, w2, cw * c2)
                    partial = nxt
                for w, cw in partial.items():
                    _accumulate(out, w, cw)
        self._append_cache[key] = out
        return out

    def normal_form_terms(self, terms: Mapping[Word, Coefficient]) -> Terms:
        self._steps = 0
        out: Terms = {}
        for word, c in terms.items():
            partial: Terms = {(): c}
            for ch in word:
                nxt: Terms = {}
                for w, cw in partial.items():
                    for w2, c2 in self._append(w, ch).items():
                        _accumulate(nxt, w2, cw * c2)
                partial = nxt
            for w, cw in partial.items():
                _accumulate(out, w, cw)
        return out

    def reduce_randomly(self, terms: Mapping[Word, Coefficient], rng: random.Random) -> Terms:
        """Rewrite at randomly chosen redexes until normal (no caching).

        Used to test confluence against :meth:`normal_form_terms`.
        """
        work: Terms = {}
        for w, c in terms.items():
            _accumulate(work, tuple(w), c)
        steps = 0
        while True:
            dirty = [w for w in work if not self.is_normal(w)]
            if not dirty:
                return work
            w = rng.choice(dirty)
            c = work.pop(w)
            spots = [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules]
            i = rng.choice(spots)
            for r, cr in self.rules[(w[i], w[i + 1])].items():
                _accumulate(work, w[:i] + r + w[i + 2:], c * cr)
            steps += 1
            if steps > REWRITE_BUDGET:
                raise RewriteBudgetExceeded(self.name)


class NCPoly:
    """Element of a presented algebra, kept in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms: Optional[Mapping[Word, Coefficient]] = None,
                 normalize: bool = True):
        self.algebra = algebra
        terms = {tuple(w): Coefficient.coerce(c) for w, c in (terms or {}).items()}
        self.terms: Terms = algebra.normal_form_terms(terms) if normalize else \
            {w: c for w, c in terms.items() if not c.is_zero()}

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "NCPoly"):
        if other.algebra is not self.algebra:
            raise ValueError(f"mixing {self.algebra.name} and {other.algebra.name}")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return NCPoly(self.algebra, out, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {w: -c for w, c in self.terms.items()}, normalize=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            c = Coefficient.coerce(other)
            return NCPoly(self.algebra, {w: cw * c for w, cw in self.terms.items()}, normalize=False)
        self._check(other)
        alg = self.algebra
        alg._steps = 0
        out: Terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                partial: Terms = {w1: c1 * c2}
                for ch in w2:
                    nxt: Terms = {}
                    for w, cw in partial.items():
                        for w3, c3 in alg._append(w, ch).items():
                            _accumulate(nxt, w3, cw * c3)
                    partial = nxt
                for w, cw in partial.items():
                    _accumulate(out, w, cw)
        return NCPoly(alg, out, normalize=False)

    def __rmul__(self, other):
        c = Coefficient.coerce(other)
        return NCPoly(self.algebra, {w: c * cw for w, cw in self.terms.items()}, normalize=False)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for general elements")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return other.algebra is self.algebra and (self - other).is_zero()
        try:
            return (self - self.algebra.scalar(other)).is_zero()
        except TypeError:
            return NotImplemented

    __hash__ = None

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, *letters: str) -> Coefficient:
        return self.terms.get(tuple(letters), Coefficient())

    def conjugate_coefficients(self) -> "NCPoly":
        return NCPoly(self.algebra, {w: c.conjugate() for w, c in self.terms.items()}, normalize=False)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(w) if w else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def free_terms(*pairs) -> Terms:
    """Build a term map from (coefficient, word-string) pairs; words are space separated."""
    out: Terms = {}
    for c, w in pairs:
        word = tuple(w.split()) if w else ()
        _accumulate(out, word, Coefficient.coerce(c))
    return out


class TensorPoly:
    """Finite sum of elementary tensors ``w_1 (x) ... (x) w_n`` of normal words."""

    __slots__ = ("legs", "terms")

    def __init__(self, legs: Sequence[AlgebraSpec], terms: Optional[Mapping] = None):
        self.legs = tuple(legs)
        self.terms: Dict[Tuple[Word, ...], Coefficient] = {}
        for key, c in (terms or {}).items():
            _accumulate(self.terms, tuple(tuple(w) for w in key), Coefficient.coerce(c))

    @classmethod
    def from_polys(cls, *polys: NCPoly) -> "TensorPoly":
        out = cls([p.algebra for p in polys], {})
        combos: Dict[Tuple[Word, ...], Coefficient] = {(): ONE}
        for p in polys:
            nxt = {}
            for key, c in combos.items():
                for w, cw in p.terms.items():
                    _accumulate(nxt, key + (w,), c * cw)
            combos = nxt
        out.terms = combos
        return out

    def _check(self, other):
        if tuple(l.name for l in other.legs) != tuple(l.name for l in self.legs):
            raise ValueError("tensor legs differ")

    def __add__(self, other):
        self._check(other)
        out = TensorPoly(self.legs, self.terms)
        for k, c in other.terms.items():
            _accumulate(out.terms, k, c)
        return out

    def __sub__(self, other):
        return self + other.scale(Coefficient.const(-1))

    def scale(self, c) -> "TensorPoly":
        c = Coefficient.coerce(c)
        return TensorPoly(self.legs, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Tuple[Word, ...], Coefficient] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = {(): c1 * c2}
                for leg, w1, w2 in zip(self.legs, k1, k2):
                    prod = NCPoly(leg, {w1: ONE}, normalize=False) * NCPoly(leg, {w2: ONE}, normalize=False)
                    nxt = {}
                    for key, c in partial.items():
                        for w, cw in prod.terms.items():
                            _accumulate(nxt, key + (w,), c * cw)
                    partial = nxt
                for key, c in partial.items():
                    _accumulate(out, key, c)
        return TensorPoly(self.legs, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_leg(self, index: int, fn, new_leg: Optional[AlgebraSpec] = None) -> "TensorPoly":
        """Apply a linear map (word -> NCPoly) to one leg."""
        legs = list(self.legs)
        target = new_leg or legs[index]
        legs[index] = target
        out: Dict[Tuple[Word, ...], Coefficient] = {}
        for key, c in self.terms.items():
            image = fn(key[index])
            for w, cw in image.terms.items():
                _accumulate(out, key[:index] + (w,) + key[index + 1:], c * cw)
        return TensorPoly(legs, out)

    def expand_leg(self, index: int, fn) -> "TensorPoly":
        """Replace one leg by a tensor product: ``fn(word)`` returns a TensorPoly."""
        out_legs = None
        out: Dict[Tuple[Word, ...], Coefficient] = {}
        for key, c in self.terms.items():
            image = fn(key[index])
            if out_legs is None:
                out_legs = self.legs[:index] + image.legs + self.legs[index + 1:]
            for k2, c2 in image.terms.items():
                _accumulate(out, key[:index] + k2 + key[index + 1:], c * c2)
        if out_legs is None:
            return TensorPoly(self.legs, {})
        return TensorPoly(out_legs, out)

    def contract_leg(self, index: int, functional) -> "TensorPoly":
        """Apply a scalar functional ``word -> Coefficient`` to one leg."""
        legs = self.legs[:index] + self.legs[index + 1:]
        out: Dict[Tuple[Word, ...], Coefficient] = {}
        for key, c in self.terms.items():
            v = functional(key[index])
            if not v.is_zero():
                _accumulate(out, key[:index] + key[index + 1:], c * v)
        return TensorPoly(legs, out)

    def to_poly(self) -> NCPoly:
        if len(self.legs) != 1:
            raise ValueError("only single-leg tensors convert to polynomials")
        return NCPoly(self.legs[0], {k[0]: c for k, c in self.terms.items()}, normalize=False)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.terms.items():
            parts.append(f"({c})*" + " (x) ".join("*".join(w) or "1" for w in key))
        return " + ".join(parts)
