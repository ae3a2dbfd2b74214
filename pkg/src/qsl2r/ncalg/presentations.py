"""The concrete algebras and their registry.

Normal orders:

* ``Oq_SU2``: words ``alpha^k beta^m gamma^n`` and ``delta^k beta^m gamma^n``
  (alpha and delta never meet; the two determinant relations remove them).
* ``Podles``: ``Y^k Z^m`` and ``X^l Z^m``; ``Podles_loc`` adds ``Zi`` with
  ``Z Zi = Zi Z = 1``, so powers of Z may be negative.  Z is moved to the
  right of both X and Y: a Z between Y and X would block the ``Y X``
  contraction and leave ``Y Z X`` irreducible.
* ``Uq_su2`` and the deformed ``Uq_{mu}{nu}``: ``F^k K^m E^n`` with ``Ki`` standing
  for ``K^-1``.

Every rule either shortens a word or replaces an inversion by a word of the
same length with fewer inversions in the listed generator order, so
rewriting terminates.
"""
from __future__ import annotations

from typing import Dict, Tuple

from .algebra import AlgebraSpec, free_terms
from .coefficient import D_INV, T, qc

A = "alpha"
B = "beta"
C = "gamma"
DL = "delta"


def _oq_su2() -> AlgebraSpec:
    rules = {
        (B, A): free_terms((qc(-1), f"{A} {B}")),
        (C, A): free_terms((qc(-1), f"{A} {C}")),
        (C, B): free_terms((1, f"{B} {C}")),
        (B, DL): free_terms((qc(1), f"{DL} {B}")),
        (C, DL): free_terms((qc(1), f"{DL} {C}")),
        (A, DL): free_terms((1, ""), (qc(1), f"{B} {C}")),
        (DL, A): free_terms((1, ""), (qc(-1), f"{B} {C}")),
    }
    star = {
        A: free_terms((1, DL)),
        B: free_terms((-qc(1), C)),
        C: free_terms((-qc(-1), B)),
        DL: free_terms((1, A)),
    }
    relations = (
        (free_terms((1, f"{A} {B}")), free_terms((qc(1), f"{B} {A}"))),
        (free_terms((1, f"{A} {C}")), free_terms((qc(1), f"{C} {A}"))),
        (free_terms((1, f"{B} {C}")), free_terms((1, f"{C} {B}"))),
        (free_terms((1, f"{B} {DL}")), free_terms((qc(1), f"{DL} {B}"))),
        (free_terms((1, f"{C} {DL}")), free_terms((qc(1), f"{DL} {C}"))),
        (free_terms((1, f"{A} {DL}"), (-qc(1), f"{B} {C}")), free_terms((1, ""))),
        (free_terms((1, f"{DL} {A}"), (-qc(-1), f"{C} {B}")), free_terms((1, ""))),
    )
    return AlgebraSpec("Oq_SU2", (A, DL, B, C), rules, star, (), relations,
                       "quantum SU(2) coordinate algebra")


def _podles(localized: bool) -> AlgebraSpec:
    rules = {
        ("Z", "Y"): free_terms((qc(2), "Y Z")),
        ("Z", "X"): free_terms((qc(-2), "X Z")),
        ("X", "Y"): free_terms((1, ""), (-qc(1) * T, "Z"), (-qc(2), "Z Z")),
        ("Y", "X"): free_terms((1, ""), (-qc(-1) * T, "Z"), (-qc(-2), "Z Z")),
    }
    star = {"X": free_terms((1, "Y")), "Y": free_terms((1, "X")), "Z": free_terms((1, "Z"))}
    relations = [
        (free_terms((1, "X Z")), free_terms((qc(2), "Z X"))),
        (free_terms((1, "Y Z")), free_terms((qc(-2), "Z Y"))),
        (free_terms((1, "X Y")), free_terms((1, ""), (-qc(1) * T, "Z"), (-qc(2), "Z Z"))),
        (free_terms((1, "Y X")), free_terms((1, ""), (-qc(-1) * T, "Z"), (-qc(-2), "Z Z"))),
    ]
    gens: Tuple[str, ...] = ("Y", "X", "Z")
    inverse_pairs: Tuple[Tuple[str, str], ...] = ()
    name = "Podles"
    if localized:
        gens = ("Y", "X", "Z", "Zi")
        rules.update({
            ("Z", "Zi"): free_terms((1, "")),
            ("Zi", "Z"): free_terms((1, "")),
            ("Zi", "Y"): free_terms((qc(-2), "Y Zi")),
            ("Zi", "X"): free_terms((qc(2), "X Zi")),
        })
        star["Zi"] = free_terms((1, "Zi"))
        relations += [
            (free_terms((1, "Z Zi")), free_terms((1, ""))),
            (free_terms((1, "Zi Z")), free_terms((1, ""))),
        ]
        inverse_pairs = (("Z", "Zi"),)
        name = "Podles_loc"
    return AlgebraSpec(name, gens, rules, star, inverse_pairs, tuple(relations),
                       "Podles sphere" + (" localized at Z" if localized else ""))


def _uq(mu: int, nu: int) -> AlgebraSpec:
    """``U_q^{mu,nu}``: ``EF - FE = (nu K - mu K^-1)/(q - q^-1)``; ``mu = nu = +1`` is U_q(su(2))."""
    ef = free_terms((1, "F E"), (nu * D_INV, "K"), (-mu * D_INV, "Ki"))
    rules = {
        ("K", "F"): free_terms((qc(-2), "F K")),
        ("Ki", "F"): free_terms((qc(2), "F Ki")),
        ("E", "K"): free_terms((qc(-2), "K E")),
        ("E", "Ki"): free_terms((qc(2), "Ki E")),
        ("K", "Ki"): free_terms((1, "")),
        ("Ki", "K"): free_terms((1, "")),
        ("E", "F"): ef,
    }
    # the same star is compatible with every sign pair (mu, nu)
    star = {
        "K": free_terms((1, "K")),
        "Ki": free_terms((1, "Ki")),
        "E": free_terms((1, "F K")),
        "F": free_terms((1, "Ki E")),
    }
    relations = (
        (free_terms((1, "K E")), free_terms((qc(2), "E K"))),
        (free_terms((1, "K F")), free_terms((qc(-2), "F K"))),
        (free_terms((1, "K Ki")), free_terms((1, ""))),
        (free_terms((1, "Ki K")), free_terms((1, ""))),
        (free_terms((1, "E F"), (-1, "F E")), free_terms((nu * D_INV, "K"), (-mu * D_INV, "Ki"))),
    )
    sym = {1: "p", -1: "m"}
    name = "Uq_su2" if (mu, nu) == (1, 1) else f"Uq_{sym[mu]}{sym[nu]}"
    return AlgebraSpec(name, ("F", "K", "Ki", "E"), rules, star, (("K", "Ki"),), relations,
                       f"deformed enveloping algebra mu={mu:+d} nu={nu:+d}")


def _build_registry() -> Dict[str, AlgebraSpec]:
    algs = [_oq_su2(), _podles(False), _podles(True)]
    for mu in (1, -1):
        for nu in (1, -1):
            algs.append(_uq(mu, nu))
    return {alg.name: alg for alg in algs}


REGISTRY: Dict[str, AlgebraSpec] = _build_registry()

OQ = REGISTRY["Oq_SU2"]
PODLES = REGISTRY["Podles"]
PODLES_LOC = REGISTRY["Podles_loc"]
UQ = REGISTRY["Uq_su2"]
UQ_PM = REGISTRY["Uq_pm"]
UQ_MP = REGISTRY["Uq_mp"]


def get_algebra(name: str) -> AlgebraSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def uq_deformed(mu: int, nu: int) -> AlgebraSpec:
    sym = {1: "p", -1: "m"}
    return UQ if (mu, nu) == (1, 1) else REGISTRY[f"Uq_{sym[mu]}{sym[nu]}"]
