"""Exact verification suites for the registered presentations and a
versioned JSON form of the presentations."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, List

from .algebra import AlgebraSpec, NCPoly
from .coefficient import ONE, Coefficient, q_bracket_shift
from .hopf import (coproduct, embed_podles, ib_element, pairing_word, psi_map, star,
                   translation_action, translation_via_pairing)
from .presentations import UQ, get_algebra

SCHEMA_VERSION = 1


def presentation_to_json(alg: AlgebraSpec) -> dict:
    def terms(ts):
        return [{"word": list(w), "coeff": c.to_json()} for w, c in ts.items()]

    return {
        "schema": SCHEMA_VERSION,
        "name": alg.name,
        "description": alg.description,
        "generators": list(alg.generators),
        "rules": [{"lhs": list(lhs), "rhs": terms(rhs)} for lhs, rhs in alg.rules.items()],
        "star": {g: terms(t) for g, t in alg.star.items()},
        "inverse_pairs": [list(p) for p in alg.inverse_pairs],
    }


def presentation_from_json(data: dict) -> AlgebraSpec:
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported presentation schema {data.get('schema')!r}")

    def terms(items):
        return {tuple(it["word"]): Coefficient.from_json(it["coeff"]) for it in items}

    return AlgebraSpec(
        data["name"],
        tuple(data["generators"]),
        {tuple(r["lhs"]): terms(r["rhs"]) for r in data["rules"]},
        {g: terms(t) for g, t in data["star"].items()},
        tuple(tuple(p) for p in data["inverse_pairs"]),
        (),
        data.get("description", ""),
    )


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AlgebraReport:
    algebra: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "algebra": self.algebra, "passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def random_word(alg: AlgebraSpec, rng: random.Random, max_len: int = 8):
    return tuple(rng.choice(alg.generators) for _ in range(rng.randint(0, max_len)))


def random_poly(alg: AlgebraSpec, rng: random.Random, max_deg: int = 3, n_terms: int = 3) -> NCPoly:
    terms = {}
    for _ in range(n_terms):
        w = random_word(alg, rng, max_deg)
        terms[w] = Coefficient.const(rng.randint(-3, 3) or 1, rng.randint(-2, 2))
    return NCPoly(alg, terms)


def confluence_failures(alg: AlgebraSpec, rng: random.Random, samples: int = 500, max_len: int = 8):
    bad = []
    for _ in range(samples):
        w = random_word(alg, rng, max_len)
        ref = alg.normal_form_terms({w: ONE})
        alt = alg.reduce_randomly({w: ONE}, rng)
        if NCPoly(alg, ref, normalize=False) != NCPoly(alg, alt, normalize=False):
            bad.append(w)
    return bad


def _safe(name: str, fn: Callable[[], str]) -> CheckResult:
    try:
        detail = fn()
    except AssertionError as exc:
        return CheckResult(name, False, str(exc))
    return CheckResult(name, True, detail or "")


def verify_algebra(name: str, seed: int = 0, samples: int = 200) -> AlgebraReport:
    """Run the exact identity suite for one registered algebra."""
    alg = get_algebra(name)
    rng = random.Random(seed)
    report = AlgebraReport(alg.name)

    for i, (lhs, rhs) in enumerate(alg.relations):
        def rel(lhs=lhs, rhs=rhs):
            diff = NCPoly(alg, lhs) - NCPoly(alg, rhs)
            assert diff.is_zero(), f"relation {i} leaves {diff}"
            return ""
        report.checks.append(_safe(f"relation[{i}]", rel))

    def confluence():
        bad = confluence_failures(alg, rng, samples)
        assert not bad, f"words with order-dependent normal forms: {bad[:3]}"
        return f"{samples} random words"
    report.checks.append(_safe("confluence", confluence))

    def star_laws():
        for _ in range(samples // 10):
            x, y = random_poly(alg, rng), random_poly(alg, rng)
            assert star(star(x)) == x, f"star is not involutive on {x}"
            assert star(x * y) == star(y) * star(x), f"star is not anti-multiplicative on {x}, {y}"
        return ""
    report.checks.append(_safe("star", star_laws))

    if alg.name in ("Oq_SU2", "Uq_su2"):
        def coassoc():
            for g in alg.generators:
                x = alg.gen(g)
                d = coproduct(x)
                left = d.expand_leg(0, lambda w: coproduct(NCPoly(alg, {w: ONE}, normalize=False)))
                right = d.expand_leg(1, lambda w: coproduct(NCPoly(alg, {w: ONE}, normalize=False)))
                assert left == right, f"coassociativity fails on {g}"
            for _ in range(samples // 20):
                x, y = random_poly(alg, rng, 2), random_poly(alg, rng, 2)
                assert coproduct(x * y) == coproduct(x) * coproduct(y), "coproduct is not multiplicative"
            return ""
        report.checks.append(_safe("coproduct", coassoc))

    if alg.name == "Oq_SU2":
        def pairing_ok():
            xs = [UQ.gen(g) for g in UQ.generators] + [random_poly(UQ, rng, 3) for _ in range(4)]
            for lhs, rhs in alg.relations:
                for x in xs:
                    val = sum((c * pairing_word(w, x) for w, c in lhs.items()), Coefficient()) - \
                        sum((c * pairing_word(w, x) for w, c in rhs.items()), Coefficient())
                    assert val.is_zero(), f"pairing does not respect a relation on {x}"
            return "pairing respects all relations"
        report.checks.append(_safe("pairing", pairing_ok))

    if alg.name == "Podles":
        def embedding():
            g = alg.gens()
            images = {k: embed_podles(v) for k, v in g.items()}
            for lhs, rhs in alg.relations:
                diff = embed_podles(NCPoly(alg, lhs, normalize=False)) - embed_podles(NCPoly(alg, rhs, normalize=False))
                assert diff.is_zero(), "embedded relation fails"
            for k in g:
                assert star(images[k]) == embed_podles(star(g[k])), f"embedding not a *-map on {k}"
            ib = ib_element()
            for k, f in images.items():
                lhs = coproduct(f).contract_leg(0, lambda w: pairing_word(w, ib)).to_poly()
                assert lhs == f * q_bracket_shift(0), f"coideal eigen-identity fails on {k}"
            for y in (UQ.gen("E"), UQ.gen("F"), UQ.gen("K")):
                for k in g:
                    assert embed_podles(translation_action(y, g[k])) == translation_via_pairing(y, g[k])
            return "embedding, coideal identity and translation action"
        report.checks.append(_safe("embedding", embedding))

    if alg.name == "Uq_pm":
        def psi():
            g = alg.gens()
            for lhs, rhs in alg.relations:
                diff = psi_map(NCPoly(alg, lhs, normalize=False)) - psi_map(NCPoly(alg, rhs, normalize=False))
                assert diff.is_zero(), "localization map breaks a relation"
            for k in ("E", "F", "K"):
                assert psi_map(star(g[k])) == star(psi_map(g[k])), f"localization map not a *-map on {k}"
            return ""
        report.checks.append(_safe("localization map", psi))
    return report
