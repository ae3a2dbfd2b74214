"""Tabulate atoms, continuous mass and moment agreement of the twisted-Casimir spectral measure."""
import argparse
from dataclasses import dataclass
from typing import Tuple

from qsl2r.qspecial import QParams
from qsl2r.spectral import moment_check, spectral_measure, twisted_casimir_jacobi


@dataclass(frozen=True)
class TableConfig:
    q: float = 0.5
    a_values: Tuple[float, ...] = (0.3, 0.75, 1.4)
    n_values: Tuple[int, ...] = (-3, 0, 4)
    truncation: int = 200
    moments: int = 8


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, default=TableConfig.q)
    ap.add_argument("--a", type=float, nargs="+", default=list(TableConfig.a_values))
    ap.add_argument("--n", type=int, nargs="+", default=list(TableConfig.n_values))
    ap.add_argument("--truncation", type=int, default=TableConfig.truncation)
    args = ap.parse_args()
    cfg = TableConfig(args.q, tuple(args.a), tuple(args.n), args.truncation)

    print(f"{'a':>5} {'n':>4} {'sign':>4} {'cont. mass':>11} {'moment err':>11}  atoms (location: weight)")
    for a in cfg.a_values:
        p = QParams(cfg.q, a)
        for n in cfg.n_values:
            for sign in (1, -1):
                mu = spectral_measure(sign, a + n, p)
                j = twisted_casimir_jacobi(sign, a + n, cfg.truncation, p)
                err = float(moment_check(mu, j, cfg.moments).max())
                atoms = ", ".join(f"{at.loc:.6g}: {w:.3e}" for at, w in mu.atoms) or "-"
                print(f"{a:>5} {n:>4} {'+' if sign > 0 else '-':>4} {mu.continuous_mass:>11.6f} {err:>11.2e}  {atoms}")


if __name__ == "__main__":
    main()
