"""Decompose the regular representation channel by channel and tabulate the result."""
import argparse
import json
from dataclasses import asdict, dataclass

from qsl2r.harmonic import regular_channel
from qsl2r.qspecial import QParams


@dataclass(frozen=True)
class SweepConfig:
    q: float = 0.5
    a: float = 0.3
    n_min: int = -8
    n_max: int = 8
    truncation: int = 200


def run(cfg: SweepConfig):
    p = QParams(cfg.q, cfg.a)
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        for sign in (1, -1):
            rep = regular_channel(n, sign, cfg.truncation, p)
            rows.append({
                "n": n,
                "sign": "+" if sign > 0 else "-",
                "discrete": [o["label"] for o in rep.outliers],
                "continuous": rep.continuous_label,
                "continuous_mass": rep.continuous_mass,
                "analytic_mass": rep.analytic_continuous_mass,
                "passed": rep.passed,
            })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    ap.add_argument("--json", action="store_true", help="print JSON rows instead of a table")
    args = vars(ap.parse_args())
    as_json = args.pop("json")
    cfg = SweepConfig(**args)
    rows = run(cfg)
    if as_json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"{'n':>4} {'sign':>4}  {'continuous':<10} {'mass':>10} {'analytic':>10}  discrete")
    for r in rows:
        print(f"{r['n']:>4} {r['sign']:>4}  {r['continuous']:<10} {r['continuous_mass']:>10.6f} "
              f"{r['analytic_mass']:>10.6f}  {', '.join(r['discrete']) or '-'}"
              + ("" if r["passed"] else "  FAILED"))


if __name__ == "__main__":
    main()
