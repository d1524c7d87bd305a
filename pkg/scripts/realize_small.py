"""Straight-line realizations of every class up to a line count.

    python3 scripts/realize_small.py --max 14 --out realizations.txt
"""
import argparse
import sys
import time
from dataclasses import dataclass
from typing import Optional

from simparr.enumerator import EnumerationOptions, enumerate_all
from simparr.stretch import RealizeOptions, realize_numeric


@dataclass
class Config:
    n_min: int = 6
    n_max: int = 14
    restarts: int = 20
    seed: int = 0
    out: Optional[str] = None


def run(cfg: Config) -> int:
    fh = open(cfg.out, "w") if cfg.out else sys.stdout
    failures = 0
    opts = RealizeOptions(restarts=cfg.restarts, seed=cfg.seed)
    for n in range(cfg.n_min, cfg.n_max + 1):
        for rec in enumerate_all(n, EnumerationOptions()):
            t0 = time.perf_counter()
            real = realize_numeric(rec.wiring, opts)
            secs = time.perf_counter() - t0
            status = "none" if real is None else ("exact" if real.exact else "float")
            print(f"# n={n} {rec.invariants.to_text()} {status} {secs:.1f}s", file=fh, flush=True)
            if real is None:
                failures += 1
            elif real.exact:
                print(real.to_text(), file=fh)
    if cfg.out:
        fh.close()
    return failures


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min", dest="n_min", type=int, default=Config.n_min)
    p.add_argument("--max", dest="n_max", type=int, default=Config.n_max)
    p.add_argument("--restarts", type=int, default=Config.restarts)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--out")
    sys.exit(1 if run(Config(**vars(p.parse_args()))) else 0)


if __name__ == "__main__":
    main()
