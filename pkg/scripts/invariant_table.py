"""Invariant rows (f-, t-, r-vector), automorphism order and group histogram per class.

    python3 scripts/invariant_table.py --max 14
"""
import argparse
from dataclasses import dataclass

from simparr.enumerator import EnumerationOptions, enumerate_all
from simparr.iso import element_orders


@dataclass
class Config:
    n_min: int = 6
    n_max: int = 14
    jobs: int = 1


def run(cfg: Config) -> None:
    print("n\tf|t|r\taut\telement orders (projective)")
    for n in range(cfg.n_min, cfg.n_max + 1):
        recs = enumerate_all(n, EnumerationOptions(worker_count=cfg.jobs))
        for r in sorted(recs, key=lambda r: r.invariants.to_text()):
            hist = " ".join(f"{k}:{v}" for k, v in element_orders(r.wiring).items())
            print(f"{n}\t{r.invariants.to_text()}\t{r.automorphisms}\t{hist}", flush=True)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min", dest="n_min", type=int, default=Config.n_min)
    p.add_argument("--max", dest="n_max", type=int, default=Config.n_max)
    p.add_argument("--jobs", type=int, default=Config.jobs)
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
