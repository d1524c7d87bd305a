"""Covering edges of the line-deletion order, labelled by invariants.

    python3 scripts/hasse_small.py --min 6 --max 12 --near-pencils
"""
import argparse
from dataclasses import dataclass

from simparr.enumerator import EnumerationOptions, enumerate_all
from simparr.stretch import hasse_edges


@dataclass
class Config:
    n_min: int = 6
    n_max: int = 12
    near_pencils: bool = False


def run(cfg: Config) -> None:
    recs = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        recs += enumerate_all(n, EnumerationOptions(include_near_pencils=cfg.near_pencils))
    label = {(r.wiring.n, r.certificate): f"{r.wiring.n}[{r.invariants.to_text()}]" for r in recs}
    for e in sorted(hasse_edges(recs), key=lambda e: (label[e.upper], label[e.lower])):
        print(f"{label[e.upper]} -> {label[e.lower]}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min", dest="n_min", type=int, default=Config.n_min)
    p.add_argument("--max", dest="n_max", type=int, default=Config.n_max)
    p.add_argument("--near-pencils", action="store_true")
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
