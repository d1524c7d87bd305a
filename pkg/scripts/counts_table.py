"""Class counts, Pappus split and timings for a range of line counts.

    python3 scripts/counts_table.py --min 6 --max 16 --jobs 1
"""
import argparse
import time
from dataclasses import dataclass

from simparr.enumerator import EnumerationOptions, enumerate_all
from simparr.stretch import pappus_obstruction


@dataclass
class Config:
    n_min: int = 6
    n_max: int = 14
    jobs: int = 1
    near_pencils: bool = False
    pappus: bool = True


def run(cfg: Config) -> None:
    print("n\tclasses\tpappus\tpassing\tseconds")
    for n in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        recs = enumerate_all(n, EnumerationOptions(include_near_pencils=cfg.near_pencils,
                                                   worker_count=cfg.jobs))
        secs = time.perf_counter() - t0
        if cfg.pappus:
            flagged = sum(pappus_obstruction(r.wiring) is not None for r in recs)
            print(f"{n}\t{len(recs)}\t{flagged}\t{len(recs) - flagged}\t{secs:.1f}", flush=True)
        else:
            print(f"{n}\t{len(recs)}\t-\t-\t{secs:.1f}", flush=True)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min", dest="n_min", type=int, default=Config.n_min)
    p.add_argument("--max", dest="n_max", type=int, default=Config.n_max)
    p.add_argument("--jobs", type=int, default=Config.jobs)
    p.add_argument("--near-pencils", action="store_true")
    p.add_argument("--no-pappus", dest="pappus", action="store_false")
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
