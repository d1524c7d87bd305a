"""The 15-line simplicial wiring with a Pappus obstruction: check, witness, drawing.

    python3 scripts/unstretchable15.py --svg unstretchable15.svg
"""
import argparse

from simparr.cells import cell_complex, invariants, is_simplicial
from simparr.render import render_svg
from simparr.stretch import RealizeOptions, pappus_obstruction, realize_numeric
from simparr.wiring import AllowableSequence

WIRING = ("15:1,5;5,7;7,9;9,11;11,12;12,14;14,15;4,5;5,7;7,9;9,12;12,14;11,12;8,9;6,8;3,6;6,7;"
          "7,11;11,13;10,11;5,7;2,3;3,5;5,6;6,8;8,10;10,12;7,8;1,3;3,7;7,10;10,11;6,7")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--svg")
    p.add_argument("--restarts", type=int, default=20)
    args = p.parse_args()
    w = AllowableSequence.from_compact(WIRING)
    c = cell_complex(w)
    print("invariants", invariants(c).to_text(), "simplicial", is_simplicial(c))
    wit = pappus_obstruction(w, c)
    print("pappus witness", wit)
    print("witness check", wit.check(c) if wit else "-")
    real = realize_numeric(w, RealizeOptions(restarts=args.restarts))
    print("realization", "none" if real is None else real.to_text())
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(w))


if __name__ == "__main__":
    main()
