#!/usr/bin/env python3
"""Scan small dominant weights xi and report which naive elements fail to be n-invariant."""

import argparse
import itertools

from centun.config import EngineConfig
from centun.construct import NoCounterexample, counterexample_check
from centun.hwmodule import ModuleTooLarge
from centun.rootsys import build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", default="A1,A2,B2,C2")
    ap.add_argument("--max-coord", type=int, default=2)
    ap.add_argument("--size-cap", type=int, default=256)
    args = ap.parse_args()
    cfg = EngineConfig(size_cap=args.size_cap)
    for name in args.types.split(","):
        rs = build_root_system(name)
        for coords in itertools.product(range(args.max_coord + 1), repeat=rs.rank):
            if not any(coords):
                continue
            xi = rs.weight(coords)
            label = f"{rs.name} xi={','.join(map(str, coords))}"
            try:
                rep = counterexample_check(rs, xi, cfg)
            except NoCounterexample:
                print(f"{label}: d=1, no counterexample")
                continue
            except ModuleTooLarge as exc:
                print(f"{label}: skipped ({exc})")
                continue
            print(f"{label}: d={rep.d} ell={rep.ell} degrees={rep.degrees_present} "
                  f"witness={rep.invariance_witness} refutes={rep.refutes}")


if __name__ == "__main__":
    main()
