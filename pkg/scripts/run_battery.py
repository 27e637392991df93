#!/usr/bin/env python3
"""Run the construction on a battery of weights and print one summary row per case."""

import argparse
import time
from dataclasses import dataclass, field
from typing import List, Tuple

from centun.config import EngineConfig
from centun.construct import CHECK_ORDER, lipsman_wolf_element
from centun.rootsys import build_root_system


@dataclass
class BatteryConfig:
    cases: List[Tuple[str, int, Tuple[int, ...]]] = field(default_factory=lambda: [
        ("A", 1, (1,)), ("A", 1, (2,)), ("A", 1, (3,)), ("A", 1, (4,)),
        ("A", 2, (1, 0)), ("A", 2, (0, 1)), ("A", 2, (1, 1)), ("A", 2, (2, 0)),
        ("A", 2, (2, 1)), ("A", 2, (2, 2)),
        ("B", 2, (1, 0)), ("B", 2, (0, 2)), ("C", 2, (0, 1)), ("C", 2, (2, 0)),
        ("A", 3, (1, 0, 0)), ("A", 3, (0, 1, 0)), ("A", 3, (1, 0, 1)),
    ])
    engine: EngineConfig = field(default_factory=EngineConfig)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size-cap", type=int, default=512)
    args = ap.parse_args()
    cfg = BatteryConfig(engine=EngineConfig(size_cap=args.size_cap))
    print(f"{'type':5} {'nu':10} {'k':>3} {'min m':>5} {'terms':>5}  checks  seconds")
    for family, rank, coords in cfg.cases:
        rs = build_root_system(family, rank)
        t0 = time.perf_counter()
        rep = lipsman_wolf_element(rs, rs.weight(coords), cfg.engine)
        dt = time.perf_counter() - t0
        flags = "".join("+" if rep.checks[c] else ("?" if rep.checks[c] is None else "-")
                        for c in CHECK_ORDER)
        nu = ",".join(map(str, coords))
        print(f"{rs.name:5} {nu:10} {rep.k:>3} {rep.min_exponent!s:>5} {len(rep.fk.terms):>5}  {flags}  {dt:.2f}")


if __name__ == "__main__":
    main()
