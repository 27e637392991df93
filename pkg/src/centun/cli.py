"""Command line front end.

Exit status: 0 success, 1 a verification check failed, 2 usage error,
3 size cap exceeded, 4 no counterexample exists for the requested type.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from filelock import FileLock

from .config import EngineConfig
from .construct import (NoCounterexample, counterexample_check, generalized_exponents,
                        lipsman_wolf_element, report_text, ExponentError)
from .hwmodule import ModuleTooLarge
from .repbuild import (DEFAULT_SIZE_CAP, Irrep, build_irrep, cache_key, deserialize_irrep,
                       serialize_irrep)
from .rootsys import RootSystem, RootSystemError, Weight, build_root_system, weyl_dimension

log = logging.getLogger("centun")

CACHE_ENV = "CENTUN_CACHE_DIR"

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAP, EXIT_NO_CE = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    family: str
    rank: int
    weight: Optional[str]
    command: str
    cache_dir: Optional[Path]
    size_cap: int = DEFAULT_SIZE_CAP
    output: str = "text"
    allow_g2_sextic: bool = False

    def engine(self) -> EngineConfig:
        return EngineConfig(size_cap=self.size_cap, allow_g2_sextic=self.allow_g2_sextic)


def parse_weight(rs: RootSystem, text: Optional[str], *, nonzero: bool = False) -> Weight:
    if text is None:
        raise UsageError("a weight is required")
    if text.strip().lower() == "adjoint":
        return rs.highest_root
    try:
        coords = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"weight {text!r} must be comma-separated integers (fundamental coordinates)")
    if len(coords) != rs.rank:
        raise UsageError(f"weight {text!r} needs {rs.rank} coordinates for {rs.name}")
    w = rs.weight(coords)
    if not w.is_dominant():
        raise UsageError(f"weight {text!r} is not dominant")
    if nonzero and w.is_zero():
        raise UsageError("the weight must be nonzero")
    return w


def load_irrep(cfg: JobConfig, rs: RootSystem, lam: Weight) -> Irrep:
    if cfg.cache_dir is None:
        return build_irrep(rs, lam, cfg.size_cap)
    path = cfg.cache_dir / cache_key(rs, lam)
    if path.exists():
        log.info("cache hit: %s", path)
        return deserialize_irrep(rs, path.read_text())
    dim = weyl_dimension(rs, lam)
    if dim > cfg.size_cap:
        raise ModuleTooLarge(dim, cfg.size_cap)
    V = build_irrep(rs, lam, cfg.size_cap)
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    with FileLock(str(path) + ".lock"):
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_text(serialize_irrep(V))
            tmp.replace(path)
            log.info("cache write: %s", path)
    return V


def _emit(cfg: JobConfig, doc: dict, out):
    if cfg.output == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        out.write(report_text(doc))


def cmd_construct(cfg: JobConfig, out=sys.stdout) -> int:
    rs = build_root_system(cfg.family, cfg.rank)
    nu = parse_weight(rs, cfg.weight, nonzero=True)
    V = load_irrep(cfg, rs, nu)
    rep = lipsman_wolf_element(rs, nu, cfg.engine(), module=V)
    _emit(cfg, rep.to_dict(), out)
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_counterexample(cfg: JobConfig, out=sys.stdout) -> int:
    rs = build_root_system(cfg.family, cfg.rank)
    xi = parse_weight(rs, cfg.weight)
    rep = counterexample_check(rs, xi, cfg.engine())
    _emit(cfg, rep.to_dict(), out)
    return EXIT_OK if rep.refutes else EXIT_CHECK


def cmd_genexp(cfg: JobConfig, out=sys.stdout) -> int:
    rs = build_root_system(cfg.family, cfg.rank)
    lam = parse_weight(rs, cfg.weight)
    try:
        E = generalized_exponents(rs, lam, cfg.engine().max_exponent_height)
    except ExponentError as exc:
        raise UsageError(str(exc))
    doc = {
        "type": rs.name,
        "lambda": [str(x) for x in lam.fund],
        "height": str(lam.height),
        "ell": E.ell,
        "exponents": {str(k): v for k, v in sorted(E.coeffs.items())},
        "polynomial": str(E),
    }
    _emit(cfg, doc, out)
    return EXIT_OK


def cmd_roots(cfg: JobConfig, out=sys.stdout) -> int:
    rs = build_root_system(cfg.family, cfg.rank)
    if cfg.output == "json":
        doc = {
            "type": rs.name,
            "cartan_matrix": [list(r) for r in rs.cartan],
            "positive_roots": [list(r) for r in rs.positive_roots],
            "heights": rs.heights,
            "weyl_group_order": len(rs.weyl_group),
            "invariant_degrees": rs.invariant_degrees,
        }
        _emit(cfg, doc, out)
    else:
        out.write(rs.serialize())
    return EXIT_OK


def cmd_irrep(cfg: JobConfig, out=sys.stdout) -> int:
    rs = build_root_system(cfg.family, cfg.rank)
    lam = parse_weight(rs, cfg.weight)
    V = load_irrep(cfg, rs, lam)
    weights = sorted(V.weight_spaces, key=lambda w: V.weight_spaces[w][0])
    doc = {
        "type": rs.name,
        "lambda": [str(x) for x in lam.fund],
        "dimension": V.dim,
        "weyl_dimension": weyl_dimension(rs, lam),
        "weights": {",".join(map(str, w)): len(V.weight_spaces[w]) for w in weights},
    }
    _emit(cfg, doc, out)
    return EXIT_OK


def _battery_case(args):
    family, rank, nu, size_cap = args
    rs = build_root_system(family, rank)
    rep = lipsman_wolf_element(rs, rs.weight(nu), EngineConfig(size_cap=size_cap))
    return f"{family}{rank}", nu, rep.k, rep.ok


DEFAULT_BATTERY = [
    ("A", 1, (1,)), ("A", 1, (2,)), ("A", 1, (3,)),
    ("A", 2, (1, 1)), ("A", 2, (1, 0)), ("A", 2, (0, 1)), ("A", 2, (2, 2)),
    ("B", 2, (0, 2)),
]


def cmd_battery(cfg: JobConfig, jobs: int = 1, out=sys.stdout) -> int:
    cases = [(f, r, nu, cfg.size_cap) for f, r, nu in DEFAULT_BATTERY]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_battery_case, cases))
    else:
        results = [_battery_case(c) for c in cases]
    ok = True
    for name, nu, k, good in results:
        out.write(f"{name} nu={','.join(map(str, nu))} k={k} {'PASS' if good else 'FAIL'}\n")
        ok &= good
    return EXIT_OK if ok else EXIT_CHECK


COMMANDS = {
    "construct": (cmd_construct, "nu"),
    "counterexample": (cmd_counterexample, "xi"),
    "genexp": (cmd_genexp, "lambda"),
    "roots": (cmd_roots, None),
    "irrep": (cmd_irrep, "lambda"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="centun", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_fn, wflag) in list(COMMANDS.items()) + [("battery", (None, None))]:
        sp = sub.add_parser(name)
        if name != "battery":
            sp.add_argument("--type", dest="family", required=True)
            sp.add_argument("--rank", type=int, required=True)
        if wflag:
            sp.add_argument(f"--{wflag}", dest="weight", required=True,
                            help="fundamental-weight coordinates, e.g. 1,1 (or 'adjoint')")
        sp.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV))
        sp.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
        sp.add_argument("--format", dest="output", choices=["text", "json"], default="text")
        sp.add_argument("--allow-g2-sextic", action="store_true")
        if name == "battery":
            sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.size_cap < 1:
        print("error: --size-cap must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    cfg = JobConfig(
        family=getattr(args, "family", "A"),
        rank=getattr(args, "rank", 1),
        weight=getattr(args, "weight", None),
        command=args.command,
        cache_dir=Path(args.cache_dir) if args.cache_dir else None,
        size_cap=args.size_cap,
        output=args.output,
        allow_g2_sextic=args.allow_g2_sextic,
    )
    try:
        if args.command == "battery":
            return cmd_battery(cfg, args.jobs, out)
        return COMMANDS[args.command][0](cfg, out)
    except (UsageError, RootSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModuleTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NoCounterexample as exc:
        print(f"no counterexample in this type: {exc}", file=sys.stderr)
        return EXIT_NO_CE


if __name__ == "__main__":
    sys.exit(main())
