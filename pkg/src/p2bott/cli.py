"""Command-line front end: compute constants, enumerate fixed components,
run the verification suite, dump deformation tables.

Exit codes: 0 success, 2 precondition error, 3 invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bott, checks
from .chow import format_rational
from .errors import InvariantError, PreconditionError
from .fixed_loci import assemble_components, component_from_json, component_to_json
from .equivariant import ext1_table
from .lattice import char_to_json

JOBS_ENV = "P2BOTT_JOBS"


def _int_pair(text: str, what: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise PreconditionError(f"{what} must be two comma-separated integers")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as e:
        raise PreconditionError(f"{what} must be two comma-separated integers") from e


def _add_common(p: argparse.ArgumentParser, with_gamma=False):
    p.add_argument("--k", type=int, required=True, help="second Chern class")
    if with_gamma:
        p.add_argument("--gamma", default=None, help="one-parameter subgroup G1,G2")
    p.add_argument("--seed", default="0,0", help="seed thresholds S1,S2 (default 0,0)")
    p.add_argument("--reflect", action="store_true", help="negate the lattice orientation")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker count (default: ${JOBS_ENV} or 1)")
    p.add_argument("--emit", choices=("table", "json"), default="table")
    p.add_argument("--cache", default=None, metavar="DIR",
                   help="directory for enumerated-component cache files")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="p2bott",
        description="Correlation constants of the universal bundle on moduli of "
                    "rank-2 plane sheaves, by exact torus localization.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the constant a_k")
    _add_common(p, with_gamma=True)
    p.add_argument("--dump-contributions", action="store_true",
                   help="emit one JSON line per component contribution")
    p.add_argument("--from-cache", default=None, metavar="FILE",
                   help="read components from an enumerate output file")

    p = sub.add_parser("enumerate", help="list all fixed components as JSON lines")
    _add_common(p)

    p = sub.add_parser("verify", help="run the verification suite")
    _add_common(p)

    p = sub.add_parser("dump-ext", help="dump per-component deformation tables")
    _add_common(p, with_gamma=False)
    p.add_argument("--from-cache", default=None, metavar="FILE")
    return ap


def _jobs(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        jobs = int(os.environ.get(JOBS_ENV, "1"))
    if jobs < 1:
        raise PreconditionError("worker count must be at least 1")
    return jobs


def _cache_path(cache_dir: str, k: int, seed, reflect: bool) -> Path:
    name = f"components_k{k}_seed{seed[0]}_{seed[1]}_reflect{int(reflect)}.jsonl"
    return Path(cache_dir) / name


def _read_components(path: Path, k: int, reflect: bool):
    comps = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "summary" in obj:
                continue
            comps.append(component_from_json(obj, reflect=reflect))
    if any(c.k != k for c in comps):
        raise PreconditionError(f"cached components in {path} are not for k={k}")
    return comps


def _load_components(args, seed, reflect):
    from_cache = getattr(args, "from_cache", None)
    if from_cache:
        return _read_components(Path(from_cache), args.k, reflect)
    if args.cache:
        path = _cache_path(args.cache, args.k, seed, reflect)
        if path.exists():
            return _read_components(path, args.k, reflect)
        comps = assemble_components(args.k, seed=seed, reflect=reflect)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            for comp in comps:
                fh.write(json.dumps(component_to_json(comp)) + "\n")
        return comps
    return assemble_components(args.k, seed=seed, reflect=reflect)


def cmd_compute(args) -> int:
    seed = _int_pair(args.seed, "--seed")
    gamma = _int_pair(args.gamma, "--gamma") if args.gamma else None
    comps = _load_components(args, seed, args.reflect)
    result = bott.compute(
        args.k, gamma=gamma, seed=seed, reflect=args.reflect,
        jobs=_jobs(args), components=comps,
    )
    if args.dump_contributions:
        for i, v in enumerate(result.contributions):
            print(json.dumps({"id": i, "value": format_rational(v)}))
    if result.degenerate_k1:
        print(
            "warning: k=1 is degenerate: the moduli space is a point and the rank-0 "
            "bundle has top Chern number 1; tabulations listing a_1 = 0 use the "
            "opposite convention.",
            file=sys.stderr,
        )
    if args.emit == "json":
        print(json.dumps({
            "k": result.k,
            "a_k": str(result.value),
            "components": len(result.components),
            "gamma": [result.gamma.g1, result.gamma.g2],
        }))
    else:
        print(f"a_{result.k} = {result.value}")
    return 0


def cmd_enumerate(args) -> int:
    seed = _int_pair(args.seed, "--seed")
    comps = _load_components(args, seed, args.reflect)
    euler = 0
    for comp in comps:
        euler += 2 ** comp.n_factors
        print(json.dumps(component_to_json(comp)))
    print(json.dumps({"summary": {
        "k": args.k, "components": len(comps), "euler_characteristic": euler,
    }}))
    return 0


def cmd_verify(args) -> int:
    seed = _int_pair(args.seed, "--seed")
    results = checks.run_all(args.k, seed=seed, reflect=args.reflect, jobs=_jobs(args))
    ok = all(r.ok for r in results)
    if args.emit == "json":
        print(json.dumps({
            "k": args.k,
            "ok": ok,
            "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        }))
    else:
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            line = f"{status} {r.name}"
            if r.detail:
                line += f" ({r.detail})"
            print(line)
        print(f"verify --k {args.k}: " + ("all checks passed" if ok else "FAILURES above"))
    return 0 if ok else 3


def cmd_dump_ext(args) -> int:
    seed = _int_pair(args.seed, "--seed")
    comps = _load_components(args, seed, args.reflect)
    for i, comp in enumerate(comps):
        table = ext1_table(comp)
        entries = []
        for ch in sorted(table.entries):
            roots = [
                {"class": list(cls), "mult": m}
                for cls, m in sorted(table.entries[ch].items())
            ]
            entries.append({"char": char_to_json(ch), "roots": roots})
        print(json.dumps({"id": i, "table": entries}))
    return 0


_COMMANDS = {
    "compute": cmd_compute,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "dump-ext": cmd_dump_ext,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InvariantError as e:
        print(f"invariant breach: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
