"""Command line front end.

Subcommands: compute (one measure on one state file), scan (measure values
over the two-parameter family grid), regions (classification map as CSV),
verify (run a verification suite), random-state (write a random state file).

Exit codes: 0 success, 1 suite failures, 2 invalid input, 3 unsupported
combination of measure, dims, or route.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness, measures, optimizer, states
from .errors import DimMismatch, DomainError, InvalidState, Unsupported


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": obj.real.tolist(), "im": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, default=_json_default))


def _cfg_from_args(args) -> optimizer.OptConfig:
    kwargs = {}
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    if getattr(args, "grid", None) is not None:
        if args.grid < 2:
            raise ValueError(f"--grid must be >= 2, got {args.grid}")
        kwargs["grid_theta"] = args.grid
        kwargs["grid_phi"] = 2 * args.grid
    if getattr(args, "multistarts", None) is not None:
        if args.multistarts < 1:
            raise ValueError(f"--multistarts must be >= 1, got {args.multistarts}")
        kwargs["multistarts"] = args.multistarts
    return optimizer.OptConfig(**kwargs)


def _cmd_compute(args) -> int:
    state = states.load_state(args.state)
    cfg = _cfg_from_args(args)
    report = measures.compute(state, args.measure, side=args.side,
                              route=args.route, cfg=cfg)
    _emit(report.to_dict())
    return 0


def _grid_points(step: float):
    if not 0.0 < step <= 0.5:
        raise ValueError(f"step must be in (0, 0.5], got {step}")
    n = int(round(1.0 / step))
    return [(i * step, j * step)
            for i in range(n + 1) for j in range(n + 1 - i)]


def _cmd_scan(args) -> int:
    if args.family != "xy":
        raise Unsupported(f"unknown family {args.family!r}; only 'xy' exists")
    ids = [m.strip() for m in args.measures.split(",") if m.strip()]
    if not ids:
        raise ValueError("--measures needs at least one measure id")
    cfg = _cfg_from_args(args)
    lines = ["x,y," + ",".join(ids)]
    for x, y in _grid_points(args.step):
        st = states.family_xy(x, y)
        vals = [measures.compute(st, m, cfg=cfg).presented for m in ids]
        lines.append("%.6f,%.6f," % (x, y)
                     + ",".join("%.9f" % v for v in vals))
    text = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    _emit({"command": "scan", "rows": len(lines) - 1, "out": args.out})
    return 0


def _cmd_regions(args) -> int:
    cfg = _cfg_from_args(args)
    rows = harness.region_map(args.step, cfg=cfg)
    with open(args.out, "w") as fh:
        fh.write(harness.region_rows_to_csv(rows))
    _emit({"command": "regions", "rows": len(rows), "out": args.out})
    return 0


def _cmd_verify(args) -> int:
    report = harness.run_suite(args.suite, corpus_size=args.corpus_size,
                               seed=args.seed)
    _emit(report.to_dict())
    return 0 if report.passed else 1


def _cmd_random_state(args) -> int:
    state = states.random_bipartite(args.da, args.db, rank=args.rank,
                                    seed=args.seed)
    states.save_state(state, args.out)
    _emit({"command": "random-state", "d_a": args.da, "d_b": args.db,
           "rank": args.rank if args.rank is not None else args.da * args.db,
           "seed": args.seed, "out": args.out})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="Quantum correlations beyond entanglement: measures, "
                    "maps, and verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate one measure on a state file")
    p.add_argument("--state", required=True, help="JSON state file")
    p.add_argument("--measure", required=True,
                   help="measure id, e.g. discord, deficit, mig-bures, "
                        "geometric-s2, unitary-response-hellinger, lqu")
    p.add_argument("--side", default="A", choices=["A", "B", "AB"])
    p.add_argument("--route", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=None,
                   help="polar grid resolution; azimuthal gets twice this")
    p.add_argument("--multistarts", type=int, default=None)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("scan", help="tabulate measures over the xy family")
    p.add_argument("--family", required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--measures", required=True,
                   help="comma separated measure ids")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--multistarts", type=int, default=None)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("regions", help="classification map of the xy family")
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_regions)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("--suite", required=True, choices=list(harness.SUITE_NAMES))
    p.add_argument("--corpus-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("random-state", help="write a random density matrix")
    p.add_argument("--da", type=int, required=True)
    p.add_argument("--db", type=int, required=True)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="JSON output path")
    p.set_defaults(func=_cmd_random_state)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Unsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 3
    except (InvalidState, DomainError, DimMismatch) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
