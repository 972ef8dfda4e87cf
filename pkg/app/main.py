"""
Command-line front end of the wall-chamber engine.

    python -m app.main wall -q data/quivers/a2.quiver -d 1,1

Every command prints deterministic JSON on stdout; errors are printed as JSON
on stderr with exit code 2 (input), 3 (precondition) or 4 (internal).
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from app.config import settings
from app.models.requests import SliceSpec
from app.services.chambers import chamber_report
from app.services.quiver import load_quiver
from app.services.slicing import write_slice
from app.services.stability import tf_equivalent_bounded
from app.services.walls import (
    classify_schur,
    get_wall_table,
    kronecker_oracle_sweep,
    wall,
    wall_sweep,
)
from app.utils.errors import ConsistencyError, PreconditionError, WallChamberError
from app.utils.logging_config import get_logger, setup_logging
from app.utils.validators import parse_dim_vector, parse_rational_vector, require_positive

logger = get_logger("cli")


def emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ============================================================================
#                              COMMANDS
# ============================================================================

def cmd_wall(args: argparse.Namespace) -> int:
    """Wall of d with its Schur classification."""
    table = get_wall_table(load_quiver(args.quiver))
    d = parse_dim_vector(args.d)
    bound = args.bound if args.bound is not None else sum(d)
    if bound >= 1:
        wall_sweep(table, bound)
    cone = wall(table, d)
    payload = cone.to_dict()
    payload["d"] = list(d)
    payload["schur"] = classify_schur(table, d).model_dump(mode="json")
    emit(payload)
    return 0


def cmd_schur(args: argparse.Namespace) -> int:
    table = get_wall_table(load_quiver(args.quiver))
    d = parse_dim_vector(args.d)
    emit(classify_schur(table, d).model_dump(mode="json"))
    return 0


def cmd_tf(args: argparse.Namespace) -> int:
    """Bounded TF-equivalence of two weights."""
    table = get_wall_table(load_quiver(args.quiver))
    theta = parse_rational_vector(args.theta)
    theta2 = parse_rational_vector(args.theta2)
    verdict = tf_equivalent_bounded(table, theta, theta2, args.bound)
    emit(verdict.to_output())
    return 0


def cmd_chambers(args: argparse.Namespace) -> int:
    table = get_wall_table(load_quiver(args.quiver))
    emit(chamber_report(table).model_dump(mode="json"))
    return 0


def cmd_oracle_kronecker(args: argparse.Namespace) -> int:
    """Recursive walls of the m-Kronecker quiver against the closed form."""
    if args.m < 0:
        raise PreconditionError(f"m must be non-negative, got {args.m}")
    results = kronecker_oracle_sweep(args.m, require_positive(args.bound, "bound"))
    failed = sum(r.status == "fail" for r in results)
    emit({
        "m": args.m,
        "bound": args.bound,
        "checked": len(results),
        "failed": failed,
        "results": [r.model_dump(mode="json") for r in results],
    })
    return ConsistencyError.exit_code if failed else 0


def cmd_slice(args: argparse.Namespace) -> int:
    """SVG picture of the walls on a triangle, with a JSON sidecar."""
    quiver = load_quiver(args.quiver)
    table = get_wall_table(quiver)
    try:
        if args.plane:
            p0, p1, p2 = (parse_rational_vector(p) for p in args.plane)
            spec = SliceSpec(p0=p0, p1=p1, p2=p2)
        else:
            spec = SliceSpec.default_simplex(quiver.n)
    except ValidationError as e:
        raise PreconditionError(f"degenerate slice plane: {e.errors()[0]['msg']}") from e
    except ValueError as e:
        if isinstance(e, WallChamberError):
            raise
        raise PreconditionError(str(e)) from e

    summary = write_slice(table, spec, require_positive(args.bound, "bound"), Path(args.output))
    emit(summary)
    return 0 if summary["round_trip"] == "pass" else ConsistencyError.exit_code


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "wall": cmd_wall,
    "schur": cmd_schur,
    "tf": cmd_tf,
    "chambers": cmd_chambers,
    "oracle-kronecker": cmd_oracle_kronecker,
    "slice": cmd_slice,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallchamber",
        description="Exact walls, chambers and TF-equivalence for path algebras of acyclic quivers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wall", help="wall of a dimension vector")
    p.add_argument("-q", "--quiver", type=Path, required=True)
    p.add_argument("-d", required=True, help="dimension vector, e.g. 1,1,0")
    p.add_argument("--bound", type=int, help="precompute walls up to this total degree")

    p = sub.add_parser("schur", help="Schur-root classification")
    p.add_argument("-q", "--quiver", type=Path, required=True)
    p.add_argument("-d", required=True)

    p = sub.add_parser("tf", help="bounded TF-equivalence of two weights")
    p.add_argument("-q", "--quiver", type=Path, required=True)
    p.add_argument("--theta", required=True, help="rational vector, e.g. 2,-1/2")
    p.add_argument("--theta2", required=True)
    p.add_argument("--bound", type=int, default=settings.default_degree_bound)

    p = sub.add_parser("chambers", help="chambers of a representation-finite quiver")
    p.add_argument("-q", "--quiver", type=Path, required=True)

    p = sub.add_parser("oracle-kronecker", help="check recursive walls against the closed form")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--bound", type=int, default=settings.default_degree_bound)

    p = sub.add_parser("slice", help="SVG slice of the wall structure")
    p.add_argument("-q", "--quiver", type=Path, required=True)
    p.add_argument("--bound", type=int, default=settings.default_degree_bound)
    p.add_argument("--plane", nargs=3, metavar=("P0", "P1", "P2"))
    p.add_argument("-o", "--output", required=True, help="SVG path; the sidecar gets .json")

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command and return its exit code."""
    setup_logging()
    args = build_parser().parse_args(argv)
    logger.info("command_started", command=args.command)
    try:
        code = COMMANDS[args.command](args)
    except WallChamberError as e:
        logger.info("command_failed", command=args.command, error=type(e).__name__, message=str(e))
        print(json.dumps({"error": {"type": type(e).__name__, "message": str(e)}}, sort_keys=True),
              file=sys.stderr)
        return e.exit_code
    logger.info("command_finished", command=args.command, exit_code=code)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
