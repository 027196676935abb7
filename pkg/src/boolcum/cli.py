"""Command-line front end.

Inputs are file paths or inline JSON.  Every command prints one JSON document
with sorted keys.  Exit status: 0 success, 1 malformed input, 2 an identity
check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import checks, opvalued as ov, scalar as sc
from .exact import DimensionError, OrderMismatchError
from .opvalued import IdentityViolation, MulSeries, OVDistribution, OVJointState

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit 2 is reserved for failed identities
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_json(source: str) -> Any:
    """Parse ``source`` as inline JSON, or else read it as a file path."""
    text = source.strip()
    if text[:1] in "[{":
        return json.loads(text)
    if not os.path.exists(source):
        raise InputError(f"not inline JSON and no such file: {source}")
    with open(source) as fh:
        return json.load(fh)


def _truncate(values: list, order: int | None, what: str) -> list:
    if order is None:
        return values
    if len(values) < order:
        raise InputError(f"{what} has order {len(values)}, fewer than requested {order}")
    return values[:order]


def read_moments(source: str, order: int | None) -> sc.MomentSeq:
    data = load_json(source)
    if isinstance(data, list):
        data = {"moments": data}
    m = sc.MomentSeq.from_json(data)
    return sc.MomentSeq(_truncate(list(m.values), order, "moment sequence"))


def read_cumulants(source: str, order: int | None) -> sc.CumulantSeq:
    data = load_json(source)
    if isinstance(data, list):
        data = {"cumulants": data}
    b = sc.CumulantSeq.from_json(data)
    return sc.CumulantSeq(_truncate(list(b.values), order, "cumulant sequence"))


def _check_dim(obj_dim: int, dim: int | None) -> None:
    if dim is not None and obj_dim != dim:
        raise InputError(f"input has dimension {obj_dim}, expected {dim}")


def read_ov(source: str, order: int | None, dim: int | None) -> OVDistribution | MulSeries:
    """An ``OVDistribution`` (key ``moments``) or a cumulant ``MulSeries`` (key ``components``)."""
    data = load_json(source)
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "moments" in data:
        D = OVDistribution.from_json(data)
        _check_dim(D.dim, dim)
        return OVDistribution(_truncate(list(D.moments), order, "distribution"))
    if "components" in data:
        B = MulSeries.from_json(data)
        _check_dim(B.dim, dim)
        return MulSeries(_truncate(list(B.components), order, "series"))
    raise InputError("expected an object with 'moments' or 'components'")


def read_ov_pair(sources: Sequence[str], order: int | None, dim: int | None) -> OVJointState:
    if len(sources) == 1:
        data = load_json(sources[0])
        if not isinstance(data, dict) or set(data) != {"X", "Y"}:
            raise InputError("a single input must be an object with keys 'X' and 'Y'")
        pair = [OVDistribution.from_json(data["X"]), OVDistribution.from_json(data["Y"])]
    elif len(sources) == 2:
        pair = [OVDistribution.from_json(load_json(src)) for src in sources]
    else:
        raise InputError("give either one joint-state input or two distributions")
    for D in pair:
        _check_dim(D.dim, dim)
    if order is not None:
        pair = [OVDistribution(_truncate(list(D.moments), order, "distribution")) for D in pair]
    if pair[0].order != pair[1].order:
        raise OrderMismatchError(f"orders differ: {pair[0].order} vs {pair[1].order}")
    return OVJointState(*pair)


def _two(args) -> tuple[str, str]:
    if len(args.inputs) != 2:
        raise InputError(f"{args.command} takes two moment inputs, got {len(args.inputs)}")
    return args.inputs[0], args.inputs[1]


def _one(args) -> str:
    if len(args.inputs) != 1:
        raise InputError(f"{args.command} takes one input, got {len(args.inputs)}")
    return args.inputs[0]


def run(args: argparse.Namespace) -> tuple[int, dict]:
    cmd, n = args.command, args.order
    if n is not None and n < 1:
        raise InputError("--order must be at least 1")
    if args.dim is not None and args.dim < 1:
        raise InputError("--dim must be at least 1")

    if cmd == "moments-to-cumulants":
        return EXIT_OK, sc.moments_to_cumulants(read_moments(_one(args), n)).to_json()
    if cmd == "cumulants-to-moments":
        return EXIT_OK, sc.cumulants_to_moments(read_cumulants(_one(args), n)).to_json()
    if cmd == "btransform":
        return EXIT_OK, sc.b_transform(read_moments(_one(args), n)).to_json()
    if cmd == "bconv-add":
        mX, mY = (read_moments(src, n) for src in _two(args))
        return EXIT_OK, sc.bconv_add(mX, mY).to_json()
    if cmd == "bconv-mul":
        mX, mY = (read_moments(src, n) for src in _two(args))
        return EXIT_OK, sc.bconv_mul(mX, mY, shift=args.shift).to_json()
    if cmd == "ov-convert":
        obj = read_ov(_one(args), n, args.dim)
        if isinstance(obj, OVDistribution):
            return EXIT_OK, ov.ov_moments_to_cumulants(obj).to_json()
        return EXIT_OK, ov.ov_cumulants_to_moments(obj).to_json()
    if cmd == "ov-bconv-add":
        return EXIT_OK, ov.ov_bconv_add(read_ov_pair(args.inputs, n, args.dim)).to_json()
    if cmd == "ov-bconv-mul":
        return EXIT_OK, ov.ov_bconv_mul(read_ov_pair(args.inputs, n, args.dim), shift=args.shift).to_json()

    if args.inputs:
        raise InputError(f"{cmd} takes no inputs")
    if cmd == "verify":
        reports = checks.scalar_suite(args.seed, n or 8, args.cases or 100)
        params = {"seed": args.seed, "order": n or 8, "cases": args.cases or 100}
    else:
        dim = args.dim or 2
        reports = checks.ov_suite(args.seed, n or 4, dim, args.cases or 5)
        params = {"seed": args.seed, "order": n or 4, "dim": dim, "cases": args.cases or 5}
    out = {"command": cmd, "parameters": params, **checks.summarize(reports)}
    return (EXIT_OK if out["ok"] else EXIT_IDENTITY), out


COMMANDS = (
    "moments-to-cumulants",
    "cumulants-to-moments",
    "bconv-add",
    "bconv-mul",
    "btransform",
    "verify",
    "ov-convert",
    "ov-bconv-add",
    "ov-bconv-mul",
    "ov-verify",
)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boolcum", description="Exact boolean cumulant calculus.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="file paths or inline JSON")
    p.add_argument("-n", "--order", type=int, help="truncation order N")
    p.add_argument("-d", "--dim", type=int, help="matrix dimension d of the base algebra")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shift", action="store_true", help="bconv-mul: return the law of 1+Z = (1+X)(1+Y)")
    p.add_argument("--report", help="also write the JSON output to this path")
    p.add_argument("--cases", type=int, help="random cases per verification sweep")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, out = run(args)
    except IdentityViolation as exc:
        code, out = EXIT_IDENTITY, {"ok": False, "error": str(exc)}
    except (InputError, json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError, OSError) as exc:
        # DimensionError and OrderMismatchError are ValueErrors
        print(f"boolcum: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(out, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    return code


__all__ = ["main", "run", "build_parser", "load_json", "DimensionError"]
