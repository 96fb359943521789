"""Command line front end.

Exit status: 0 success, 1 invalid input, 2 internal inconsistency, 64 usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .double_cover import CoverError, build_cover, connected_components
from .invariants import NotASurface, UnsupportedShape, classify_surface, dims_histogram, euler_char
from .numeric_oracle import OracleError, default_seed, verify_signs
from .orientation import OrientationError
from .real_structure import LabelInvolution, TooFewLabels, enumerate_sigma_invariant_trees, sigma_normal
from .strata import StrataError, build_poset
from .sw_class import w1_cycle
from .tree_core import TreeError, describe, to_dot, to_json

EX_OK, EX_INVALID, EX_INTERNAL, EX_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sigma(args) -> LabelInvolution:
    if args.n is not None:
        if args.k is not None or args.l is not None:
            raise UsageError("--n cannot be combined with --k/--l")
        if args.sigma != "id":
            raise UsageError("--n requires --sigma id")
        return sigma_normal(0, args.n)
    if args.k is None or args.l is None:
        raise UsageError("give --k and --l, or --n with --sigma id")
    return sigma_normal(args.k, args.l)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_enumerate(args) -> int:
    sigma = _sigma(args)
    trees = enumerate_sigma_invariant_trees(sigma, threads=args.threads)
    if args.json:
        _emit(args, _dump({"sigma": sigma.to_json(), "count": len(trees),
                           "trees": [to_json(t) for t, _ in trees]}))
    elif args.dot:
        _emit(args, "".join(to_dot(t, f"tree{i}") for i, (t, _) in enumerate(trees)))
    else:
        buckets: dict[int, int] = {}
        for t, _ in trees:
            buckets[len(t.edges)] = buckets.get(len(t.edges), 0) + 1
        lines = [f"{sigma.cycles()}: {len(trees)} trees"]
        lines += [f"  {e} edges: {c}" for e, c in sorted(buckets.items())]
        lines += [f"  {describe(t)}" for t, _ in trees]
        _emit(args, "\n".join(lines) + "\n")
    return EX_OK


def cmd_poset(args) -> int:
    cx = build_poset(_sigma(args), threads=args.threads)
    if args.json:
        _emit(args, _dump(cx.to_json()))
    elif args.dot:
        _emit(args, cx.to_dot())
    else:
        lines = [f"{len(cx.strata)} strata, {len(cx.adjacency)} adjacencies"]
        lines += [f"  dim {d}: {c}" for d, c in cx.by_dim().items()]
        for i, s in enumerate(cx.strata):
            lines.append(f"  [{i}] dim {s.dim} {s.label()} <= {cx.upper(i)}")
        _emit(args, "\n".join(lines) + "\n")
    return EX_OK


def cmd_w1(args) -> int:
    cyc = w1_cycle(_sigma(args), threads=args.threads)
    if args.json:
        _emit(args, _dump(cyc.to_json()))
        return EX_OK
    lines = [f"{len(cyc.trees)} trees, {len(cyc.strata)} strata (of {cyc.walls} walls)"]
    lines += [f"  {lab}" for lab in cyc.labels()]
    _emit(args, "\n".join(lines) + "\n")
    return EX_OK


def cmd_cover(args) -> int:
    sigma = _sigma(args)
    cv = build_cover(sigma, threads=args.threads)
    data = cv.to_json()
    if args.chi:
        data["chi"] = euler_char(cv)
    if args.json:
        _emit(args, _dump(data))
        return EX_OK
    lines = [f"{data['strata']} strata"]
    if args.components or not args.chi:
        lines.append(f"components: {data['components']}")
    if args.chi:
        lines.append(f"chi: {data['chi']}")
    if not cv.trivial:
        lines.append("gluings: " + " ".join(f"{t}={c}" for t, c in data["tags"].items()))
    _emit(args, "\n".join(lines) + "\n")
    return EX_OK


def cmd_invariants(args) -> int:
    sigma = _sigma(args)
    cx = build_cover(sigma, threads=args.threads) if args.cover else build_poset(sigma, threads=args.threads)
    data = {"sigma": sigma.to_json(), "cover": args.cover, "dims": dims_histogram(cx), "chi": euler_char(cx)}
    if sigma.n == 5:
        data.update(classify_surface(sigma, cover=args.cover).to_json())
    if args.json:
        _emit(args, _dump(data))
        return EX_OK
    lines = [f"strata by dimension: {data['dims']}", f"chi: {data['chi']}"]
    if "orientable" in data:
        lines.append(f"orientable: {data['orientable']}")
        if data["genus"] is not None:
            lines.append(f"genus: {data['genus']}")
        if data["crosscaps"] is not None:
            lines.append(f"crosscaps: {data['crosscaps']}")
    _emit(args, "\n".join(lines) + "\n")
    return EX_OK


def cmd_verify_signs(args) -> int:
    sigma = _sigma(args)
    seed0 = default_seed()
    rep = verify_signs(sigma, numeric=args.numeric, t=args.t, seeds=range(seed0, seed0 + args.seeds))
    if args.json:
        _emit(args, _dump(rep.to_json()))
    else:
        lines = [f"walls: {rep.walls}", f"pi vs closed form: {len(rep.pi_mismatch)} mismatches"]
        if args.numeric:
            lines.append(f"faces: {rep.faces}")
            lines.append(f"aleph vs oracle: {len(rep.aleph_mismatch)} mismatches")
            lines.append(f"pi vs oracle: {len(rep.numeric_pi_mismatch)} mismatches")
        lines.append(f"published closed form differs on {len(rep.printed_pi_differs)} walls")
        lines.append("OK" if rep.ok else "FAILED")
        _emit(args, "\n".join(lines) + "\n")
    return EX_OK if rep.ok else EX_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--sigma", default="id", choices=["id"])
    common.add_argument("--json", action="store_true")
    common.add_argument("--dot", action="store_true")
    common.add_argument("--out")
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="realmoduli", description="Strata, w1 and double covers of real moduli spaces.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub.add_parser("enumerate", parents=[common]).set_defaults(func=cmd_enumerate)
    sub.add_parser("poset", parents=[common]).set_defaults(func=cmd_poset)
    sub.add_parser("w1", parents=[common]).set_defaults(func=cmd_w1)
    c = sub.add_parser("cover", parents=[common])
    c.add_argument("--components", action="store_true")
    c.add_argument("--chi", action="store_true")
    c.set_defaults(func=cmd_cover)
    i = sub.add_parser("invariants", parents=[common])
    i.add_argument("--cover", action="store_true")
    i.set_defaults(func=cmd_invariants)
    v = sub.add_parser("verify-signs", parents=[common])
    v.add_argument("--numeric", action="store_true")
    v.add_argument("--t", type=float, default=1e-3)
    v.add_argument("--seeds", type=int, default=10)
    v.set_defaults(func=cmd_verify_signs)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (CoverError, OracleError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EX_INTERNAL
    except (TooFewLabels, TreeError, StrataError, OrientationError, UnsupportedShape, NotASurface,
            ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EX_INVALID


def main() -> None:
    sys.exit(run())
