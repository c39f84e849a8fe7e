"""Batch command-line front end.

Single-file JSON in, JSON out (CSV only for report curve data). All rationals
serialize as "p/q". Exit status: 0 success (for `verify`: 0 iff the profile
is a Nash equilibrium, 1 otherwise), 2 parse errors, 3 domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import examples as ex
from .construct import build_equilibrium, constructed_cost, player_threshold
from .efficiency import (
    anarchy_bound,
    efficiency_report,
    empirical_optimum,
    equilibrium_cost_bound,
)
from .errors import NetlocError
from .exact import rat, rat_str
from .network import Network
from .payoff import Profile, attraction, social_cost
from .verify import is_nash


class ParseFailure(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc


def _load_net(path) -> Network:
    try:
        return Network.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseFailure(f"bad network file {path}: {exc}") from exc


def _load_profile(path) -> Profile:
    try:
        return Profile.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseFailure(f"bad profile file {path}: {exc}") from exc


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out_path):
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", out_path)


def _threads() -> int:
    raw = os.environ.get("NETLOC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParseFailure(f"NETLOC_THREADS={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netloc",
        description="Exact toolkit for location games on metric networks",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, net=True, profile=False):
        if net:
            p.add_argument("--net", required=True, help="network JSON file")
        if profile:
            p.add_argument("--profile", required=True, help="profile JSON file")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("dist", help="pairwise distances between profile points")
    add_common(p, profile=True)

    p = sub.add_parser("payoffs", help="attraction cells and player payoffs")
    add_common(p, profile=True)

    p = sub.add_parser("cost", help="consumer social cost of a profile")
    add_common(p, profile=True)

    p = sub.add_parser("construct", help="build the explicit n-player equilibrium")
    add_common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", help="certify whether a profile is an equilibrium")
    add_common(p, profile=True)

    p = sub.add_parser("report", help="anarchy/stability report")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=4)
    p.add_argument("--iters", type=int, default=60)

    p = sub.add_parser("examples", help="canonical networks and profiles")
    p.add_argument("kind", choices=["segment", "circle", "star"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--perimeter", default="1")
    p.add_argument("--profile", default=None, help="emit just this named profile")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("search-optimum", help="multistart social-optimum search")
    add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=4)
    p.add_argument("--iters", type=int, default=60)
    return parser


def _cmd_dist(args) -> int:
    net = _load_net(args.net)
    prof = _load_profile(args.profile)
    pts = list(prof)
    matrix = [[rat_str(net.distance(p, q)) for q in pts] for p in pts]
    _emit_json({"distances": matrix}, args.out)
    return 0


def _cmd_payoffs(args) -> int:
    net = _load_net(args.net)
    prof = _load_profile(args.profile)
    _emit_json(attraction(net, prof).to_json(), args.out)
    return 0


def _cmd_cost(args) -> int:
    net = _load_net(args.net)
    prof = _load_profile(args.profile)
    _emit_json({"social_cost": rat_str(social_cost(net, prof))}, args.out)
    return 0


def _cmd_construct(args) -> int:
    net = _load_net(args.net)
    profile, plan = build_equilibrium(net, args.n)
    _emit_json(
        {
            "profile": profile.to_json(),
            "plan": plan.to_json(),
            "cost": rat_str(constructed_cost(plan)),
        },
        args.out,
    )
    return 0


def _cmd_verify(args) -> int:
    net = _load_net(args.net)
    prof = _load_profile(args.profile)
    cert = is_nash(net, prof)
    _emit_json(cert.to_json(), args.out)
    return 0 if cert.is_nash else 1


def _cmd_report(args) -> int:
    net = _load_net(args.net)
    if args.format == "csv":
        lines = ["n,cost,phi_n,bound"]
        lo = 1 if net.degree2_allowed else player_threshold(net)
        for n in range(lo, args.n + 1):
            if net.degree2_allowed:
                cost = ex.circle_profiles(n, net.total_measure())["tilde"]["cost"]
            else:
                _prof, plan = build_equilibrium(net, n)
                cost = constructed_cost(plan)
            lines.append(
                f"{n},{rat_str(cost)},{rat_str(anarchy_bound(net, n))},"
                f"{rat_str(equilibrium_cost_bound(net, n))}"
            )
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    rep = efficiency_report(
        net,
        args.n,
        seed=args.seed,
        starts=args.starts,
        iters=args.iters,
        threads=_threads(),
    )
    _emit_json(rep.to_json(), args.out)
    return 0


def _cmd_examples(args) -> int:
    if args.kind == "segment":
        if args.n is None:
            raise ParseFailure("--n is required for segment examples")
        data = ex.segment_profiles(args.n)
    elif args.kind == "circle":
        if args.n is None:
            raise ParseFailure("--n is required for circle examples")
        data = ex.circle_profiles(args.n, rat(args.perimeter))
    else:
        if args.b is not None:
            data = ex.star_remark_profiles(args.b)
        else:
            if args.n is None:
                raise ParseFailure("--n or --b is required for star examples")
            res = ex.star_equilibrium(args.k, args.n)
            net = ex.make_star(args.k)
            if isinstance(res, ex.NoEquilibrium):
                _emit_json({"network": net.to_json(), "result": res.to_json()}, args.out)
                return 0
            payload = res.to_json()
            _emit_json(
                {"network": net.to_json(), "result": payload, "profile": payload["profile"]},
                args.out,
            )
            return 0
    net = data.pop("network")
    if args.profile is not None:
        if args.profile not in data:
            raise ParseFailure(
                f"unknown profile {args.profile!r}; have {sorted(k for k in data if isinstance(data[k], dict))}"
            )
        entry = data[args.profile]
        _emit_json(
            {
                "network": net.to_json(),
                "profile": entry["profile"].to_json(),
                "cost": rat_str(entry["cost"]),
            },
            args.out,
        )
        return 0
    payload = {"network": net.to_json(), "profiles": {}}
    for name, entry in data.items():
        if isinstance(entry, dict) and "profile" in entry:
            payload["profiles"][name] = {
                "profile": entry["profile"].to_json(),
                "cost": rat_str(entry["cost"]),
            }
        elif isinstance(entry, Fraction):
            payload[name] = rat_str(entry)
        else:
            payload[name] = entry
    _emit_json(payload, args.out)
    return 0


def _cmd_search_optimum(args) -> int:
    net = _load_net(args.net)
    prof, cost = empirical_optimum(
        net,
        args.n,
        seed=args.seed,
        starts=args.starts,
        iters=args.iters,
        threads=_threads(),
    )
    _emit_json(
        {"profile": prof.to_json(), "cost": rat_str(cost), "seed": args.seed},
        args.out,
    )
    return 0


_HANDLERS = {
    "dist": _cmd_dist,
    "payoffs": _cmd_payoffs,
    "cost": _cmd_cost,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "report": _cmd_report,
    "examples": _cmd_examples,
    "search-optimum": _cmd_search_optimum,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.cmd](args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NetlocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
