"""Command-line interface.

Every command honors --format {text,json}; output is deterministic for a
fixed configuration (sorted, exact rationals as "p/q", no timestamps).
Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import jsonio
from .conegeom import Region, cone_membership
from .errors import WeylGaleError
from .galedual import (
    dual_round_trip,
    duality_certificate,
    gale_dual,
    general_position,
)
from .morimap import determinant_map, verify_determinant_map, wall_to_curve
from .piclattice import surface_context, symmetric_polarization
from .verification import run_suite
from .wallscan import (
    chamber_graph,
    local_walls,
    segment_scan,
    standard_chamber,
)
from .weylgroup import cremona_reduce, orbit_classify, orbit_enumerate


@dataclass
class RunConfig:
    """Shared knobs; defaults are stable and documented."""

    bound_slack: int = 2
    budget: int = 100
    format: str = "text"
    seed: int = 0
    threads: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _threads_from_env() -> int:
    raw = os.environ.get("WEYLGALE_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise WeylGaleError(f"WEYLGALE_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise WeylGaleError("WEYLGALE_THREADS must be >= 1")
    return value


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(jsonio.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _wall_obj(wall) -> dict:
    return {"class": jsonio.class_to_obj(wall.cls), "square": int(wall.square)}


def _load_class(args):
    if args.cls.strip().startswith("{"):
        return jsonio.class_from_json(args.cls)
    with open(args.cls, "r", encoding="utf-8") as fh:
        return jsonio.class_from_json(fh.read())


def cmd_verify(args) -> int:
    results = run_suite(seed=args.seed, words=args.words, samples=args.samples)
    payload = {
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    _emit(args, payload, [r.line() for r in results])
    return 0 if payload["passed"] else 2


def cmd_orbit(args) -> int:
    ctx = surface_context(args.k)
    seed_cls = jsonio.class_from_json(args.seed_class) if args.seed_class else ctx.exceptional(1)
    classes = orbit_enumerate(seed_cls, args.bound)
    payload = {
        "k": args.k,
        "bound": args.bound,
        "count": len(classes),
        "classes": [jsonio.class_to_obj(c) for c in classes],
    }
    _emit(args, payload, [str(c) for c in classes])
    return 0


def cmd_reduce(args) -> int:
    cls = _load_class(args)
    red = cremona_reduce(cls)
    fam = orbit_classify(cls)
    payload = {
        "input": jsonio.class_to_obj(cls),
        "canonical": jsonio.class_to_obj(red.canonical),
        "word": list(red.word),
        "family": fam.value,
    }
    _emit(
        args,
        payload,
        [
            f"canonical: {red.canonical}",
            f"word: {list(red.word)}",
            f"family: {fam.value}",
        ],
    )
    return 0


def cmd_walls_at(args) -> int:
    cls = _load_class(args)
    walls = local_walls(cls, slack=args.bound_slack)
    payload = {
        "polarization": jsonio.class_to_obj(cls),
        "count": len(walls),
        "walls": [_wall_obj(w) for w in walls],
    }
    _emit(args, payload, [f"{len(walls)} wall(s)"] + [f"  {w.cls}" for w in walls])
    return 0


def cmd_scan(args) -> int:
    k = args.n + 4
    ctx = surface_context(k)
    a0, a1 = Fraction(args.a_from), Fraction(args.a_to)
    scan = segment_scan(
        symmetric_polarization(ctx, a0),
        symmetric_polarization(ctx, a1),
        slack=args.bound_slack,
    )
    rows = []
    for t, walls in scan.crossings:
        a = a0 + t * (a1 - a0)
        rows.append((a, walls))
    payload = {
        "n": args.n,
        "from": jsonio.encode_rational(a0),
        "to": jsonio.encode_rational(a1),
        "crossings": [
            {
                "a": jsonio.encode_rational(a),
                "count": len(walls),
                "walls": [_wall_obj(w) for w in walls],
            }
            for a, walls in rows
        ],
    }
    lines = [f"a = {a}: {len(walls)} wall(s), e.g. {walls[0].cls}" for a, walls in rows]
    _emit(args, payload, lines or ["no crossings"])
    return 0


def cmd_graph(args) -> int:
    ctx = surface_context(args.n + 4)
    region = Region(args.region)
    start = standard_chamber(ctx, verify=False)
    graph = chamber_graph(start, args.budget, region, slack=args.bound_slack)
    payload = {
        "n": args.n,
        "region": region.value,
        "complete": graph.complete,
        "nodes": [
            {"id": node.id, "rep": jsonio.class_to_obj(node.chamber.rep)}
            for node in graph.nodes
        ],
        "edges": [
            {
                "from": e.src,
                "to": e.dst,
                "wall": _wall_obj(e.wall),
                "kind": e.crossing.kind.value,
                "dims": [e.crossing.dim_p_d, e.crossing.dim_p_kd],
            }
            for e in graph.edges
        ],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(payload))
        print(f"wrote {args.out}: {len(graph.nodes)} chambers, {len(graph.edges)} crossings")
    else:
        _emit(
            args,
            payload,
            [
                f"chambers: {len(graph.nodes)}  crossings: {len(graph.edges)}  complete: {graph.complete}"
            ],
        )
    return 0


def cmd_rho(args) -> int:
    rho = determinant_map(args.n)
    if args.rho_cmd == "apply":
        cls = _load_class(args)
        image = rho(cls)
        payload = {
            "input": jsonio.class_to_obj(cls),
            "image": jsonio.class_to_obj(image),
        }
        _emit(args, payload, [str(image)])
        return 0
    if args.rho_cmd == "verify":
        try:
            report = verify_determinant_map(rho, trials=args.trials, seed=args.seed)
        except WeylGaleError as exc:
            print(f"FAIL  {exc}", file=sys.stderr)
            return 2
        payload = {
            "n": args.n,
            "checks": [{"name": n, "passed": ok} for n, ok in report.checks],
            "caveat": report.caveat,
            "passed": report.all_pass,
        }
        lines = [f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in report.checks]
        if report.caveat:
            lines.append(f"note: {report.caveat}")
        _emit(args, payload, lines)
        return 0 if report.all_pass else 2
    raise WeylGaleError(f"unknown rho subcommand {args.rho_cmd!r}")


def cmd_mori(args) -> int:
    ctx = surface_context(args.n + 4)
    rho = determinant_map(args.n)
    chamber = standard_chamber(ctx, verify=False)
    if args.chamber_rep:
        rep = jsonio.class_from_json(args.chamber_rep)
        from .wallscan import _chamber_facets

        facets_raw = _chamber_facets(rep, args.bound_slack)
        chamber = chamber.__class__(rep).with_walls([f[0] for f in facets_raw])
    from .morimap import nef_cone_image

    image = nef_cone_image(chamber, rho)
    payload = {
        "n": args.n,
        "interior_image": jsonio.class_to_obj(image.chamber_rep_image),
        "facets": [
            {
                "normal_on_S": jsonio.class_to_obj(f.normal_on_surface),
                "image_on_X": jsonio.class_to_obj(f.image_normal),
                "dual_curve": {"coeffs": [jsonio.encode_rational(c) for c in f.dual_curve.coeffs]},
            }
            for f in image.facets
        ],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(payload))
        print(f"wrote {args.out}: {len(image.facets)} facets")
    else:
        _emit(
            args,
            payload,
            [f"{len(image.facets)} facets"] + [f"  {f.dual_curve}" for f in image.facets],
        )
    return 0


def cmd_gale(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    if args.input.endswith(".csv"):
        cfg = jsonio.config_from_csv(text)
    else:
        cfg = jsonio.config_from_json(text)
    if not general_position(cfg):
        print("configuration is not in general position", file=sys.stderr)
        return 2
    dual = gale_dual(cfg)
    payload = {
        "input": jsonio.config_to_obj(cfg),
        "dual": jsonio.config_to_obj(dual),
        "duality_certificate": duality_certificate(cfg, dual),
    }
    lines = [
        f"dual: {dual.k} points in P^{dual.s}",
        f"B^t A = 0: {payload['duality_certificate']}",
    ]
    if args.roundtrip:
        payload["round_trip"] = dual_round_trip(cfg)
        lines.append(f"round trip: {payload['round_trip']}")
    _emit(args, payload, lines)
    return 0


def cmd_cones(args) -> int:
    cls = _load_class(args)
    result = cone_membership(cls, Region(args.cone), slack=args.bound_slack)
    payload = {
        "class": jsonio.class_to_obj(cls),
        "cone": result.region.value,
        "member": result.member,
    }
    lines = [f"member of {result.region.value}: {result.member}"]
    if not result.member:
        payload["violated_constraint"] = result.violated_constraint
        payload["certificate"] = (
            jsonio.class_to_obj(result.certificate) if result.certificate else None
        )
        lines.append(f"violated: {result.violated_constraint} by {result.certificate}")
    _emit(args, payload, lines)
    return 0


def build_parser() -> _Parser:
    p = _Parser(prog="weylgale", description=__doc__)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound-slack", dest="bound_slack", type=int, default=2)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("verify", help="run the full verification suite")
    sp.add_argument("--words", type=int, default=200)
    sp.add_argument("--samples", type=int, default=20)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("orbit", help="bounded orbit of a class under the Weyl group")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed-class", dest="seed_class", default=None)
    sp.add_argument("--bound", type=int, default=30)
    sp.set_defaults(fn=cmd_orbit)

    sp = sub.add_parser("reduce", help="Cremona reduction of a surface class")
    sp.add_argument("--class", dest="cls", required=True, help="class JSON or file")
    sp.set_defaults(fn=cmd_reduce)

    sp = sub.add_parser("walls-at", help="all walls through a polarization")
    sp.add_argument("--class", dest="cls", required=True)
    sp.set_defaults(fn=cmd_walls_at)

    sp = sub.add_parser("scan", help="wall crossings along the symmetric family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--from", dest="a_from", required=True)
    sp.add_argument("--to", dest="a_to", required=True)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("graph", help="chamber adjacency graph by wall crossing")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--region", choices=("pi", "e"), default="pi")
    sp.add_argument("--budget", type=int, default=100)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_graph)

    sp = sub.add_parser("rho", help="the determinant map")
    sp.add_argument("--n", type=int, required=True)
    rho_sub = sp.add_subparsers(dest="rho_cmd", required=True)
    ap = rho_sub.add_parser("apply")
    ap.add_argument("--class", dest="cls", required=True)
    vp = rho_sub.add_parser("verify")
    vp.add_argument("--trials", type=int, default=50)
    sp.set_defaults(fn=cmd_rho)

    sp = sub.add_parser("mori", help="image cone facets of a chamber")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--chamber-rep", dest="chamber_rep", default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_mori)

    sp = sub.add_parser("gale", help="Gale dual of a point configuration")
    sp.add_argument("--input", required=True, help="JSON or CSV coordinate file")
    sp.add_argument("--roundtrip", action="store_true")
    sp.set_defaults(fn=cmd_gale)

    sp = sub.add_parser("cones", help="cone membership with certificates")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--cone", choices=("nef", "pi", "e"), required=True)
    sp.set_defaults(fn=cmd_cones)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.threads = _threads_from_env()
        return args.fn(args)
    except WeylGaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
