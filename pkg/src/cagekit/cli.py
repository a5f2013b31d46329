"""Command-line interface: ``cagekit {build,verify,pds,selftest,stats}``.

Exit status: 0 success, 1 a checked property failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import acceptance, construct, dominating, formats
from .field import NotPrimePower, make_field
from .graph import moore_bound, verify
from .labels import label_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

KINDS = ["gamma", "gamma-dual", "bq", "hq"] + [f"stage:{s.value}" for s in construct.Stage]


class UsageError(Exception):
    pass


def _prime_power(text: str) -> int:
    try:
        q = int(text)
        make_field(q)
    except NotPrimePower:
        raise argparse.ArgumentTypeError(f"{text} is not a prime power") from None
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return q


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("CAGEKIT_THREADS", "1")))
    except ValueError:
        return 1


def _emit(data: bytes, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _build_kind(q: int, kind: str):
    if kind == "gamma":
        return construct.build_gamma(q)
    if kind == "gamma-dual":
        return construct.build_gamma_dual(q)
    if kind == "bq":
        return construct.build_bq(q)
    if kind == "hq":
        return construct.build_hq(q)
    return construct.build_staged(q, kind.split(":", 1)[1])


def cmd_build(args) -> int:
    F = make_field(args.q)
    g = _build_kind(args.q, args.kind)
    meta = {"kind": args.kind, "field": F.to_json()}
    _emit(formats.dumps(g, args.format, meta), args.out)
    print(f"built {args.kind} q={args.q}: order={g.order} size={g.size} "
          f"field modulus {F.modulus_str()}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        fmt = args.format or formats.guess_format(args.path)
        g = formats.read_graph(args.path, fmt)
    except formats.GraphFormatError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = verify(g, expect_order=args.expect_order, expect_regular=args.expect_regular,
                    expect_girth=args.expect_girth, expect_diameter=args.expect_diameter,
                    expect_bipartite=True if args.expect_bipartite else None,
                    with_diameter=not args.no_diameter, threads=args.threads)
    doc = {"path": str(args.path), "format": fmt, **report.to_json()}
    print(json.dumps(doc, indent=2))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_pds(args) -> int:
    try:
        cert = dominating.build_pds(args.q, x=args.x, strict=False)
    except (dominating.UnsupportedQ, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = cert.to_json()
    doc["field"] = make_field(args.q).to_json()
    out = Path(args.out) if args.out else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        labels = [label_to_json(lab) for lab in cert.labels()]
        (out / f"pds_q{args.q}.json").write_text(json.dumps(labels) + "\n")
    if args.remove:
        h = cert.graph.remove_vertices(cert.pds)
        doc["residual"] = {"order": h.order, "size": h.size,
                           "degrees": {str(k): v for k, v in
                                       sorted(_hist(h.degrees).items())}}
        if out is not None:
            ext = {"graph6": "g6", "dimacs-edge": "dimacs", "edge-list": "edges",
                   "labeled-json": "json"}[args.format]
            path = out / f"residual_q{args.q}.{ext}"
            path.write_bytes(formats.dumps(h, args.format, {"kind": "residual"}))
            doc["residual"]["path"] = str(path)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if cert.perfect else EXIT_FAIL


def _hist(values):
    out = {}
    for v in values.tolist():
        out[v] = out.get(v, 0) + 1
    return out


def cmd_selftest(args) -> int:
    acceptance.warm_up()
    outcomes = []
    for check in acceptance.battery(q_max=args.q_max, quick=args.quick, threads=args.threads):
        outcome = acceptance.run(check)
        outcomes.append(outcome)
        print(outcome.line(), flush=True)
    failed = [o for o in outcomes if not o.passed]
    total = sum(o.seconds for o in outcomes)
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} passed in {total:.1f}s")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_stats(args) -> int:
    q = args.q
    F = make_field(q)
    doc = {
        "field": F.to_json(),
        "gamma_order": moore_bound(q + 1),
        "gamma_size": moore_bound(q + 1) * (q + 1) // 2,
        "bq_order": 2 * q**3,
        "stage_orders": {"bq1": 2 * q**3 + q**2, "bq2": 2 * q**3 + 2 * q**2 + q,
                         "bq3": 2 * q**3 + 2 * q**2 + 2 * q + 1},
    }
    if F.p == 2 and q >= 4:
        doc["pds_cardinality_claimed"] = 2 * (q * q + 4 * q + 3)
        doc["residual_order_claimed"] = 2 * (q**3 - 3 * q - 2)
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cagekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph and write it out")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--kind", choices=KINDS, default="gamma")
    p.add_argument("--format", choices=formats.FORMATS, default="edge-list")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a graph file against expectations")
    p.add_argument("path")
    p.add_argument("--format", choices=formats.FORMATS)
    p.add_argument("--expect-order", type=int)
    p.add_argument("--expect-regular", type=int)
    p.add_argument("--expect-girth", type=int)
    p.add_argument("--expect-diameter", type=int)
    p.add_argument("--expect-bipartite", action="store_true")
    p.add_argument("--no-diameter", action="store_true")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pds", help="perfect dominating set of the cage, even q >= 4")
    p.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--x", type=int, help="shift for the Q' seed set")
    p.add_argument("--remove", action="store_true", help="also build the residual graph")
    p.add_argument("--out", help="directory for the label list and residual graph")
    p.add_argument("--format", choices=formats.FORMATS, default="edge-list")
    p.set_defaults(func=cmd_pds)

    p = sub.add_parser("selftest", help="run the acceptance battery")
    p.add_argument("--q-max", type=int, default=9)
    p.add_argument("--quick", action="store_true", help="skip diameter for q >= 11")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("stats", help="field modulus and predicted counts for q")
    p.add_argument("--q", type=_prime_power, required=True)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
