"""Command-line front end.

Exit codes: 0 certified (or plain success), 2 input or validation error,
3 certification failure, 4 escalation exhausted.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import bound_combine, glue_f1, glue_n_theta, glue_n_theta_prime, tree_extension_table
from .coloring import ColoringError, certify
from .formats import (
    FormatError,
    coloring_from_json,
    coloring_to_json,
    construction_from_json,
    layering_from_json,
    layering_to_json,
    parse_gr,
    parse_td,
    write_gr,
    write_td,
)
from .generators import FAMILIES, GenSpec, generate
from .graph import INF, GraphError
from .layered import EscalationExhausted, color_apex_layered, color_layered
from .oracle import InstanceTooLarge, brute_min_weak_diameter
from .tree_extension import CertificationError, WidthExceeded, color_bounded_treewidth, color_construction
from .witness import ConstructionError, DecompositionError, LayeringError, validate_construction

EXIT_OK, EXIT_INPUT, EXIT_CERT, EXIT_ESCALATION = 0, 2, 3, 4

INPUT_ERRORS = (FormatError, GraphError, DecompositionError, LayeringError, ConstructionError,
                WidthExceeded, ColoringError, InstanceTooLarge, OSError)


class InputError(ValueError):
    pass


def _read(path: str) -> str:
    return Path(path).read_text()


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _envelope(args, timing: dict, **body) -> dict:
    return {"tool": "wdcolor", "version": __version__, "config": _config(args), "timing": timing, **body}


def _dump(doc, path: str | None) -> None:
    text = json.dumps(doc, indent=1)
    if path:
        Path(path).write_text(text + "\n")


def _emit(doc) -> None:
    print(json.dumps(doc, indent=1))


def _apices(args, n: int) -> list[int]:
    if args.apices_json:
        data = json.loads(_read(args.apices_json))
        ids = data.get("apices") if isinstance(data, dict) else None
        if not isinstance(ids, list):
            raise InputError("apices JSON needs an 'apices' list")
    elif args.apices:
        try:
            ids = [int(x) - 1 for x in args.apices.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--apices must be comma-separated ids, got {args.apices!r}") from None
    else:
        raise InputError("apex mode needs --apices or --apices-json")
    bad = [v for v in ids if not 0 <= v < n]
    if bad:
        raise InputError(f"apex ids {bad[:5]} are not vertices")
    return sorted(set(ids))


# ---------------------------------------------------------------- color


def cmd_color(args) -> int:
    t0 = time.perf_counter()
    g = parse_gr(_read(args.graph))
    witnesses = list(args.witness)
    mode = args.mode
    extra = {}
    t_parse = time.perf_counter()
    if mode == "tw":
        if args.w is None:
            raise InputError("--mode tw needs -w")
        rtd = parse_td(_read(witnesses[0]), g.n) if witnesses else None
        c, bound = color_bounded_treewidth(g, args.ell, args.w, rtd, debug=args.debug)
    elif mode == "construction":
        if len(witnesses) != 2:
            raise InputError("--mode construction needs TD and CONSTRUCTION_JSON")
        rtd = parse_td(_read(witnesses[0]), g.n)
        con = construction_from_json(_read(witnesses[1]), rtd)
        validate_construction(g, con)
        c, bound = color_construction(g, con, args.ell, args.m, debug=args.debug, check=False)
    elif mode == "layered":
        if len(witnesses) != 2:
            raise InputError("--mode layered needs TD and LAYERS_JSON")
        rtd = parse_td(_read(witnesses[0]), g.n)
        ly = layering_from_json(_read(witnesses[1]))
        if len(ly.layer) != g.n:
            raise InputError(f"layering has {len(ly.layer)} entries for {g.n} vertices")
        res = color_layered(g, args.ell, rtd, ly, w=args.w, escalation_cap=args.escalation_cap)
        c, bound = res.coloring, res.claimed
        extra = {"escalations": res.escalations, "plan": res.plan.to_json()}
    elif mode == "apex":
        if len(witnesses) != 2:
            raise InputError("--mode apex needs TD and LAYERS_JSON (describing G minus the apices)")
        z = _apices(args, g.n)
        rtd = parse_td(_read(witnesses[0]), g.n - len(z))
        ly = layering_from_json(_read(witnesses[1]))
        if len(ly.layer) != g.n - len(z):
            raise InputError(f"layering has {len(ly.layer)} entries for {g.n - len(z)} non-apex vertices")
        c, bound, res = color_apex_layered(g, z, args.ell, rtd, ly, w=args.w, escalation_cap=args.escalation_cap)
        extra = {"apices": z, "escalations": res.escalations, "layered_bound": res.bound}
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown mode {mode}")
    t_color = time.perf_counter()
    claim = bound if args.bound is None else args.bound
    report = certify(g, c, claim)
    t_cert = time.perf_counter()
    timing = {"parse": t_parse - t0, "color": t_color - t_parse, "certify": t_cert - t_color, "total": t_cert - t0}
    prefix = args.out
    cert_doc = _envelope(args, timing, certificate=report.to_json(), **extra)
    _dump(coloring_to_json(c), f"{prefix}.coloring.json")
    _dump(cert_doc, f"{prefix}.certificate.json")
    w = report.worst
    _emit(_envelope(args, timing, passed=report.passed, m=c.m, bound=claim,
                    max_weak_diameter=None if report.max_diameter == INF else report.max_diameter,
                    worst=None if w is None else w.to_json(),
                    files=[f"{prefix}.coloring.json", f"{prefix}.certificate.json"], **extra))
    return EXIT_OK if report.passed else EXIT_CERT


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    g = parse_gr(_read(args.graph))
    c = coloring_from_json(_read(args.coloring))
    if len(c.color) != g.n:
        raise InputError(f"coloring has {len(c.color)} entries for {g.n} vertices")
    report = certify(g, c, args.bound, exact=args.exact)
    timing = {"total": time.perf_counter() - t0}
    if args.certificate:
        _dump(_envelope(args, timing, certificate=report.to_json()), args.certificate)
    w = report.worst
    _emit(_envelope(args, timing, passed=report.passed, components=len(report.records),
                    max_weak_diameter=None if report.max_diameter == INF else report.max_diameter,
                    worst=None if w is None else w.to_json()))
    return EXIT_OK if report.passed else EXIT_CERT


# ---------------------------------------------------------------- bounds / gen / oracle / bench


def cmd_bounds(args) -> int:
    eta = args.theta if args.eta is None else args.eta
    out = {
        "theta": args.theta, "ell": args.ell, "N": args.N, "NFplus": args.NFplus, "eta": eta,
        "f_star": tree_extension_table(eta, args.theta, args.ell, args.N, args.NFplus),
        "f1_of_N": glue_f1(args.theta, args.ell, args.N),
        "N_theta": glue_n_theta(args.theta, args.ell),
        "N_theta_prime": glue_n_theta_prime(args.theta, args.ell),
    }
    if args.k is not None:
        out["f"] = [bound_combine(a, args.r, args.ell, args.N) for a in range(args.k + 1)]
    _emit(out)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(args.family, n=args.n, k=args.k, rows=args.rows, cols=args.cols, p=args.p,
                   seed=args.seed, window=args.window)
    try:
        gen = generate(spec)
    except ValueError as e:
        raise InputError(str(e)) from None
    prefix = args.out
    files = [f"{prefix}.gr"]
    Path(files[0]).write_text(write_gr(gen.graph))
    if gen.rtd is not None:
        base_n = gen.graph.n - len(gen.apices)
        files.append(f"{prefix}.td")
        Path(files[-1]).write_text(write_td(gen.rtd, base_n))
    if gen.layering is not None:
        files.append(f"{prefix}.layers.json")
        _dump(layering_to_json(gen.layering), files[-1])
    if gen.apices:
        files.append(f"{prefix}.apices.json")
        _dump({"apices": gen.apices}, files[-1])
    files.append(f"{prefix}.spec.json")
    _dump(spec.to_json(), files[-1])
    _emit({"tool": "wdcolor", "version": __version__, "spec": spec.to_json(), "n": gen.graph.n,
           "m": gen.graph.m, "files": files})
    return EXIT_OK


def cmd_oracle(args) -> int:
    t0 = time.perf_counter()
    g = parse_gr(_read(args.graph))
    d, c = brute_min_weak_diameter(g, args.ell, args.m, limit=args.limit)
    _emit(_envelope(args, {"total": time.perf_counter() - t0}, D_min=d, coloring=coloring_to_json(c)))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",")]
    except ValueError:
        raise InputError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    ok = True
    try:
        writer = csv.writer(out)
        writer.writerow(["mode", "n", "seed", "time", "pass"])
        for size in sizes:
            for s in range(args.seeds):
                seed = args.seed + s
                if args.mode == "tw":
                    gen = generate(GenSpec("partial_ktree", n=size, k=args.w, seed=seed))
                    t = time.perf_counter()
                    c, bound = color_bounded_treewidth(gen.graph, args.ell, args.w, gen.rtd)
                else:
                    gen = generate(GenSpec("grid", rows=size, cols=size))
                    t = time.perf_counter()
                    res = color_layered(gen.graph, args.ell, gen.rtd, gen.layering,
                                        escalation_cap=args.escalation_cap)
                    c, bound = res.coloring, res.claimed
                passed = certify(gen.graph, c, bound).passed
                ok &= passed
                writer.writerow([args.mode, gen.graph.n, seed, f"{time.perf_counter() - t:.4f}", int(passed)])
                out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if ok else EXIT_CERT


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wdcolor", description="Certified weak-diameter colorings of graph powers.")
    p.add_argument("--version", action="version", version=f"wdcolor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
        sp.add_argument("--threads", type=int, default=1, help="worker cap; the implementation is single-threaded")

    sp = sub.add_parser("color", help="color G^ell from a .gr graph and witnesses")
    sp.add_argument("graph")
    sp.add_argument("witness", nargs="*", help="tw: [TD]; construction: TD CONSTRUCTION_JSON; layered/apex: TD LAYERS_JSON")
    sp.add_argument("--mode", choices=("tw", "layered", "construction", "apex"), required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("-m", type=int, default=2, help="palette size for --mode construction")
    sp.add_argument("-w", type=int, default=None, help="width bound (tree-width, or layered width)")
    sp.add_argument("--bound", type=float, default=None, help="certify against this instead of the computed bound")
    sp.add_argument("--escalation-cap", type=int, default=4)
    sp.add_argument("--apices", help="comma-separated 1-indexed apex ids (apex mode)")
    sp.add_argument("--apices-json", help='JSON {"apices": [0-indexed ids]} (apex mode)')
    sp.add_argument("--debug", action="store_true", help="certify every recursion level")
    sp.add_argument("-o", "--out", default="wdcolor_out", help="output prefix for .coloring.json/.certificate.json")
    common(sp)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("verify", help="certify a coloring JSON against a bound")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    sp.add_argument("--bound", type=float, required=True)
    sp.add_argument("--exact", action="store_true", help="compute every diameter exactly")
    sp.add_argument("--certificate", help="write the certificate JSON here")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="evaluate the bound recurrences")
    sp.add_argument("--theta", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--NFplus", type=int, required=True)
    sp.add_argument("--eta", type=int, default=None, help="table length (default theta)")
    sp.add_argument("--k", type=int, default=None, help="also print f(0..k) of the combination recurrence")
    sp.add_argument("--r", type=int, default=0)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("gen", help="write a generated graph and its witnesses")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--rows", type=int, default=0)
    sp.add_argument("--cols", type=int, default=0)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--window", type=int, default=None)
    sp.add_argument("-o", "--out", default="graph", help="output prefix")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("oracle", help="exact minimum weak diameter by exhaustive search")
    sp.add_argument("graph")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("-m", type=int, default=2)
    sp.add_argument("--limit", type=int, default=16)
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="scaling runs, CSV output (mode, n, seed, time, pass)")
    sp.add_argument("--mode", choices=("tw", "layered"), default="tw")
    sp.add_argument("--sizes", default="1000,2000,4000", help="n for tw, grid side for layered")
    sp.add_argument("-w", type=int, default=2)
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--seeds", type=int, default=1)
    sp.add_argument("--escalation-cap", type=int, default=4)
    sp.add_argument("--csv", help="write CSV here instead of stdout")
    common(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "ell", 1) is not None and getattr(args, "ell", 1) < 1:
        print("error: --ell must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except EscalationExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ESCALATION
    except CertificationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CERT
    except (InputError, *INPUT_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
