"""Command line interface.

Exit codes: 0 on success, 2 for domain or precondition failures (including
unreadable or malformed input files), 3 when a computation exceeds a
configured size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import democratic as dem
from .calibration import comass
from .config import RunConfig, load_config
from .errors import CapacityError, DomainError, PreconditionError
from .forms import SpecialForm, canonicalize
from .graphs import DistanceMatrix, graph_of_form, to_dot
from .realization import forms_of, realize, solve


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise DomainError(f"expected comma-separated integers for {what}: {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specialforms",
        description="Sign-valued p-forms, their distance graphs, and realisations.",
    )
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p_canon = sub.add_parser("canon", help="canonical orbit representative of a form")
    p_canon.add_argument("form", help="form JSON file")

    p_graph = sub.add_parser("graph", help="distance matrix of a form")
    p_graph.add_argument("form", help="form JSON file")
    p_graph.add_argument("--format", choices=("json", "dot"), default=None)

    p_real = sub.add_parser("realize", help="solve a distance matrix for realisations")
    p_real.add_argument("matrix", help="matrix JSON file")
    p_real.add_argument("--p", type=int, required=True, dest="p")
    p_real.add_argument("--d", type=int, default=None, dest="d",
                        help="keep only solutions of this total dimension")
    p_real.add_argument("--all-signs", action="store_true",
                        help="expand each realisation into its sign classes")
    p_real.add_argument("--invariant-under", default=None, metavar="PERM",
                        help="keep only solutions invariant under this vertex permutation")

    p_dem = sub.add_parser("democratic", help="democratic matrix families")
    dem_sub = p_dem.add_subparsers(dest="dem_command", required=True)

    p_mat = dem_sub.add_parser("matrix", help="build a matrix from a construction")
    group = p_mat.add_mutually_exclusive_group(required=True)
    group.add_argument("--circulant", type=int, metavar="R",
                       help="circulant on R = 2n+1 vertices")
    group.add_argument("--even", type=int, metavar="R",
                       help="index construction on an even vertex count")
    group.add_argument("--product", metavar="FACTORS",
                       help="difference construction over Z_{r1} x ... (comma list)")
    p_mat.add_argument("distances", nargs="?", default=None,
                       help="comma list of distances (defaults to 1, 2, ...)")
    p_mat.add_argument("--format", choices=("json", "dot"), default=None)
    p_mat.add_argument("--p", type=int, default=None, dest="p",
                       help="omit distance-p edges from DOT output")
    p_mat.add_argument("--dot", default=None, metavar="PATH",
                       help="additionally write a DOT rendering here")

    p_enum = dem_sub.add_parser("enum", help="symmetry families of a vertex count")
    p_enum.add_argument("r", type=int)

    p_count = dem_sub.add_parser("count", help="number of symmetry families")
    p_count.add_argument("r", type=int)

    p_cls = dem_sub.add_parser("classify", help="enumerate and classify n_a = 2 matrices")
    p_cls.add_argument("r", type=int)
    p_cls.add_argument("--p", type=int, required=True, dest="p")
    p_cls.add_argument("--max-distance", type=int, default=None)
    p_cls.add_argument("--alphabet", default=None, help="comma list of allowed distances")

    p_cal = sub.add_parser("calibrate", help="comass search for a form")
    p_cal.add_argument("form", help="form JSON file")
    p_cal.add_argument("--restarts", type=int, default=None)
    p_cal.add_argument("--tol", type=float, default=None)
    p_cal.add_argument("--csv", default=None, metavar="PATH",
                       help="write per-start values here as CSV")

    p_bell = sub.add_parser("bell", help="number of set partitions")
    p_bell.add_argument("m", type=int)

    return parser


def _is_invariant(f, sigma: Sequence[int]) -> bool:
    values = dict(f.values)
    for subset, val in f.values:
        image = tuple(sorted(sigma[v - 1] for v in subset))
        if values.get(image, 0) != val:
            return False
    return True


def _cmd_canon(args, cfg: RunConfig) -> str:
    form = SpecialForm.from_dict(_read_json(args.form))
    return _dump(canonicalize(form, dimension_cap=cfg.canon_d_cap).to_dict())


def _cmd_graph(args, cfg: RunConfig) -> str:
    form = SpecialForm.from_dict(_read_json(args.form))
    m = graph_of_form(form)
    fmt = args.format or (cfg.format if cfg.format in ("json", "dot") else "json")
    if fmt == "dot":
        return to_dot(m, p=form.p)
    return _dump(m.to_dict())


def _cmd_realize(args, cfg: RunConfig) -> str:
    m = DistanceMatrix.from_dict(_read_json(args.matrix))
    solutions = solve(m, args.p, d_filter=args.d, vertex_cap=cfg.solver_r_cap)
    if args.invariant_under is not None:
        sigma = _parse_ints(args.invariant_under, "--invariant-under")
        if sorted(sigma) != list(range(1, m.r + 1)):
            raise DomainError(f"not a vertex permutation of 1..{m.r}: {sigma}")
        solutions = [f for f in solutions if _is_invariant(f, sigma)]
    out = {"r": m.r, "p": args.p, "count": len(solutions), "solutions": []}
    for f in solutions:
        real = realize(f)
        entry = {"function": f.to_dict(), "realization": real.to_dict()}
        if args.all_signs:
            entry["forms"] = [g.to_dict() for g in forms_of(real)]
        out["solutions"].append(entry)
    return _dump(out)


def _cmd_democratic_matrix(args, cfg: RunConfig) -> str:
    distances = (
        _parse_ints(args.distances, "distances") if args.distances else None
    )
    if args.circulant is not None:
        r = args.circulant
        if r < 3 or r % 2 == 0:
            raise DomainError(f"circulant vertex count must be odd and >= 3, got {r}")
        n = (r - 1) // 2
        m = dem.circulant_matrix(n, distances or tuple(range(1, n + 1)))
    elif args.even is not None:
        r = args.even
        m = dem.even_example_matrix(r, distances or tuple(range(1, r)))
    else:
        factors = _parse_ints(args.product, "--product")
        fac = dem.Factorization(factors)
        assignment = (
            dem.DistanceAssignment.from_sequence(fac.factors, distances)
            if distances
            else None
        )
        m = dem.product_matrix(fac, assignment)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(m, p=args.p))
    fmt = args.format or (cfg.format if cfg.format in ("json", "dot") else "json")
    if fmt == "dot":
        return to_dot(m, p=args.p)
    return _dump(m.to_dict())


def _cmd_democratic_enum(args, cfg: RunConfig) -> str:
    families = dem.symmetry_families(args.r)
    return _dump(
        {
            "r": args.r,
            "count": len(families),
            "families": [list(f) for f in families],
        }
    )


def _cmd_democratic_count(args, cfg: RunConfig) -> str:
    return _dump(dem.count_symmetry_families(args.r))


def _cmd_democratic_classify(args, cfg: RunConfig) -> str:
    alphabet = (
        _parse_ints(args.alphabet, "--alphabet") if args.alphabet else None
    )
    catalog = dem.classify_small(
        args.r,
        args.p,
        max_distance=args.max_distance,
        alphabet=alphabet,
        vertex_cap=cfg.autom_r_cap,
    )
    return _dump(catalog.to_dict())


def _cmd_calibrate(args, cfg: RunConfig) -> str:
    form = SpecialForm.from_dict(_read_json(args.form))
    report = comass(
        form,
        restarts=args.restarts if args.restarts is not None else cfg.comass_restarts,
        tol=args.tol if args.tol is not None else cfg.comass_tol,
        seed=cfg.seed,
    )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("start,value\n")
            for k, v in enumerate(report.restart_values):
                fh.write(f"{k},{v!r}\n")
    return _dump(report.to_dict())


def _cmd_bell(args, cfg: RunConfig) -> str:
    return _dump(dem.bell(args.m))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        cfg.validate()
        if args.command == "canon":
            text = _cmd_canon(args, cfg)
        elif args.command == "graph":
            text = _cmd_graph(args, cfg)
        elif args.command == "realize":
            text = _cmd_realize(args, cfg)
        elif args.command == "democratic":
            handler = {
                "matrix": _cmd_democratic_matrix,
                "enum": _cmd_democratic_enum,
                "count": _cmd_democratic_count,
                "classify": _cmd_democratic_classify,
            }[args.dem_command]
            text = handler(args, cfg)
        elif args.command == "calibrate":
            text = _cmd_calibrate(args, cfg)
        else:
            text = _cmd_bell(args, cfg)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    target = args.output or cfg.output
    if target:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def entry() -> None:
    sys.exit(main())
