from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import convex, dynamics, two_by_n, verify
from .convex import CapExceeded
from .poset import ChainProduct, product_of_chains


class UsageError(Exception):
    pass


STAT_ALIASES = {
    "sc": "signed_cardinality",
    "signed_cardinality": "signed_cardinality",
    "card": "cardinality",
    "cardinality": "cardinality",
    "maxmin": "max_minus_min",
    "max_minus_min": "max_minus_min",
}


def parse_dims(args) -> list[int]:
    if args.dims:
        try:
            dims = [int(d) for d in args.dims.replace("x", ",").split(",") if d.strip()]
        except ValueError:
            raise UsageError(f"invalid --dims {args.dims!r}")
    elif args.m is not None and args.n is not None:
        dims = [args.m, args.n]
    elif args.n is not None:
        dims = [2, args.n]
    else:
        raise UsageError("give --m and --n, or --dims")
    if not dims or any(d < 1 for d in dims):
        raise UsageError(f"invalid poset dimensions {dims}")
    return dims


def pick_engine(engine: str, dims: list[int]) -> str:
    is_two = len(dims) == 2 and dims[0] == 2
    if engine == "auto":
        return "tuple" if is_two else "generic"
    if engine == "tuple" and not is_two:
        raise UsageError("the tuple engine only handles [2]x[n]")
    return engine


def fmt_signed(v: int) -> str:
    return f"{v:+d}" if v else "0"


def render_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def coords_json(p: ChainProduct, s: int) -> list[list[int]]:
    return [list(c) for c in sorted(convex.to_labels(p, s))]


def coords_text(p: ChainProduct, s: int) -> str:
    return "{" + ",".join("(" + ",".join(map(str, c)) + ")" for c in sorted(convex.to_labels(p, s))) + "}"


def parse_start(text: str, p: ChainProduct) -> int:
    text = text.strip()
    if text.lower() in ("empty", "e", "[]"):
        return 0
    if text.lower() == "full":
        return p.full
    if ":" in text:
        if len(p.dims) != 2 or p.dims[0] != 2:
            raise UsageError("tuple literals only describe sets of [2]x[n]")
        return two_by_n.embed(two_by_n.ChainTuple.parse(p.dims[1], text.strip("[]")))
    try:
        coords = json.loads(text)
        s = convex.from_labels(p, [tuple(c) for c in coords])
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"cannot parse start set {text!r}: {exc}")
    if not convex.is_interval_closed(p, s):
        raise UsageError(f"start set {text!r} is not interval-closed")
    return s


# subcommands


def cmd_enumerate(args) -> int:
    dims = parse_dims(args)
    engine = pick_engine(args.engine, dims)
    if engine == "tuple":
        n = dims[1]
        p = two_by_n.poset_for(n)
        sets = sorted(two_by_n.embed_raw(n, t) for t in two_by_n.iter_raw(n))
    else:
        p = product_of_chains(dims)
        sets = convex.enumerate_ics(p, args.cap)
    if args.count_only:
        emit(f"{len(sets)}\n" if args.format != "json" else render_json({"dims": dims, "count": len(sets)}),
             args.output)
        return 0
    if args.format == "json":
        emit(render_json({"dims": dims, "count": len(sets), "sets": [coords_json(p, s) for s in sets]}),
             args.output)
    else:
        rows = [(k, s.bit_count(), coords_text(p, s)) for k, s in enumerate(sets)]
        render = render_csv if args.format == "csv" else render_table
        emit(render(("index", "size", "elements"), rows), args.output)
    return 0


def cmd_orbit(args) -> int:
    dims = parse_dims(args)
    engine = pick_engine(args.engine, dims)
    p = product_of_chains(dims) if engine == "generic" else two_by_n.poset_for(dims[1])
    if engine == "generic" and p.size > args.cap:
        raise CapExceeded(f"poset has {p.size} elements, above the enumeration cap of {args.cap} (raise it with --cap)")
    start = parse_start(args.start, p)
    stats = [STAT_ALIASES[s] for s in (args.trace or [])]
    if engine == "tuple":
        n = dims[1]
        states = [two_by_n.embed_raw(n, t) for t in two_by_n.orbit_raw(n, two_by_n.project(start, n).raw)]
    else:
        fam = dynamics.ics_family(p)
        step = dynamics.step_function(fam, args.impl)
        states = [start]
        t = step(start)
        while t != start:
            states.append(t)
            t = step(t)
    rows = []
    for k, s in enumerate(states):
        vals = [dynamics.STATISTICS[name](p, s) for name in stats]
        rows.append((k, s, vals))
    if args.format == "json":
        obj = {
            "dims": dims,
            "engine": engine,
            "size": len(states),
            "states": [
                {"step": k, "elements": coords_json(p, s), **{name: v for name, v in zip(stats, vals)}}
                for k, s, vals in rows
            ],
        }
        if engine == "tuple":
            for entry, (_, s, _) in zip(obj["states"], rows):
                entry["tuple"] = str(two_by_n.project(s, dims[1]))
        emit(render_json(obj), args.output)
        return 0
    header = ["step"]
    if engine == "tuple":
        header.append("tuple")
    header.append("elements")
    header += [args_name for args_name in (args.trace or [])]
    out_rows = []
    for k, s, vals in rows:
        r = [k]
        if engine == "tuple":
            r.append(str(two_by_n.project(s, dims[1])))
        r.append(coords_text(p, s))
        r += [fmt_signed(v) for v in vals]
        out_rows.append(r)
    render = render_csv if args.format == "csv" else render_table
    text = render(header, out_rows)
    if args.format == "table":
        text += f"orbit size {len(states)}\n"
    emit(text, args.output)
    return 0


def cmd_census(args) -> int:
    dims = parse_dims(args)
    engine = pick_engine(args.engine, dims)
    if engine == "tuple":
        report = two_by_n.census(dims[1], workers=args.workers)
        obj = report.to_json()
        reps = {size: str(t) for size, t in report.example_representatives().items()}
        sizes = report.sizes
    else:
        p = product_of_chains(dims)
        fam = dynamics.ics_family(p)
        orbits = dynamics.orbit_decomposition(
            dynamics.step_function(fam, args.impl), fam.members(args.cap), args.workers)
        sizes = dynamics.size_multiset(orbits)
        reps = {}
        for o in orbits:
            reps.setdefault(o.size, coords_text(p, o.representative))
        matches = None
        if len(dims) == 2 and dims[0] == 2:
            matches = sizes == two_by_n.predicted_census(dims[1])
        obj = {
            "n": dims[-1] if len(dims) == 2 else None,
            "dims": dims,
            "engine": "generic",
            "total": sum(o.size for o in orbits),
            "orbits": [{"size": s, "count": c} for s, c in sizes.items()],
            "matches_prediction": matches,
        }
    if args.format == "json":
        emit(render_json(obj), args.output)
    else:
        rows = [(s, c, reps[s]) for s, c in sizes.items()]
        if args.format == "csv":
            emit(render_csv(("size", "count", "example_representative"), rows), args.output)
        else:
            text = render_table(("size", "count", "example_representative"), rows)
            text += f"total {obj['total']}"
            if obj["matches_prediction"] is not None:
                text += f", matches prediction: {'yes' if obj['matches_prediction'] else 'NO'}"
            emit(text + "\n", args.output)
    return 0


def _case_rows(cases):
    return [("PASS" if c.passed else "FAIL", c.id, c.description,
             json.dumps(verify._jsonable(c.expected)), json.dumps(verify._jsonable(c.computed)))
            for c in cases]


def emit_cases(cases, args) -> None:
    if args.format == "json":
        emit(render_json([c.to_json() for c in cases]), args.output)
    elif args.format == "csv":
        emit(render_csv(("status", "id", "description", "expected", "computed"), _case_rows(cases)), args.output)
    else:
        rows = [(status, cid, desc) for status, cid, desc, _, _ in _case_rows(cases)]
        text = render_table(("status", "id", "description"), rows)
        failed = [c for c in cases if not c.passed]
        for c in failed:
            text += f"FAIL {c.id}: expected {verify._jsonable(c.expected)}, computed {verify._jsonable(c.computed)}\n"
        text += f"{len(cases) - len(failed)}/{len(cases)} cases pass\n"
        emit(text, args.output)


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    all_cases = []
    for name in names:
        cases = verify.SUITES[name](workers=args.workers)
        verify.persist(cases, name, args.results_dir)
        all_cases += cases
    emit_cases(all_cases, args)
    return 0 if all(c.passed for c in all_cases if c.assertive) else 1


def cmd_homomesy(args) -> int:
    dims = parse_dims(args)
    stat = dynamics.STATISTICS[STAT_ALIASES[args.stat]]
    if args.family == "ideals":
        fam = dynamics.ideal_family(product_of_chains(dims))
        report = dynamics.homomesy_check(fam, stat, args.impl, args.cap, args.workers)
    else:
        engine = pick_engine(args.engine, dims)
        if engine == "tuple":
            report = verify.tuple_homomesy(dims[1], stat.name)
        else:
            fam = dynamics.ics_family(product_of_chains(dims))
            report = dynamics.homomesy_check(fam, stat, args.impl, args.cap, args.workers)
    if args.format == "json":
        emit(render_json({"dims": dims, "family": args.family, **report.to_json()}), args.output)
    else:
        grouped: dict[tuple[int, str], int] = {}
        for size, avg in report.per_orbit:
            key = (size, str(avg))
            grouped[key] = grouped.get(key, 0) + 1
        rows = [(size, avg, count) for (size, avg), count in sorted(grouped.items())]
        render = render_csv if args.format == "csv" else render_table
        text = render(("orbit_size", "average", "orbits"), rows)
        if args.format == "table":
            text += f"global average {report.global_average}, total {report.total}: {report.verdict}\n"
        emit(text, args.output)
    return 0


def cmd_explore(args) -> int:
    n_range = range(args.n_min, args.n_max + 1)
    if args.kind == "orbit-fraction":
        samples = verify.explore_orbit_fraction(args.m, n_range, args.budget, args.cap)
        monotone = verify.is_monotone(samples)
        if args.format == "json":
            emit(render_json({"samples": [s.to_json() for s in samples], "monotone": monotone}), args.output)
        else:
            rows = [(s.m, s.n, s.total_ics, s.in_target_orbits, f"{float(s.ratio):.4f}",
                     s.good_ics_count, s.good_ics_found, s.good_in_target) for s in samples]
            header = ("m", "n", "total_ics", "in_target", "ratio", "good_formula", "good_found", "good_in_target")
            render = render_csv if args.format == "csv" else render_table
            text = render(header, rows)
            if args.format == "table":
                text += f"ratio non-decreasing over the sample: {'yes' if monotone else 'no'}\n"
            emit(text, args.output)
        return 0
    cases = verify.explore_max_minus_min(args.m, n_range, args.cap, args.budget)
    verify.persist(cases, "explore", args.results_dir)
    emit_cases(cases, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icsrow", description="Rowmotion on interval-closed sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, poset=True, engine=True):
        if poset:
            sp.add_argument("--m", type=int, help="length of the first chain")
            sp.add_argument("--n", type=int, help="length of the second chain")
            sp.add_argument("--dims", help="chain lengths, e.g. 2,2,2")
        if engine:
            sp.add_argument("--engine", choices=("generic", "tuple", "auto"), default="auto")
            sp.add_argument("--impl", choices=dynamics.IMPLEMENTATIONS, default="simplified")
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--cap", type=int, default=convex.DEFAULT_CAP,
                        help="largest poset the generic engine enumerates")

    sp = sub.add_parser("enumerate", help="list interval-closed sets")
    common(sp)
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("orbit", help="trace one rowmotion orbit")
    common(sp)
    sp.add_argument("--start", required=True,
                    help='start set: "b1,i1,a1:b2,i2,a2" (E for an empty side), JSON coordinates, empty or full')
    sp.add_argument("--trace", action="append", choices=sorted(STAT_ALIASES), help="statistic column")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("census", help="orbit sizes of rowmotion")
    common(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, poset=False, engine=False)
    sp.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    sp.add_argument("--results-dir", help=f"defaults to ${verify.RESULTS_ENV} or ./results")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("homomesy", help="orbit averages of a statistic")
    common(sp)
    sp.add_argument("--stat", choices=sorted(STAT_ALIASES), default="sc")
    sp.add_argument("--family", choices=("ics", "ideals"), default="ics")
    sp.set_defaults(func=cmd_homomesy)

    sp = sub.add_parser("explore", help="sample open questions (nothing is asserted)")
    common(sp, poset=False, engine=False)
    sp.add_argument("--kind", choices=("orbit-fraction", "max-minus-min"), default="orbit-fraction")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--budget", type=int, default=200_000, help="largest family size to process")
    sp.add_argument("--results-dir", help=f"defaults to ${verify.RESULTS_ENV} or ./results")
    sp.set_defaults(func=cmd_explore)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
