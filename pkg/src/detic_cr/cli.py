"""Command-line front end: ``detic-cr <subcommand>``.

Exit status is 0 on success, 1 for usage, parameter or regime errors, and 2
when an internal consistency check fails (closed form and rank calculus
disagree, a constructed scheme does not decode, an oracle point lies outside
the outer bound).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, entropy, oracle, regions, schemes
from .channel import GAIN_NAMES, ChannelParams, all_params, parse_params, swap_users
from .exceptions import DeticError, ParameterError

MAX_SWEEP_GAIN = 6

BOUND_DESCRIPTIONS = {
    "r1": "single-user R1",
    "r2": "single-user R2",
    "sum_align1": "sum rate, user-1 alignment",
    "sum_align2": "sum rate, user-2 alignment",
    "sum_v": "sum rate, interference genie",
    "2r1_r2": "weighted 2R1+R2",
    "r1_2r2": "weighted R1+2R2",
    "sum_y2": "sum rate, H(Y2) + H(Y1|Y2,X2)",
    "sum_y1": "sum rate, H(Y1) + H(Y2|Y1,X1)",
}


class UsageError(DeticError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- parameter loading ----------------------------------------------------------


def _load_toml(path: Path) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ParameterError(f"invalid TOML in {path}: {exc}") from exc


def params_from_mapping(data: dict) -> ChannelParams:
    """Gains from a mapping with the six named keys and/or a ``params`` list.

    When both are present, every named key must agree with the list.
    """
    values: dict[str, int] = {}
    if "params" in data:
        raw = data["params"]
        p = parse_params(raw) if isinstance(raw, str) else ChannelParams(*raw) if len(raw) == 6 else None
        if p is None:
            raise ParameterError("'params' must hold six gains")
        values = p.as_dict()
    for name in GAIN_NAMES:
        if name in data:
            if name in values and values[name] != data[name]:
                raise ParameterError(f"conflicting values for {name}: params list has {values[name]}, key has {data[name]!r}")
            values[name] = data[name]
    missing = [n for n in GAIN_NAMES if n not in values]
    if missing:
        raise ParameterError(f"missing gains: {', '.join(missing)}")
    return ChannelParams(**{n: values[n] for n in GAIN_NAMES})


def load_params(text: str) -> ChannelParams:
    """``--params`` value: a comma list, or the path of a TOML file."""
    if "," in text:
        return parse_params(text)
    path = Path(text)
    if not path.exists():
        raise ParameterError(f"--params is neither a comma list nor an existing file: {text!r}")
    return params_from_mapping(_load_toml(path))


# -- formatting -------------------------------------------------------------------


def _fmt_point(pt) -> str:
    return f"({regions.fmt_fraction(Fraction(pt[0]))},{regions.fmt_fraction(Fraction(pt[1]))})"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def region_document(p: ChannelParams) -> dict:
    """JSON document emitted by ``region --format json``."""
    doc = regions.to_dict(bounds.outer_bound_closed(p), p.as_dict())
    doc["bounds"] = bounds.closed_form_values(p)
    doc["regimes"] = bounds.applicable_regimes(p)
    doc["capacity"] = {name: regions.to_dict(r)["vertices"] for name, r in bounds.capacity_regions(p).items()}
    return doc


def region_csv(region: regions.RateRegion) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["R1", "R2"])
    for x, y in region.vertices:
        w.writerow([regions.fmt_fraction(x), regions.fmt_fraction(y)])
    return buf.getvalue()


def region_text(p: ChannelParams, cmp: bounds.BoundComparison) -> str:
    closed = bounds.outer_bound_closed(p)
    lines = [f"params {p}", "closed-form bounds:"]
    for label, value in cmp.closed.items():
        shape = regions.SHAPE_NAMES[bounds.CLOSED_SHAPES[label]]
        lines.append(f"  {label:<11} {shape} <= {value:<4} {BOUND_DESCRIPTIONS[label]}")
    lines.append("rank-calculus bounds:")
    for label, value in cmp.rank.items():
        shape = regions.SHAPE_NAMES[bounds.RANK_SHAPES[label]]
        lines.append(f"  {label:<11} {shape} <= {value:<4} {BOUND_DESCRIPTIONS.get(label, '')}".rstrip())
    lines.append("outer bound: " + ", ".join(str(q) for q in closed.inequalities))
    lines.append("vertices: " + " ".join(_fmt_point(v) for v in closed.vertices))
    thm1 = bounds.deterministic_thm1(p)
    lines.append("general deterministic bound vertices: " + " ".join(_fmt_point(v) for v in thm1.vertices))
    for name, r in bounds.capacity_regions(p).items():
        lines.append(f"capacity ({name}): " + " ".join(_fmt_point(v) for v in r.vertices))
    regimes = bounds.applicable_regimes(p)
    lines.append("regimes: " + ("; ".join(regimes) if regimes else "none with a known capacity"))
    lines.append("closed form and rank calculus " + ("agree" if cmp.ok else "DISAGREE"))
    return "\n".join(lines) + "\n"


def _f3(x) -> str:
    return f"{float(x):.3f}"


def region_svg(region: regions.RateRegion, title: str = "") -> str:
    """Static 600x600 plot of a region with integer ticks and labeled corners."""
    size, margin = 600, 60
    span = max([1] + [int(-(-v // 1)) for pt in region.vertices for v in pt])
    step = max(1, -(-span // 12))
    scale = (size - 2 * margin) / span

    def sx(x):
        return _f3(margin + float(x) * scale)

    def sy(y):
        return _f3(size - margin - float(y) * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">',
           f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>']
    if title:
        out.append(f'<text x="{size // 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>')
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(span)}" y2="{sy(0)}" stroke="black"/>')
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(span)}" stroke="black"/>')
    for t in range(0, span + 1, step):
        out.append(f'<line x1="{sx(t)}" y1="{sy(0)}" x2="{sx(t)}" y2="{_f3(size - margin + 5)}" stroke="black"/>')
        out.append(f'<text x="{sx(t)}" y="{_f3(size - margin + 20)}" text-anchor="middle" font-family="sans-serif" font-size="12">{t}</text>')
        out.append(f'<line x1="{_f3(margin - 5)}" y1="{sy(t)}" x2="{sx(0)}" y2="{sy(t)}" stroke="black"/>')
        out.append(f'<text x="{_f3(margin - 10)}" y="{_f3(size - margin - t * scale + 4)}" text-anchor="end" font-family="sans-serif" font-size="12">{t}</text>')
    out.append(f'<text x="{_f3(size - margin / 2)}" y="{sy(0)}" font-family="sans-serif" font-size="14">R1</text>')
    out.append(f'<text x="{sx(0)}" y="{_f3(margin / 2)}" text-anchor="middle" font-family="sans-serif" font-size="14">R2</text>')
    pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in region.vertices)
    out.append(f'<polygon points="{pts}" fill="#7aa6d6" fill-opacity="0.5" stroke="#1f4e89" stroke-width="2"/>')
    for x, y in region.vertices:
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="4" fill="#1f4e89"/>')
        out.append(f'<text x="{_f3(margin + float(x) * scale + 6)}" y="{_f3(size - margin - float(y) * scale - 6)}" '
                   f'font-family="sans-serif" font-size="12">{_fmt_point((x, y))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _breakdown(cmp: bounds.BoundComparison) -> str:
    lines = [f"closed form and rank calculus disagree for {cmp.params}"]
    for label in sorted(set(cmp.closed) | set(cmp.rank)):
        lines.append(f"  {label:<11} closed={cmp.closed.get(label, '-')} rank={cmp.rank.get(label, '-')}")
    for shape in sorted(cmp.closed_per_shape):
        lines.append(f"  tightest {regions.SHAPE_NAMES[shape]}: closed={cmp.closed_per_shape[shape]} "
                     f"rank={cmp.rank_per_shape.get(shape)}")
    return "\n".join(lines) + "\n"


# -- subcommands ---------------------------------------------------------------------


def cmd_region(args, out) -> int:
    p = load_params(args.params)
    cmp = bounds.compare_routes(p)
    closed = bounds.outer_bound_closed(p)
    if args.format == "json":
        out.write(_dump(region_document(p)))
    elif args.format == "csv":
        out.write(region_csv(closed))
    elif args.format == "svg":
        out.write(region_svg(closed, title=f"outer bound, gains {p}"))
    else:
        out.write(region_text(p, cmp))
    if not cmp.ok:
        sys.stderr.write(_breakdown(cmp))
        return 2
    return 0


def _build_scheme(p: ChannelParams, example: str, corner: str | None) -> schemes.LinearScheme:
    if example in ("I", "1"):
        return schemes.example1_scheme(p)
    if corner is None:
        raise UsageError("--example II needs --corner (A/1 or B/2)")
    return schemes.example2_scheme(p, corner)


def cmd_scheme(args, out) -> int:
    p = load_params(args.params)
    s = _build_scheme(p, args.example.upper(), args.corner)
    report = schemes.decode_check(p, s)
    closed = bounds.outer_bound_closed(p)
    achieved = (Fraction(s.k1), Fraction(s.k2))
    doc = {
        "params": p.as_dict(),
        "scheme": schemes.scheme_to_dict(s),
        "label": s.label,
        "notes": list(s.notes),
        "report": report.to_dict(),
        "achieved": [s.k1, s.k2],
        "is_region_corner": achieved in closed.vertices,
    }
    ok = report.decodable
    if args.verify:
        if s.k1 + s.k2 <= schemes.DEFAULT_BRUTE_FORCE_CAP:
            brute = schemes.brute_force_decode_check(p, s)
            doc["brute_force"] = brute.to_dict()
            ok = ok and brute.verdict() == report.verdict()
        else:
            doc["brute_force"] = None
    if args.simulate:
        sim = schemes.simulate_scheme(p, s, trials=args.simulate, seed=args.seed)
        doc["simulation"] = sim.to_dict()
        ok = ok and sim.ok
    if args.format == "json":
        out.write(_dump(doc))
    else:
        out.write(f"scheme: {s.label}\n")
        for name in ("A1", "A2", "Ac1", "Ac2"):
            rows = doc["scheme"][name]
            out.write(f"{name} ({len(rows)}x{getattr(s, 'k1' if name.endswith('1') else 'k2')}):\n")
            for row in rows:
                out.write(f"  {row or '.'}\n")
        out.write(f"achieved (R1, R2) = ({s.k1}, {s.k2})\n")
        out.write(f"receiver 1 decodes: {report.rx1_ok}; receiver 2 decodes: {report.rx2_ok}\n")
        out.write(f"corner of the outer bound: {doc['is_region_corner']}\n")
        if "brute_force" in doc:
            bf = doc["brute_force"]
            out.write("brute force: " + ("skipped (too many message bits)" if bf is None else
                                          f"rx1 {bf['rx1_ok']}, rx2 {bf['rx2_ok']}") + "\n")
        if "simulation" in doc:
            sim = doc["simulation"]
            out.write(f"simulation: {sim['trials']} trials, errors rx1 {sim['errors_rx1']}, rx2 {sim['errors_rx2']}\n")
        for note in s.notes:
            out.write(f"note: {note}\n")
    return 0 if ok else 2


def _check_closed_vs_rank(p):
    return bounds.compare_routes(p).ok, ""


def _check_mirror(p):
    return regions.equals(regions.mirror(bounds.outer_bound_closed(p)), bounds.outer_bound_closed(swap_users(p))), ""


def _check_redundancy(p):
    if p.n12 or p.n21:
        return None
    rep = bounds.redundancy_identities(p)
    return rep.ok, ""


def _check_general_bound(p):
    return regions.is_subset(bounds.outer_bound_closed(p), bounds.deterministic_thm1(p)), ""


def _check_schemes(p):
    if not bounds.in_mixed_regime(p) and (p.n12 or p.n21):
        return None
    details = []
    for name, s in schemes.constructed_schemes(p):
        rep = schemes.decode_check(p, s)
        if not rep.decodable:
            details.append(f"{name} undecodable")
    if not details and p.n12 == 0 and p.n21 == 0:
        cap = bounds.capacity_no_interference(p)
        for corner in ("A", "B"):
            s = schemes.example2_scheme(p, corner)
            if s.rates != schemes.region_corner(cap, corner):
                details.append(f"example2-{corner} misses corner")
    return not details, "; ".join(details)


def _check_degenerate(p):
    gap = bounds.degenerate_branch_gap(p)
    parts = [f"{k}={v}" for k, v in gap.items() if v is not None]
    if not parts:
        return None
    return "info", " ".join(parts)


SWEEP_CHECKS = {
    "closed-vs-rank": (_check_closed_vs_rank, True),
    "mirror-symmetry": (_check_mirror, True),
    "redundancy": (_check_redundancy, True),
    "general-bound-superset": (_check_general_bound, True),
    "schemes": (_check_schemes, True),
    "degenerate-branch": (_check_degenerate, False),
}


def cmd_sweep(args, out) -> int:
    if not 0 <= args.max_gain <= MAX_SWEEP_GAIN:
        raise UsageError(f"--max-gain must lie in [0, {MAX_SWEEP_GAIN}]")
    checks = args.check or ["closed-vs-rank"]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(list(GAIN_NAMES) + ["check", "pass", "detail"])
    failed = 0
    for p in all_params(args.max_gain):
        for name in checks:
            fn, mandatory = SWEEP_CHECKS[name]
            res = fn(p)
            if res is None:
                continue
            verdict, detail = res
            if verdict == "info":
                cell = "info"
            else:
                cell = "1" if verdict else "0"
                if mandatory and not verdict:
                    failed += 1
            w.writerow(list(p.as_tuple()) + [name, cell, detail])
    if failed:
        sys.stderr.write(f"{failed} check(s) failed\n")
        return 2
    return 0


def cmd_oracle(args, out) -> int:
    p = load_params(args.params)
    result = oracle.search_linear_schemes(p, args.kmax, args.budget)
    gap = oracle.compare_to_bound(result, bounds.outer_bound_closed(p))
    doc = result.to_dict()
    doc["gap"] = gap.to_dict()
    if args.format == "json":
        out.write(_dump(doc))
    else:
        out.write(f"params {p}, kmax {args.kmax}\n")
        out.write("achievable: " + " ".join(str(tuple(x)) for x in doc["achievable"]) + "\n")
        out.write("pareto-optimal: " + " ".join(map(str, result.pareto())) + "\n")
        for line in gap.lines():
            out.write(line + "\n")
    if not gap.sound:
        sys.stderr.write("SOUNDNESS VIOLATION: oracle point outside the outer bound\n")
        return 2
    return 0


def _read_region(path: str) -> regions.RateRegion:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return regions.loads(text)


def compare_regions(a: regions.RateRegion, b: regions.RateRegion) -> tuple[str, dict]:
    """Relation of ``a`` to ``b`` plus witness vertices for any strict part."""
    wa = regions.witness_outside(a, b)
    wb = regions.witness_outside(b, a)
    if wa is None and wb is None:
        rel = "equal"
    elif wa is None:
        rel = "subset"
    elif wb is None:
        rel = "superset"
    else:
        rel = "incomparable"
    witnesses = {}
    if wa is not None:
        witnesses["first_not_in_second"] = _fmt_point(wa)
    if wb is not None:
        witnesses["second_not_in_first"] = _fmt_point(wb)
    return rel, witnesses


def cmd_compare(args, out) -> int:
    a, b = _read_region(args.first), _read_region(args.second)
    rel, witnesses = compare_regions(a, b)
    if args.format == "json":
        out.write(_dump({"relation": rel, "witnesses": witnesses}))
    else:
        out.write(rel + "\n")
        for k, v in witnesses.items():
            out.write(f"{k.replace('_', ' ')}: {v}\n")
    return 0


def cmd_entropy(args, out) -> int:
    p = load_params(args.params)
    values = {t: entropy.evaluate_term(p, t) for t in args.term}
    if args.format == "json":
        out.write(_dump({"params": p.as_dict(), "terms": values}))
    else:
        for t, v in values.items():
            out.write(f"{t} = {v}\n")
    return 0


# -- wiring --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detic-cr", description="Rate regions and linear schemes for the deterministic "
                                                  "interference channel with a cognitive relay.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    params_help = "gains n11,n12,n21,n22,n1c,n2c as a comma list, or a TOML file with the six named keys"

    p = sub.add_parser("region", help="outer bound and any known capacity region")
    p.add_argument("--params", required=True, help=params_help)
    p.add_argument("--format", choices=("json", "csv", "svg", "text"), default="text")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("scheme", help="build and verify an explicit linear scheme")
    p.add_argument("--params", required=True, help=params_help)
    p.add_argument("--example", required=True, choices=("I", "II", "1", "2", "i", "ii"),
                   help="I: relay pre-cancellation; II: no-interference corner schemes")
    p.add_argument("--corner", choices=("A", "B", "1", "2", "a", "b"),
                   help="for II: A/1 maximizes R1, B/2 maximizes R2")
    p.add_argument("--verify", action="store_true", help="also run the brute-force decodability check")
    p.add_argument("--simulate", type=int, default=0, metavar="N", help="run N random message trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("sweep", help="run checks over every tuple with gains up to a maximum")
    p.add_argument("--max-gain", type=int, required=True)
    p.add_argument("--check", action="append", choices=sorted(SWEEP_CHECKS),
                   help="repeatable; default closed-vs-rank. degenerate-branch is informational")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="exhaustive linear-scheme search on a tiny channel")
    p.add_argument("--params", required=True, help=params_help)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--budget", type=float, default=None, help="time limit in seconds")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="compare two region JSON files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("entropy", help="evaluate rank-calculus terms such as H(Y1|X2)")
    p.add_argument("--params", required=True, help=params_help)
    p.add_argument("--term", action="append", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_entropy)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except DeticError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
