"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 when a
search report contains a cell that ran out of budget.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .counting import (
    DegenerateDenominator,
    Infeasible,
    Signature,
    UnsupportedF1,
    feasibility_check,
    total_faces,
    vertex_count,
)
from .families import FamilyId, ParameterTooSmall, PlatonicId, generate_family, generate_platonic
from .formats import (
    PlanarCodeError,
    dumps_report,
    export_dot,
    read_planar_code,
    report_document,
    write_planar_code,
)
from .planar_map import canonical_code, degree_sequence, face_vector, genus
from .search import (
    DEFAULT_BUDGET_NODES,
    DEFAULT_BUDGET_SECS,
    SearchTask,
    check_conjecture_equal_degrees,
    default_threads,
    enumerate_maps,
    verify_theorem_one_disparate,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _platonic(text: str) -> PlatonicId:
    try:
        return PlatonicId[text.strip().upper()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown solid {text!r}") from None


def _family(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected k,d2 got {text!r}")
    return vals


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected on or off")
    return text == "on"


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET_NODES)
    p.add_argument("--budget-secs", type=float, default=DEFAULT_BUDGET_SECS)
    p.add_argument("--lemma3-pruning", type=_on_off, default=False, metavar="on|off")
    p.add_argument("--threads", type=int, default=None, help="default: $NEARPLAT_THREADS or 1")
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nearplat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="emit a Platonic map or family member as planar_code")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--family", type=_family)
    which.add_argument("--platonic", type=_platonic)
    g.add_argument("--d", type=int)
    g.add_argument("--out")

    c = sub.add_parser("classify", help="print the signature of every map in a planar_code file")
    c.add_argument("--in", dest="infile", help="default: stdin")

    f = sub.add_parser("feasible", help="check the counting identities for a signature")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--d2", type=int, required=True)
    f.add_argument("--f1", type=int, required=True)
    f.add_argument("--d1", type=int, required=True)
    f.add_argument("--v", type=int, help="vertex count (default: the one Euler forces)")

    s = sub.add_parser("search", help="enumerate maps with prescribed faces")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d2", type=int, required=True)
    s.add_argument("--f1", type=int, required=True)
    s.add_argument("--d1", type=_int_list, help="allowed disparate degrees, comma separated")
    s.add_argument("--vmax", type=int, required=True)
    s.add_argument("--vmin", type=int, default=1)
    _add_search_flags(s)

    t = sub.add_parser("verify-theorem1", help="search all single-disparate-face cells")
    t.add_argument("--vmax", type=int, help="one bound for every pair (default: per-pair bounds)")
    _add_search_flags(t)

    q = sub.add_parser("check-conjecture1", help="look for unequal pairs of disparate faces")
    q.add_argument("--vmax", type=int, required=True)
    q.add_argument("--pair", type=_pair, action="append", help="k,d2 (repeatable; default all five)")
    _add_search_flags(q)

    x = sub.add_parser("export-dot", help="convert planar_code to DOT")
    x.add_argument("--in", dest="infile", help="default: stdin")
    x.add_argument("--no-faces", action="store_true")
    return parser


def _read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(data: bytes | str, path: str | None) -> None:
    raw = data.encode() if isinstance(data, str) else data
    if path is None or path == "-":
        sys.stdout.buffer.write(raw)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(raw)


def _platonic_lookup() -> dict[bytes, str]:
    return {canonical_code(generate_platonic(p)): p.name.lower() for p in PlatonicId}


def cmd_generate(args) -> int:
    if args.family is not None:
        if args.d is None:
            raise UsageError("generate --family needs --d")
        pm = generate_family(args.family, args.d)
    else:
        pm = generate_platonic(args.platonic)
    _write_output(write_planar_code([pm]), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    maps = read_planar_code(_read_input(args.infile))
    solids = _platonic_lookup()
    for pm in maps:
        degs = degree_sequence(pm)
        g = genus(pm)
        if len(degs) != 1:
            print(f"irregular (vertex degrees {dict(sorted(degs.items()))}), genus {g}")
            continue
        (k,) = degs
        line = str(Signature(k, face_vector(pm)))
        notes = []
        if g:
            notes.append(f"genus {g}")
        name = solids.get(canonical_code(pm))
        if name:
            notes.append(f"isomorphic to the {name}")
        print(line + ("  # " + "; ".join(notes) if notes else ""))
    return EXIT_OK


def cmd_feasible(args) -> int:
    k, d2, f1, d1 = args.k, args.d2, args.f1, args.d1
    if d1 == d2:
        raise UsageError("--d1 must differ from --d2")
    try:
        forced = vertex_count(k, d2, f1, d1)
    except DegenerateDenominator:
        forced = None
    v = args.v if args.v is not None else forced
    print(f"vertex count forced by Euler: {forced if forced is not None else 'none'}")
    if v is None or Fraction(v).denominator != 1:
        identity = "one-disparate vertex count non-integral" if f1 == 1 else "vertex count non-integral"
        print(Infeasible(identity, str(v)))
        return EXIT_OK
    v = int(v)
    if v < 1:
        print(Infeasible("vertex count non-positive", str(v)))
        return EXIT_OK
    f = total_faces(k, v, f1, d1, d2)
    if f.denominator != 1 or f < f1:
        print(Infeasible("face count non-integral" if f.denominator != 1 else "face count", str(f)))
        return EXIT_OK
    sig = Signature(k, {d1: f1, d2: int(f) - f1})
    print(f"{sig} on {v} vertices: {feasibility_check(sig, v, d2)}")
    return EXIT_OK


def _emit_report(kind, reports, summary, elapsed, out) -> int:
    doc = report_document(kind, reports, summary, elapsed)
    _write_output(dumps_report(doc), out)
    return EXIT_OK if doc["complete"] else EXIT_UNKNOWN


def _threads(args) -> int:
    return args.threads if args.threads is not None else default_threads()


def cmd_search(args) -> int:
    try:
        task = SearchTask(
            args.k, args.d2, f1=args.f1, d1=args.d1, v_max=args.vmax, v_min=args.vmin,
            lemma3_pruning=args.lemma3_pruning,
            budget_nodes=args.budget_nodes, budget_secs=args.budget_secs,
        )
    except (ValueError, UnsupportedF1) as exc:
        raise UsageError(str(exc)) from exc
    t0 = time.monotonic()
    rep = enumerate_maps(task, _threads(args))
    summary = {"pruning": rep.pruning_stats()}
    return _emit_report("search", [rep], summary, time.monotonic() - t0, args.out)


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    tr = verify_theorem_one_disparate(
        args.vmax,
        lemma3_pruning=args.lemma3_pruning,
        budget_nodes=args.budget_nodes,
        budget_secs=args.budget_secs,
        threads=_threads(args),
    )
    summary = {
        "holds_in_range": tr.holds,
        "achieved_bounds": {f"{k},{d2}": b for (k, d2), b in tr.achieved_bounds().items()},
        "digest": tr.digest,
    }
    return _emit_report("verify-theorem1", tr.reports, summary, time.monotonic() - t0, args.out)


def cmd_conjecture(args) -> int:
    if args.lemma3_pruning:
        raise UsageError("chord pruning only applies to single-disparate-face searches")
    pairs = args.pair or [(3, 3), (3, 4), (3, 5), (4, 3), (5, 3)]
    t0 = time.monotonic()
    reports, summary = [], {}
    for k, d2 in pairs:
        try:
            cr = check_conjecture_equal_degrees(
                k, d2, args.vmax, budget_nodes=args.budget_nodes,
                budget_secs=args.budget_secs, threads=_threads(args),
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        reports.append(cr.report)
        summary[f"{k},{d2}"] = {
            "unequal_witnesses": [c.hex() for c, _ in cr.unequal],
            "recovered_families": sorted(
                f"{fid.value}({d})" for fid, d in cr.recovered.values()
            ),
            "unexplained_witnesses": [c.hex() for c, _ in cr.unexplained],
            "holds_in_range": cr.holds,
        }
    return _emit_report("check-conjecture1", reports, summary, time.monotonic() - t0, args.out)


def cmd_export_dot(args) -> int:
    maps = read_planar_code(_read_input(args.infile))
    text = "".join(
        export_dot(pm, face_annotations=not args.no_faces, name=f"G{i}") for i, pm in enumerate(maps)
    )
    _write_output(text, None)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "classify": cmd_classify,
    "feasible": cmd_feasible,
    "search": cmd_search,
    "verify-theorem1": cmd_verify,
    "check-conjecture1": cmd_conjecture,
    "export-dot": cmd_export_dot,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParameterTooSmall as exc:
        print(f"nearplat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PlanarCodeError) as exc:
        print(f"nearplat: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
