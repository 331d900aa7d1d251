"""theta-trees: run checks, enumerate objects and compute symmetric functions.

Exit status is 0 when everything requested passed, 1 if any check failed
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import checks, graphs, macdonald, polyomino, sandpile, shapes, trees
from .checks import DEFAULT_CAPS, CheckReport, UsageError
from .qt import QTRatio
from .symfunc import SymF, basis_element, convert, e, hall, one

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECK_PARAMS = ("n", "j", "m", "alpha", "word", "root", "size", "max_n", "max_size", "max_sum",
                "max_graph", "max_bijection", "samples", "seed")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent cells")
    p.add_argument("--max-degree", type=int, default=DEFAULT_CAPS["degree"])
    p.add_argument("--max-vertices", type=int, default=DEFAULT_CAPS["vertices"])
    p.add_argument("--max-polyomino", type=int, default=DEFAULT_CAPS["polyomino"], help="cap on m+n")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in reports")
    p.add_argument("--plot-dir", type=Path, help="write PNG figures here")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="theta-trees", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    chk = sub.add_parser("check", parents=[common], help="run a named check (or 'all')")
    chk.add_argument("name", choices=checks.check_names() + ["all"])
    for key in CHECK_PARAMS:
        chk.add_argument("--" + key.replace("_", "-"), dest=key)

    en = sub.add_parser("enumerate", parents=[common], help="stream objects as JSON lines")
    en.add_argument("kind", choices=("trees", "polyominoes", "rst", "syt"))
    en.add_argument("--alpha")
    en.add_argument("--content")
    en.add_argument("--root-zero", action="store_true", help="trees with an extra root labelled 0")
    en.add_argument("--shape")
    en.add_argument("--m", type=int)
    en.add_argument("--n", type=int)
    en.add_argument("--standard", action="store_true")
    en.add_argument("--output", type=Path)

    cp = sub.add_parser("compute", parents=[common], help="print a single object")
    cp.add_argument("kind", choices=("theta", "macdonald", "tutte", "ru", "aseries"))
    cp.add_argument("--lambda", dest="lam")
    cp.add_argument("--t1", action="store_true", help="specialise t = 1")
    cp.add_argument("--against", help="pair with every element of this basis (h, e, m, s, p)")
    cp.add_argument("--mu")
    cp.add_argument("--basis", default="m")
    cp.add_argument("--word")
    cp.add_argument("--graph", help="graph JSON")
    cp.add_argument("--n", type=int)
    return parser


def _caps(args) -> dict:
    caps = {"degree": args.max_degree, "vertices": args.max_vertices, "polyomino": args.max_polyomino}
    for key, value in caps.items():
        if value > DEFAULT_CAPS[key]:
            print(f"warning: {key} cap raised to {value}; runtimes grow quickly past {DEFAULT_CAPS[key]}", file=sys.stderr)
    return caps


def _parts(text: str | None, what: str) -> tuple[int, ...]:
    if not text:
        raise UsageError(f"--{what} is required")
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--{what} expects comma-separated integers, got {text!r}") from None
    if any(p < 0 for p in parts):
        raise UsageError(f"--{what} parts must be nonnegative")
    return parts


# ---------------------------------------------------------------------------
# output


def _emit_reports(reports: list[CheckReport], fmt: str, timing: bool, out) -> None:
    if fmt == "json":
        json.dump({"checks": [r.to_json(timing) for r in reports]}, out, indent=1, sort_keys=False)
        out.write("\n")
        return
    if fmt == "csv":
        fields = ["name", "parameters", "status", "lhs", "rhs", "note"] + (["elapsed_ms"] if timing else [])
        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in reports:
            row = r.to_json(timing)
            row["parameters"] = json.dumps(row["parameters"], sort_keys=True)
            row.setdefault("note", "")
            w.writerow(row)
        return
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.parameters.items())
        line = f"{r.status.upper():4} {r.name} {params}".rstrip()
        if timing and r.elapsed_ms is not None:
            line += f" ({r.elapsed_ms:.0f} ms)"
        out.write(line + "\n")
        if r.status != "ok" or len(r.lhs) <= 100:
            out.write(f"     lhs: {r.lhs}\n     rhs: {r.rhs}\n")
        if r.note:
            out.write(f"     note: {r.note}\n")


def _plot_reports(reports: list[CheckReport], plot_dir: Path) -> None:
    from . import plotting

    for k, r in enumerate(reports):
        if r.series is None:
            continue
        tag = "_".join(f"{key}{val}" for key, val in r.parameters.items()).replace(",", "-")
        title = f"{r.name} {tag} ({r.status})"
        plotting.plot_coefficients(title, r.series["lhs"], r.series["rhs"], plot_dir / f"{r.name}_{k:03d}_{tag}.png")
    if any(r.name in ("examples", "polyomino") for r in reports):
        plotting.plot_polyomino(checks.sandpile_sample_polyomino(), plot_dir / "polyomino_bounce.png")
    if any(r.name in ("examples", "theta-t1", "conjecture-theta") for r in reports):
        plotting.plot_tree(checks.sample_tree(), plot_dir / "tiered_tree.png")


# ---------------------------------------------------------------------------
# commands


def _cmd_check(args, out) -> int:
    caps = _caps(args)
    params = {k: getattr(args, k) for k in CHECK_PARAMS if getattr(args, k) is not None}
    names = checks.check_names() if args.name == "all" else [args.name]
    reports: list[CheckReport] = []
    for name in names:
        reports.extend(checks.run_check(name, params if args.name != "all" else {}, caps, args.jobs))
    _emit_reports(reports, args.format, args.timing, out)
    if args.plot_dir:
        _plot_reports(reports, args.plot_dir)
    return EXIT_OK if all(r.status == "ok" for r in reports) else EXIT_FAIL


def _records(args, caps):
    if args.kind == "trees":
        alpha = _parts(args.alpha, "alpha")
        size = sum(alpha) + (0 if args.root_zero else 1)
        content = _parts(args.content, "content") if args.content else (1,) * size
        if sum(alpha) + 1 > caps["vertices"]:
            raise UsageError(f"trees with {sum(alpha) + 1} vertices exceed the cap {caps['vertices']}")
        if args.root_zero:
            stream = trees.enumerate_rtt_zero(alpha, content)
        else:
            stream = trees.enumerate_rtt(alpha, content)
        for T in stream:
            yield {"tree": T.to_json(), "inv": trees.inv(T), "word": list(trees.reading_word(T))}
    elif args.kind == "polyominoes":
        if args.m is None or args.n is None:
            raise UsageError("--m and --n are required")
        if args.m + args.n > caps["polyomino"]:
            raise UsageError(f"m+n={args.m + args.n} exceeds the cap {caps['polyomino']}")
        content = _parts(args.content, "content") if args.content and not args.standard else None
        for P in polyomino.enumerate_lpp(args.m, args.n, standard=content is None, content=content):
            rec = {"polyomino": P.to_json(), "area": polyomino.area(P)}
            if P.is_standard():
                G, c = sandpile.sandpile_encode(P)
                rec["level"] = sandpile.level(G, c)
                rec["grains"] = list(c.grains)
            yield rec
    elif args.kind == "rst":
        alpha = _parts(args.alpha, "alpha")
        for C in shapes.rst1_of(shapes.Composition(alpha)):
            yield {"rows": [list(r) for r in C.rows], "phi": [list(r) for r in shapes.phi(C).rows]}
    else:
        lam = shapes.Partition(_parts(args.shape or args.alpha, "shape"))
        for T in shapes.syt_of(lam):
            yield {"rows": [list(r) for r in T.rows], "L": shapes.total_L(T), "fiber": shapes.phi_fiber_size(T)}


def _cmd_enumerate(args, out) -> int:
    caps = _caps(args)
    sink = open(args.output, "w") if args.output else out
    try:
        count = 0
        for rec in _records(args, caps):
            sink.write(json.dumps(rec, separators=(",", ":")) + "\n")
            count += 1
    finally:
        if args.output:
            sink.close()
    if args.plot_dir and args.kind == "polyominoes" and args.m and args.n:
        from . import plotting

        for k, P in enumerate(polyomino.enumerate_lpp(args.m, args.n)):
            plotting.plot_polyomino(P, args.plot_dir / f"polyomino_{k:04d}.png")
            if k >= 19:
                break
    return EXIT_OK


def _pairing_table(F: SymF, basis: str) -> list[tuple[str, QTRatio]]:
    rows = []
    for mu in shapes.partitions(F.degree):
        rows.append((f"{basis}{list(mu)}".replace(" ", ""), hall(F, basis_element(basis, mu))))
    return rows


def _cmd_compute(args, out) -> int:
    caps = _caps(args)
    if args.kind == "theta":
        lam = shapes.Partition(sorted(_parts(args.lam, "lambda"), reverse=True))
        if lam.size + 1 > caps["degree"]:
            raise UsageError(f"degree {lam.size + 1} exceeds the cap {caps['degree']}")
        F = macdonald.theta(basis_element("e", lam), e(1)) if lam.size else convert(e(1), "m")
        if args.t1:
            F = F.specialize(t=1)
        if args.against:
            rows = _pairing_table(F, args.against)
            if args.format == "json":
                json.dump({label: v.render() for label, v in rows}, out, indent=1)
                out.write("\n")
            else:
                for label, v in rows:
                    out.write(f"<F, {label}> = {v.render()}\n")
            return EXIT_OK
        text = convert(F, args.basis).render()
    elif args.kind == "macdonald":
        mu = shapes.Partition(sorted(_parts(args.mu, "mu"), reverse=True))
        if mu.size > caps["degree"]:
            raise UsageError(f"degree {mu.size} exceeds the cap {caps['degree']}")
        text = convert(macdonald.htilde(mu), args.basis).render() if mu.size else one().render()
    elif args.kind == "aseries":
        if not args.n or args.n < 1:
            raise UsageError("--n must be a positive integer")
        if args.n > caps["degree"]:
            raise UsageError(f"degree {args.n} exceeds the cap {caps['degree']}")
        text = convert(macdonald.a_series(args.n), args.basis).render()
    elif args.kind == "ru":
        u = _word(args)
        text = graphs.r_poly(u).render()
    else:
        if args.graph:
            try:
                G = graphs.Graph.from_json(json.loads(args.graph))
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"bad graph JSON: {exc}") from None
        else:
            G = graphs.inversion_graph(_word(args))
        if G.n > caps["vertices"] + 2:
            raise UsageError(f"{G.n} vertices exceed the cap")
        text = graphs.render_tutte(graphs.tutte(G))
    if args.format == "json":
        json.dump({"kind": args.kind, "value": text}, out)
        out.write("\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def _word(args) -> tuple[int, ...]:
    if not args.word:
        raise UsageError("--word is required")
    try:
        u = graphs.parse_word(args.word)
    except ValueError:
        raise UsageError(f"bad word {args.word!r}") from None
    if len(u) > DEFAULT_CAPS["vertices"] + 2:
        raise UsageError("word too long")
    return u


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        handler = {"check": _cmd_check, "enumerate": _cmd_enumerate, "compute": _cmd_compute}[args.command]
        return handler(args, out)
    except UsageError as exc:
        print(f"theta-trees: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: list[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (used by tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
