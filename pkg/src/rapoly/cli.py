"""Command-line interface.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input or
usage error.  Floats are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from rapoly import covers, polar, reduction
from rapoly.circuits import admissible, parse_circuit_id, prismatic_circuits, side_profile
from rapoly.errors import InputError, RapError
from rapoly.gluing import composition, double
from rapoly.lobell import build_lobell, recognize_lobell
from rapoly.polyhedron import counts, dumps, isomorphic, load, pentagon_excess, to_document
from rapoly.volumes import lobell_volume


class CommandFailed(Exception):
    """Negative verdict: print the message and exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(2)


def fmt(x: float) -> str:
    return f"{x:.12g}"


def num(x: float) -> float:
    return float(fmt(x))


class Output:
    def __init__(self, as_json: bool, quiet: bool):
        self.as_json = as_json
        self.quiet = quiet

    def emit(self, text: str | None, obj) -> None:
        if self.quiet:
            return
        if self.as_json:
            print(json.dumps(obj, indent=2))
        elif text is not None:
            print(text)


def _write_polyhedron(out: Output, p, path: str | None, summary: str, extra: dict | None = None) -> None:
    doc = to_document(p)
    if path:
        Path(path).write_text(dumps(p))
        out.emit(f"{summary}\nwrote {path}", {"written": path, **(extra or {}), "polyhedron": doc})
    elif out.as_json:
        out.emit(None, {**(extra or {}), "polyhedron": doc})
    else:
        out.emit(dumps(p).rstrip("\n"), None)


def _counts_text(p) -> str:
    v, e, f, hist = counts(p)
    sizes = " ".join(f"{k}:{c}" for k, c in hist.items())
    return f"v={v} e={e} f={f} faces by size {sizes}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args, out):
    p = load(args.file)
    verdict = admissible(p)
    v, e, f, _ = counts(p)
    out.emit(verdict.describe(p), {"counts": [v, e, f], **verdict.to_json(p)})
    return 0 if verdict else 1


def cmd_info(args, out):
    p = load(args.file)
    v, e, f, hist = counts(p)
    verdict = admissible(p)
    n = recognize_lobell(p) if verdict else None
    obj = {
        "name": p.name,
        "counts": [v, e, f],
        "face_sizes": {str(k): c for k, c in hist.items()},
        "trivalent": p.is_trivalent,
        "admissible": bool(verdict),
        "lobell": n,
        "canonical": p.canonical.digest(),
    }
    lines = [_counts_text(p), f"trivalent: {'yes' if p.is_trivalent else 'no'}", verdict.describe(p)]
    if p.is_trivalent:
        k, c = pentagon_excess(p)
        obj["pentagons"] = k
        obj["excess"] = c
        lines.append(f"pentagons: {k} excess 2e-5f: {c}")
    if n is not None:
        lines.append(f"Lobell polyhedron L({n})")
    lines.append(f"canonical: {obj['canonical']}")
    out.emit("\n".join(lines), obj)
    return 0


def cmd_circuits(args, out):
    p = load(args.file)
    found = prismatic_circuits(p, args.k)
    text = [f"{len(found)} prismatic {args.k}-circuit(s)"]
    for c in found:
        pairs = " ".join(f"{u}-{v}" for u, v in c.endpoint_pairs(p))
        text.append(f"  {c.ident}  faces {list(c.faces)}  edges {pairs}")
    out.emit("\n".join(text), {"k": args.k, "circuits": [c.to_json(p) for c in found]})
    return 0


def cmd_profile(args, out):
    p = load(args.file)
    c = parse_circuit_id(p, args.circuit)
    prof = side_profile(p, c)
    text = [f"circuit {c.ident}"]
    for f, (a, b) in zip(c.faces, prof.arcs):
        text.append(f"  face {f}: side 1 arc {a}, side 2 arc {b}")
    text.append(f"flats side 1: {prof.flats(1)} side 2: {prof.flats(2)}")
    text.append(f"roofs side 1: {prof.roofs(1)} side 2: {prof.roofs(2)}")
    out.emit("\n".join(text), prof.to_json())
    return 0


def cmd_lobell(args, out):
    p = build_lobell(args.n)
    _write_polyhedron(out, p, args.output, f"L({args.n}): {_counts_text(p)}")
    return 0


def cmd_recognize(args, out):
    p = load(args.file)
    n = recognize_lobell(p)
    if n is None:
        out.emit("not a Lobell polyhedron", {"lobell": None})
        return 1
    out.emit(f"L({n})", {"lobell": n})
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"range must look like A..B, got {text!r}") from None
    if lo > hi:
        raise InputError(f"empty range {text}")
    return lo, hi


def volume_table(lo: int, hi: int) -> tuple[str, list[dict]]:
    """Two-column layout: first half of the range on the left."""
    ns = list(range(lo, hi + 1))
    vols = {n: lobell_volume(n) for n in ns}
    half = math.ceil(len(ns) / 2)
    left, right = ns[:half], ns[half:]
    width = max(len(fmt(v.value)) for v in vols.values())
    head = f"{'n':>3}  {'vol(L(n))':>{width}}    {'n':>3}  {'vol(L(n))':>{width}}"
    rows = [head]
    for i, n in enumerate(left):
        row = f"{n:>3}  {fmt(vols[n].value):>{width}}"
        if i < len(right):
            m = right[i]
            row += f"    {m:>3}  {fmt(vols[m].value):>{width}}"
        rows.append(row)
    data = [{"n": n, "volume": num(vols[n].value), "error_bound": float(f"{vols[n].error_bound:.3g}")} for n in ns]
    return "\n".join(rows), data


def cmd_lvol(args, out):
    if args.table:
        text, data = volume_table(*_parse_range(args.table))
        out.emit(text, {"table": data})
        return 0
    if args.n is None:
        raise InputError("lvol needs n or --table A..B")
    vol = lobell_volume(args.n)
    out.emit(fmt(vol.value), {"n": args.n, "volume": num(vol.value), "error_bound": float(f"{vol.error_bound:.3g}")})
    return 0


def cmd_compose(args, out):
    p1, p2 = load(args.file1), load(args.file2)
    comp = composition(p1, args.face1, p2, args.face2, args.offset, args.flip)
    p = comp.polyhedron
    extra = {"circuit": comp.circuit.to_json(p)}
    _write_polyhedron(out, p, args.output, f"composition: {_counts_text(p)}\ndistinguished circuit {comp.circuit.ident}", extra)
    return 0


def cmd_double(args, out):
    p = double(load(args.file), args.face)
    _write_polyhedron(out, p, args.output, f"double: {_counts_text(p)}")
    return 0


def cmd_surgery(args, out):
    p = load(args.file)
    if args.force:
        q, verdict = reduction.surgery_report(p, args.edge)
        extra = {"admissible": verdict.to_json(q)}
        _write_polyhedron(out, q, args.output, f"surgery: {_counts_text(q)}\n{verdict.describe(q)}", extra)
        if not args.output and not out.as_json and not out.quiet:
            print(verdict.describe(q), file=sys.stderr)
        return 0 if verdict else 1
    q = reduction.edge_surgery(p, args.edge)
    _write_polyhedron(out, q, args.output, f"surgery: {_counts_text(q)}")
    return 0


def cmd_decompose(args, out):
    p = load(args.file)
    c = parse_circuit_id(p, args.circuit)
    halves = reduction.decompose(p, c)
    docs = [to_document(h) for h in halves]
    if args.output:
        paths = []
        for i, h in enumerate(halves, 1):
            path = f"{args.output}.{i}.json"
            Path(path).write_text(dumps(h))
            paths.append(path)
        text = "\n".join(f"half {i}: {_counts_text(h)} -> {path}" for i, (h, path) in enumerate(zip(halves, paths), 1))
        out.emit(text, {"written": paths, "halves": docs})
    else:
        out.emit(json.dumps({"halves": docs}, indent=2), {"halves": docs})
    return 0


def cmd_reduce(args, out):
    p = load(args.file)
    trace = reduction.reduce(p, args.policy)
    doc = reduction.trace_document(trace)
    if args.trace:
        Path(args.trace).write_text(json.dumps(doc, indent=2) + "\n")
    lines = [f"policy: {trace.policy}"]
    for n, s in enumerate(trace.steps):
        what = f"edge {s.edge}" if s.move == "surgery" else f"circuit {s.circuit.ident}"
        lines.append(f"step {n}: component {s.component} {s.move} {what} -> {list(s.children)}")
    lines.append(f"terminal: {' '.join(f'L({n})' for n in trace.terminal)}")
    lines.append(f"bound: {fmt(trace.bound.value)} (error <= {trace.bound.error_bound:.3g}, chain {trace.chain})")
    if args.trace:
        lines.append(f"wrote {args.trace}")
    out.emit("\n".join(lines), doc)
    return 0


def cmd_bound(args, out):
    try:
        doc = json.loads(Path(args.trace).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read trace {args.trace}: {exc}") from None
    vol = reduction.volume_lower_bound(doc)
    terminal = reduction.replay(doc)
    obj = {"terminal": list(terminal), "bound": num(vol.value), "bound_error": float(f"{vol.error_bound:.3g}"), "replayed": True}
    out.emit(f"{fmt(vol.value)}\nterminal: {' '.join(f'L({n})' for n in terminal)} (replayed)", obj)
    return 0


def cmd_cover(args, out):
    p = load(args.file)
    fc = covers.face_four_coloring(p, args.boundary_face)
    ec = covers.edge_coloring(p, fc)
    pres = covers.presentations(p, fc, args.boundary_face)
    if args.export_presentation:
        chosen = pres.gamma if args.which == "gamma" else pres.g
        Path(args.export_presentation).write_text(chosen.to_text())
    bundle = {
        "face_coloring": fc.to_json(),
        "edge_coloring": ec.to_json(),
        "presentations": {"gamma": pres.gamma.to_json(), "g": pres.g.to_json()},
        "h_certificate": pres.h_spec_json(),
    }
    out.emit(json.dumps(bundle, indent=2), bundle)
    return 0 if pres.certificate_ok else 1


def cmd_polar(args, out):
    p = load(args.file)
    if (args.edge is None) != (args.t is None):
        raise InputError("--edge and --t must be given together")
    report = polar.cone_angles(p, args.edge, args.t)
    obj = report.to_json()
    lines = ["partial Rivin check (cone angles only)", f"{'face':>5} {'size':>5}  {'cone angle':>16}  case"]
    for i, (a, c) in enumerate(zip(report.angles, report.cases)):
        lines.append(f"{i:>5} {p.face_size(i):>5}  {fmt(a):>16}  {c}")
    lines.append(f"all exceed 2pi: {'yes' if report.all_exceed_2pi else 'no'}")
    lines.append(json.dumps(obj))
    out.emit("\n".join(lines), obj)
    return 0 if report.all_exceed_2pi else 1


def cmd_canon(args, out):
    p = load(args.file)
    code = p.canonical
    out.emit(code.digest(), {"digest": code.digest(), "code": list(code.code)})
    return 0


def cmd_iso(args, out):
    p, q = load(args.file1), load(args.file2)
    same = isomorphic(p, q)
    out.emit("isomorphic" if same else "not isomorphic", {"isomorphic": same})
    return 0 if same else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="no stdout; exit code only")

    parser = _Parser(prog="rapoly", description="Right-angled hyperbolic polyhedra toolkit.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "decide right-angled admissibility").add_argument("file")
    add("info", cmd_info, "counts and summary").add_argument("file")
    sp = add("circuits", cmd_circuits, "list prismatic k-circuits")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, required=True)
    sp = add("profile", cmd_profile, "flats and roofs of a circuit")
    sp.add_argument("file")
    sp.add_argument("--circuit", required=True, help="comma-separated crossed edge ids")
    sp = add("lobell", cmd_lobell, "write L(n)")
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output")
    add("recognize", cmd_recognize, "recognise a Lobell polyhedron").add_argument("file")
    sp = add("lvol", cmd_lvol, "volume of L(n)")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--table", metavar="A..B")
    sp = add("compose", cmd_compose, "glue two polyhedra along faces")
    sp.add_argument("file1")
    sp.add_argument("face1", type=int)
    sp.add_argument("file2")
    sp.add_argument("face2", type=int)
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--flip", action="store_true")
    sp.add_argument("-o", "--output")
    sp = add("double", cmd_double, "double across a face")
    sp.add_argument("file")
    sp.add_argument("face", type=int)
    sp.add_argument("-o", "--output")
    sp = add("surgery", cmd_surgery, "edge surgery")
    sp.add_argument("file")
    sp.add_argument("edge", type=int)
    sp.add_argument("--force", action="store_true")
    sp.add_argument("-o", "--output")
    sp = add("decompose", cmd_decompose, "split along a circuit")
    sp.add_argument("file")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("-o", "--output", metavar="PREFIX", help="write PREFIX.1.json and PREFIX.2.json")
    sp = add("reduce", cmd_reduce, "reduce to Lobell polyhedra")
    sp.add_argument("file")
    sp.add_argument("--policy", choices=reduction.POLICIES, default="decompose-first")
    sp.add_argument("--trace")
    add("bound", cmd_bound, "volume lower bound of a trace").add_argument("trace")
    sp = add("cover", cmd_cover, "colourings and presentations")
    sp.add_argument("file")
    sp.add_argument("--boundary-face", type=int)
    sp.add_argument("--export-presentation", metavar="PATH")
    sp.add_argument("--which", choices=("gamma", "g"), default="gamma", help="presentation to export")
    sp = add("polar", cmd_polar, "cone angles of the spherical polar")
    sp.add_argument("file")
    sp.add_argument("--edge", type=int)
    sp.add_argument("--t", type=float)
    add("canon", cmd_canon, "canonical code").add_argument("file")
    sp = add("iso", cmd_iso, "isomorphism test")
    sp.add_argument("file1")
    sp.add_argument("file2")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(getattr(args, "json", False), getattr(args, "quiet", False))
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"rapoly: error: {exc}", file=sys.stderr)
        return 2
    except RapError as exc:
        print(f"rapoly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
