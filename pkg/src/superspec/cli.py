"""Command-line interface.

Every subcommand takes one group source: either a built-in family with
``--n``/``--n-range`` or ``--group cayley:PATH`` with ``--relation``.  Output
is deterministic: identical arguments and inputs give byte-identical output.

Exit status: 0 success, 2 usage error, 3 validation or comparison failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import __version__
from .families import (
    FAMILIES,
    check_n,
    family_case,
    family_decomposition,
    family_graph,
    family_group,
    family_relation,
    normalize_family,
)
from .graphs import (
    RELATIONS,
    Graph,
    HJoinDecomposition,
    commuting_graph,
    equivalence_partition,
    hjoin_decompose,
    super_graph,
    twin_partition,
)
from .groups import (
    CayleyParseError,
    FiniteGroup,
    GroupValidationError,
    ParameterRangeError,
    conjugacy_classes,
    element_orders,
    load_cayley_table,
)
from .linalg import DimensionLimitError
from .numeric import ConvergenceError, EigenResult, compare_spectra, format_real, symmetric_eigenvalues
from .spectra import (
    DEFAULT_PRECISION,
    SpectrumReport,
    closed_form_spectrum,
    integrality_report,
    spectrum_from_decomposition,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3

FORMATS = ("json", "csv", "table", "dot")
PROVENANCES = {"closed": "closed_form", "quotient": "quotient", "numeric": "numeric"}


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


# --- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """One group together with the equivalence relation for its super graph."""

    group: FiniteGroup
    relation: str
    family: str | None = None
    n: int | None = None
    source: str = ""

    @property
    def label(self) -> str:
        if self.family is not None:
            return f"{self.family.replace('_', '-')} n={self.n}"
        return f"{self.source} ({self.relation})"

    def graph(self, kind: str = "super") -> Graph:
        if kind == "commuting":
            return commuting_graph(self.group)
        if self.family is not None:
            return family_graph(self.family, self.n)
        return super_graph(commuting_graph(self.group), equivalence_partition(self.group, self.relation))

    def decomposition(self, twins: bool = False) -> HJoinDecomposition:
        graph = self.graph()
        if self.family is not None and not twins:
            return family_decomposition(self.family, self.n, graph)
        partition = twin_partition(graph) if twins else equivalence_partition(self.group, self.relation)
        return hjoin_decompose(graph, partition)


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--n-range expects A..B, got {text!r}") from None
    if not sep or a > b:
        raise UsageError(f"--n-range expects A..B with A <= B, got {text!r}")
    return range(a, b + 1)


def instances(args) -> list[Instance]:
    if (args.family is None) == (args.group is None):
        raise UsageError("give exactly one of --family or --group")
    if args.group is not None:
        if args.n is not None or args.n_range is not None:
            raise UsageError("--n/--n-range apply to --family only")
        kind, sep, path = args.group.partition(":")
        if kind != "cayley" or not sep or not path:
            raise UsageError(f"--group expects cayley:PATH, got {args.group!r}")
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            group = load_cayley_table(text)
        except (CayleyParseError, GroupValidationError) as exc:
            raise CheckFailed(f"{path}: {exc}") from None
        return [Instance(group, args.relation or "conjugacy", source=Path(path).name)]
    try:
        family = normalize_family(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.relation is not None and args.relation != family_relation(family):
        raise UsageError(f"{args.family} fixes the relation to {family_relation(family)}")
    if (args.n is None) == (args.n_range is None):
        raise UsageError("give exactly one of --n or --n-range with --family")
    ns = [args.n] if args.n is not None else list(parse_range(args.n_range))
    out = []
    for n in ns:
        try:
            check_n(family, n)
        except ParameterRangeError as exc:
            raise UsageError(str(exc)) from None
        out.append(Instance(family_group(family, n), family_relation(family), family, n))
    return out


def single(args) -> Instance:
    items = instances(args)
    if len(items) != 1:
        raise UsageError(f"{args.command} takes a single instance; use --n")
    return items[0]


def parallel_map(fn: Callable, items: list, jobs: int) -> list:
    """Map in input order; results never depend on completion order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def comparison_precision(precision: int, tol: float) -> int:
    # exact roots must be refined well below the tolerance they are compared at
    return max(precision, math.ceil(-math.log10(tol)) + 2) if tol > 0 else max(precision, 17)


def require_format(args, allowed: tuple[str, ...], default: str) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {'|'.join(allowed)}, not {fmt}")
    return fmt


def csv_text(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# --- formatting of reports -----------------------------------------------------

def exact_cell(report: SpectrumReport) -> str:
    return ";".join(f"{v}^{m}" for v, m in report.exact)


def factors_cell(report: SpectrumReport) -> str:
    parts = []
    for f in report.factors:
        s = ",".join(f.polynomial.to_strings())
        parts.append(s if f.multiplicity == 1 else f"{s}^{f.multiplicity}")
    return ";".join(parts)


def report_table(report: SpectrumReport, title: str) -> str:
    lines = [f"{title}: dimension {report.dimension}, provenance {report.provenance}"]
    lines.append("exact eigenvalues:")
    for v, m in sorted(report.exact, key=lambda vm: vm[0], reverse=True):
        lines.append(f"  {str(v):>8} × {m}")
    for f in report.factors:
        mult = "" if f.multiplicity == 1 else f" (each × {f.multiplicity})"
        lines.append(f"roots of {f.polynomial.pretty()}{mult}:")
        for r in f.roots:
            lines.append(f"  {r.approx:>20}  in [{r.lo}, {r.hi}]")
    integral = integrality_report(report).integral
    lines.append(f"integral: {'yes' if integral else 'no'}")
    return "\n".join(lines) + "\n"


def report_csv(report: SpectrumReport) -> list[list]:
    rows = []
    for v, m in report.exact:
        rows.append(["exact", str(v), m, ""])
    for f in report.factors:
        poly = ",".join(f.polynomial.to_strings())
        for r in f.roots:
            rows.append(["root", r.approx, f.multiplicity, poly])
    return rows


def eigen_table(result: EigenResult, title: str, precision: int) -> str:
    lines = [f"{title}: dimension {len(result.eigenvalues)}, provenance numeric, "
             f"{result.iterations} sweeps"]
    lines.extend(f"  {format_real(x, precision)}" for x in result.eigenvalues)
    return "\n".join(lines) + "\n"


# --- per-instance work (module level so process pools can pickle it) ---------

def exact_report(inst: Instance, provenance: str, precision: int) -> SpectrumReport:
    if provenance == "closed_form":
        if inst.family is None:
            raise UsageError("closed-form spectra exist only for the built-in families")
        return closed_form_spectrum(inst.family, inst.n, precision)
    decomp = inst.decomposition(twins=inst.family is None)
    return spectrum_from_decomposition(decomp, precision)


@dataclass(frozen=True)
class VerifyResult:
    label: str
    case: str
    closed_equals_quotient: bool | None
    max_gap: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.closed_equals_quotient is not False and self.max_gap <= self.tol


def verify_one(job: tuple[Instance, int, float]) -> VerifyResult:
    inst, precision, tol = job
    precision = comparison_precision(precision, tol)
    quotient = exact_report(inst, "quotient", precision)
    same = None
    case = "cayley"
    if inst.family is not None:
        closed = closed_form_spectrum(inst.family, inst.n, precision)
        same = closed.same_spectrum(quotient)
        case = family_case(inst.family, inst.n)
    numeric = symmetric_eigenvalues(inst.graph().adjacency)
    gap = compare_spectra(quotient, numeric, tol).max_gap
    return VerifyResult(inst.label, case, same, gap, tol)


def sweep_one(job: tuple[Instance, int]) -> list:
    inst, precision = job
    report = closed_form_spectrum(inst.family, inst.n, precision)
    integral = integrality_report(report).integral
    return [inst.family.replace("_", "-"), inst.n, family_case(inst.family, inst.n),
            exact_cell(report), factors_cell(report), str(integral).lower()]


# --- commands -------------------------------------------------------------

def cmd_group(args) -> str:
    fmt = require_format(args, ("table", "json", "csv"), "table")
    G = single(args).group
    if fmt == "table":
        return G.to_text()
    if fmt == "csv":
        return csv_text([["", *G.names], *([name, *row] for name, row in zip(G.names, G.table.tolist()))])
    classes = conjugacy_classes(G)
    return dumps({
        "order": G.order,
        "names": list(G.names),
        "table": G.table.tolist(),
        "element_orders": element_orders(G),
        "conjugacy_classes": [[G.names[i] for i in b] for b in classes.blocks],
    })


def cmd_graph(args) -> str:
    fmt = require_format(args, FORMATS, "dot")
    inst = single(args)
    g = inst.graph(args.kind)
    if fmt == "dot":
        return g.to_dot(name="commuting" if args.kind == "commuting" else "super")
    if fmt == "csv":
        return g.to_csv()
    labels = g.vertex_labels()
    if fmt == "table":
        width = max(len(x) for x in labels)
        rows = [" " * width + " " + " ".join(labels)]
        for lab, row in zip(labels, g.int_matrix()):
            rows.append(lab.rjust(width) + " " + " ".join(str(x).rjust(len(c)) for x, c in zip(row, labels)))
        return "\n".join(rows) + "\n"
    edges = [[i, j] for i in range(g.n_vertices) for j in range(i + 1, g.n_vertices) if g.adjacency[i, j]]
    return dumps({"kind": args.kind, "relation": inst.relation, "vertices": list(labels), "edges": edges})


def cmd_decompose(args) -> str:
    fmt = require_format(args, ("table", "json", "dot"), "table")
    inst = single(args)
    d = inst.decomposition(twins=args.twins)
    names = inst.graph().vertex_labels()
    members = [[names[i] for i in part] for part in d.part_members]
    if fmt == "dot":
        return d.skeleton.to_dot(name="skeleton", annotations=[f"K_{s}" for s in d.part_sizes])
    if fmt == "json":
        S = d.skeleton.adjacency
        edges = [[i, j] for i in range(d.n_parts) for j in range(i + 1, d.n_parts) if S[i, j]]
        return dumps({"part_sizes": list(d.part_sizes), "parts": members, "skeleton_edges": edges})
    lines = [f"{inst.label}: {d.n_parts} parts, {d.n_vertices} vertices"]
    for k, (size, part) in enumerate(zip(d.part_sizes, members)):
        nbrs = [str(j) for j in range(d.n_parts) if d.skeleton.adjacency[k, j]]
        lines.append(f"  part {k}: K_{size} {{{', '.join(part)}}} joined to [{', '.join(nbrs)}]")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> str:
    fmt = require_format(args, ("table", "json", "csv"), "table")
    inst = single(args)
    provenance = PROVENANCES[args.provenance or ("closed" if inst.family else "quotient")]
    if provenance == "numeric":
        result = symmetric_eigenvalues(inst.graph().adjacency)
        if fmt == "json":
            return dumps(result.to_dict(args.precision))
        if fmt == "csv":
            return csv_text([["eigenvalue"], *([format_real(x, args.precision)] for x in result.eigenvalues)])
        return eigen_table(result, inst.label, args.precision)
    report = exact_report(inst, provenance, args.precision)
    if fmt == "json":
        return dumps(report.to_dict())
    if fmt == "csv":
        return csv_text([["kind", "value", "multiplicity", "factor"], *report_csv(report)])
    title = inst.label
    if inst.family is not None:
        title += f" ({family_case(inst.family, inst.n)})"
    return report_table(report, title)


def cmd_compare(args) -> str:
    fmt = require_format(args, ("table", "json"), "table")
    inst = single(args)
    provenance = PROVENANCES[args.provenance or ("closed" if inst.family else "quotient")]
    if provenance == "numeric":
        raise UsageError("compare pairs an exact report with the numeric eigensolver; choose closed or quotient")
    report = exact_report(inst, provenance, comparison_precision(args.precision, args.tol))
    cmp = compare_spectra(report, symmetric_eigenvalues(inst.graph().adjacency), args.tol)
    gap = f"{cmp.max_gap:.3e}"
    if fmt == "json":
        text = dumps({
            "match": cmp.match,
            "max_gap": gap,
            "tol": args.tol,
            "pairing": [[format_real(a, args.precision), format_real(b, args.precision)] for a, b in cmp.pairing],
        })
    else:
        lines = [f"{inst.label}: {provenance} vs numeric, max gap {gap}, "
                 f"{'match' if cmp.match else 'MISMATCH'} at tol {args.tol:g}"]
        w = args.precision + 6
        lines.extend(f"  {format_real(a, args.precision):>{w}}  {format_real(b, args.precision):>{w}}"
                     for a, b in cmp.pairing)
        text = "\n".join(lines) + "\n"
    if not cmp.match:
        raise CheckFailed(f"{inst.label}: numeric gap {gap} exceeds {args.tol:g}", text)
    return text


def cmd_verify(args) -> str:
    fmt = require_format(args, ("table", "json", "csv"), "table")
    items = instances(args)
    results = parallel_map(verify_one, [(x, args.precision, args.tol) for x in items], args.jobs)

    def flag(x):
        return "n/a" if x is None else str(x).lower()

    if fmt == "json":
        text = dumps([{
            "instance": r.label, "case": r.case, "closed_equals_quotient": r.closed_equals_quotient,
            "max_gap": f"{r.max_gap:.3e}", "ok": r.ok,
        } for r in results])
    elif fmt == "csv":
        text = csv_text([["instance", "case", "closed_equals_quotient", "max_gap", "ok"]]
                        + [[r.label, r.case, flag(r.closed_equals_quotient), f"{r.max_gap:.3e}", flag(r.ok)]
                           for r in results])
    else:
        lines = [f"{r.label:<28} {r.case:<12} closed=quotient: {flag(r.closed_equals_quotient):<5} "
                 f"numeric gap {r.max_gap:.3e}  {'ok' if r.ok else 'FAIL'}" for r in results]
        bad = sum(not r.ok for r in results)
        lines.append(f"{len(results) - bad}/{len(results)} instances agree at tol {args.tol:g}")
        text = "\n".join(lines) + "\n"
    if not all(r.ok for r in results):
        raise CheckFailed("verification failed", text)
    return text


def cmd_sweep(args) -> str:
    fmt = require_format(args, ("csv", "json", "table"), "csv")
    items = instances(args)
    if items[0].family is None:
        raise UsageError("sweep needs --family")
    rows = parallel_map(sweep_one, [(x, args.precision) for x in items], args.jobs)
    header = ["family", "n", "case", "exact", "factors", "integral"]
    if fmt == "csv":
        return csv_text([header, *rows])
    if fmt == "json":
        return dumps([dict(zip(header, r)) for r in rows])
    return "\n".join("  ".join(str(c) for c in r) for r in [header, *rows]) + "\n"


def cmd_integrality(args) -> str:
    fmt = require_format(args, ("table", "json"), "table")
    out = []
    for inst in instances(args):
        provenance = "closed_form" if inst.family is not None else "quotient"
        res = integrality_report(exact_report(inst, provenance, args.precision))
        out.append((inst, res))
    if fmt == "json":
        return dumps([{
            "instance": inst.label,
            "integral": res.integral,
            "witnesses": [{
                "factor": None if p is None else p.to_strings(),
                "lo": str(r.lo), "hi": str(r.hi), "approx": r.approx,
            } for p, r in res.witnesses],
        } for inst, res in out])
    lines = []
    for inst, res in out:
        if res.integral:
            lines.append(f"{inst.label}: integral")
            continue
        p, r = res.witnesses[0]
        lines.append(f"{inst.label}: not integral, {len(res.witnesses)} witnesses, "
                     f"e.g. root {r.approx} in [{r.lo}, {r.hi}]")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "group": (cmd_group, "emit or validate a Cayley table"),
    "graph": (cmd_graph, "build the commuting graph or super graph"),
    "decompose": (cmd_decompose, "split the super graph into an H-join of cliques"),
    "spectrum": (cmd_spectrum, "adjacency spectrum (closed form, quotient or numeric)"),
    "compare": (cmd_compare, "pair an exact spectrum with the numeric eigensolver"),
    "verify": (cmd_verify, "closed form vs quotient vs numeric over a range"),
    "sweep": (cmd_sweep, "CSV of factors and integrality over a range"),
    "integrality": (cmd_integrality, "decide integrality with witnesses"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("group source")
    src.add_argument("--family", help="|".join(f.replace("_", "-") for f in FAMILIES))
    src.add_argument("--group", metavar="cayley:PATH", help="Cayley table file")
    src.add_argument("--relation", choices=RELATIONS, help="equivalence for the super graph (default conjugacy)")
    src.add_argument("--n", type=int)
    src.add_argument("--n-range", metavar="A..B")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="decimal digits (default 12)")
    common.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance (default 1e-8)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for ranges")

    parser = argparse.ArgumentParser(prog="superspec", description="Spectra of supercommuting graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "graph":
            p.add_argument("--kind", choices=("super", "commuting"), default="super")
        if name == "decompose":
            p.add_argument("--twins", action="store_true", help="decompose over closed-twin classes")
        if name in ("spectrum", "compare"):
            p.add_argument("--provenance", choices=tuple(PROVENANCES))
    return parser


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.precision < 1:
        parser.print_usage(sys.stderr)
        print("error: --precision must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    fn = COMMANDS[args.command][0]
    try:
        emit(fn(args), args.out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        if len(exc.args) > 1:
            emit(exc.args[1], args.out)
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_FAILED
    except (DimensionLimitError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())
