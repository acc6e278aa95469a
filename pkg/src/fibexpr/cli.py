"""Command-line front end: ``fibexpr gen|table|verify|oracle``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size guard.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import analytics
from .analytics import MethodId, fib_count, min_counts_dp, predicted_counts
from .errors import FibExprError, SizeGuardError
from .expr import PrimeField, complexity, evaluate, expand, parse, render, terms_of
from .graph import enumerate_paths, fib_graph, path_sum
from .methods import (
    EXPONENTIAL_CAP,
    POLYNOMIAL_CAP,
    GdConfig,
    Schedule,
    all_schedules,
    gen_decomposition,
    gen_dfs,
    gen_dls,
    gen_gd,
    gen_reduction,
    gen_reduction_optimal,
    gen_sequential,
    make_schedule,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
EXPAND_LIMIT = 15


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    method: str
    n: int
    m: Optional[int] = None
    seed: Optional[int] = None
    terms: Optional[int] = None
    plus_ops: Optional[int] = None
    products: Optional[int] = None
    expr: Optional[str] = None
    verified: str = "skipped"
    wall_time: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


@dataclass(frozen=True)
class GenOptions:
    m: Optional[int] = None
    seed: int = 0
    direction: str = "direct"
    strategy: str = "middle-floor"
    heavier: str = "joint"
    force: bool = False
    cap: Optional[int] = None

    def cap_for(self, method: str) -> int:
        if self.cap is not None:
            return self.cap
        return POLYNOMIAL_CAP if method in ("decomposition", "gd") else EXPONENTIAL_CAP


def _schedule(n, seed):
    return make_schedule(n, seed) if n >= 4 else Schedule(())


def _gd(n, o):
    if o.m is None:
        raise UsageError("method gd needs --m")
    return gen_gd(n, GdConfig(o.m), o.force, o.cap_for("gd"))


BUILDERS = {
    "seq": lambda n, o: gen_sequential(n, o.force, o.cap_for("seq")),
    "dfs": lambda n, o: gen_dfs(n, o.direction, o.force, o.cap_for("dfs")),
    "dls": lambda n, o: gen_dls(n, o.direction, o.force, o.cap_for("dls")),
    "reduction": lambda n, o: gen_reduction(
        n, _schedule(n, o.seed), o.force, o.cap_for("reduction")),
    "reduction-opt": lambda n, o: gen_reduction_optimal(
        n, o.heavier, o.force, o.cap_for("reduction-opt")),
    "decomposition": lambda n, o: gen_decomposition(
        n, o.strategy, o.force, o.cap_for("decomposition")),
    "gd": _gd,
}
ALIASES = {"decomposition-opt": "decomposition", "sequential": "seq"}
METHOD_NAMES = list(BUILDERS)


def canonical_method(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in BUILDERS:
        raise UsageError(f"unknown method {name!r}; choose from {', '.join(METHOD_NAMES)}")
    return name


def predicted_for(method: str, opts: GenOptions) -> Optional[MethodId]:
    """Which recurrence governs this generator configuration, if any."""
    if method in ("seq", "dfs", "dls"):
        return MethodId(method)
    if method in ("reduction", "reduction-opt"):
        return MethodId.REDUCTION_OPTIMAL
    if method == "decomposition" and opts.strategy in ("middle-floor", "middle-ceil"):
        return MethodId.DECOMPOSITION_OPTIMAL
    return None


def parse_n_range(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"malformed n range {text!r}; expected N or A..B") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"empty or invalid n range {text!r}")
    return list(range(lo, hi + 1))


def _ns(args) -> list:
    spec = args.n_range or args.n
    if spec is None:
        raise UsageError("give --n N or --n-range A..B")
    return parse_n_range(str(spec))


def _options(args) -> GenOptions:
    return GenOptions(
        m=getattr(args, "m", None),
        seed=getattr(args, "seed", 0),
        direction=getattr(args, "direction", "direct"),
        strategy=getattr(args, "strategy", "middle-floor"),
        heavier=getattr(args, "heavier", "joint"),
        force=getattr(args, "force", False),
        cap=getattr(args, "cap", None),
    )


def paths_match(e, n) -> Optional[str]:
    """None when ``e`` expands to exactly the paths of fib_graph(n), else a
    description of the first difference."""
    try:
        got = expand(e)
    except FibExprError as exc:
        return str(exc)
    want = enumerate_paths(fib_graph(n))
    if got == want:
        return None
    key = lambda mono: [(t.index, t.kind) for t in mono]
    missing = sorted(want - got, key=key)
    extra = sorted(got - want, key=key)
    parts = []
    if missing:
        parts.append("missing " + "".join(map(str, missing[0])))
    if extra:
        parts.append("unexpected " + "".join(map(str, extra[0])))
    return "; ".join(parts)


# -- gen ---------------------------------------------------------------------

def cmd_gen(args, out) -> int:
    method = canonical_method(args.method)
    opts = _options(args)
    n = _ns(args)
    if len(n) != 1:
        raise UsageError("gen takes a single --n")
    n = n[0]
    start = time.perf_counter()
    e = BUILDERS[method](n, opts)
    report_counts = complexity(e, products=True)
    verified = "skipped"
    if args.verify:
        if n <= args.expand_limit:
            verified = "pass" if paths_match(e, n) is None else "fail"
    elapsed = time.perf_counter() - start
    text = render(e)
    report = RunReport(
        method=method, n=n, m=opts.m if method == "gd" else None,
        seed=opts.seed if method == "reduction" else None,
        terms=report_counts.terms, plus_ops=report_counts.plus_ops,
        products=report_counts.products, expr=text, verified=verified,
        wall_time=elapsed if args.timing else None,
    )
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        out.write(text + "\n")
    return EXIT_FAIL if verified == "fail" else EXIT_OK


# -- table -------------------------------------------------------------------

TABLE_FIELDS = ["method", "n", "terms", "plus_ops", "products"]


def _table_method(name: str) -> MethodId:
    aliases = {"reduction": "reduction-opt", "decomposition": "decomposition-opt",
               "sequential": "seq"}
    try:
        return MethodId(aliases.get(name, name))
    except ValueError:
        raise UsageError(
            f"no recurrence for method {name!r}; choose from "
            + ", ".join(m.value for m in MethodId)
        ) from None


def emit_rows(rows, fmt, out, fields):
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        out.write("| " + " | ".join(fields) + " |\n")
        out.write("|" + "|".join("---" for _ in fields) + "|\n")
        for row in rows:
            out.write("| " + " | ".join(_cell(row[f]) for f in fields) + " |\n")


def _cell(v):
    return "" if v is None else str(v)


def _method_list(args, default):
    names = []
    for chunk in args.method or []:
        names.extend(x for x in chunk.split(",") if x)
    return names or list(default)


def cmd_table(args, out) -> int:
    ns = _ns(args)
    wanted = {_table_method(x) for x in _method_list(args, [m.value for m in MethodId])}
    rows = []
    for method in MethodId:
        if method not in wanted:
            continue
        for n in ns:
            t, p = predicted_counts(method, n)
            rows.append({"method": method.value, "n": n, "terms": t, "plus_ops": p,
                         "products": fib_count(n)})
    emit_rows(rows, args.format, out, TABLE_FIELDS)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

CHECKS = ("expand", "counts", "eval", "roundtrip")


def _variants(method, n, opts):
    """Option sets exercised by ``verify`` for one method."""
    if method in ("dfs", "dls"):
        return [("direct", dataclasses.replace(opts, direction="direct")),
                ("opposite", dataclasses.replace(opts, direction="opposite"))]
    if method == "reduction-opt":
        return [("joint", dataclasses.replace(opts, heavier="joint")),
                ("fork", dataclasses.replace(opts, heavier="fork"))]
    if method == "reduction":
        return [(f"seed={opts.seed}", opts)]
    if method == "decomposition":
        return [(opts.strategy, opts)]
    if method == "gd":
        ms = [opts.m] if opts.m is not None else sorted({2, 3, 4, n - 1})
        return [(f"m={m}", dataclasses.replace(opts, m=m)) for m in ms if 2 <= m <= n - 1]
    return [("", opts)]


def _check_cell(method, n, opts, checks, expand_limit, rng):
    """Run the requested checks on one generated expression.

    Returns (statuses, measured (T, P) or None, first failure or None)."""
    status = {c: "skipped" for c in CHECKS}
    try:
        e = BUILDERS[method](n, opts)
    except SizeGuardError:
        return status, None, None
    failure = None
    rep = complexity(e, products=True)

    def fail(check, message):
        nonlocal failure
        status[check] = "fail"
        if failure is None:
            text = render(e)
            if len(text) > 400:
                text = text[:400] + "..."
            failure = f"{check}: {message}\n  expression: {text}"

    if "expand" in checks and n <= expand_limit:
        diff = paths_match(e, n)
        if diff is None:
            status["expand"] = "pass"
        else:
            fail("expand", diff)
    if "counts" in checks:
        problems = []
        if rep.products != fib_count(n):
            problems.append(f"products {rep.products} != F_{n} = {fib_count(n)}")
        mid = predicted_for(method, opts)
        if mid is not None:
            want = predicted_counts(mid, n)
            if rep.counts() != want:
                problems.append(f"(T,P) = {rep.counts()} but recurrence gives {want}")
        if problems:
            fail("counts", "; ".join(problems))
        else:
            status["counts"] = "pass"
    if "eval" in checks:
        field = PrimeField()
        g = fib_graph(n)
        assignment = {e_.label: int(rng.integers(1, field.modulus)) for e_ in g.edges}
        got = evaluate(e, assignment, field)
        want = path_sum(g, assignment, field)
        if terms_of(e) - set(assignment):
            fail("eval", "expression uses terms outside the graph")
        elif got != want:
            fail("eval", f"value {got} != path sum {want}")
        else:
            status["eval"] = "pass"
    if "roundtrip" in checks:
        try:
            again = parse(render(e))
        except FibExprError as exc:
            fail("roundtrip", str(exc))
        else:
            if again == e:
                status["roundtrip"] = "pass"
            else:
                fail("roundtrip", "parse(render(e)) differs from e")
    return status, rep.counts(), failure


def cmd_verify(args, out) -> int:
    ns = _ns(args)
    if args.all:
        methods = list(METHOD_NAMES)
        checks = list(CHECKS)
    else:
        methods = [canonical_method(x) for x in _method_list(args, METHOD_NAMES)]
        checks = [c for chunk in (args.checks or ["all"]) for c in chunk.split(",") if c]
        if "all" in checks:
            checks = list(CHECKS)
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)}")
    opts = _options(args)
    rows, failures = [], []
    for method in methods:
        for n in ns:
            if n < 2:
                continue
            for label, variant in _variants(method, n, opts):
                rng = np.random.default_rng([opts.seed, n, len(rows)])
                status, counts, failure = _check_cell(method, n, variant, checks,
                                                      args.expand_limit, rng)
                t, p = counts if counts else (None, None)
                rows.append({"method": method, "variant": label, "n": n,
                             "terms": t, "plus_ops": p,
                             **{c: status[c] for c in checks}})
                if failure is not None:
                    failures.append(f"{method} {label} n={n}: {failure}")
    emit_rows(rows, args.format, out,
              ["method", "variant", "n", "terms", "plus_ops", *checks])
    if failures:
        out.write(f"FAIL: {len(failures)} cell(s) failed; first counterexample:\n")
        out.write(failures[0] + "\n")
        return EXIT_FAIL
    out.write(f"OK: {len(rows)} cell(s) verified\n")
    return EXIT_OK


# -- oracle ------------------------------------------------------------------

def cmd_oracle(args, out) -> int:
    n = args.n
    if args.kind == "dp":
        if not 2 <= n <= 1000:
            raise UsageError("oracle dp needs 2 <= n <= 1000")
        table = min_counts_dp(n, args.objective)
        argmin = sorted(table.argmin(1, n))
        middle = sorted(analytics.middle_vertices(1, n))
        result = {"n": n, "objective": args.objective, "tmin": table.tmin(1, n),
                  "pmin": table.pmin(1, n), "argmin": argmin, "middle": middle,
                  "non_middle": sorted(set(argmin) - set(middle))}
        if args.format == "json":
            out.write(json.dumps(result) + "\n")
        else:
            out.write(f"n={n} Tmin={result['tmin']} Pmin={result['pmin']}\n")
            out.write(f"argmin({args.objective}) at (1,{n}): {{{', '.join(map(str, argmin))}}}"
                      f"  middle: {{{', '.join(map(str, middle))}}}\n")
        return EXIT_OK

    if not 4 <= n <= 16:
        raise UsageError("oracle schedules needs 4 <= n <= 16")
    per_tally = {}
    for sched in all_schedules(n):
        rep = complexity(gen_reduction(n, sched, force=True))
        key = (sched.fork_count, sched.joint_count)
        per_tally.setdefault(key, set()).add(rep.counts())
    all_counts = [c for cs in per_tally.values() for c in cs]
    t_min = min(c[0] for c in all_counts)
    p_min = min(c[1] for c in all_counts)
    t_max = max(c[0] for c in all_counts)
    p_max = max(c[1] for c in all_counts)
    at_t = sorted(k for k, cs in per_tally.items() if any(c[0] == t_min for c in cs))
    at_p = sorted(k for k, cs in per_tally.items() if any(c[1] == p_min for c in cs))
    result = {"n": n, "schedules": 2 ** (n - 3), "min": [t_min, p_min],
              "max": [t_max, p_max], "tmin_tallies": [list(k) for k in at_t],
              "pmin_tallies": [list(k) for k in at_p]}
    if args.format == "json":
        out.write(json.dumps(result) + "\n")
    else:
        fmt = lambda ks: ", ".join(f"({f},{j})" for f, j in ks)
        out.write(f"n={n} schedules={result['schedules']} "
                  f"min (T,P)=({t_min},{p_min}) max (T,P)=({t_max},{p_max})\n")
        out.write(f"min T at (fork,joint) tallies: {fmt(at_t)}\n")
        out.write(f"min P at (fork,joint) tallies: {fmt(at_p)}\n")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def _add_n(p, single_only=False):
    p.add_argument("--n", help="size N, or a range A..B")
    if not single_only:
        p.add_argument("--n-range", help="range A..B (inclusive)")


def _add_gen_options(p):
    p.add_argument("--m", type=int, help="part count for gd")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--direction", choices=["direct", "opposite"], default="direct")
    p.add_argument("--strategy", default="middle-floor",
                   help="middle-floor, middle-ceil or fixed:K")
    p.add_argument("--heavier", choices=["fork", "joint"], default="joint")
    p.add_argument("--force", action="store_true", help="ignore the generation cap")
    p.add_argument("--cap", type=int, help="override the generation cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibexpr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate one expression")
    g.add_argument("--method", required=True)
    _add_n(g, single_only=True)
    g.set_defaults(n_range=None)
    _add_gen_options(g)
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.add_argument("--verify", action="store_true", help="check against path oracle")
    g.add_argument("--expand-limit", type=int, default=EXPAND_LIMIT)
    g.add_argument("--timing", action="store_true", help="record wall_time in JSON")

    t = sub.add_parser("table", help="predicted counts per method and n")
    _add_n(t)
    t.add_argument("--method", "--methods", action="append")
    t.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")

    v = sub.add_parser("verify", help="run oracle checks over a grid")
    _add_n(v)
    v.add_argument("--method", "--methods", action="append")
    v.add_argument("--checks", action="append",
                   help="comma list from expand,counts,eval,roundtrip or all")
    v.add_argument("--all", action="store_true", help="all methods and checks")
    v.add_argument("--expand-limit", type=int, default=EXPAND_LIMIT)
    v.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    _add_gen_options(v)

    o = sub.add_parser("oracle", help="strategy-space optimality oracles")
    o.add_argument("kind", choices=["dp", "schedules"])
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--objective", choices=["T", "P"], default="T")
    o.add_argument("--format", choices=["text", "json"], default="text")
    return parser


COMMANDS = {"gen": cmd_gen, "table": cmd_table, "verify": cmd_verify, "oracle": cmd_oracle}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except SizeGuardError as exc:
        err.write(f"fibexpr: {exc}\n")
        return EXIT_GUARD
    except (UsageError, FibExprError, ValueError) as exc:
        err.write(f"fibexpr: {exc}\n")
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
