"""Command-line front end.

Exit codes: 0 success, 1 no solution within budget (or a failed check),
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import census, constructions, monoid, ore, suites
from .fields import Field, IndeterminateField, Rationals, parse_field
from .monoid import BudgetExhausted, MonomialParseError, ParameterError
from .ring import (Polynomial, PolynomialParseError, format_poly, parse_poly, poly_from_json,
                   poly_mul, poly_to_json)

EXIT_OK, EXIT_NONE, EXIT_INPUT = 0, 1, 2
JOBS_ENV = "THOMPSON_ORE_JOBS"


class InputError(Exception):
    pass


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# -- input helpers -----------------------------------------------------------


def _read_source(text: str) -> str:
    """Inline text, ``@path``, or an existing file path."""
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    p = Path(text)
    if len(text) < 4096 and p.is_file():
        return p.read_text()
    return text


def read_poly(text: str, field: Field) -> Polynomial:
    src = _read_source(text).strip()
    if src.startswith("{"):
        obj = json.loads(src)
        return poly_from_json(obj, field if "field" not in obj else None)
    return parse_poly(src, field)


def read_scalar(text: str, field: Field):
    text = text.strip()
    if text and (text[0].isalpha() and not text.startswith("x")):
        return field.symbol(text)
    return field.parse(text)


def read_scalars(text: str, field: Field) -> list:
    return [read_scalar(t, field) for t in text.split(",") if t.strip()]


def read_set(text: str):
    return monoid.parse_set_descriptor(text)


def _seeds(args) -> list:
    if args.seed_list:
        return [int(s) for s in args.seed_list.split(",")]
    return list(range(1, args.seeds + 1))


# -- output ------------------------------------------------------------------


class Out:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.output
        self.chunks = []

    def write(self, s: str) -> None:
        self.chunks.append(s if s.endswith("\n") else s + "\n")

    def json(self, obj) -> None:
        self.write(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable))

    def flush(self) -> None:
        text = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(text)
        else:
            sys.stdout.write(text)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def solution_document(coeffs, report: ore.SolutionReport, kind: str, params: dict) -> dict:
    doc = report.to_json()
    doc["equation"] = [[poly_to_json(p) for p in row] for row in coeffs]
    doc["provenance"] = dict(doc.get("provenance") or {}, construction=kind, parameters=params)
    return doc


def emit_solution(out: Out, coeffs, sol: list, kind: str, params: dict, supports=None) -> None:
    ok, res = ore.verify_solution(coeffs, sol)
    report = ore.SolutionReport(sol, sol[0].field.descriptor(),
                                [ore._describe(s) for s in supports] if supports else [],
                                ok, res)
    if out.fmt == "json":
        out.json(solution_document(coeffs, report, kind, params))
    else:
        out.write(str(report))


# -- subcommands -------------------------------------------------------------


def cmd_normalize(args, out):
    w = monoid.parse_monomial(args.word)
    out.write(monoid.format_monomial(w) if out.fmt == "text" else json.dumps(list(w)))


def cmd_mul(args, out):
    ws = [monoid.parse_monomial(t) for t in args.words]
    r = ()
    for w in ws:
        r = monoid.multiply(r, w)
    out.write(monoid.format_monomial(r) if out.fmt == "text" else json.dumps(list(r)))


def cmd_lcm(args, out):
    a, b = monoid.parse_monomial(args.a), monoid.parse_monomial(args.b)
    m = monoid.right_lcm(a, b, args.max_degree)
    c, d = monoid.right_complement(a, b)
    if out.fmt == "json":
        out.json({"lcm": list(m), "a_complement": list(c), "b_complement": list(d)})
    else:
        out.write(monoid.format_monomial(m))


def cmd_enumerate(args, out):
    d = read_set(args.set)
    items = monoid.enumerate_set(d)
    if args.limit is not None:
        items = items[:args.limit]
    if out.fmt == "json":
        out.json([list(w) for w in items])
    else:
        out.write("\n".join(monoid.format_monomial(w) for w in items))


def cmd_count(args, out):
    d = read_set(args.set)
    n = monoid.set_size(d)
    out.write(json.dumps({"set": monoid.format_set_descriptor(d), "size": n})
              if out.fmt == "json" else str(n))


def cmd_solve_pair(args, out):
    f = args.field_obj
    a, b = read_poly(args.a, f), read_poly(args.b, f)
    Y = read_set(args.set)
    Yv = read_set(args.set_v) if args.set_v else None
    _dump_matrix(args, [[a, -b]], [Y, Yv or Y])
    sols = ore.solve_pair(a, b, Y, Yv, limit=args.limit, max_columns=args.max_columns)
    if not sols:
        out.write("no solution on the given support")
        return EXIT_NONE
    coeffs = [[a, -b]]
    if out.fmt == "json":
        docs = [solution_document(coeffs, r, "linear-system", {"support": r.supports}) for r in sols]
        out.json(docs[0] if len(docs) == 1 else docs)
    else:
        out.write(f"solution space dimension: {sols[0].basis_size}")
        for r in sols:
            out.write(str(r))
    return EXIT_OK


def _dump_matrix(args, coeffs, supports):
    # triplet text: header "rows cols field", then one "row col value" line per entry
    if args.dump_matrix:
        system = ore.build_system(coeffs, supports, max_columns=args.max_columns)
        Path(args.dump_matrix).write_text(system.matrix.dumps())


def cmd_solve_system(args, out):
    doc = json.loads(_read_source(args.system))
    f = parse_field(doc["field"]) if "field" in doc else args.field_obj
    coeffs = [[poly_from_json(p, f) if isinstance(p, dict) else parse_poly(p, f) for p in row]
              for row in doc["coeffs"]]
    supports = [read_set(s) for s in doc["supports"]]
    _dump_matrix(args, coeffs, supports)
    rep = ore.solve_linear_system(coeffs, supports, max_columns=args.max_columns)
    if rep is None:
        out.write("no solution on the given supports")
        return EXIT_NONE
    if out.fmt == "json":
        out.json(solution_document(coeffs, rep, "linear-system", {"supports": rep.supports}))
    else:
        out.write(str(rep))
    return EXIT_OK


def cmd_reduce(args, out):
    f = args.field_obj
    a, b = read_poly(args.a, f), read_poly(args.b, f)
    budget = ore.ReduceBudget(args.max_extra_degree, args.max_columns or ore.ReduceBudget.max_columns,
                              args.max_depth)
    rep = ore.ore_reduce(a, b, budget, homogenize=args.homogenize)
    coeffs = [[a, -b]]
    if out.fmt == "json":
        out.json(solution_document(coeffs, rep, "width-reduction", {}))
    else:
        out.write(str(rep))
    return EXIT_OK


def _coeff_vectors(args, f, m):
    if args.alpha:
        alpha, beta = read_scalars(args.alpha, f), read_scalars(args.beta, f)
    elif isinstance(f, IndeterminateField):
        alpha = [f.symbol(f"a{i}") for i in range(m + 1)]
        beta = [f.symbol(f"b{i}") for i in range(m + 1)]
    else:
        rng = random.Random(args.seed)
        alpha = [f.random_element(rng, nonzero=True) for _ in range(m + 1)]
        beta = [f.random_element(rng, nonzero=True) for _ in range(m + 1)]
    return alpha, beta


def cmd_construct_deg1(args, out):
    f = args.field_obj
    if args.alpha and not args.beta:
        raise InputError("--alpha needs --beta")
    m = len(read_scalars(args.alpha, f)) - 1 if args.alpha else args.m
    if m is None:
        raise InputError("give --m or --alpha/--beta")
    alpha, beta = _coeff_vectors(args, f, m)
    u, v = constructions.degree_one_solution(alpha, beta, f, check_generic=not args.allow_degenerate)
    a = Polynomial.linear(f, dict(enumerate(alpha)))
    b = Polynomial.linear(f, dict(enumerate(beta)))
    emit_solution(out, [[a, -b]], [u, v], "degree-one", {"m": m})
    return EXIT_OK


def cmd_basic_solution(args, out):
    f = args.field_obj
    al, be = read_scalar(args.alpha, f), read_scalar(args.beta, f)
    a, b = constructions.basic_equation(al, be, f)
    u, v = constructions.basic_solution(al, be, f)
    emit_solution(out, [[a, -b]], [u, v], "basic", {"alpha": args.alpha, "beta": args.beta})
    return EXIT_OK


def cmd_family(args, out):
    f = args.field_obj
    al, be = read_scalar(args.alpha, f), read_scalar(args.beta, f)
    if args.w:
        ws = [read_poly(t, f) if t.strip() else Polynomial.zero(f) for t in args.w.split(";")]
        params = constructions.FamilyParams(be, ws)
    else:
        params = constructions.random_family_params(args.degree, be, f, random.Random(args.seed))
    try:
        params.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    u, v = constructions.solution_family(params, al, f)
    a, b = constructions.basic_equation(al, be, f)
    emit_solution(out, [[a, -b]], [u, v], "family",
                  {"alpha": args.alpha, "beta": args.beta,
                   "w": [format_poly(w) for w in params.w]})
    return EXIT_OK


def cmd_qk(args, out):
    f = args.field_obj
    if args.pairs:
        pairs = []
        for item in args.pairs.split(","):
            al, _, be = item.partition(":")
            if not be:
                raise InputError(f"pair {item!r} is not alpha:beta")
            pairs.append((read_scalar(al, f), read_scalar(be, f)))
    else:
        rng = random.Random(args.seed)
        pairs = [(f.random_element(rng, True), f.random_element(rng, True)) for _ in range(args.k)]
    us = constructions.qk_system_solution(pairs, f)
    lins = [Polynomial.linear(f, {0: al, 1: be}) for al, be in pairs]
    coeffs = ore.chain_system(lins) if len(lins) > 1 else [[lins[0]]]
    prods = [poly_mul(l, u) for l, u in zip(lins, us)]
    same = all(p == prods[0] for p in prods)
    if len(lins) == 1:
        emit = us
        ok = True
    else:
        emit = us
        ok, _ = ore.verify_solution(coeffs, us)
    if out.fmt == "json":
        out.json({"field": f.descriptor(), "k": len(pairs), "verified": ok and same,
                  "product": poly_to_json(prods[0]),
                  "equation": [[poly_to_json(p) for p in row] for row in coeffs],
                  "solution": [poly_to_json(u) for u in emit],
                  "provenance": {"construction": "qk"}})
    else:
        for i, u in enumerate(us, 1):
            out.write(f"u{i} = {format_poly(u)}")
        out.write(f"common product = {format_poly(prods[0])}")
        out.write(f"verified: {ok and same}")
    return EXIT_OK if ok and same else EXIT_NONE


def _map(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _emit_records(out, records, extra=None):
    records = sorted(records, key=lambda r: r.n)
    if out.fmt == "csv":
        out.write(census.records_to_csv(records))
    elif out.fmt == "json":
        rows = []
        for r in records:
            row = r.row()
            row["closed_form"] = str(r.closed_form) if r.closed_form is not None else None
            row["bound"] = r.bound
            rows.append(row)
        out.json(dict(extra or {}, records=rows))
    else:
        for r in records:
            line = f"n={r.n} |Y|={r.y_size} |SY|={r.sy_size} ratio={r.ratio}"
            if r.closed_form is not None:
                line += f" closed_form={r.closed_form}"
            if r.bound is not None:
                line += f" bound={r.bound} holds={r.bound_holds}"
            out.write(line)


class _XM:
    def __init__(self, m):
        self.m = m

    def __call__(self, n):
        return census.xm_census(self.m, n)


def cmd_census_xm(args, out):
    m = args.m
    lo = args.n_from if args.n_from is not None else m + 2
    hi = args.n_to if args.n_to is not None else census.xm_threshold(m)
    recs = _map(_XM(m), range(lo, hi + 1), args.jobs)
    _emit_records(out, recs, {"m": m, "threshold": census.xm_threshold(m)})
    if out.fmt == "text":
        out.write(f"threshold n = {census.xm_threshold(m)}")
    return EXIT_OK if all(r.matches_closed_form for r in recs) else EXIT_NONE


def _donnelly_row(n):
    Y = census.donnelly_Y(n)
    size = monoid.set_size(Y)
    e1, e2 = census.donnelly_excluded(n)
    return {"n": n, "Y": size, "formula": census.donnelly_size(n),
            "excluded_disjoint": not set(e1) & set(e2), "match": size == census.donnelly_size(n)}


def cmd_census_donnelly(args, out):
    lo = args.n_from if args.n_from is not None else 5
    hi = args.n_to if args.n_to is not None else 10
    rows = _map(_donnelly_row, range(lo, hi + 1), args.jobs)
    if out.fmt == "json":
        out.json(rows)
    elif out.fmt == "csv":
        out.write("n,Y,formula,match")
        for r in rows:
            out.write(f"{r['n']},{r['Y']},{r['formula']},{r['match']}")
    else:
        for r in rows:
            out.write(f"n={r['n']} |Y|={r['Y']} formula={r['formula']} match={r['match']}")
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_NONE


def cmd_census_s24(args, out):
    lo = args.n_from if args.n_from is not None else 5
    hi = args.n_to if args.n_to is not None else 10
    if args.formula_only:
        rows = [{"n": n, "bound_ratio": str(census.s24_ratio_bound(n)),
                 "below_two": census.s24_ratio_bound(n) < 2} for n in range(lo, hi + 1)]
        if out.fmt == "json":
            out.json({"threshold": census.s24_threshold(), "rows": rows})
        else:
            for r in rows:
                out.write(f"n={r['n']} bound_ratio={r['bound_ratio']} below_two={r['below_two']}")
            out.write(f"threshold n = {census.s24_threshold()}")
        return EXIT_OK
    recs = _map(census.s24_census, range(lo, hi + 1), args.jobs)
    _emit_records(out, recs, {"threshold": census.s24_threshold()})
    return EXIT_OK if all(r.bound_holds for r in recs) else EXIT_NONE


def cmd_min_n(args, out):
    f = args.field_obj
    seeds = _seeds(args)
    a = read_poly(args.a, f) if args.a else None
    b = read_poly(args.b, f) if args.b else None
    if (a is None) != (b is None):
        raise InputError("give both --a and --b or neither")
    lo = args.n_from if args.n_from is not None else 5
    hi = args.n_to if args.n_to is not None else 10
    rep = census.minimal_support_search(a, b, range(lo, hi + 1), seeds, k=args.k,
                                        max_columns=args.max_columns)
    if out.fmt == "json":
        doc = {"seeds": seeds, "primes": rep.primes, "first_n": rep.first_n,
               "dims": {str(n): d for n, d in sorted(rep.dims.items())},
               "disagreements": rep.disagreements}
        if rep.solution is not None:
            doc["solution"] = rep.solution.to_json()
        out.json(doc)
    else:
        out.write(rep.table())
        out.write(f"first n with a solution under every seed: {rep.first_n}")
    return EXIT_OK if rep.first_n is not None else EXIT_NONE


def cmd_verify(args, out):
    if args.file:
        doc = json.loads(_read_source(args.file))
        coeffs = [[poly_from_json(p) for p in row] for row in doc["equation"]]
        sol = [poly_from_json(p) for p in doc["solution"]]
        ok, res = ore.verify_solution(coeffs, sol)
        nonzero = any(sol)
        if out.fmt == "json":
            out.json({"verified": ok, "nonzero": nonzero})
        else:
            out.write(f"verified: {ok}, nonzero: {nonzero}")
        return EXIT_OK if ok and nonzero else EXIT_NONE
    names = list(suites.SUITES) if args.suite in (None, "all") else args.suite.split(",")
    unknown = [n for n in names if n not in suites.SUITES]
    if unknown:
        raise InputError(f"unknown suite(s) {unknown}; choose from {sorted(suites.SUITES)}")
    results = [suites.SUITES[n]() for n in names]
    if out.fmt == "json":
        out.json([{"suite": r.name, "ok": r.ok, "detail": r.detail} for r in results])
    else:
        for r in results:
            out.write(r.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_NONE


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q | fp:<p> | generic:<seed>[:<p>]")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for random inputs")
    common.add_argument("--max-columns", type=int, default=None)

    p = argparse.ArgumentParser(prog="thompson-ore",
                                description="Ore equations over the group ring of Thompson's monoid.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("normalize", cmd_normalize, "normal form of a word")
    sp.add_argument("word")
    sp = add("mul", cmd_mul, "product of monomials")
    sp.add_argument("words", nargs="+")
    sp = add("lcm", cmd_lcm, "least common right multiple")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--max-degree", type=int, default=None)
    sp = add("enumerate", cmd_enumerate, "list a finite set")
    sp.add_argument("--set", required=True)
    sp.add_argument("--limit", type=int)
    sp = add("count", cmd_count, "size of a finite set")
    sp.add_argument("--set", required=True)

    sp = add("solve-pair", cmd_solve_pair, "solve a u = b v on a support")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--set-v")
    sp.add_argument("--limit", type=int, default=1)
    sp.add_argument("--dump-matrix", help="write the linear system in triplet text format")
    sp = add("solve-system", cmd_solve_system, "solve a JSON system {coeffs, supports}")
    sp.add_argument("system")
    sp.add_argument("--dump-matrix", help="write the linear system in triplet text format")
    sp = add("reduce", cmd_reduce, "solve a u = b v by width reduction")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--homogenize", action="store_true")
    sp.add_argument("--max-extra-degree", type=int, default=6)
    sp.add_argument("--max-depth", type=int, default=64)

    sp = add("construct-deg1", cmd_construct_deg1, "explicit solution for two linear forms")
    sp.add_argument("--m", type=int)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--allow-degenerate", action="store_true")
    sp = add("basic-solution", cmd_basic_solution, "(x0 + alpha x2) u = (x1 + beta x2) v")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp = add("family", cmd_family, "member of the full solution family")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--w", help="w_0;w_1;... (w_j uses only x_j, x_{j+1}, ...)")
    sp.add_argument("--degree", type=int, default=3, help="degree of a random member")
    sp = add("qk", cmd_qk, "common multiple of linear forms in x0, x1")
    sp.add_argument("--pairs", help="alpha1:beta1,alpha2:beta2,...")
    sp.add_argument("--k", type=int, default=3)

    jobs = default_jobs()
    for name, fn, help_ in (("census-xm", cmd_census_xm, "doubling ratio of X_m"),
                            ("census-donnelly", cmd_census_donnelly, "size of the reduced S_4,n"),
                            ("census-s24", cmd_census_s24, "S_2,4 deficit census")):
        sp = add(name, fn, help_)
        sp.add_argument("--n-from", type=int)
        sp.add_argument("--n-to", type=int)
        sp.add_argument("--jobs", type=int, default=jobs)
        if name == "census-xm":
            sp.add_argument("--m", type=int, required=True)
        if name == "census-s24":
            sp.add_argument("--formula-only", action="store_true")
    sp = add("min-n", cmd_min_n, "smallest S_k,n carrying a solution")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--n-from", type=int)
    sp.add_argument("--n-to", type=int)
    sp.add_argument("--seeds", type=int, default=3, help="number of seeds 1..N")
    sp.add_argument("--seed-list", help="explicit comma-separated seeds")
    sp.add_argument("--jobs", type=int, default=jobs)
    sp = add("verify", cmd_verify, "re-check a solution file or run reproduction suites")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--suite", help="comma-separated suite names or 'all'")
    return p


def _parse_error(exc) -> str:
    text = getattr(exc, "text", None)
    pos = getattr(exc, "position", None)
    msg = str(exc).split(" at position ")[0]
    if text is None or pos is None:
        return f"error: {msg}"
    return f"error: {msg} at position {pos}\n  {text}\n  {' ' * pos}^"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Out(args)
    try:
        args.field_obj = parse_field(args.field)
        code = args.func(args, out)
    except (PolynomialParseError, MonomialParseError) as exc:
        print(_parse_error(exc), file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ParameterError, ValueError, KeyError, json.JSONDecodeError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        out.flush()
        return EXIT_NONE
    out.flush()
    return EXIT_OK if code is None else code


def main() -> None:
    sys.exit(run())
