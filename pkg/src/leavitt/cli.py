"""Command-line front end: ``lpa <subcommand> ...``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .algebra import Element
from .chenmod import ModuleError, ModuleVector, act, path_from_literal, twisted_act
from .field import FieldError, field_name, using_field
from .graph import Graph, GraphError, classify_vertex, load_graph, rose
from .matrix import AlgMatrix, InvertiblePair, MatrixError, mk_invertible
from .morphism import (
    Automorphism, Endo, EndoError, WitnessRejected, certify_automorphism, matrix_inverse, matrix_iso, mk_fu,
    mk_phi, try_fixed_point_shortcut, unit_inverse,
)
from .parse import ParseError, parse_element, parse_matrix, parse_path_literal
from .suite import CHECKS, CheckResult, Report, verify_paper
from .twist import TwistContext, TwistError, check_iso_criterion, image_membership, mk_theta

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

USER_ERRORS = (ParseError, GraphError, MatrixError, EndoError, ModuleError, TwistError, FieldError, OSError)


class UsageError(ValueError):
    pass


# helpers shared by subcommands

def resolve_graph(spec: str) -> Graph:
    """``rose:N`` or a path to a graph file."""
    if spec.startswith("rose:"):
        try:
            return rose(int(spec[5:]))
        except ValueError:
            raise UsageError(f"bad rose spec {spec!r}") from None
    return load_graph(spec)


def _corner(g: Graph, name: str | None) -> int:
    if name is None:
        if g.num_vertices != 1:
            raise UsageError("this graph has several vertices: pass --corner")
        return 0
    return g.vertex(name)


def read_matrix(src: str, g: Graph, w: int, env: dict | None = None) -> AlgMatrix:
    return AlgMatrix(g, w, parse_matrix(src, g, w, env))


def invertible_from(P: AlgMatrix, inv_src: str | None, env: dict | None = None, search: int = 4) -> InvertiblePair:
    """Pair ``P`` with an inverse given on the command line or found by bounded search."""
    if inv_src is not None:
        return mk_invertible(P, read_matrix(inv_src, P.graph, P.w, env))
    Pinv = matrix_inverse(P, search)
    if Pinv is None:
        raise UsageError(f"no inverse of {P} found with |p|,|q| <= {search}; pass it explicitly")
    return mk_invertible(P, Pinv)


def unit_pair(u: Element, inv_src: str | None, env: dict | None = None, search: int = 4) -> tuple:
    if inv_src is not None:
        return u, parse_element(inv_src, u.graph, env)
    uinv = unit_inverse(u, search)
    if uinv is None:
        raise UsageError(f"no inverse of {u} found with |p|,|q| <= {search}; pass it explicitly")
    return u, uinv


def build_endo(args, g: Graph) -> Endo:
    if args.phi is not None:
        w = _corner(g, args.corner)
        v = g.vertex(args.source) if args.source else w
        edges = args.edges.split(",") if args.edges else [e for e in range(g.num_edges) if g.src[e] == v and g.rng[e] == w]
        P = invertible_from(read_matrix(args.phi, g, w), args.phi_inv, search=args.search)
        return mk_phi(g, v, w, edges, P)
    u = parse_element(args.fu, g)
    return mk_fu(*unit_pair(u, args.inv, search=args.search))


def witness_from(src: str, g: Graph, w: int, search: int) -> InvertiblePair:
    """A witness is a matrix literal, or a unit ``s`` standing for its matrix."""
    if src.lstrip().startswith("["):
        return invertible_from(read_matrix(src, g, w), None, search=search)
    s, sinv = unit_pair(parse_element(src, g), None, search=search)
    return mk_invertible(matrix_iso(s), matrix_iso(sinv))


def build_automorphism(f: Endo, certify: str | None, search: int) -> Automorphism:
    """Certify ``f`` from an explicit witness or else the fixed-point shortcut."""
    if certify is not None:
        return certify_automorphism(f, witness_from(certify, f.graph, f.provenance.w if f.provenance else 0, search))
    aut = try_fixed_point_shortcut(f)
    if aut is not None:
        return aut
    raise UsageError("cannot certify this endomorphism automatically: pass --certify WITNESS")


def _add_endo_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--phi", metavar="MATRIX", help="build phi_P from a matrix literal")
    src.add_argument("--fu", metavar="UNIT", help="build f_u from a unit of a rose algebra")
    p.add_argument("--phi-inv", metavar="MATRIX", help="inverse of --phi (searched for if omitted)")
    p.add_argument("--inv", metavar="UNIT", help="inverse of --fu (searched for if omitted)")
    p.add_argument("--corner", metavar="VERTEX", help="range vertex w of the edges twisted by --phi")
    p.add_argument("--source", metavar="VERTEX", help="source vertex v of those edges (default: w)")
    p.add_argument("--edges", metavar="E1,E2,...", help="edge list (default: all edges v -> w)")
    p.add_argument("--certify", metavar="WITNESS", help="matrix Q (or a unit) with f(Q) = P^-1")
    p.add_argument("--search", type=int, default=4, metavar="L", help="path-length bound for inverse searches")


# subcommands

def cmd_graph(args) -> int:
    g = load_graph(args.file)
    print(g.render(), end="")
    for v in g.vertices:
        kind = classify_vertex(g, v)
        vi = g.vertex(v)
        extra = f", special edge {g.edge_name(g.special[vi])}" if g.special[vi] is not None else ""
        print(f"# {v}: {kind}{extra}")
    return EXIT_OK


def cmd_eval(args) -> int:
    g = resolve_graph(args.graph)
    a = parse_element(args.expr, g)
    print(a)
    if args.parts:
        for d, part in sorted(a.graded_parts().items()):
            print(f"  degree {d}: {part}")
    return EXIT_OK


def cmd_endo(args) -> int:
    g = resolve_graph(args.graph)
    f = build_endo(args, g)
    for line in f.describe():
        print(line)
    print(f"graded: {'yes' if f.graded else 'no'}")
    if f.matrix is not None:
        print(f"P = {f.matrix.P}")
    if args.apply:
        print(f"f({args.apply}) = {f(parse_element(args.apply, g))}")
    if args.certify is not None or args.try_shortcut:
        try:
            aut = build_automorphism(f, args.certify, args.search)
        except (WitnessRejected, UsageError) as exc:
            print(f"FAIL automorphism: {exc}")
            return EXIT_FAIL
        via = "witness" if args.certify is not None else "fixed-point shortcut"
        print(f"PASS automorphism certified via {via}; witness Q = {aut.witness.P}")
    return EXIT_OK


def _twist_context(args, g: Graph) -> TwistContext:
    return TwistContext(build_automorphism(build_endo(args, g), args.certify, args.search))


def cmd_twist_eval(args) -> int:
    g = resolve_graph(args.graph)
    ctx = _twist_context(args, g)
    a, b = parse_element(args.a, g), parse_element(args.b, g)
    print(ctx.mul(a, b))
    return EXIT_OK


def cmd_twist_theta(args) -> int:
    g = resolve_graph(args.graph)
    theta = mk_theta(_twist_context(args, g))
    for e in range(g.num_edges):
        print(f"theta({g.edge_name(e)}') = {theta.images[('g', e)]}")
    if args.member:
        print(f"membership: {image_membership(theta, parse_element(args.member, g), args.bound)}")
    if args.check_iso:
        report = check_iso_criterion(theta, args.mmax, args.bound)
        for m, name, ij, res in report.checked if args.verbose else ():
            print(f"  m={m} {name}{ij}: {res}")
        print(f"criterion: {report.verdict}")
    return EXIT_OK


def cmd_module_act(args) -> int:
    g = resolve_graph(args.graph)
    path = path_from_literal(parse_path_literal(args.path), g, args.bound)
    a = parse_element(args.expr, g)
    if args.twist is None:
        print(act(a, ModuleVector.of(path)))
        return EXIT_OK
    P = read_matrix(args.twist, g, _corner(g, None))
    if not P.is_scalar():
        raise UsageError("module twists take scalar matrices")
    print(twisted_act(P.scalar_rows(), a, ModuleVector.of(path)))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = verify_paper(args.only, jobs=args.jobs)
    print(f"# field {field_name()}")
    print(report.render(timing=not args.no_timing))
    return EXIT_OK if report.ok else EXIT_FAIL


# scripts

class ScriptError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")


def run_script(path: str, timing: bool = True) -> Report:
    """Execute a script; raises :class:`ScriptError` (with file:line) on bad input.

    Commands, one per line (``#`` starts a comment)::

        graph rose:2 | graph FILE
        let NAME = EXPR
        matrix NAME = [..] [inverse [..]]
        endo NAME = fu EXPR [inverse EXPR] | phi MATRIX [inverse MATRIX]
        assert EXPR == EXPR | assert EXPR != EXPR

    Endomorphisms bound with ``endo`` can be applied inside expressions as
    ``NAME(EXPR)``. Every assertion becomes one report line.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    base = os.path.dirname(os.path.abspath(path))
    g = rose(2)
    env: dict = {}
    mats: dict = {}
    report = Report()
    for lineno, raw in enumerate(lines, 1):
        where = f"{path}:{lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cmd, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if cmd == "graph":
                spec = rest if rest.startswith("rose:") or os.path.isabs(rest) else os.path.join(base, rest)
                g = resolve_graph(spec)
                env, mats = {}, {}
            elif cmd == "let":
                name, expr = _binding(rest)
                env[name] = parse_element(expr, g, env)
            elif cmd == "matrix":
                name, body = _binding(rest)
                src, _, inv = body.partition(" inverse ")
                P = read_matrix(mats.get(src.strip(), src), g, _corner(g, None), env)
                mats[name] = src.strip()
                env[name] = invertible_from(P, inv.strip() or None, env)
            elif cmd == "endo":
                name, body = _binding(rest)
                env[name] = _script_endo(body, g, env, mats)
            elif cmd == "assert":
                report.results.append(_script_assert(rest, g, env, lineno))
            else:
                raise UsageError(f"unknown command {cmd!r}")
        except ScriptError:
            raise
        except (UsageError, *USER_ERRORS) as exc:
            raise ScriptError(where, str(exc)) from None
    if not timing:
        for r in report.results:
            r.elapsed = 0.0
    return report


def _binding(rest: str) -> tuple:
    name, eq, body = rest.partition("=")
    name = name.strip()
    if not eq or not name.isidentifier() or not body.strip():
        raise UsageError("expected NAME = VALUE")
    return name, body.strip()


def _script_endo(body: str, g: Graph, env: dict, mats: dict) -> Endo:
    kind, _, spec = body.partition(" ")
    src, _, inv = spec.partition(" inverse ")
    src, inv = src.strip(), inv.strip() or None
    if kind == "fu":
        return mk_fu(*unit_pair(parse_element(src, g, env), inv and inv, env))
    if kind == "phi":
        pair = env.get(src)
        if not isinstance(pair, InvertiblePair):
            pair = invertible_from(read_matrix(src, g, _corner(g, None), env), inv, env)
        w = pair.w
        edges = [e for e in range(g.num_edges) if g.src[e] == w and g.rng[e] == w]
        return mk_phi(g, w, w, edges, pair)
    raise UsageError(f"endo expects 'fu' or 'phi', got {kind!r}")


def _script_assert(rest: str, g: Graph, env: dict, lineno: int) -> CheckResult:
    for op in ("==", "!="):
        if op in rest:
            lhs_src, rhs_src = (s.strip() for s in rest.split(op, 1))
            break
    else:
        raise UsageError("assert needs '==' or '!='")
    t0 = time.perf_counter()
    lhs = parse_element(lhs_src, g, env)
    rhs = parse_element(rhs_src, g, env)
    ok = (lhs == rhs) == (op == "==")
    name = f"line {lineno}: {lhs_src} {op} {rhs_src}"
    detail = "" if ok else f"lhs = {lhs}; rhs = {rhs}"
    return CheckResult(name, "PASS" if ok else "FAIL", time.perf_counter() - t0, detail)


def cmd_run(args) -> int:
    report = run_script(args.script)
    print(report.render(timing=not args.no_timing))
    return EXIT_OK if report.ok else EXIT_FAIL


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lpa", description="Exact computations in Leavitt path algebras.")
    ap.add_argument("--field", metavar="SPEC", help="rational or fp:<prime> (overrides LPA_FIELD)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="load, validate and describe a graph file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_graph)

    def with_graph(q):
        q.add_argument("-g", "--graph", default="rose:2", help="graph file or rose:N (default rose:2)")
        return q

    p = with_graph(sub.add_parser("eval", help="normalize an expression"))
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("--parts", action="store_true", help="also print homogeneous components")
    p.set_defaults(fn=cmd_eval)

    p = with_graph(sub.add_parser("endo", help="build phi_P or f_u and show generator images"))
    _add_endo_args(p)
    p.add_argument("--apply", metavar="EXPR", help="apply the endomorphism to an element")
    p.add_argument("--try-shortcut", action="store_true", help="certify via the fixed-point shortcut")
    p.set_defaults(fn=cmd_endo)

    tw = sub.add_parser("twist", help="Zhang twists by a certified graded automorphism")
    tsub = tw.add_subparsers(dest="twist_command", required=True)
    p = with_graph(tsub.add_parser("eval", help="twisted product a * b"))
    _add_endo_args(p)
    p.add_argument("-a", "--expr", dest="a", required=True, metavar="EXPR", help="left factor")
    p.add_argument("-b", "--star", dest="b", required=True, metavar="EXPR", help="right factor")
    p.set_defaults(fn=cmd_twist_eval)
    p = with_graph(tsub.add_parser("theta", help="the embedding theta_P and its image"))
    _add_endo_args(p)
    p.add_argument("--member", metavar="EXPR", help="bounded search for a preimage")
    p.add_argument("--check-iso", action="store_true", help="run the bounded isomorphism criterion")
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--bound", type=int, default=2, metavar="L")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(fn=cmd_twist_theta)

    md = sub.add_parser("module", help="Chen modules")
    msub = md.add_subparsers(dest="module_command", required=True)
    p = with_graph(msub.add_parser("act", help="act by an element on an infinite path"))
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("--path", required=True, help="e.g. 'e2 (e1 e2)^inf' or 'oracle:thue-morse[e1,e2]'")
    p.add_argument("--twist", metavar="MATRIX", help="scalar matrix P for the twisted module")
    p.add_argument("--bound", type=int, default=64, help="inspection bound for oracle paths")
    p.set_defaults(fn=cmd_module_act)

    p = sub.add_parser("verify-paper", help="replay every worked example as pass/fail checks")
    p.add_argument("--only", action="append", choices=sorted(CHECKS), metavar="NAME")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=cmd_verify_paper)

    p = sub.add_parser("run", help="execute a script of bindings and assertions")
    p.add_argument("script")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(fn=cmd_run)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        spec = args.field or os.environ.get("LPA_FIELD") or "rational"
        with using_field(spec):
            return args.fn(args)
    except (UsageError, ScriptError, *USER_ERRORS) as exc:
        print(f"lpa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
