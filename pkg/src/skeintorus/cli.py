"""Command line front end and the expression language.

Expressions combine curve images and exact scalars:

    sigma(alpha[a0]) + sigma(beta[1]) * sigma(beta[1])
    commA(sigma(alpha[a0]), sigma(t[a0] beta[1]))
    E[a0:1, c1:-2] * ( (-1)*A^2*Q[a0]^2 + (-1)*A^-2*Q[a0]^-2 )

Curve atoms follow the catalogue grammar `alpha[<edge>]`, `beta[<i>]`,
`gamma[<i>]`, `tau[<c-edge>]`, `taubar[<c-edge>]`, with full-twist prefixes
`t[<edge>]` and `t-[<edge>]` (the prefix nearest the curve name acts first).
The canonical text form of any element parses back to an equal element.

Subcommands: ``identities`` runs suites S1..S11, ``rep`` builds a
representation and verifies the requested checks, ``sigma`` evaluates an
expression.  Exit codes: 0 all checks pass, 1 a check failed, 2 bad usage
or configuration.  ``SKEIN_TORUS_THREADS`` caps suite parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .exactalg import Frac, LPoly, CycloField, parse_cyclo_scalar, InversionError
from .qtorus import QTElem
from .sausage import SausageGraph, CurveId, build_graph
from .embed import (SigmaTable, run_identity_suite, suite_ids, suite_supported,
                    ConfigError)
from . import repbuild


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_PUNCT = "[](),:+-*/^="


@dataclass
class _Tok:
    kind: str  # name | int | punct | end
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Tok("name", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(_Tok("punct", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    """Recursive descent over the expression grammar, tied to one graph."""

    def __init__(self, src: str, graph: SausageGraph, table: SigmaTable | None = None):
        self.toks = _tokenize(src)
        self.pos = 0
        self.graph = graph
        self.table = table

    def _table_(self) -> SigmaTable:
        if self.table is None:
            self.table = SigmaTable(self.graph)
        return self.table

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)

    # grammar -----------------------------------------------------------------

    def parse(self) -> QTElem:
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"trailing input {self.peek().text!r}")
        return value

    def expr(self) -> QTElem:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QTElem:
        value = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value * rhs.inverse()
                except InversionError:
                    self.fail("division by a non-invertible element")
        return value

    def factor(self) -> QTElem:
        if self.peek().text == "-":
            self.next()
            return -self.factor()
        value = self.atom()
        while self.peek().text == "^":
            self.next()
            sign = 1
            if self.peek().text == "-":
                self.next()
                sign = -1
            t = self.next()
            if t.kind != "int":
                raise ParseError("exponent must be an integer", t.line, t.col)
            n = sign * int(t.text)
            if n >= 0:
                value = value ** n
            else:
                try:
                    value = value.inverse() ** (-n)
                except InversionError:
                    self.fail("negative power of a non-invertible element")
        return value

    def atom(self) -> QTElem:
        t = self.peek()
        if t.text == "(":
            self.next()
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "int":
            self.next()
            return QTElem.scalar(self.graph, Frac.from_int(self.graph.ctx, int(t.text)))
        if t.kind == "name":
            if t.text == "A":
                self.next()
                return QTElem.scalar(self.graph,
                                     Frac.from_poly(LPoly.a_power(self.graph.ctx, 1)))
            if t.text in ("Q", "C"):
                self.next()
                self.expect("[")
                name = self.bracket_name()
                self.expect("]")
                var = f"{t.text}[{name}]"
                if var not in self.graph.ctx.index:
                    raise ParseError(f"unknown variable {var}", t.line, t.col)
                return QTElem.scalar(self.graph,
                                     Frac.from_poly(LPoly.monomial(self.graph.ctx, {var: 1})))
            if t.text == "E":
                return self.e_atom()
            if t.text == "sigma":
                self.next()
                self.expect("(")
                curve = self.curve()
                self.expect(")")
                return self._table_().image(curve)
            if t.text == "commA":
                self.next()
                self.expect("(")
                x = self.expr()
                self.expect(",")
                y = self.expr()
                self.expect(")")
                return (x * y).mul_a_power(1) - (y * x).mul_a_power(-1)
        self.fail(f"unexpected token {t.text!r}")

    def bracket_name(self) -> str:
        t = self.next()
        if t.kind not in ("name", "int"):
            raise ParseError("expected an identifier", t.line, t.col)
        return t.text

    def e_atom(self) -> QTElem:
        t0 = self.next()  # E
        self.expect("[")
        exps: dict[str, int] = {}
        while self.peek().text != "]":
            edge = self.bracket_name()
            if edge not in self.graph.internal_edges:
                raise ParseError(f"unknown edge {edge!r}", t0.line, t0.col)
            self.expect(":")
            sign = 1
            if self.peek().text == "-":
                self.next()
                sign = -1
            t = self.next()
            if t.kind != "int":
                raise ParseError("expected an integer exponent", t.line, t.col)
            exps[edge] = exps.get(edge, 0) + sign * int(t.text)
            if self.peek().text == ",":
                self.next()
        self.expect("]")
        return QTElem.e_monomial(self.graph, exps)

    def curve(self) -> CurveId:
        twists: list[tuple[str, int]] = []
        while self.peek().text == "t":
            save = self.pos
            self.next()
            sign = 1
            if self.peek().text == "-":
                self.next()
                sign = -1
            if self.peek().text != "[":
                self.pos = save
                break
            self.expect("[")
            edge = self.bracket_name()
            self.expect("]")
            if edge not in self.graph.internal_edges:
                self.fail(f"unknown edge {edge!r}")
            twists.append((edge, sign))
        t = self.next()
        if t.kind != "name" or t.text not in ("alpha", "beta", "gamma", "tau", "taubar"):
            raise ParseError(f"unknown curve kind {t.text!r}", t.line, t.col)
        self.expect("[")
        arg = self.bracket_name()
        self.expect("]")
        name = f"{t.text}[{arg}]"
        try:
            base = self.graph.curve_by_name(name)
        except KeyError:
            raise ParseError(f"unknown curve {name!r}", t.line, t.col) from None
        for edge, sign in reversed(twists):
            base = base.twisted(edge, sign)
        return base


def parse_expression(src: str, g: SausageGraph, table: SigmaTable | None = None) -> QTElem:
    """Parse and evaluate an expression against a graph's sigma table."""
    return _Parser(src, g, table).parse()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _build_graph_checked(genus: int, closed: bool) -> SausageGraph:
    try:
        return build_graph(genus, closed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _max_workers() -> int:
    raw = os.environ.get("SKEIN_TORUS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_identities(args) -> int:
    cfg = _load_config(args)
    genus = cfg.get("genus", args.genus)
    closed = cfg.get("closed", args.closed)
    suites = cfg.get("suite", args.suite)
    if genus is None:
        print("identities: --genus is required", file=sys.stderr)
        return 2
    graph = _build_graph_checked(genus, closed)
    if suites == "all":
        chosen = [s for s in suite_ids() if suite_supported(s, graph)]
    else:
        chosen = [s.strip() for s in suites.split(",") if s.strip()]
        for s in chosen:
            if s not in suite_ids():
                print(f"identities: unknown suite {s}", file=sys.stderr)
                return 2
            if not suite_supported(s, graph):
                print(f"identities: suite {s} needs a different graph "
                      f"(genus {genus}, {'closed' if closed else 'one boundary'})",
                      file=sys.stderr)
                return 2
    table = SigmaTable(graph)

    def run(s):
        return run_identity_suite(s, graph, mutate=args.mutate, table=table)

    workers = _max_workers()
    if workers > 1 and len(chosen) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run, chosen))
    else:
        reports = [run(s) for s in chosen]
    reports.sort(key=lambda r: int(r.suite[1:]))
    payload = [r.to_json() for r in reports]
    out = json.dumps(payload, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(out + "\n")
    print(out)
    ok = all(r.all_pass for r in reports)
    for r in reports:
        n_fail = sum(1 for i in r.identities if not i.passed)
        status = "pass" if n_fail == 0 else f"FAIL ({n_fail} identities)"
        print(f"{r.suite}: {status} [{r.wall_time_ms} ms]", file=sys.stderr)
    return 0 if ok else 1


def _parse_assignments(text: str) -> dict[str, str]:
    out = {}
    if not text:
        return out
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ConfigError(f"bad assignment {piece!r} (expected edge=value)")
        k, v = piece.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _load_config(args) -> dict:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            return json.load(fh)
    return {}


def cmd_rep(args) -> int:
    cfg = _load_config(args)
    p = cfg.get("p", args.p)
    genus = cfg.get("genus", args.genus)
    closed = cfg.get("closed", args.closed)
    if genus is None:
        print("rep: --genus is required", file=sys.stderr)
        return 2
    graph = _build_graph_checked(genus, closed)
    field = CycloField(p)
    defaults = [2, 5, 3, 7, 11, 13, 17, 19, 23, 29]
    x_raw = cfg.get("x", _parse_assignments(args.x or ""))
    y_raw = cfg.get("y", _parse_assignments(args.y or ""))
    x = {}
    for i, e in enumerate(graph.internal_edges):
        x[e] = parse_cyclo_scalar(field, str(x_raw[e])) if e in x_raw \
            else field.from_rational(defaults[i % len(defaults)])
    y = {e: parse_cyclo_scalar(field, str(y_raw[e]))
         for e in y_raw if e in graph.internal_edges} if y_raw else {}
    boundary_raw = cfg.get("boundary", args.boundary)
    boundary = parse_cyclo_scalar(field, str(boundary_raw)) if boundary_raw is not None else None

    table = SigmaTable(graph)
    try:
        rep = repbuild.build_rep(graph, p, x, y=y, boundary=boundary, field=field)
    except repbuild.GenericityError as exc:
        print(f"rep: {exc}", file=sys.stderr)
        return 2

    checks = [c.strip() for c in (cfg.get("checks", args.checks) or "").split(",") if c.strip()]
    results = {"p": p, "genus": genus, "closed": closed, "dim": rep.dim,
               "x": {e: str(v) for e, v in rep.x.items()},
               "y": {e: str(v) for e, v in rep.y.items()},
               "boundary": str(rep.boundary), "checks": []}
    ok = True
    if "shadows" in checks or not checks:
        report = repbuild.verify_cshadow(rep, table)
        results["checks"].append(report.to_json())
        ok = ok and report.all_pass
        shadows = {}
        for name in sorted(table.catalogue):
            shadows[name] = str(repbuild.classical_shadow(table.catalogue[name], rep, table))
        results["shadows"] = shadows
    if "irreducible" in checks:
        dim = repbuild.irreducibility_commutant(rep, table)
        results["checks"].append({"id": "commutant_dimension", "value": dim, "pass": dim == 1})
        ok = ok and dim == 1
    if "unicity" in checks:
        import random
        rng = random.Random(20260808)
        found = 0
        for _ in range(5):
            j = {e: rng.randrange(p) for e in graph.internal_edges}
            m = {e: rng.randrange(p) for e in graph.internal_edges}
            other = repbuild.gauge_shift(rep, j, m)
            if repbuild.find_intertwiner(rep, other, table) is not None:
                found += 1
        mismatched = repbuild.Rep(rep.p, rep.graph, rep.field, rep.space,
                                  rep.x, {**rep.y, graph.internal_edges[0]:
                                          rep.y[graph.internal_edges[0]] * field.from_rational(2)},
                                  rep.boundary)
        none_found = repbuild.find_intertwiner(rep, mismatched, table) is None
        results["checks"].append({"id": "unicity_gauge_orbits", "found": found,
                                  "pass": found == 5 and none_found})
        ok = ok and found == 5 and none_found
    out = json.dumps(results, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(out + "\n")
    print(out)
    return 0 if ok else 1


def cmd_sigma(args) -> int:
    graph = _build_graph_checked(args.genus, args.closed)
    value = parse_expression(args.expr, graph)
    if args.json:
        print(json.dumps(value.to_json(), indent=2))
    else:
        print(str(value))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="skein-torus",
        description="exact skein-algebra identities and root-of-unity representations")
    sub = parser.add_subparsers(dest="command", required=True)

    p_id = sub.add_parser("identities", help="run closed-form identity suites")
    p_id.add_argument("--genus", type=int, default=None)
    p_id.add_argument("--closed", action="store_true")
    p_id.add_argument("--suite", default="all", help="comma list S1..S11, or 'all'")
    p_id.add_argument("--json", default=None, help="write the report to a file")
    p_id.add_argument("--config", default=None, help="JSON config mirroring the flags")
    p_id.add_argument("--mutate", action="store_true",
                      help="inject an A->A^2 perturbation (suites must fail)")
    p_id.set_defaults(func=cmd_identities)

    p_rep = sub.add_parser("rep", help="build a representation and verify checks")
    p_rep.add_argument("--p", type=int, default=3)
    p_rep.add_argument("--genus", type=int, default=None)
    p_rep.add_argument("--closed", action="store_true")
    p_rep.add_argument("--x", default=None, help="edge=value list, e.g. a0=2,a1=5,c1=3")
    p_rep.add_argument("--y", default=None, help="edge=value list of gauge scalars")
    p_rep.add_argument("--boundary", default=None)
    p_rep.add_argument("--checks", default="shadows,irreducible,unicity")
    p_rep.add_argument("--json", default=None)
    p_rep.add_argument("--config", default=None, help="JSON representation config file")
    p_rep.set_defaults(func=cmd_rep)

    p_sig = sub.add_parser("sigma", help="evaluate an expression")
    p_sig.add_argument("--genus", type=int, required=True)
    p_sig.add_argument("--closed", action="store_true")
    p_sig.add_argument("--expr", required=True)
    p_sig.add_argument("--json", action="store_true")
    p_sig.set_defaults(func=cmd_sigma)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParseError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
