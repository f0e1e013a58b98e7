"""Command-line front end.

Commands: validate, invariants, intermediates, close, realization-check,
virtual-racah.  Reports go to stdout (or --out); diagnostics and progress go
to stderr.  Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget
exceeded.  Identical configurations produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog, liealg
from .closure import ClosureConfig, close_algebra, report_to_json
from .commpoly import CommPoly
from .copies import intermediate_casimirs
from .errors import (
    BudgetExceeded,
    CasimirForgeError,
    NotExpressible,
    ParseError,
    ValidationError,
)
from .invariants import casimir_operators, polynomial_invariants, verify_realization
from .rationals import QQ
from .uea import DEFAULT_TERM_BUDGET, EnvelopingAlgebra, render
from .workflows import virtual_racah

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(CasimirForgeError):
    pass


@dataclass
class RunConfig:
    command: str
    source: str            # catalog name or file path
    from_file: bool
    max_degree: int = 4
    n_copies: int = 3
    depth_limit: int = None
    g_deg: int = None
    c_deg: int = None
    projective: bool = None
    center_reduce: bool = None
    fmt: str = "text"
    out: str = None
    budget_terms: int = DEFAULT_TERM_BUDGET
    assignment_file: str = None

    def __post_init__(self):
        if self.max_degree < 1:
            raise UsageError("--max-degree must be >= 1")
        if self.n_copies < 1:
            raise UsageError("--copies must be >= 1")
        if not self.from_file and self.source not in catalog.names():
            raise UsageError(
                "unknown catalog name %r (known: %s)"
                % (self.source, ", ".join(catalog.names()))
            )


def _build_parser():
    p = argparse.ArgumentParser(
        prog="casimir-forge",
        description="Polynomial algebras from intermediate Casimir invariants",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("validate", "check structure constants and count invariants"),
        ("invariants", "compute Casimir operators"),
        ("intermediates", "intermediate Casimirs and their commutator table"),
        ("close", "run the nested-commutator closure search"),
        ("realization-check", "verify a classical (Poisson) realization"),
        ("virtual-racah", "virtual copy of the Levi factor and its Racah algebra"),
    ]:
        sp = sub.add_parser(name, help=help_)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--catalog", metavar="NAME", help="built-in algebra name")
        src.add_argument("--file", metavar="PATH", help="algebra definition JSON")
        sp.add_argument("--max-degree", type=int, default=4, metavar="P")
        sp.add_argument("--copies", type=int, default=3, metavar="N")
        sp.add_argument("--depth-limit", type=int, default=None, metavar="K")
        sp.add_argument("--expr-degree", type=int, default=None, metavar="G")
        sp.add_argument("--central-degree", type=int, default=None, metavar="C")
        sp.add_argument("--projective", action="store_true", default=None)
        sp.add_argument("--center-reduce", action="store_true", default=None)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
        fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
        sp.add_argument("--out", metavar="PATH", default=None)
        sp.add_argument("--budget-terms", type=int, default=DEFAULT_TERM_BUDGET, metavar="T")
        if name in ("realization-check", "virtual-racah"):
            sp.add_argument("--assignment", metavar="PATH", default=None,
                            help="assignment / definitions JSON file")
        sp.set_defaults(fmt=None)
    return p


def _config_from_args(args):
    return RunConfig(
        command=args.command,
        source=args.catalog or args.file,
        from_file=args.catalog is None,
        max_degree=args.max_degree,
        n_copies=args.copies,
        depth_limit=args.depth_limit,
        g_deg=args.expr_degree,
        c_deg=args.central_degree,
        projective=args.projective,
        center_reduce=args.center_reduce,
        fmt=args.fmt or "text",
        out=args.out,
        budget_terms=args.budget_terms,
        assignment_file=getattr(args, "assignment", None),
    )


def _load_algebra(cfg):
    if cfg.from_file:
        return liealg.load(cfg.source), None
    entry = catalog.entry(cfg.source)
    return entry.algebra, entry


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg, doc):
    _emit(cfg, json.dumps(doc, indent=2, sort_keys=True) + "\n")


# -- commands ---------------------------------------------------------------


def _cmd_validate(cfg):
    alg, _ = _load_algebra(cfg)
    diags = liealg.validate(alg)
    count = liealg.invariant_count(alg)
    doc = {
        "algebra": alg.name,
        "dim": alg.dim,
        "central": sorted(alg.central),
        "diagnostics": diags,
        "invariant_count": count,
    }
    if cfg.fmt == "json":
        _emit_json(cfg, doc)
    else:
        lines = ["algebra %s (dim %d)" % (alg.name, alg.dim)]
        lines.append("central generators: %s" % (sorted(alg.central) or "none"))
        lines.append("Jacobi identity: %s" % ("ok" if not diags else "FAILED"))
        for d in diags:
            lines.append("  " + d)
        lines.append("independent invariants N(g) = %d" % count)
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_DOMAIN if diags else EXIT_OK


def _cmd_invariants(cfg):
    alg, entry = _load_algebra(cfg)
    basis = polynomial_invariants(alg, cfg.max_degree)
    engine = EnvelopingAlgebra(alg, n_copies=1, term_budget=cfg.budget_terms)
    center_reduce = cfg.center_reduce
    if center_reduce is None:
        center_reduce = entry.center_reduce if entry else False
    ops = casimir_operators(engine, cfg.max_degree, center_reduce=center_reduce, basis=basis)
    doc = {
        "algebra": alg.name,
        "max_degree": cfg.max_degree,
        "center_reduce": center_reduce,
        "invariants": [q.render() for q in basis.polys],
        "operators": [render(op) for op in ops],
    }
    if cfg.fmt == "json":
        _emit_json(cfg, doc)
    else:
        lines = ["algebra %s: %d invariant generator(s) up to degree %d"
                 % (alg.name, len(ops), cfg.max_degree)]
        for q, op in zip(basis.polys, ops):
            lines.append("  F = %s" % q.render())
            lines.append("  C = %s" % op)
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_intermediates(cfg):
    alg, entry = _load_algebra(cfg)
    if entry is not None:
        patterns = entry.nonlinear_invariants()
        center_reduce = entry.center_reduce if cfg.center_reduce is None else cfg.center_reduce
    else:
        basis = polynomial_invariants(alg, cfg.max_degree)
        patterns = tuple(q for q in basis.polys if q.total_degree() >= 2)
        center_reduce = bool(cfg.center_reduce)
    engine = EnvelopingAlgebra(alg, n_copies=cfg.n_copies, term_budget=cfg.budget_terms)
    els = intermediate_casimirs(engine, patterns, center_reduce=center_reduce)
    table = []
    for i, a in enumerate(els):
        for b in els[i + 1 :]:
            comm = engine.commutator(a.value, b.value)
            table.append(
                {
                    "left": a.render(),
                    "right": b.render(),
                    "zero": comm.is_zero(),
                    "terms": comm.num_terms(),
                }
            )
    doc = {
        "algebra": alg.name,
        "n_copies": cfg.n_copies,
        "elements": [{"label": el.render(), "value": render(el.value)} for el in els],
        "commutators": table,
    }
    if cfg.fmt == "json":
        _emit_json(cfg, doc)
    else:
        lines = ["intermediate Casimir invariants of %s over %d copies"
                 % (alg.name, cfg.n_copies)]
        for el in els:
            lines.append("  %s = %s" % (el.render(), render(el.value)))
        lines.append("pairwise commutators:")
        for row in table:
            status = "0" if row["zero"] else "nonzero (%d terms)" % row["terms"]
            lines.append("  [%s, %s] = %s" % (row["left"], row["right"], status))
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _closure_config(cfg, entry):
    defaults = dict(entry.closure) if entry else {}
    cc = ClosureConfig()
    for k, v in defaults.items():
        setattr(cc, k, v)
    cc.n_copies = cfg.n_copies
    cc.max_degree = cfg.max_degree
    cc.term_budget = cfg.budget_terms
    if cfg.depth_limit is not None:
        cc.depth_limit = cfg.depth_limit
    if cfg.g_deg is not None:
        cc.g_deg = cfg.g_deg
    if cfg.c_deg is not None:
        cc.c_deg = cfg.c_deg
    if cfg.projective is not None:
        cc.projective = cfg.projective
    if cfg.center_reduce is not None:
        cc.center_reduce = cfg.center_reduce
    return cc


def _closure_text(report):
    lines = ["algebra %s: %s" % (report.algebra, report.verdict)]
    if report.k_star is not None:
        lines.append("closure depth k* = %d" % report.k_star)
    for k in sorted(report.sets):
        labels = [l.render() for l in report.sets[k]]
        lines.append("N_%d generators: %s" % (k, ", ".join(labels) if labels else "(none)"))
    if report.relations:
        lines.append("relations:")
        for rel in report.relations:
            lines.append("  [%s] %s" % (rel.kind, rel.render()))
    nonzero = [p for p in report.expressions if p.expression.terms]
    zero = [p for p in report.expressions if not p.expression.terms]
    if nonzero:
        lines.append("closure expressions:")
        for p in nonzero:
            lhs = "[%s, %s]" % (p.left.render(), p.right.render())
            lines.append("  " + p.expression.render(lhs))
    if zero:
        lines.append("vanishing commutators:")
        for p in zero:
            lines.append("  [%s, %s] = 0" % (p.left.render(), p.right.render()))
    return "\n".join(lines) + "\n"


def _cmd_close(cfg):
    alg, entry = _load_algebra(cfg)
    cc = _closure_config(cfg, entry)
    progress = (lambda msg: print(msg, file=sys.stderr)) if cfg.fmt == "text" else (
        lambda msg: print(msg, file=sys.stderr)
    )
    source = entry if entry is not None else alg
    report = close_algebra(source, cc, progress=progress)
    if cfg.fmt == "json":
        _emit_json(cfg, report_to_json(report))
    else:
        _emit(cfg, _closure_text(report))
    return EXIT_OK


def _load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %r: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %r: %s" % (path, exc)) from exc


def _poly_from_doc(doc, variables):
    terms = {}
    for t in doc:
        try:
            num = int(t["num"])
            den = int(t.get("den", 1))
            mono = t.get("monomial", {})
            exps = [0] * len(variables)
            for name, e in mono.items():
                exps[variables.index(name)] = int(e)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError("malformed polynomial term %r" % (t,)) from exc
        key = tuple(exps)
        terms[key] = terms.get(key, QQ(0)) + QQ(num, den)
    return CommPoly(tuple(variables), terms)


def _cmd_realization_check(cfg):
    if not cfg.assignment_file:
        raise UsageError("realization-check requires --assignment PATH")
    alg, _ = _load_algebra(cfg)
    doc = _load_json_file(cfg.assignment_file)
    try:
        variables = [str(v) for v in doc["variables"]]
        pairs = [(str(q), str(p)) for q, p in doc["pairs"]]
        assignments = doc["assignments"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed assignment file: %s" % exc) from exc
    rho = {}
    for i in range(1, alg.dim + 1):
        key = str(i)
        if key not in assignments:
            raise ParseError("assignment missing generator %d" % i)
        rho[i] = _poly_from_doc(assignments[key], variables)
    ok = verify_realization(alg, rho, pairs)
    out = {"algebra": alg.name, "realization_ok": ok}
    if cfg.fmt == "json":
        _emit_json(cfg, out)
    else:
        _emit(cfg, "realization check for %s: %s\n" % (alg.name, "ok" if ok else "FAILED"))
    return EXIT_OK if ok else EXIT_DOMAIN


def _cmd_virtual_racah(cfg):
    alg, entry = _load_algebra(cfg)
    defs = None
    scale_index = None
    if cfg.assignment_file:
        doc = _load_json_file(cfg.assignment_file)
        try:
            scale_index = int(doc["scale_index"])
            defs = {}
            for key, terms in doc["defs"].items():
                parsed = []
                for t in terms:
                    coeff = (int(t["num"]), int(t.get("den", 1)))
                    word = tuple((int(g), int(e)) for g, e in t["word"])
                    parsed.append((coeff, word))
                defs[int(key)] = parsed
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed definitions file: %s" % exc) from exc
    elif entry is None or entry.virtual is None:
        raise UsageError(
            "virtual-racah needs --assignment definitions or a catalog entry "
            "with built-in virtual-copy data"
        )
    report = virtual_racah(entry, defs=defs, scale_index=scale_index,
                           n_copies=cfg.n_copies)
    doc = {
        "algebra": alg.name,
        "embedding_ok": report.embedding_ok,
        "substitution_ok": report.substitution_ok,
        "rescaled_ok": report.rescaled_ok,
        "collapse_ok": report.collapse_ok,
        "racah_ok": report.racah_ok,
        "zero_sum_ok": report.zero_sum_ok,
        "ok": report.ok(),
    }
    if cfg.fmt == "json":
        _emit_json(cfg, doc)
    else:
        lines = ["virtual Racah pipeline for %s:" % alg.name]
        for key in ("embedding_ok", "substitution_ok", "rescaled_ok",
                    "collapse_ok", "racah_ok", "zero_sum_ok"):
            lines.append("  %-16s %s" % (key, "ok" if doc[key] else "FAILED"))
        lines.append("overall: %s" % ("ok" if report.ok() else "FAILED"))
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok() else EXIT_DOMAIN


_COMMANDS = {
    "validate": _cmd_validate,
    "invariants": _cmd_invariants,
    "intermediates": _cmd_intermediates,
    "close": _cmd_close,
    "realization-check": _cmd_realization_check,
    "virtual-racah": _cmd_virtual_racah,
}


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValidationError, NotExpressible) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
