"""Relations among labeled elements, nested commutator sets, and the
closure search.

The search mirrors the hand computation: start from the two-index
intermediate Casimirs N0, build right-nested commutators level by level,
prune each new commutator that already lies in the span of what exists
(coefficients may be polynomials in designated central generators, i.e.
membership is taken over the fraction field of the central subring), and
declare closure at the first depth k where every pairwise commutator
[N_a, N_b] (a, b <= k) and every [N_0, N_k] lies in the span of ordered
products of the retained generators.

Every relation and expression recorded anywhere is re-expanded through the
enveloping-algebra kernel and must reproduce the exact zero / exact identity
before it is emitted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .commpoly import CommPoly
from .centralmod import CentralSplitModule, exact_div, frac_mul, poly_lcm
from .copies import (
    CasimirLabel,
    LabeledElement,
    NestedLabel,
    default_subsets,
    intermediate_casimirs,
    label_key,
)
from .errors import BudgetExceeded, NotExpressible, ValidationError
from .invariants import polynomial_invariants
from .linalg import ColumnSpace, rref_vectors
from .rationals import QQ, qstr
from .uea import EnvelopingAlgebra, NCPoly, render, render_gid


# -- central rings -----------------------------------------------------------


@dataclass(frozen=True)
class CentralSymbol:
    name: str
    value: NCPoly


class CentralRing:
    """Ordered list of designated central symbols with NCPoly bindings.

    verify() checks that every bound element commutes with every element of
    the generating set; close_algebra only binds verified symbols.
    """

    def __init__(self, symbols):
        self.symbols = tuple(symbols)
        self.names = tuple(s.name for s in self.symbols)

    def __len__(self):
        return len(self.symbols)

    def verify(self, engine, elements):
        bad = []
        for s in self.symbols:
            for el in elements:
                if not engine.commutator(s.value, el.value).is_zero():
                    bad.append((s.name, el.render()))
        return bad

    def monomials(self, engine, c_deg):
        """(exponent tuple, expanded NCPoly) for every monomial of degree <=
        c_deg in the symbols, graded-lex ascending; the constant comes first."""
        out = []
        n = len(self.symbols)
        values = [s.value for s in self.symbols]
        exps_list = [()]  # placeholder replaced below
        all_exps = []
        for deg in range(0, c_deg + 1):
            for combo in itertools.combinations_with_replacement(range(n), deg):
                e = [0] * n
                for i in combo:
                    e[i] += 1
                all_exps.append(tuple(e))
        all_exps = sorted(set(all_exps), key=CommPoly.grlex_key)
        for e in all_exps:
            poly = NCPoly.constant(1)
            for i, k in enumerate(e):
                for _ in range(k):
                    poly = engine.multiply(poly, values[i])
            out.append((e, poly))
        return out

    def coeff_poly(self, exps_coeffs):
        """CommPoly over the symbol names from {exponent tuple: coeff}."""
        return CommPoly(self.names, exps_coeffs)


# -- relations and expressions ------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """sum coeff(central) * element = 0; kinds: linear | central-coefficient."""

    kind: str
    terms: tuple  # ((CommPoly coeff, label), ...)

    def render(self):
        parts = []
        for coeff, label in self.terms:
            parts.append("(%s)*%s" % (coeff.render(), label.render()))
        return " + ".join(parts) + " = 0"


@dataclass(frozen=True)
class Expression:
    """multiplier(central) * target = sum coeff(central) * product(labels)."""

    multiplier: CommPoly
    terms: tuple  # ((CommPoly coeff, tuple of labels), ...)

    def is_zero(self):
        return not self.terms

    def render(self, lhs="target"):
        mono = self.multiplier.render()
        lead = lhs if mono == "1" else "(%s)*%s" % (mono, lhs)
        if not self.terms:
            return "%s = 0" % lead
        parts = []
        for coeff, labels in self.terms:
            prod = "*".join(l.render() for l in labels) if labels else "1"
            parts.append("(%s)*%s" % (coeff.render(), prod))
        return "%s = %s" % (lead, " + ".join(parts))


def expand_relation(engine, relation, bindings, ring):
    """Exact re-expansion of a relation; returns the NCPoly (zero iff valid)."""
    total = NCPoly.zero()
    for coeff, label in relation.terms:
        piece = _expand_central_coeff(engine, coeff, ring)
        total = total + engine.multiply(piece, bindings[label])
    return total


def _expand_central_coeff(engine, coeff, ring):
    by_name = {s.name: s.value for s in ring.symbols}
    total = NCPoly.zero()
    for exps, c in coeff.terms.items():
        piece = NCPoly.constant(c)
        for name, k in zip(coeff.variables, exps):
            for _ in range(k):
                piece = engine.multiply(piece, by_name[name])
        total = total + piece
    return total


def expand_expression(engine, expression, target, bindings, ring):
    """lhs - rhs of an expression after exact expansion (zero iff valid)."""
    lhs = engine.multiply(_expand_central_coeff(engine, expression.multiplier, ring), target)
    rhs = NCPoly.zero()
    for coeff, labels in expression.terms:
        piece = _expand_central_coeff(engine, coeff, ring)
        for l in labels:
            piece = engine.multiply(piece, bindings[l])
        rhs = rhs + piece
    return lhs - rhs


# -- linear relations (spec-exact, plain rational solve) ----------------------


def linear_relations(engine, elements, ring, c_deg=0, entry_budget=None):
    """Basis of all relations sum P_m(central) * E_m = 0, deg P_m <= c_deg.

    Found by expanding candidate columns mu-hat * E_m in the PBW basis and
    solving one exact rational system.  The basis is returned in reduced
    echelon form over the deterministic unknown ordering (elements in the
    given order, central monomials graded-lex).  Every relation is
    re-expanded and checked before being returned.
    """
    mus = ring.monomials(engine, c_deg)
    space = ColumnSpace(entry_budget=entry_budget)
    deps = []
    for ei, el in enumerate(elements):
        for mi, (exps, mpoly) in enumerate(mus):
            val = engine.multiply(mpoly, el.value)
            key = (ei, mi)
            d = space.add(dict(val.terms), key)
            if d is not None:
                d = {k: -v for k, v in d.items()}
                d[key] = QQ(1)
                deps.append(d)
    order = {}
    for ei in range(len(elements)):
        for mi in range(len(mus)):
            order[(ei, mi)] = (ei, mi)
    reduced = rref_vectors(deps, order)
    bindings = {el.label: el.value for el in elements}
    out = []
    for vec in reduced:
        per_el = {}
        for (ei, mi), c in vec.items():
            per_el.setdefault(ei, {})[mus[mi][0]] = c
        terms = []
        linear = True
        for ei in sorted(per_el):
            coeff = ring.coeff_poly(per_el[ei])
            if coeff.total_degree() > 0:
                linear = False
            terms.append((coeff, elements[ei].label))
        rel = Relation(kind="linear" if linear else "central-coefficient", terms=tuple(terms))
        if not expand_relation(engine, rel, bindings, ring).is_zero():
            raise AssertionError("relation failed re-expansion")
        out.append(rel)
    return out


# -- express in basis (spec-exact rational solve with optional projectivity) --


def _ordered_products(engine, gens, g_deg):
    """Multiset products of at most g_deg generators, in label order; the
    empty product (the unit) comes first."""
    out = [((), NCPoly.constant(1))]
    gens = sorted(gens, key=lambda el: label_key(el.label))
    for k in range(1, g_deg + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), k):
            labels = tuple(gens[i].label for i in combo)
            poly = NCPoly.constant(1)
            for i in combo:
                poly = engine.multiply(poly, gens[i].value)
            out.append((labels, poly))
    return out


def express_in_basis(engine, target, gens, ring, g_deg=2, c_deg=1, projective=False,
                     entry_budget=None):
    """Express the target over ordered generator products with central
    polynomial coefficients; raises NotExpressible when no combination exists
    within the bounds.

    Non-projective: target = sum P_m(central) * M_m.  Projective: finds a
    nonzero multiplier P0(central) of minimal total degree (ties broken by
    graded-lex leading monomial, primitive integer coefficients, positive
    leading coefficient) with P0 * target = sum P_m * M_m.  The returned
    expression is re-expanded and verified before being returned.
    """
    if g_deg < 1:
        raise ValidationError("g_deg must be >= 1")
    if target.is_zero():
        return Expression(multiplier=CommPoly.constant(ring.names, 1), terms=())
    mus = ring.monomials(engine, c_deg)
    prods = _ordered_products(engine, gens, g_deg)
    space = ColumnSpace(entry_budget=entry_budget)
    seen = set()
    for pi, (labels, ppoly) in enumerate(prods):
        for mi, (exps, mpoly) in enumerate(mus):
            val = engine.multiply(mpoly, ppoly)
            if val.is_zero():
                continue
            fz = val.frozen()
            if fz in seen:
                continue
            seen.add(fz)
            space.add(dict(val.terms), (pi, mi))

    bindings = {el.label: el.value for el in gens}

    def build(combo, multiplier):
        terms = {}
        for (pi, mi), c in combo.items():
            labels = prods[pi][0]
            exps = mus[mi][0]
            terms.setdefault(labels, {})[exps] = terms.get(labels, {}).get(exps, QQ(0)) + c
        tlist = []
        for labels in sorted(terms, key=lambda ls: tuple(label_key(l) for l in ls)):
            coeff = ring.coeff_poly(terms[labels])
            if not coeff.is_zero():
                tlist.append((coeff, labels))
        expr = Expression(multiplier=multiplier, terms=tuple(tlist))
        if not expand_expression(engine, expr, target, bindings, ring).is_zero():
            raise AssertionError("expression failed re-expansion")
        return expr

    if not projective:
        combo = space.express(dict(target.terms))
        if combo is None:
            raise NotExpressible("target not expressible within bounds")
        return build(combo, CommPoly.constant(ring.names, 1))

    # projective: scan central monomials in graded-lex order, so the first
    # dependency found gives a minimal-degree multiplier with the smallest
    # graded-lex leading monomial
    rspace = ColumnSpace()
    reds = {}
    dep = None
    for exps, mpoly in mus:
        val = engine.multiply(mpoly, target)
        res, combo = space.reduce(dict(val.terms))
        reds[exps] = combo
        d = rspace.add(res, exps)
        if d is not None:
            d = {k: -v for k, v in d.items()}
            d[exps] = QQ(1)
            dep = d
            break
    if dep is None:
        raise NotExpressible("no projective multiplier up to degree %d" % c_deg)
    multiplier = ring.coeff_poly(dep).primitive()
    if multiplier.leading_coefficient() < 0:
        multiplier = -multiplier
    scale = multiplier.terms[multiplier.leading_monomial()] / dep[
        max(dep, key=CommPoly.grlex_key)
    ]
    combo = {}
    for exps, b in dep.items():
        for key, c in reds[exps].items():
            s = combo.get(key, QQ(0)) + b * c * scale
            if s == 0:
                combo.pop(key, None)
            else:
                combo[key] = s
    return build(combo, multiplier)


# -- labels and tags -----------------------------------------------------------


class UnitLabel:
    """Label of the empty product / unit element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def render(self):
        return "1"

    def sort_key(self):
        return (-1, 0, "", ())

    def __repr__(self):
        return "UnitLabel()"


UNIT = UnitLabel()


def paper_pair_order(n_copies):
    """Copy pairs in the conventional order; (12), (23), (13) for three."""
    if n_copies == 3:
        return [(1, 2), (2, 3), (1, 3)]
    return [tuple(s) for s in itertools.combinations(range(1, n_copies + 1), 2)]


# -- configuration and report --------------------------------------------------


@dataclass
class ClosureConfig:
    n_copies: int = 3
    max_degree: int = 4
    depth_limit: int = 5
    g_deg: int = 2
    c_deg: int = 2
    projective: bool = False
    center_reduce: bool = False
    span: str = None  # 'products' | 'nested' | None = auto
    term_budget: int = 5_000_000
    solver_budget: int = 100_000_000

    def as_dict(self):
        return {
            "n_copies": self.n_copies,
            "max_degree": self.max_degree,
            "depth_limit": self.depth_limit,
            "g_deg": self.g_deg,
            "c_deg": self.c_deg,
            "projective": self.projective,
            "center_reduce": self.center_reduce,
            "span": self.span,
            "term_budget": self.term_budget,
            "solver_budget": self.solver_budget,
        }


@dataclass
class MemberRecord:
    label: object
    status: str  # generator | zero | dependent
    relation: object = None  # Relation for dependent members


@dataclass
class PairRecord:
    left: object
    right: object
    expression: object  # Expression, or None while unresolved


@dataclass
class ClosureReport:
    algebra: str
    algebra_def: dict
    config: ClosureConfig
    verdict: str = "budget-exceeded"
    k_star: int = None
    sets: dict = field(default_factory=dict)       # level -> [labels surviving]
    members: dict = field(default_factory=dict)    # level -> [MemberRecord]
    base_labels: list = field(default_factory=list)
    relations: list = field(default_factory=list)
    expressions: list = field(default_factory=list)  # [PairRecord]
    central_names: tuple = ()
    notes: list = field(default_factory=list)

    def surviving(self, level):
        return list(self.sets.get(level, []))


def _label_to_json(label):
    if isinstance(label, UnitLabel):
        return {"kind": "unit"}
    if isinstance(label, CasimirLabel):
        return {"kind": "casimir", "r": label.r, "subset": list(label.subset)}
    return {"kind": "nested", "entries": [[r, list(p)] for r, p in label.entries]}


def label_from_json(doc):
    if doc["kind"] == "unit":
        return UNIT
    if doc["kind"] == "casimir":
        return CasimirLabel(r=doc["r"], subset=tuple(doc["subset"]))
    return NestedLabel(entries=tuple((r, tuple(p)) for r, p in doc["entries"]))


def _poly_to_json(poly):
    terms = []
    for exps, c in poly.sorted_terms():
        terms.append([list(exps), int(c.numerator), int(c.denominator)])
    return {"vars": list(poly.variables), "terms": terms, "text": poly.render()}


def poly_from_json(doc):
    return CommPoly(
        tuple(doc["vars"]),
        {tuple(e): QQ(num, den) for e, num, den in doc["terms"]},
    )


def _relation_to_json(rel):
    return {
        "kind": rel.kind,
        "terms": [
            {"coeff": _poly_to_json(coeff), "label": _label_to_json(label), "text": label.render()}
            for coeff, label in rel.terms
        ],
        "text": rel.render(),
    }


def _expression_to_json(expr):
    return {
        "multiplier": _poly_to_json(expr.multiplier),
        "terms": [
            {
                "coeff": _poly_to_json(coeff),
                "factors": [_label_to_json(l) for l in labels],
                "text": "*".join(l.render() for l in labels) if labels else "1",
            }
            for coeff, labels in expr.terms
        ],
    }


def report_to_json(report):
    doc = {
        "algebra": report.algebra,
        "algebra_def": report.algebra_def,
        "config": report.config.as_dict(),
        "verdict": report.verdict,
        "k_star": report.k_star,
        "central_symbols": list(report.central_names),
        "base": [_label_to_json(l) for l in report.base_labels],
        "sets": {str(k): [_label_to_json(l) for l in v] for k, v in sorted(report.sets.items())},
        "members": {
            str(k): [
                {
                    "label": _label_to_json(m.label),
                    "text": m.label.render(),
                    "status": m.status,
                    "relation": _relation_to_json(m.relation) if m.relation else None,
                }
                for m in v
            ]
            for k, v in sorted(report.members.items())
        },
        "relations": [_relation_to_json(r) for r in report.relations],
        "expressions": [
            {
                "left": _label_to_json(p.left),
                "right": _label_to_json(p.right),
                "text_left": p.left.render(),
                "text_right": p.right.render(),
                "expression": _expression_to_json(p.expression),
            }
            for p in report.expressions
            if p.expression is not None
        ],
        "notes": list(report.notes),
    }
    return doc


# -- the closure search ---------------------------------------------------------


def _resolve_source(source, config):
    from . import catalog as _catalog

    if isinstance(source, str):
        source = _catalog.entry(source)
    if hasattr(source, "algebra") and hasattr(source, "invariants"):
        entry = source
        patterns = entry.nonlinear_invariants()
        return entry.algebra, patterns, entry.center_reduce, entry.closure
    algebra = source
    basis = polynomial_invariants(algebra, config.max_degree)
    patterns = tuple(q for q in basis.polys if q.total_degree() >= 2)
    return algebra, patterns, config.center_reduce, {}


def _combo_to_fracs(mod, combo):
    if not mod.scalar:
        return combo
    one = CommPoly.constant((), 1)
    return {t: (CommPoly.constant((), c), one) for t, c in combo.items()}


class _Closure:
    def __init__(self, algebra, patterns, center_reduce, config, progress=None):
        self.config = config
        self.progress = progress or (lambda msg: None)
        self.engine = EnvelopingAlgebra(
            algebra, n_copies=config.n_copies, term_budget=config.term_budget
        )
        self.patterns = patterns
        self.center_reduce = center_reduce
        if not patterns:
            raise ValidationError("no nonlinear invariants to build intermediate Casimirs")
        self.split_gids = tuple(sorted(self.engine.central_gids()))
        self.report_ring = CentralRing(
            [CentralSymbol(n, NCPoly({((g, 1),): QQ(1)}))
             for n, g in zip(
                 (render_gid(g) for g in self.split_gids), self.split_gids)]
        )
        self.linmod = CentralSplitModule(
            self.engine, self.split_gids, entry_budget=config.solver_budget
        )
        if config.g_deg == 1:
            self.prodmod = self.linmod
        else:
            self.prodmod = CentralSplitModule(
                self.engine, self.split_gids, entry_budget=config.solver_budget
            )
        self.span = config.span or ("nested" if self.split_gids else "products")
        self.bindings = {UNIT: NCPoly.constant(1)}
        self.retained = []  # LabeledElements backing the product candidates
        self._products_built = 0  # lazily extended index into self.retained
        self.pair_cache = {}

    # caller-facing pieces ----------------------------------------------------

    def build_base(self):
        eng = self.engine
        n = self.config.n_copies
        pairs = paper_pair_order(n)
        subsets = (
            [(a,) for a in range(1, n + 1)]
            + [tuple(p) for p in pairs]
            + ([tuple(range(1, n + 1))] if n >= 2 else [])
        )
        base = intermediate_casimirs(
            eng, self.patterns, subsets=subsets, center_reduce=self.center_reduce
        )
        self.base = base
        self.two_index = [el for el in base if len(el.label.subset) == 2]
        for el in base:
            self.bindings[el.label] = el.value
        # rational relations among the base elements (the linear-dependence
        # identities among one-, two- and three-index Casimirs)
        order = sorted(base, key=lambda el: label_key(el.label))
        self.base_relations = linear_relations(
            self.engine, order, CentralRing(()), 0,
            entry_budget=self.config.solver_budget,
        )
        # seed the linear module: under the 'nested' span policy the closure
        # space is spanned by the nested sets themselves (plus central
        # polynomials); the one-index and total Casimirs then act only
        # through the coefficient ring, as in the paper-style presentations
        # for algebras with Lie-central generators
        self.linmod.insert((), NCPoly.constant(1))
        relations = list(self.base_relations)
        seed = self.two_index if self.span == "nested" else order
        for el in seed:
            dep = self.linmod.insert((el.label,), el.value)
            if dep is not None:
                rel = self._relation_from_dep(el.label, dep)
                if rel.kind != "linear":  # rational ones already recorded
                    relations.append(rel)
            else:
                self._extend_products(el)
        self.relations = relations
        return base

    def _extend_products(self, el):
        self.retained.append(el)

    def _ensure_products(self):
        """Materialize product candidates for the closure sweep on demand;
        abelian runs never pay for this."""
        if self.prodmod is self.linmod:
            return
        if len(self.prodmod) == 0:
            self.prodmod.insert((), NCPoly.constant(1))
        while self._products_built < len(self.retained):
            el = self.retained[self._products_built]
            self._products_built += 1
            self.prodmod.insert((el.label,), el.value)
            if self.config.g_deg >= 2:
                for other in self.retained[: self._products_built]:
                    prod = self.engine.multiply(other.value, el.value)
                    tag = tuple(sorted((other.label, el.label), key=label_key))
                    self.prodmod.insert(tag, prod)

    def _relation_from_dep(self, new_label, dep):
        fr = _combo_to_fracs(self.linmod, dep)
        P0, polys = self.linmod.clear_denominators(fr)
        vars_ = self.linmod.variables
        if P0.variables != vars_:
            P0 = CommPoly(vars_, dict(P0.terms))
        terms = [(P0, new_label)]
        for tag in sorted(polys, key=lambda t: label_key(t[0]) if t else (-1, 0, "", ())):
            coeff = -polys[tag]
            label = tag[0] if tag else UNIT
            terms.append((coeff, label))
        kind = "linear"
        for coeff, _ in terms:
            if coeff.total_degree() > 0:
                kind = "central-coefficient"
                break
        rel = Relation(kind=kind, terms=tuple(terms))
        if not expand_relation(self.engine, rel, self.bindings, self.report_ring).is_zero():
            raise AssertionError("dependency relation failed re-expansion")
        return rel

    def _expression_from_combo(self, target, combo, mod):
        fr = _combo_to_fracs(mod, combo)
        P0, polys = mod.clear_denominators(fr)
        terms = []
        for tag in sorted(polys, key=lambda t: tuple(label_key(l) for l in t)):
            terms.append((polys[tag], tag))
        expr = Expression(multiplier=P0, terms=tuple(terms))
        delta = expand_expression(self.engine, expr, target, self.bindings, self.report_ring)
        if not delta.is_zero():
            raise AssertionError("expression failed re-expansion")
        return expr

    def level_raw(self, k, parents):
        """Raw commutator jobs for level k in the conventional order."""
        jobs = []
        if k == 1:
            els = self.two_index
            npairs = len(paper_pair_order(self.config.n_copies))
            rs = len(self.patterns)
            # cyclic offsets inside each (r, r') block keep the conventional
            # representatives (C_1223 and friends) first
            def block(ra, rb):
                out = []
                for off in (1, 2) if npairs == 3 else range(1, npairs):
                    for i in range(npairs):
                        out.append((ra * npairs + i, rb * npairs + (i + off) % npairs))
                if ra != rb:
                    for i in range(npairs):
                        out.append((ra * npairs + i, rb * npairs + i))
                return out

            # els are ordered r-major with pairs in paper order already
            for ra in range(rs):
                for rb in range(rs):
                    for ia, ib in block(ra, rb):
                        e0, e1 = els[ia], els[ib]
                        label = NestedLabel(
                            entries=(
                                (e0.label.r, tuple(e0.label.subset)),
                                (e1.label.r, tuple(e1.label.subset)),
                            )
                        )
                        jobs.append((label, e0, e1))
        else:
            for e0 in self.two_index:
                for parent in parents:
                    label = NestedLabel(
                        entries=((e0.label.r, tuple(e0.label.subset)),) + parent.label.entries
                    )
                    jobs.append((label, e0, parent))
        return jobs

    def run_levels(self, depth, sweep=True):
        cfg = self.config
        members = {}
        sets = {0: [el.label for el in self.two_index]}
        parents = {0: self.two_index}
        expressions = []
        verdict = None
        k_star = None
        pending = {}  # (labelA, labelB) -> (elA, elB)
        resolved = {}

        for k in range(1, depth + 1):
            recs = []
            new_retained = []
            jobs = self.level_raw(k, parents[k - 1])
            self.progress("level %d: %d commutators" % (k, len(jobs)))
            seen_labels = set()
            for label, e0, e1 in jobs:
                if label in seen_labels:
                    continue
                seen_labels.add(label)
                T = self.engine.commutator(e0.value, e1.value)
                if T.is_zero():
                    recs.append(MemberRecord(label, "zero"))
                    continue
                self.bindings[label] = T
                dep = self.linmod.insert((label,), T)
                if dep is not None:
                    rel = self._relation_from_dep(label, dep)
                    recs.append(MemberRecord(label, "dependent", rel))
                    self.relations.append(rel)
                else:
                    el = LabeledElement(label, T)
                    new_retained.append(el)
                    recs.append(MemberRecord(label, "generator"))
                    self._extend_products(el)
            members[k] = recs
            sets[k] = [r.label for r in recs if r.status == "generator"]
            parents[k] = new_retained
            self.progress(
                "level %d: %d retained, %d dependent, %d zero"
                % (
                    k,
                    len(new_retained),
                    sum(1 for r in recs if r.status == "dependent"),
                    sum(1 for r in recs if r.status == "zero"),
                )
            )
            if k == 1 and all(r.status == "zero" for r in recs):
                verdict = "abelian"
                k_star = 0
                break
            if not sweep:
                continue
            # register the new closure obligations
            nested_all = [el for kk in range(1, k + 1) for el in parents[kk]]
            for i, A in enumerate(nested_all):
                for B in nested_all[i:]:
                    key = (A.label, B.label)
                    if key not in resolved and key not in pending:
                        pending[key] = (A, B)
            for e0 in self.two_index:
                for B in parents[k]:
                    key = (e0.label, B.label)
                    if key not in resolved and key not in pending:
                        pending[key] = (e0, B)
            failed = False
            for key in sorted(
                pending, key=lambda ab: (label_key(ab[0]), label_key(ab[1]))
            ):
                A, B = pending[key]
                T = self.pair_cache.get(key)
                if T is None:
                    T = self.engine.commutator(A.value, B.value)
                    self.pair_cache[key] = T
                if T.is_zero():
                    expr = Expression(
                        multiplier=CommPoly.constant(self.linmod.variables, 1), terms=()
                    )
                    resolved[key] = PairRecord(A.label, B.label, expr)
                    continue
                self._ensure_products()
                combo = self.prodmod.solve(T)
                if combo is None:
                    failed = True
                    continue
                expr = self._expression_from_combo(T, combo, self.prodmod)
                resolved[key] = PairRecord(A.label, B.label, expr)
            for key in resolved:
                pending.pop(key, None)
            self.progress(
                "level %d sweep: %d resolved, %d open"
                % (k, len(resolved), len(pending))
            )
            if not failed and not pending:
                verdict = "closes-at-depth-%d" % k
                k_star = k
                break
        expressions = [resolved[key] for key in sorted(
            resolved, key=lambda ab: (label_key(ab[0]), label_key(ab[1]))
        )]
        return verdict, k_star, sets, members, expressions


def close_algebra(source, config=None, progress=None):
    """Drive the full closure search; returns a ClosureReport.

    Raises BudgetExceeded (with the partial report attached) when the depth
    limit is hit before closure, or when a term/solver budget trips.
    """
    from .liealg import dump as _dump

    probe = config or ClosureConfig()
    algebra, patterns, center_reduce, defaults = _resolve_source(source, probe)
    if config is None:
        cfg = ClosureConfig()
        for k, v in (defaults or {}).items():
            setattr(cfg, k, v)
    else:
        cfg = config
    closure = _Closure(algebra, patterns, center_reduce, cfg, progress=progress)
    report = ClosureReport(
        algebra=algebra.name,
        algebra_def=_dump(algebra),
        config=cfg,
        central_names=closure.report_ring.names,
    )
    if cfg.depth_limit < 1:
        raise BudgetExceeded(
            "cannot certify closure without exploring depth >= 1", partial=report
        )
    closure.build_base()
    report.base_labels = [el.label for el in closure.base]
    verdict, k_star, sets, members, expressions = closure.run_levels(
        cfg.depth_limit, sweep=True
    )
    report.sets = sets
    report.members = members
    report.relations = closure.relations
    report.expressions = expressions
    if verdict is None:
        report.verdict = "budget-exceeded"
        report.notes.append(
            "no closure within depth limit %d" % cfg.depth_limit
        )
        raise BudgetExceeded("closure not reached within depth limit", partial=report)
    report.verdict = verdict
    report.k_star = k_star
    return report


def nested_sets(source, depth, config=None, progress=None):
    """Build the nested commutator sets N_0..N_depth without the closure
    sweep; returns (sets, members, relations) keyed by level."""
    config = config or ClosureConfig(depth_limit=depth)
    algebra, patterns, center_reduce, _ = _resolve_source(source, config)
    closure = _Closure(algebra, patterns, center_reduce, config, progress=progress)
    closure.build_base()
    _, _, sets, members, _ = closure.run_levels(depth, sweep=False)
    return sets, members, closure.relations
