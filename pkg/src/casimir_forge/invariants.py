"""Polynomial Casimir invariants via the coadjoint PDE system.

The generators act on functions of the dual coordinates x_1..x_d as the
linear vector fields with j-component sum_k C_ij^k x_k; polynomial invariants
are the joint kernel.  The fields preserve homogeneous degree, so the system
is solved degree by degree with fraction-free elimination.  Each degree
contributes the solutions that are new modulo products of lower-degree
invariants already found, which is what makes the returned list match the
conventional functionally-independent generator sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .commpoly import CommPoly
from .errors import BudgetExceeded, ValidationError
from .linalg import ColumnSpace, nullspace_fraction_free, rref_vectors
from .rationals import QQ
from .uea import NCPoly


def _xvars(d):
    return tuple("x%d" % i for i in range(1, d + 1))


@dataclass(frozen=True)
class VectorField:
    """Coadjoint field of one generator: d components, each linear in x."""

    components: tuple  # CommPoly per coordinate

    def apply(self, F):
        out = CommPoly.zero(F.variables)
        for j, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            out = out + comp * F.diff(F.variables[j])
        return out


def coadjoint_fields(L):
    """Field i has j-component sum_k C_ij^k x_k."""
    variables = _xvars(L.dim)
    fields = []
    for i in range(1, L.dim + 1):
        comps = []
        for j in range(1, L.dim + 1):
            p = CommPoly.zero(variables)
            for k, c in L.bracket(i, j):
                p = p + CommPoly.variable(variables, "x%d" % k).scale(c)
            comps.append(p)
        fields.append(VectorField(tuple(comps)))
    return fields


@dataclass(frozen=True)
class InvariantBasis:
    degree_bound: int
    polys: tuple
    provenance: str = "computed"  # computed | catalog


def _monomials_of_degree(d, deg):
    """Exponent tuples over d variables with total degree deg, graded-lex order."""
    out = []
    for bars in itertools.combinations(range(deg + d - 1), d - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(deg + d - 2 - prev)
        out.append(tuple(exps))
    out.sort(key=CommPoly.grlex_key)
    return out


def _homogeneous_solutions(L, fields, deg, monomial_budget=None):
    """Nullspace of the stacked coadjoint constraints at one degree."""
    variables = _xvars(L.dim)
    monos = _monomials_of_degree(L.dim, deg)
    if monomial_budget is not None and len(monos) > monomial_budget:
        raise BudgetExceeded("monomial count %d over budget" % len(monos))
    col_index = {}
    rows = []  # one row per (field, output monomial); build as dicts then densify

    images = []
    for m in monos:
        F = CommPoly.monomial(variables, m)
        per_field = []
        for fld in fields:
            per_field.append(fld.apply(F))
        images.append(per_field)
    row_keys = {}
    for per_field in images:
        for fi, img in enumerate(per_field):
            for em in img.terms:
                row_keys.setdefault((fi, em), len(row_keys))
    matrix = [[QQ(0)] * len(monos) for _ in range(len(row_keys))]
    for ci, per_field in enumerate(images):
        for fi, img in enumerate(per_field):
            for em, c in img.terms.items():
                matrix[row_keys[(fi, em)]][ci] = c
    if not matrix:
        matrix = [[QQ(0)] * len(monos)]
    basis = nullspace_fraction_free(matrix, len(monos))
    sols = []
    for vec in basis:
        terms = {m: c for m, c in zip(monos, vec) if c != 0}
        sols.append(CommPoly(variables, terms))
    return sols


def _canonicalize(polys):
    """Reduced echelon over graded-lex monomials, primitive integer rows with
    positive leading coefficients, sorted by leading monomial."""
    vecs = [dict(p.terms) for p in polys if p and not p.is_zero()]
    if not vecs:
        return []
    monos = sorted({m for v in vecs for m in v}, key=CommPoly.grlex_key, reverse=True)
    order = {m: i for i, m in enumerate(monos)}
    reduced = rref_vectors(vecs, order)
    variables = polys[0].variables
    out = []
    for v in reduced:
        p = CommPoly(variables, v).primitive()
        out.append(p)
    out.sort(key=lambda p: CommPoly.grlex_key(p.leading_monomial()))
    return out


def polynomial_invariants(L, p, monomial_budget=200000):
    """New invariant generators up to total degree p.

    At each degree the solution space of the coadjoint system is computed
    exactly; solutions that are linear combinations of products of the
    invariants already found at lower degrees are quotiented away, so each
    returned polynomial is a genuinely new generator (constants excluded via
    F(0) = 0).  Canonicalized per :func:`_canonicalize`.
    """
    if p < 1:
        raise ValidationError("degree bound must be >= 1")
    fields = coadjoint_fields(L)
    variables = _xvars(L.dim)
    found = []  # list of (degree, CommPoly)
    for deg in range(1, p + 1):
        sols = _homogeneous_solutions(L, fields, deg, monomial_budget)
        if not sols:
            continue
        # known products of lower-degree generators at this degree
        known = []
        gens = [(d0, q) for d0, q in found]
        if gens:
            def extend(prod, start, rem):
                for gi in range(start, len(gens)):
                    d0, q = gens[gi]
                    if d0 > rem:
                        continue
                    nxt = prod * q
                    if d0 == rem:
                        known.append(nxt)
                    else:
                        extend(nxt, gi, rem - d0)

            extend(CommPoly.constant(variables, 1), 0, deg)
        space = ColumnSpace()
        mono_order = sorted(
            {m for s in sols for m in s.terms} | {m for q in known for m in q.terms},
            key=CommPoly.grlex_key,
            reverse=True,
        )
        pos = {m: i for i, m in enumerate(mono_order)}
        for i, q in enumerate(known):
            space.add({pos[m]: c for m, c in q.terms.items()}, ("known", i))
        fresh = []
        for s in sols:
            dep = space.add({pos[m]: c for m, c in s.terms.items()}, ("new", len(fresh)))
            if dep is None:
                fresh.append(s)
        for q in _canonicalize(fresh):
            found.append((deg, q))
    return InvariantBasis(degree_bound=p, polys=tuple(q for _, q in found))


def casimir_operators(engine, p, center_reduce=False, basis=None):
    """Symmetrize each invariant into the enveloping algebra.

    With center_reduce, terms supported entirely on central generators are
    dropped (zero results are omitted).  Every output commutes with all
    single-copy generators.
    """
    L = engine.algebra
    if basis is None:
        basis = polynomial_invariants(L, p)
    ops = []
    for q in basis.polys:
        C = engine.symmetrize(q)
        if center_reduce:
            C = engine.reduce_mod_center(C)
        if not C.is_zero():
            ops.append(C)
    return ops


def casimir_check(engine, candidate, generators):
    """True iff the candidate commutes exactly with every given element."""
    return all(engine.commutator(g, candidate).is_zero() for g in generators)


def poisson_bracket(f, g, pairs):
    """Canonical Poisson bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i).

    pairs is a list of (position, momentum) variable-name pairs; they must be
    disjoint.  Antisymmetric and a derivation in each slot, which the test
    suite checks on random polynomials.
    """
    seen = set()
    for q, mom in pairs:
        if q in seen or mom in seen or q == mom:
            raise ValidationError("Poisson pairs must be disjoint")
        seen.add(q)
        seen.add(mom)
    out = CommPoly.zero(f.variables)
    for q, mom in pairs:
        out = out + f.diff(q) * g.diff(mom) - f.diff(mom) * g.diff(q)
    return out


def verify_realization(L, rho, pairs):
    """True iff {rho(X_i), rho(X_j)} = C_ij^k rho(X_k) exactly for all i < j."""
    for i in range(1, L.dim + 1):
        if i not in rho:
            raise ValidationError("realization undefined on generator %d" % i)
    for i in range(1, L.dim + 1):
        for j in range(i + 1, L.dim + 1):
            lhs = poisson_bracket(rho[i], rho[j], pairs)
            rhs = CommPoly.zero(lhs.variables)
            for k, c in L.bracket(i, j):
                rhs = rhs + rho[k].scale(c)
            if lhs != rhs:
                return False
    return True
