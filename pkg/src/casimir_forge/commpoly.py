"""Sparse commutative polynomials with exact rational coefficients.

Used for dual-space coordinates x_1..x_d (the coadjoint PDE system and its
invariant solutions), phase-space variables in classical realizations, and
central-symbol coefficient rings in relations.  Monomials are full exponent
tuples over a declared, ordered variable list; values are immutable by
convention once constructed.
"""

from __future__ import annotations

from .errors import ValidationError
from .rationals import QQ, qstr


class CommPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            n = len(self.variables)
            for exps, c in terms.items():
                c = QQ(c)
                if c == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValidationError("exponent tuple length mismatch")
                clean[exps] = clean.get(exps, QQ(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, c):
        v = tuple(variables)
        c = QQ(c)
        if c == 0:
            return cls(v)
        return cls(v, {(0,) * len(v): c})

    @classmethod
    def variable(cls, variables, name):
        v = tuple(variables)
        i = v.index(name)
        e = [0] * len(v)
        e[i] = 1
        return cls(v, {tuple(e): QQ(1)})

    @classmethod
    def monomial(cls, variables, exps, c=1):
        return cls(variables, {tuple(exps): QQ(c)})

    # -- predicates / views -------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.variables), QQ(0))

    def total_degree(self):
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, CommPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise ValidationError("polynomials over different variable lists")

    def __add__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.constant(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, QQ(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        r = CommPoly(self.variables)
        r.terms = out
        return r

    def __neg__(self):
        r = CommPoly(self.variables)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.constant(self.variables, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, QQ(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        r = CommPoly(self.variables)
        r.terms = out
        return r

    __rmul__ = __mul__

    def scale(self, c):
        c = QQ(c)
        r = CommPoly(self.variables)
        if c != 0:
            r.terms = {e: cc * c for e, cc in self.terms.items()}
        return r

    def __pow__(self, n):
        if n < 0:
            raise ValidationError("negative power of a CommPoly")
        r = CommPoly.constant(self.variables, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b if n > 1 else b
            n >>= 1
        return r

    def diff(self, name):
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            d = tuple(d)
            s = out.get(d, QQ(0)) + c * e[i]
            if s == 0:
                out.pop(d, None)
            else:
                out[d] = s
        r = CommPoly(self.variables)
        r.terms = out
        return r

    def evaluate(self, values):
        """Plug in a value for every variable; returns a rational."""
        vals = [QQ(values[v]) for v in self.variables]
        acc = QQ(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            acc += t
        return acc

    def substitute(self, mapping):
        """Replace each variable by a CommPoly over the same list."""
        out = CommPoly.zero(self.variables)
        for e, c in self.terms.items():
            t = CommPoly.constant(self.variables, c)
            for name, k in zip(self.variables, e):
                if k:
                    t = t * (mapping.get(name, CommPoly.variable(self.variables, name)) ** k)
            out = out + t
        return out

    def rename(self, variables, mapping=None):
        """Re-express over another variable list (mapping: old name -> new name)."""
        variables = tuple(variables)
        mapping = mapping or {}
        idx = {}
        for j, v in enumerate(self.variables):
            tgt = mapping.get(v, v)
            idx[j] = variables.index(tgt)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for j, k in enumerate(e):
                if k:
                    ne[idx[j]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, QQ(0)) + c
        r = CommPoly(variables)
        r.terms = {e: c for e, c in out.items() if c != 0}
        return r

    # -- canonical order and text ---------------------------------------

    @staticmethod
    def grlex_key(exps):
        """Graded-lex sort key: degree first, then earlier variables heavier."""
        return (sum(exps), exps)

    def leading_monomial(self):
        """Largest monomial in graded-lex; None for zero."""
        if not self.terms:
            return None
        return max(self.terms, key=CommPoly.grlex_key)

    def leading_coefficient(self):
        lm = self.leading_monomial()
        return QQ(0) if lm is None else self.terms[lm]

    def primitive(self):
        """Scale to coprime integer coefficients with positive leading one."""
        if not self.terms:
            return self
        from math import gcd

        den_lcm = 1
        for c in self.terms.values():
            d = int(c.denominator)
            den_lcm = den_lcm * d // gcd(den_lcm, d)
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(int(c.numerator) * (den_lcm // int(c.denominator))))
        s = QQ(den_lcm, g if g else 1)
        if self.leading_coefficient() < 0:
            s = -s
        return self.scale(s)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: CommPoly.grlex_key(kv[0]))

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.variables, e):
                if k == 0:
                    continue
                factors.append(v if k == 1 else "%s^%d" % (v, k))
            if not factors:
                parts.append(qstr(c))
            elif c == 1:
                parts.append(" ".join(factors))
            elif c == -1:
                parts.append("-" + " ".join(factors))
            else:
                parts.append(qstr(c) + " " + " ".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "CommPoly(%s)" % self.render()


def poly_ring(names):
    """Convenience: (variables tuple, dict name -> generator CommPoly)."""
    names = tuple(names)
    return names, {n: CommPoly.variable(names, n) for n in names}
