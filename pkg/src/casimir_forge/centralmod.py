"""Linear algebra over polynomials in designated central generators.

Lie-central generators commute with the whole enveloping algebra, so any
element splits as sum (central monomial) * (rest monomial).  Collecting by
rest monomial turns elements into vectors over the fraction field
Q(central variables); dependence, membership and exact expression with
central-polynomial coefficients all reduce to triangular elimination of
those vectors.

Elimination is fraction-free (cross-multiplication) with gcd content
stripping to keep entries small; combinations are tracked as reduced
fractions so dependencies and expressions come back in terms of the
originally inserted elements.  Multivariate gcd is delegated to sympy;
everything else is local and exact.  With no central variables the module
degenerates to plain exact linear algebra over Q (fast scalar path).
"""

from __future__ import annotations

from math import gcd as igcd

from .commpoly import CommPoly
from .errors import BudgetExceeded
from .rationals import QQ
from .uea import NCPoly, render_gid

_SYMPY_SYMS = {}


def _sympy_symbols(n):
    if n not in _SYMPY_SYMS:
        import sympy

        _SYMPY_SYMS[n] = sympy.symbols(["v%d" % i for i in range(n)])
    return _SYMPY_SYMS[n]


def exact_div(f, g):
    """f / g if the division is exact, else None (multivariate long division)."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if not f.terms:
        return CommPoly(f.variables)
    q = {}
    rem = dict(f.terms)
    glm = g.leading_monomial()
    glc = g.terms[glm]
    while rem:
        lm = max(rem, key=CommPoly.grlex_key)
        diff = tuple(x - y for x, y in zip(lm, glm))
        if any(d < 0 for d in diff):
            return None
        coef = rem[lm] / glc
        q[diff] = coef
        for m2, c2 in g.terms.items():
            mm = tuple(x + y for x, y in zip(diff, m2))
            s = rem.get(mm, QQ(0)) - coef * c2
            if s == 0:
                rem.pop(mm, None)
            else:
                rem[mm] = s
    out = CommPoly(f.variables)
    out.terms = q
    return out


def gcd_poly(f, g):
    """gcd of two CommPolys with integer coefficients (content included)."""
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_constant() or g.is_constant():
        cf = 0
        for c in f.terms.values():
            cf = igcd(cf, abs(int(c.numerator)))
        cg = 0
        for c in g.terms.values():
            cg = igcd(cg, abs(int(c.numerator)))
        return CommPoly.constant(f.variables, igcd(cf, cg))
    import sympy

    syms = _sympy_symbols(len(f.variables))
    pf = sympy.Poly.from_dict(
        {e: int(c.numerator) for e, c in f.terms.items()}, *syms, domain=sympy.ZZ
    )
    pg = sympy.Poly.from_dict(
        {e: int(c.numerator) for e, c in g.terms.items()}, *syms, domain=sympy.ZZ
    )
    pd = pf.gcd(pg)
    return CommPoly(f.variables, {tuple(e): QQ(int(c)) for e, c in pd.as_dict().items()})


def _primitive_parts(p):
    prim = p.primitive()
    lead = prim.leading_monomial()
    scale = p.terms[lead] / prim.terms[lead]
    return scale, prim


# -- fractions of polynomials (plain (num, den) tuples) ----------------------


def frac_reduce(num, den):
    if num.is_zero():
        return num, CommPoly.constant(num.variables, 1)
    if den.is_constant():
        return num.scale(QQ(1) / den.constant_value()), CommPoly.constant(num.variables, 1)
    sn, pn = _primitive_parts(num)
    sd, pd = _primitive_parts(den)
    g = gcd_poly(pn, pd)
    if not (g.is_constant() and g.constant_value() == 1):
        pn = exact_div(pn, g)
        pd = exact_div(pd, g)
    return pn.scale(sn / sd), pd


def frac_add(a, b):
    an, ad = a
    bn, bd = b
    if an.is_zero():
        return b
    if bn.is_zero():
        return a
    if ad == bd:
        return frac_reduce(an + bn, ad)
    return frac_reduce(an * bd + bn * ad, ad * bd)


def frac_neg(a):
    return (-a[0], a[1])


def frac_sub(a, b):
    return frac_add(a, frac_neg(b))


def frac_mul(a, b):
    an, ad = a
    bn, bd = b
    if an.is_zero() or bn.is_zero():
        return CommPoly(an.variables), CommPoly.constant(an.variables, 1)
    return frac_reduce(an * bn, ad * bd)


def frac_div(a, b):
    bn, bd = b
    if bn.is_zero():
        raise ZeroDivisionError("division by a zero fraction")
    return frac_mul(a, (bd, bn))


def poly_lcm(a, b):
    g = gcd_poly(a.primitive(), b.primitive())
    q = exact_div(a.primitive(), g)
    return (q * b.primitive()).primitive()


class CentralSplitModule:
    """Triangular module basis over Q(central variables).

    split_gids: generator ids treated as commuting scalars (Lie-central on
    every copy).  insert()/solve() report dependencies and expressions as
    exact fraction coefficients over the *original* inserted tags.
    """

    STRIP_EVERY = 3
    DEGREE_TRIGGER = 24

    def __init__(self, engine, split_gids, entry_budget=None):
        self.engine = engine
        self.split_gids = tuple(sorted(split_gids))
        self._split_set = frozenset(self.split_gids)
        self.variables = tuple(render_gid(g) for g in self.split_gids)
        self._pos = {g: i for i, g in enumerate(self.split_gids)}
        self.scalar = not self.split_gids
        self._one = CommPoly.constant(self.variables, 1)
        self._basis = {}  # pivot rest-monomial -> (row dict, combo dict tag -> frac)
        self._entries = 0
        self._entry_budget = entry_budget
        self._tags = []

    def __len__(self):
        return len(self._basis)

    def tags(self):
        return list(self._tags)

    # -- conversion -----------------------------------------------------

    def vector(self, p):
        """Split an NCPoly into {rest monomial: central CommPoly} (or QQ in
        scalar mode)."""
        if self.scalar:
            return dict(p.terms)
        out = {}
        smask = self._split_set
        npos = len(self.variables)
        pos = self._pos
        for m, c in p.terms.items():
            z = [0] * npos
            rest = []
            for g, e in m:
                if g in smask:
                    z[pos[g]] = e
                else:
                    rest.append((g, e))
            bucket = out.setdefault(tuple(rest), {})
            ez = tuple(z)
            bucket[ez] = bucket.get(ez, QQ(0)) + c
        return {
            r: CommPoly(self.variables, d)
            for r, d in out.items()
            if any(v != 0 for v in d.values())
        }

    def unsplit(self, rest, central_poly):
        terms = {}
        for e, c in central_poly.terms.items():
            zruns = tuple((g, k) for g, k in zip(self.split_gids, e) if k)
            terms[tuple(sorted(zruns + rest))] = c
        return NCPoly(terms)

    def frac_one(self):
        return (self._one, self._one)

    # -- content stripping -----------------------------------------------

    def _strip_content(self, vec):
        """Returns (stripped vec, content as a frac) with
        vec == content * stripped."""
        if not vec:
            return vec, self.frac_one()
        den = 1
        num = 0
        for p in vec.values():
            for c in p.terms.values():
                den = den * int(c.denominator) // igcd(den, int(c.denominator))
        for p in vec.values():
            for c in p.terms.values():
                num = igcd(num, abs(int(c.numerator)) * (den // int(c.denominator)))
        s = QQ(den, num if num else 1)
        if s != 1:
            vec = {r: p.scale(s) for r, p in vec.items()}
        g = None
        if self.variables:
            polys = sorted(vec.values(), key=lambda p: len(p.terms))
            g = polys[0]
            for p in polys[1:]:
                if g.is_constant():
                    g = None
                    break
                g = gcd_poly(g, p)
            if g is not None and g.is_constant():
                g = None
            if g is not None:
                vec = {r: exact_div(p, g) for r, p in vec.items()}
        content_num = self._one.scale(QQ(1) / s) if s != 1 else self._one
        if g is not None:
            content_num = content_num * g
        return vec, (content_num, self._one)

    # -- elimination -------------------------------------------------------

    def _scalar_reduce(self, vec, want_combo):
        res = dict(vec)
        combo = {}
        basis = self._basis
        while res:
            piv = min(res)
            hit = basis.get(piv)
            if hit is None:
                return res, combo
            row, rcombo = hit
            f = res[piv]
            for k, v in row.items():
                s = res.get(k, QQ(0)) - f * v
                if s == 0:
                    res.pop(k, None)
                else:
                    res[k] = s
            if want_combo:
                for t, v in rcombo.items():
                    s = combo.get(t, QQ(0)) + f * v
                    if s == 0:
                        combo.pop(t, None)
                    else:
                        combo[t] = s
        return res, combo

    def _pseudo_reduce(self, vec, want_combo):
        """Fraction-free reduction with content stripping.

        Returns (residual vec, combo) where combo maps original tags to frac
        coefficients and residual == input - sum combo*original (as
        fraction-field vectors) up to the tracked running scale: the caller
        receives combo already rescaled so that the identity holds exactly
        for the *returned* residual.
        """
        zero = CommPoly(self.variables)
        t, content = self._strip_content(dict(vec))
        # invariant: original == scale * t + sum combo[tag] * original_tag
        scale = content
        combo = {}
        steps = 0
        while t:
            piv = min(t)
            hit = self._basis.get(piv)
            if hit is None:
                return t, scale, combo
            row, rcombo = hit
            pi = row[piv]
            f = t[piv]
            newt = {}
            for r in set(t) | set(row):
                q = t.get(r, zero) * pi - row.get(r, zero) * f
                if not q.is_zero():
                    newt[r] = q
            steps += 1
            if newt and (
                steps % self.STRIP_EVERY == 0
                or max(p.total_degree() for p in newt.values()) > self.DEGREE_TRIGGER
            ):
                newt, cont = self._strip_content(newt)
            else:
                cont = self.frac_one()
            # t_old = (newt * cont + f * row) / pi
            if want_combo:
                factor = frac_mul(scale, (f, pi))
                for tg, rc in rcombo.items():
                    delta = frac_mul(factor, rc)
                    prev = combo.get(tg)
                    combo[tg] = frac_add(prev, delta) if prev is not None else delta
            scale = frac_mul(scale, frac_mul(cont, (self._one, pi)))
            t = newt
        return t, scale, combo

    def contains(self, p):
        if p.is_zero():
            return True
        vec = self.vector(p)
        if self.scalar:
            res, _ = self._scalar_reduce(vec, False)
            return not res
        res, _, _ = self._pseudo_reduce(vec, False)
        return not res

    def insert(self, tag, p):
        """Insert an element.  Returns None if it enlarged the span, else the
        exact dependency {earlier tag: frac} with p == sum coeff * element."""
        if p.is_zero():
            return {}
        vec = self.vector(p)
        if self.scalar:
            res, combo = self._scalar_reduce(vec, True)
            if not res:
                return combo
            piv = min(res)
            lead = res[piv]
            row = {k: v / lead for k, v in res.items()}
            rcombo = {t: -v / lead for t, v in combo.items()}
            rcombo[tag] = QQ(1) / lead
            nentries = len(row)
        else:
            res, scale, combo = self._pseudo_reduce(vec, True)
            if not res:
                return {t: c for t, c in combo.items() if not c[0].is_zero()}
            res, cont = self._strip_content(res)
            scale = frac_mul(scale, cont)
            # original == scale * res + sum combo * originals
            inv = frac_div(self.frac_one(), scale)
            rcombo = {t: frac_neg(frac_mul(inv, c)) for t, c in combo.items()}
            rcombo[tag] = inv
            rcombo = {t: c for t, c in rcombo.items() if not c[0].is_zero()}
            piv = min(res)
            row = res
            nentries = sum(len(q.terms) for q in row.values())
        self._basis[piv] = (row, rcombo)
        self._tags.append(tag)
        self._entries += nentries
        if self._entry_budget is not None and self._entries > self._entry_budget:
            raise BudgetExceeded("central module entry budget exceeded")
        return None

    def solve(self, p):
        """Exact coefficients {tag: frac} with p == sum coeff * element, or
        None if p is outside the span.  In scalar mode coefficients are QQ."""
        if p.is_zero():
            return {}
        vec = self.vector(p)
        if self.scalar:
            res, combo = self._scalar_reduce(vec, True)
            if res:
                return None
            return combo
        res, scale, combo = self._pseudo_reduce(vec, True)
        if res:
            return None
        return {t: c for t, c in combo.items() if not c[0].is_zero()}

    def clear_denominators(self, combo):
        """(P0, {tag: polynomial coeff}) with P0 * element == sum coeff * tag,
        P0 primitive with positive leading coefficient.  combo values must be
        (num, den) fraction pairs."""
        if self.scalar:
            out = {}
            for tag, (num, den) in combo.items():
                out[tag] = num.scale(QQ(1) / den.constant_value())
            return self._one, out
        P0 = self._one
        for num, den in combo.values():
            if not den.is_constant() or den.constant_value() != 1:
                P0 = poly_lcm(P0, den)
        P0 = P0.primitive()
        if P0.leading_coefficient() < 0:
            P0 = -P0
        out = {}
        for tag, (num, den) in combo.items():
            out[tag] = num * exact_div(P0, den)
        return P0, out
