"""Exact noncommutative polynomial arithmetic in U(g + ... + g).

Elements are sparse rational combinations of PBW-ordered monomials over
copy-tagged generators.  The generator order is copy-major, then index; a
monomial is a tuple of (generator id, exponent) runs sorted strictly by id,
which *is* the normal form -- no ordering metadata is stored.

Products are normal-ordered by a terminating rewrite: an out-of-order
adjacent unit pair is swapped and the same-copy bracket correction emitted;
termination follows from the (word length, inversion count) descent.
Cross-copy generators commute.  Generators flagged invertible (Lie-central
only) may carry negative exponents; this is the localization used for
rescaled generators like Z4^-1 Z_i.

Commutators split monomials into a Lie-central part and a rest; rest-pair
commutators are cached on the engine, which is what makes deep nested
commutator sweeps affordable.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import factorial

from .errors import BudgetExceeded, UnassignedSymbol, ValidationError
from .rationals import QQ, qstr

GID_SHIFT = 10
GID_MASK = (1 << GID_SHIFT) - 1

DEFAULT_TERM_BUDGET = 5_000_000


def gid(copy, index):
    """Generator id; integer order == (copy, index) lexicographic order."""
    return (copy << GID_SHIFT) | index


def gid_copy(g):
    return g >> GID_SHIFT


def gid_index(g):
    return g & GID_MASK


def render_gid(g):
    return "X%d^[%d]" % (gid_index(g), gid_copy(g))


class NCPoly:
    """Immutable-by-convention sparse element of the enveloping algebra."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = QQ(c)
                if c == 0:
                    continue
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def constant(cls, c):
        c = QQ(c)
        return cls._raw({(): c} if c != 0 else {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def frozen(self):
        """Canonical hashable snapshot (sorted term tuple)."""
        return tuple(sorted(self.terms.items(), key=lambda kv: (_mono_sort_key(kv[0]))))

    def degree(self):
        """Max sum of exponents; -1 for zero (negative central exponents count)."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def num_terms(self):
        return len(self.terms)

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QQ(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return NCPoly._raw(out)

    def __neg__(self):
        return NCPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, NCPoly):
            raise TypeError("use EnvelopingAlgebra.multiply for noncommutative products")
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c):
        c = QQ(c)
        if c == 0:
            return NCPoly.zero()
        return NCPoly._raw({m: v * c for m, v in self.terms.items()})

    def support(self):
        """Set of generator ids appearing in any monomial."""
        s = set()
        for m in self.terms:
            for g, _ in m:
                s.add(g)
        return s

    def __repr__(self):
        return "NCPoly(%s)" % render(self)


def _mono_sort_key(m):
    return (sum(e for _, e in m), m)


def render(p):
    """Canonical text form: terms sorted by (degree, monomial), coefficients
    as num/den, factors as X{index}^[{copy}] with ^{exp} when exp != 1."""
    if not p.terms:
        return "0"
    parts = []
    for m, c in sorted(p.terms.items(), key=lambda kv: _mono_sort_key(kv[0])):
        factors = []
        for g, e in m:
            f = render_gid(g)
            if e != 1:
                f += "^%d" % e
            factors.append(f)
        if not factors:
            parts.append(qstr(c))
        elif c == 1:
            parts.append(" ".join(factors))
        elif c == -1:
            parts.append("-" + " ".join(factors))
        else:
            parts.append(qstr(c) + " " + " ".join(factors))
    return " + ".join(parts).replace("+ -", "- ")


def merge_monomials(m1, m2):
    """Product of two monomials ALL of whose generators mutually commute
    (sorted merge, exponents added, zero runs dropped)."""
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 < g2:
            out.append(m1[i])
            i += 1
        elif g2 < g1:
            out.append(m2[j])
            j += 1
        else:
            e = e1 + e2
            if e != 0:
                out.append((g1, e))
            i += 1
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class EnvelopingAlgebra:
    """Arithmetic context: a Lie algebra, a copy count, localized centrals.

    All public operations are pure; NCPoly values are never mutated after
    construction, so instances are safe for concurrent reads.
    """

    def __init__(self, algebra, n_copies=1, invertible=(), term_budget=DEFAULT_TERM_BUDGET):
        self.algebra = algebra
        self.n_copies = int(n_copies)
        if self.n_copies < 1:
            raise ValidationError("n_copies must be >= 1")
        self.invertible = frozenset(invertible)
        bad = self.invertible - algebra.central
        if bad:
            raise ValidationError(
                "only Lie-central generators may be inverted: %s" % sorted(bad)
            )
        self.term_budget = term_budget
        d = algebra.dim
        self._btab = {}
        noncomm = set()
        for (i, j), terms in algebra.brackets.items():
            if terms:
                self._btab[(i, j)] = tuple(terms)
                self._btab[(j, i)] = tuple((k, -c) for k, c in terms)
                noncomm.add((i, j))
                noncomm.add((j, i))
        self._noncomm = noncomm
        self._central_idx = algebra.central
        self._comm_cache = {}

    # -- element constructors ------------------------------------------

    def zero(self):
        return NCPoly.zero()

    def one(self):
        return NCPoly.constant(1)

    def gen(self, index, copy=1):
        self._check_gen(index, copy)
        return NCPoly._raw({((gid(copy, index), 1),): QQ(1)})

    def gen_inverse(self, index, copy=1):
        self._check_gen(index, copy)
        if index not in self.invertible:
            raise ValidationError("generator %d is not localized" % index)
        return NCPoly._raw({((gid(copy, index), -1),): QQ(1)})

    def monomial(self, runs, coeff=1):
        """runs: iterable of (index, exp) or ((copy, index), exp)."""
        pairs = []
        for spec, e in runs:
            if isinstance(spec, tuple):
                copy, index = spec
            else:
                copy, index = 1, spec
            self._check_gen(index, copy)
            if e < 0 and index not in self.invertible:
                raise ValidationError("negative exponent on non-localized generator")
            pairs.append((gid(copy, index), int(e)))
        out = {}
        self._normalize(pairs, QQ(coeff), out)
        return NCPoly._raw(out)

    def from_word(self, word, coeff=1):
        """Ordered product of generator indices (single copy unless tuples)."""
        return self.monomial([(w, 1) for w in word], coeff)

    def _check_gen(self, index, copy):
        if not 1 <= index <= self.algebra.dim:
            raise ValidationError("generator index %d out of range" % index)
        if not 1 <= copy <= self.n_copies:
            raise ValidationError("copy %d out of range (n_copies=%d)" % (copy, self.n_copies))

    # -- normal ordering -------------------------------------------------

    def _normalize(self, runs, coeff, out):
        """Accumulate coeff * (product of runs) into out, normal-ordered.

        runs is a list of (gid, exp) in arbitrary order; exponents of
        non-central generators must be positive.
        """
        stack = [(list(runs), coeff, 0)]
        btab = self._btab
        budget = self.term_budget
        while stack:
            w, c, start = stack.pop()
            i = max(start, 0)
            if i > 0:
                i -= 1
            rewritten = False
            while i < len(w) - 1:
                g1, e1 = w[i]
                g2, e2 = w[i + 1]
                if g1 < g2:
                    i += 1
                    continue
                if g1 == g2:
                    e = e1 + e2
                    if e == 0:
                        del w[i : i + 2]
                    else:
                        w[i : i + 2] = [(g1, e)]
                    i = max(i - 1, 0)
                    continue
                x1 = g1 & GID_MASK
                x2 = g2 & GID_MASK
                if (g1 >> GID_SHIFT) != (g2 >> GID_SHIFT) or (x1, x2) not in self._noncomm:
                    w[i], w[i + 1] = w[i + 1], w[i]
                    i = max(i - 1, 0)
                    continue
                # same copy, nonzero bracket: one unit swap + corrections
                bt = btab[(x1, x2)]
                copy_tag = g1 & ~GID_MASK
                prefix = w[:i]
                suffix = w[i + 2 :]
                mid = []
                if e1 > 1:
                    mid.append((g1, e1 - 1))
                mid.append((g2, 1))
                mid.append((g1, 1))
                if e2 > 1:
                    mid.append((g2, e2 - 1))
                stack.append((prefix + mid + suffix, c, i))
                for k_idx, ck in bt:
                    mid2 = []
                    if e1 > 1:
                        mid2.append((g1, e1 - 1))
                    mid2.append((copy_tag | k_idx, 1))
                    if e2 > 1:
                        mid2.append((g2, e2 - 1))
                    stack.append((prefix + mid2 + suffix, c * ck, i))
                rewritten = True
                break
            if rewritten:
                continue
            key = tuple(w)
            s = out.get(key, QQ(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
                if len(out) > budget:
                    raise BudgetExceeded("term budget exceeded (%d terms)" % len(out))

    def _mono_mul_acc(self, m1, m2, coeff, out):
        if not m1 or not m2:
            key = m1 or m2
            s = out.get(key, QQ(0)) + coeff
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
            return
        g1, e1 = m1[-1]
        g2, e2 = m2[0]
        if g1 < g2:
            key = m1 + m2
        elif g1 == g2:
            e = e1 + e2
            if e == 0:
                key = m1[:-1] + m2[1:]
            else:
                key = m1[:-1] + ((g1, e),) + m2[1:]
        else:
            self._normalize(list(m1 + m2), coeff, out)
            return
        s = out.get(key, QQ(0)) + coeff
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s

    # -- products and commutators ----------------------------------------

    def multiply(self, p, q):
        out = {}
        budget = self.term_budget
        acc = self._mono_mul_acc
        for m1, c1 in p.terms.items():
            for m2, c2 in q.terms.items():
                acc(m1, m2, c1 * c2, out)
            if len(out) > budget:
                raise BudgetExceeded("term budget exceeded (%d terms)" % len(out))
        return NCPoly._raw(out)

    def product(self, factors):
        acc = NCPoly.constant(1)
        for f in factors:
            acc = self.multiply(acc, f)
        return acc

    def power(self, p, n):
        if n < 0:
            raise ValidationError("negative power of an NCPoly")
        acc = NCPoly.constant(1)
        for _ in range(n):
            acc = self.multiply(acc, p)
        return acc

    def _split(self, m):
        """(central part, rest) of a monomial; central = Lie-central indices."""
        cen = self._central_idx
        z = []
        r = []
        for g, e in m:
            if (g & GID_MASK) in cen:
                z.append((g, e))
            else:
                r.append((g, e))
        return tuple(z), tuple(r)

    def _quick_commute(self, r1, r2):
        noncomm = self._noncomm
        for g1, _ in r1:
            c1 = g1 >> GID_SHIFT
            x1 = g1 & GID_MASK
            for g2, _ in r2:
                if (g2 >> GID_SHIFT) == c1 and (x1, g2 & GID_MASK) in noncomm:
                    return False
        return True

    def _mono_comm(self, r1, r2):
        """[r1, r2] for rest-monomials, as a raw term dict."""
        if self._quick_commute(r1, r2):
            return {}
        out = {}
        self._mono_mul_acc(r1, r2, QQ(1), out)
        self._mono_mul_acc(r2, r1, QQ(-1), out)
        return out

    def commutator(self, p, q):
        """[p, q] = pq - qp.  Lie-central monomial parts factor out; rest-pair
        commutators are cached across calls."""
        out = {}
        cache = self._comm_cache
        budget = self.term_budget
        sp = [(self._split(m), c) for m, c in p.terms.items()]
        sq = [(self._split(m), c) for m, c in q.terms.items()]
        for (z1, r1), c1 in sp:
            for (z2, r2), c2 in sq:
                key = (r1, r2)
                res = cache.get(key)
                if res is None:
                    res = self._mono_comm(r1, r2)
                    cache[key] = res
                if not res:
                    continue
                z = merge_monomials(z1, z2)
                c = c1 * c2
                for rm, rc in res.items():
                    m = merge_monomials(z, rm)
                    s = out.get(m, QQ(0)) + c * rc
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
            if len(out) > budget:
                raise BudgetExceeded("term budget exceeded (%d terms)" % len(out))
        return NCPoly._raw(out)

    def clear_caches(self):
        self._comm_cache.clear()

    # -- symmetrization and substitution ----------------------------------

    def symmetrize(self, P, copy=1):
        """Symmetrization map: each monomial x_{i1}..x_{ik} of the commutative
        polynomial P (variables = generator slots, in order) maps to the
        average of all k! generator orderings, normal-ordered."""
        if len(P.variables) != self.algebra.dim:
            raise ValidationError(
                "pattern has %d variables, algebra has dimension %d"
                % (len(P.variables), self.algebra.dim)
            )
        out = {}
        for exps, c in P.terms.items():
            word = []
            for pos, e in enumerate(exps):
                if e < 0:
                    raise ValidationError("negative exponent in symmetrize pattern")
                word.extend([gid(copy, pos + 1)] * e)
            if not word:
                s = out.get((), QQ(0)) + c
                if s == 0:
                    out.pop((), None)
                else:
                    out[()] = s
                continue
            k = len(word)
            w = c / factorial(k)
            for perm, mult in Counter(itertools.permutations(word)).items():
                self._normalize([(g, 1) for g in perm], w * mult, out)
        return NCPoly._raw(out)

    def substitute(self, template, assignment):
        """Symmetrized substitution: each template monomial s1..sk expands as
        the average over all k! orderings of the assigned NCPolys.

        assignment maps template variable names to NCPoly; assigning the
        generators themselves reproduces symmetrize."""
        for pos, name in enumerate(template.variables):
            if any(e[pos] for e in template.terms) and name not in assignment:
                raise UnassignedSymbol("template symbol %r unassigned" % name)
        total = NCPoly.zero()
        for exps, c in template.terms.items():
            word = []
            for pos, e in enumerate(exps):
                if e < 0:
                    raise ValidationError("negative exponent in template")
                word.extend([template.variables[pos]] * e)
            if not word:
                total = total + NCPoly.constant(c)
                continue
            k = len(word)
            w = c / factorial(k)
            acc = NCPoly.zero()
            for perm, mult in Counter(itertools.permutations(word)).items():
                prod = NCPoly.constant(mult)
                for name in perm:
                    prod = self.multiply(prod, assignment[name])
                acc = acc + prod
            total = total + acc.scale(w)
        return total

    # -- center utilities ---------------------------------------------------

    def central_gids(self):
        return {
            gid(copy, i)
            for copy in range(1, self.n_copies + 1)
            for i in self._central_idx
        }

    def reduce_mod_center(self, p, central=None):
        """Drop every term whose monomial support lies entirely in the central
        set (the constant term included); other terms are unchanged."""
        central = self.central_gids() if central is None else set(central)
        out = {}
        for m, c in p.terms.items():
            if all((g in central) for g, _ in m):
                continue
            out[m] = c
        return NCPoly._raw(out)

    def clear_central_denominators(self, p):
        """Multiply by the minimal product of localized central generators
        that makes all exponents nonnegative.  Returns (cleared, multiplier)."""
        mins = {}
        for m in p.terms:
            for g, e in m:
                if e < 0 and (g & GID_MASK) in self.invertible:
                    if e < mins.get(g, 0):
                        mins[g] = e
        if not mins:
            return p, NCPoly.constant(1)
        mult = NCPoly._raw({tuple(sorted((g, -e) for g, e in mins.items())): QQ(1)})
        return self.multiply(mult, p), mult

    # -- relabeling and embeddings -------------------------------------------

    def relabel_copies(self, p, mapping):
        """Apply a copy relabeling (dict copy -> copy) to every generator."""
        out = {}
        for m, c in p.terms.items():
            runs = sorted(
                ((gid(mapping.get(g >> GID_SHIFT, g >> GID_SHIFT), g & GID_MASK), e) for g, e in m)
            )
            key = tuple(runs)
            s = out.get(key, QQ(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return NCPoly._raw(out)

    def embed(self, p, copy):
        """Relabel a single-copy element onto the given copy."""
        return self.relabel_copies(p, {1: copy})

    def verify_embedding(self, target, phi, scale=None):
        """True iff [phi(X_i), phi(X_j)] == scale * C_ij^k phi(X_k) exactly for
        all i < j of the target algebra (scale defaults to 1, must be central)."""
        for i in range(1, target.dim + 1):
            if i not in phi:
                raise ValidationError("phi undefined on generator %d" % i)
        for i in range(1, target.dim + 1):
            for j in range(i + 1, target.dim + 1):
                lhs = self.commutator(phi[i], phi[j])
                rhs = NCPoly.zero()
                for k, c in target.bracket(i, j):
                    rhs = rhs + phi[k].scale(c)
                if scale is not None:
                    rhs = self.multiply(scale, rhs)
                if lhs != rhs:
                    return False
        return True
