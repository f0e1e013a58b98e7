"""Exact linear algebra over the rationals.

Two engines, each matched to its workload:

* ``ColumnSpace`` -- incremental sparse triangularization used to detect
  dependencies among expanded algebra elements and to express targets over a
  candidate set.  Columns arrive one at a time; dependencies come back as
  exact combinations of previously inserted columns.  Deterministic for a
  fixed insertion order and row-key ordering.

* ``nullspace_fraction_free`` -- dense Bareiss (fraction-free) elimination
  over the integers, used for the coadjoint PDE nullspace.  It is an
  independent route from ColumnSpace, which the test suite exploits.
"""

from __future__ import annotations

from math import gcd

from .errors import BudgetExceeded
from .rationals import QQ


class ColumnSpace:
    """Triangular basis of sparse rational column vectors.

    Vectors are dicts ``row_key -> QQ`` with mutually sortable row keys.
    Each basis vector is normalized so its pivot (minimal row key) has
    coefficient 1; all its other keys are strictly larger, so reduction
    sweeps pivots in ascending order and terminates.
    """

    def __init__(self, entry_budget=None):
        self._basis = {}  # pivot row key -> (vector, combo dict tag -> QQ)
        self._tags = []
        self._entries = 0
        self._entry_budget = entry_budget

    def __len__(self):
        return len(self._basis)

    @property
    def tags(self):
        return list(self._tags)

    def reduce(self, vec):
        """Return (residual, combo) with vec == sum(combo[t] * column[t]) + residual."""
        res = {k: QQ(v) for k, v in vec.items() if v != 0}
        combo = {}
        basis = self._basis
        while True:
            k = None
            for key in res:
                if key in basis and (k is None or key < k):
                    k = key
            if k is None:
                return res, combo
            bvec, bcombo = basis[k]
            f = res[k]
            for key, v in bvec.items():
                s = res.get(key, QQ(0)) - f * v
                if s == 0:
                    res.pop(key, None)
                else:
                    res[key] = s
            for t, v in bcombo.items():
                s = combo.get(t, QQ(0)) + f * v
                if s == 0:
                    combo.pop(t, None)
                else:
                    combo[t] = s

    def add(self, vec, tag):
        """Insert a column.  Returns None if independent, else the dependency
        combo {earlier tag: coeff} with vec == sum(coeff * column)."""
        res, combo = self.reduce(vec)
        if not res:
            return combo
        piv = min(res)
        lead = res[piv]
        nvec = {k: v / lead for k, v in res.items()}
        ncombo = {t: -v / lead for t, v in combo.items()}
        ncombo[tag] = QQ(1) / lead
        self._basis[piv] = (nvec, ncombo)
        self._tags.append(tag)
        self._entries += len(nvec)
        if self._entry_budget is not None and self._entries > self._entry_budget:
            raise BudgetExceeded("solver entry budget exceeded")
        return None

    def express(self, vec):
        """Exact combo {tag: coeff} with vec == sum(coeff * column), or None."""
        res, combo = self.reduce(vec)
        if res:
            return None
        return combo


def rref_vectors(vectors, unknown_order):
    """Reduced row echelon form of sparse vectors over a fixed unknown order.

    ``vectors`` are dicts ``unknown -> QQ``; ``unknown_order`` maps unknowns
    to sortable positions (smaller = leading).  Maintains full reduction at
    every insertion, so no row's lead appears in any other row.  Returns rows
    sorted by leading unknown, leading coefficient 1.
    """
    rows = {}  # lead -> dict
    for vec in vectors:
        vec = {k: QQ(v) for k, v in vec.items() if v != 0}
        # rows are fully reduced: subtracting one introduces no new leads
        hits = sorted((k for k in vec if k in rows), key=lambda u: unknown_order[u])
        for hit in hits:
            f = vec.get(hit)
            if not f:
                continue
            for k, v in rows[hit].items():
                s = vec.get(k, QQ(0)) - f * v
                if s == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = s
        if not vec:
            continue
        lead = min(vec, key=lambda u: unknown_order[u])
        lc = vec[lead]
        row = {k: v / lc for k, v in vec.items()}
        for other in rows.values():
            f = other.get(lead)
            if f:
                for k, v in row.items():
                    s = other.get(k, QQ(0)) - f * v
                    if s == 0:
                        other.pop(k, None)
                    else:
                        other[k] = s
        rows[lead] = row
    return [rows[lead] for lead in sorted(rows, key=lambda u: unknown_order[u])]


def _int_rows(matrix):
    rows = []
    for row in matrix:
        vals = [QQ(x) for x in row]
        den = 1
        for x in vals:
            d = int(x.denominator)
            den = den * d // gcd(den, d)
        rows.append([int(x.numerator) * (den // int(x.denominator)) for x in vals])
    return rows


def nullspace_fraction_free(matrix, ncols, entry_budget=None):
    """Nullspace basis of an m x ncols rational matrix via Bareiss elimination.

    Returns vectors as lists of QQ; each vector has coefficient 1 at its free
    column and zeros at the other free columns (reduced echelon over the
    column order).
    """
    rows = [r for r in _int_rows(matrix) if any(r)]
    m = len(rows)
    if entry_budget is not None and m * ncols > entry_budget:
        raise BudgetExceeded("nullspace matrix too large")
    piv_cols = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        for i in range(r + 1, m):
            fi = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c, ncols):
                ri[j] = (ri[j] * p - fi * rr[j]) // prev
        piv_cols.append(c)
        prev = p
        r += 1
    rank = r
    piv_set = set(piv_cols)
    free_cols = [c for c in range(ncols) if c not in piv_set]
    basis = []
    for fc in free_cols:
        x = [QQ(0)] * ncols
        x[fc] = QQ(1)
        for i in range(rank - 1, -1, -1):
            pc = piv_cols[i]
            s = QQ(0)
            for j in range(pc + 1, ncols):
                if rows[i][j] and x[j] != 0:
                    s += QQ(rows[i][j]) * x[j]
            x[pc] = -s / QQ(rows[i][pc])
        basis.append(x)
    return basis


def rank_rational(matrix):
    """Exact rank of a dense rational matrix (row elimination over QQ)."""
    rows = [[QQ(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f != 0:
                fi = f / p
                for j in range(c, ncols):
                    rows[i][j] -= fi * rows[r][j]
        r += 1
        rank += 1
    return rank
