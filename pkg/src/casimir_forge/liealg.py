"""Lie algebras given by structure constants.

A LieAlgebra stores only the i < j half of the bracket table; antisymmetry is
implicit in the storage.  All constants are exact rationals.  Indices are
1-based everywhere, matching the usual commutation-table conventions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import IndexOutOfRange, ParseError, ValidationError
from .linalg import rank_rational
from .rationals import QQ


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    dim: int
    brackets: object  # read-only mapping (i, j) i<j -> tuple of (k, QQ)
    central: frozenset = field(default_factory=frozenset)

    def bracket(self, i, j):
        """[X_i, X_j] as a list of (k, coefficient); antisymmetric in (i, j)."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexOutOfRange("bracket(%d, %d) outside 1..%d" % (i, j, self.dim))
        if i == j:
            return []
        if i < j:
            return list(self.brackets.get((i, j), ()))
        return [(k, -c) for k, c in self.brackets.get((j, i), ())]

    def is_central(self, i):
        return i in self.central


def _normalize_brackets(dim, raw):
    table = {}
    for (i, j), terms in raw.items():
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise IndexOutOfRange("bracket indices (%d, %d) outside 1..%d" % (i, j, dim))
        if i >= j:
            raise ValidationError("bracket table must use i < j entries, got (%d, %d)" % (i, j))
        merged = {}
        for k, c in terms:
            if not 1 <= k <= dim:
                raise IndexOutOfRange("bracket target %d outside 1..%d" % (k, dim))
            c = QQ(c)
            if c == 0:
                continue
            merged[k] = merged.get(k, QQ(0)) + c
        cleaned = tuple(sorted((k, c) for k, c in merged.items() if c != 0))
        if cleaned:
            table[(i, j)] = cleaned
    return table


def _compute_central(dim, table):
    touched = set()
    for (i, j), terms in table.items():
        if terms:
            touched.add(i)
            touched.add(j)
    return frozenset(i for i in range(1, dim + 1) if i not in touched)


def make_lie_algebra(name, dim, brackets, check=True):
    """Build a LieAlgebra from an {(i, j): [(k, coeff), ...]} table (i < j).

    With check=True a failing Jacobi identity raises ValidationError.
    """
    if dim < 1:
        raise ValidationError("dimension must be positive")
    table = _normalize_brackets(dim, brackets)
    alg = LieAlgebra(
        name=name,
        dim=dim,
        brackets=MappingProxyType(table),
        central=_compute_central(dim, table),
    )
    if check:
        bad = validate(alg)
        if bad:
            raise ValidationError("Jacobi identity fails: %s" % "; ".join(bad))
    return alg


def validate(L):
    """Diagnostics list; empty iff every Jacobi triple holds.

    Never raises: each failing triple (i, j, k) is reported with the nonzero
    coefficient vector of [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj].
    """
    diags = []
    for i in range(1, L.dim + 1):
        for j in range(i + 1, L.dim + 1):
            for k in range(j + 1, L.dim + 1):
                acc = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, cm in L.bracket(a, b):
                        for l, cl in L.bracket(m, c):
                            acc[l] = acc.get(l, QQ(0)) + cm * cl
                bad = {l: v for l, v in acc.items() if v != 0}
                if bad:
                    diags.append(
                        "Jacobi triple (%d,%d,%d) leaves %s"
                        % (i, j, k, sorted(bad.items()))
                    )
    return diags


def center(L):
    """Indices whose brackets vanish identically."""
    return set(L.central)


def structure_matrix(L, point):
    """The d x d matrix ||C_ij^k x_k|| evaluated at the given point."""
    d = L.dim
    M = [[QQ(0)] * d for _ in range(d)]
    for (i, j), terms in L.brackets.items():
        v = QQ(0)
        for k, c in terms:
            v += c * QQ(point[k - 1])
        M[i - 1][j - 1] = v
        M[j - 1][i - 1] = -v
    return M


def invariant_count(L, samples=3, seed=20230901, span=10**6):
    """dim(g) minus the generic rank of ||C_ij^k x_k||.

    The generic rank is the max exact rank over `samples` >= 3 random integer
    points with entries in [-span, span].  By Schwartz-Zippel, a single point
    under-reports the rank with probability <= d/(2*span+1), so three
    independent points make the failure probability negligible; the test
    suite additionally checks stability over ten points.
    """
    samples = max(int(samples), 3)
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        point = [rng.randint(-span, span) for _ in range(L.dim)]
        best = max(best, rank_rational(structure_matrix(L, point)))
    return L.dim - best


# -- algebra definition documents (JSON) -----------------------------------


def load(source):
    """Load and validate an algebra definition document.

    Accepts a parsed dict, a JSON string, or a path to a JSON file.  Schema:
    {"name": str, "dim": int,
     "brackets": [{"i": int, "j": int, "terms": [{"k": int, "num": int, "den": int}]}]}
    Only i < j entries are allowed; duplicate (i, j) entries are an error.
    """
    doc = source
    if isinstance(source, str):
        text = source
        if not source.lstrip().startswith("{"):
            try:
                with open(source, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError("cannot read %r: %s" % (source, exc)) from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise ParseError("definition document must be a JSON object")
    try:
        name = doc["name"]
        dim = doc["dim"]
        entries = doc["brackets"]
    except KeyError as exc:
        raise ParseError("missing field %s" % exc) from exc
    if not isinstance(name, str) or not isinstance(dim, int) or not isinstance(entries, list):
        raise ParseError("bad field types in definition document")
    raw = {}
    for entry in entries:
        try:
            i, j = int(entry["i"]), int(entry["j"])
            terms = [
                (int(t["k"]), QQ(int(t["num"]), int(t.get("den", 1))))
                for t in entry["terms"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed bracket entry %r" % (entry,)) from exc
        if i >= j:
            raise ValidationError("bracket entries must have i < j, got (%d, %d)" % (i, j))
        if (i, j) in raw:
            raise ValidationError("duplicate bracket entry (%d, %d)" % (i, j))
        raw[(i, j)] = terms
    return make_lie_algebra(name, dim, raw, check=True)


def dump(L):
    """Definition document (dict) for a LieAlgebra; inverse of load()."""
    entries = []
    for (i, j) in sorted(L.brackets):
        terms = [
            {"k": k, "num": int(c.numerator), "den": int(c.denominator)}
            for k, c in L.brackets[(i, j)]
        ]
        entries.append({"i": i, "j": j, "terms": terms})
    return {"name": L.name, "dim": L.dim, "brackets": entries}
