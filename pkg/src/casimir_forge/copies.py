"""Summed generators, intermediate Casimir invariants, virtual copies.

Intermediate Casimirs are built by substituting the summed generators
X_i^[S] = sum over the copies in S into the symmetrized invariant pattern;
since the summed generators satisfy the original commutation relations, the
result is the single-copy Casimir operator with every generator re-tagged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .commpoly import CommPoly
from .errors import EmbeddingCheckFailed, ValidationError
from .rationals import QQ
from .uea import GID_MASK, NCPoly


@dataclass(frozen=True)
class CasimirLabel:
    """C^(r) over the copy subset S; rendered C^(r)_{S} as in C^(1)_12."""

    r: int
    subset: tuple

    def render(self):
        return "C^(%d)_%s" % (self.r, "".join(str(a) for a in self.subset))

    def sort_key(self):
        # one-index before two-index before total, then subscript, then r
        return (0, len(self.subset), "".join(map(str, self.subset)), (self.r,))


@dataclass(frozen=True)
class NestedLabel:
    """Right-nested commutator label.

    entries = ((r1, p1), (r2, p2), ..., (rm, pm)) encodes
    [C^(r1)_p1, [C^(r2)_p2, ... C^(rm)_pm]] and renders in superscript/
    subscript form, e.g. C^(1,1)_1223.
    """

    entries: tuple

    def render(self):
        rs = ",".join(str(r) for r, _ in self.entries)
        subs = "".join("%d%d" % pair for _, pair in self.entries)
        return "C^(%s)_%s" % (rs, subs)

    def sort_key(self):
        subs = "".join("%d%d" % pair for _, pair in self.entries)
        return (1, len(self.entries), subs, tuple(r for r, _ in self.entries))

    def depth(self):
        return len(self.entries) - 1


def label_key(label):
    return label.sort_key()


@dataclass(frozen=True)
class LabeledElement:
    label: object
    value: NCPoly

    def render(self):
        return self.label.render()


def summed_generator(engine, i, subset):
    """X_i^[S] = sum of X_i^[a] over a in S."""
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise ValidationError("copy subset must be nonempty")
    out = NCPoly.zero()
    for a in subset:
        out = out + engine.gen(i, a)
    return out


def default_subsets(n_copies):
    """All one-index subsets, all pairs, then the full set (paper order)."""
    singles = [(a,) for a in range(1, n_copies + 1)]
    pairs = [tuple(s) for s in itertools.combinations(range(1, n_copies + 1), 2)]
    total = [tuple(range(1, n_copies + 1))] if n_copies >= 2 else []
    return singles + pairs + total


def intermediate_casimirs(engine, patterns, subsets=None, center_reduce=False):
    """Intermediate Casimir invariants C_S^(r) for each invariant pattern.

    patterns: commutative invariant polynomials in the dual coordinates
    (degree >= 2; degree-1 central coordinates are parameters, not lifted).
    Returns LabeledElements ordered by (r, subset).
    """
    if subsets is None:
        subsets = default_subsets(engine.n_copies)
    out = []
    for r, pattern in enumerate(patterns, start=1):
        if pattern.total_degree() < 2:
            raise ValidationError(
                "degree-1 invariants are central parameters; lift only nonlinear ones"
            )
        for S in subsets:
            assign = {
                "x%d" % i: summed_generator(engine, i, S)
                for i in range(1, engine.algebra.dim + 1)
            }
            value = engine.substitute(pattern, assign)
            if center_reduce:
                value = engine.reduce_mod_center(value)
            out.append(LabeledElement(CasimirLabel(r=r, subset=tuple(S)), value))
    return out


@dataclass(frozen=True)
class VirtualCopyResult:
    levi: object           # LieAlgebra satisfied by the rescaled generators
    scale: NCPoly          # central scale of the raw embedding
    raw: dict              # i -> X'_i  (scaled homomorphism images)
    generators: dict       # i -> X''_i = scale^-1 X'_i (exact relations)


def virtual_copy(engine, levi, defs, scale):
    """Validate a virtual copy of a Levi factor and rescale it.

    defs maps Levi generator index -> NCPoly X'_i built from the host
    algebra; scale is a central NCPoly with [X'_i, X'_j] = scale C_ij^k X'_k.
    The rescaled X''_i = scale^-1 X'_i satisfy the Levi relations exactly.
    Raises EmbeddingCheckFailed when the scaled relations do not hold.
    """
    if not engine.verify_embedding(levi, defs, scale=scale):
        raise EmbeddingCheckFailed("scaled Levi relations fail for the given defs")
    inv = _central_inverse(engine, scale)
    gens = {i: engine.multiply(inv, p) for i, p in defs.items()}
    if not engine.verify_embedding(levi, gens, scale=None):
        raise EmbeddingCheckFailed("rescaled generators fail the exact relations")
    return VirtualCopyResult(levi=levi, scale=scale, raw=dict(defs), generators=gens)


def _central_inverse(engine, scale):
    """Inverse of a monomial multiple of localized central generators."""
    if len(scale.terms) != 1:
        raise ValidationError("scale must be a single central monomial")
    (mono, coeff), = scale.terms.items()
    inv_runs = []
    for g, e in mono:
        idx = g & GID_MASK
        if idx not in engine.invertible:
            raise ValidationError("scale generator %d is not localized" % idx)
        inv_runs.append((g, -e))
    return NCPoly({tuple(sorted(inv_runs)): QQ(1) / coeff})


def virtual_intermediate_casimirs(engine, result, pattern, subsets=None, n_copies=None):
    """Intermediate Casimirs of the Levi factor through a virtual copy.

    The rescaled generators are relabeled onto each copy of the host algebra
    and summed over the subset before substitution into the symmetrized Levi
    invariant pattern.
    """
    n = n_copies or engine.n_copies
    if subsets is None:
        subsets = default_subsets(n)
    copies = {
        a: {i: engine.embed(p, a) for i, p in result.generators.items()}
        for a in range(1, n + 1)
    }
    out = []
    for S in subsets:
        assign = {}
        for i in range(1, result.levi.dim + 1):
            acc = NCPoly.zero()
            for a in S:
                acc = acc + copies[a][i]
            assign["x%d" % i] = acc
        value = engine.substitute(pattern, assign)
        out.append(LabeledElement(CasimirLabel(r=1, subset=tuple(S)), value))
    return out
