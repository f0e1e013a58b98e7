"""Built-in algebra catalog.

Each entry carries the commutation table, the canonical polynomial invariants
(functionally independent, in the conventional order: degree-1 central
coordinates first, then the nonlinear ones), whether the conventional
operator form drops pure-central terms after symmetrization, and default
knobs for the closure search.  Every entry passes validate(); the stored
invariants are annihilated by the coadjoint fields and their symmetrizations
commute with all generators (exercised by the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .commpoly import CommPoly
from .errors import ValidationError
from .liealg import LieAlgebra, make_lie_algebra


def _xvars(d):
    return tuple("x%d" % i for i in range(1, d + 1))


def _poly(d, terms):
    """terms: {exponent-dict-by-1-based-index: coeff}"""
    out = {}
    for exps, c in terms.items():
        e = [0] * d
        for idx, k in exps:
            e[idx - 1] = k
        out[tuple(e)] = c
    return CommPoly(_xvars(d), out)


@dataclass(frozen=True)
class VirtualCopyData:
    """Virtual-copy construction data: Levi factor plus generator formulas.

    defs maps Levi generator index -> list of (coeff, word) with word a tuple
    of (generator index, exponent) pairs in written order; scale_index names
    the central generator whose inverse rescales the copy.
    """

    levi: LieAlgebra
    defs: dict
    scale_index: int


@dataclass(frozen=True)
class CatalogEntry:
    algebra: LieAlgebra
    invariants: tuple
    center_reduce: bool = False
    closure: dict = field(default_factory=dict)
    virtual: VirtualCopyData = None

    @property
    def name(self):
        return self.algebra.name

    @property
    def dim(self):
        return self.algebra.dim

    def linear_invariants(self):
        return tuple(p for p in self.invariants if p.total_degree() == 1)

    def nonlinear_invariants(self):
        return tuple(p for p in self.invariants if p.total_degree() >= 2)


def _sl2():
    alg = make_lie_algebra(
        "sl2", 3, {(1, 2): [(1, 2)], (1, 3): [(2, -1)], (2, 3): [(3, 2)]}
    )
    inv = _poly(3, {((2, 2),): 1, ((1, 1), (3, 1)): 4})
    return CatalogEntry(
        algebra=alg,
        invariants=(inv,),
        closure=dict(g_deg=2, c_deg=2, projective=False, depth_limit=3, span="products"),
    )


def _so13():
    alg = make_lie_algebra(
        "so13",
        6,
        {
            (1, 2): [(3, 1)],
            (1, 3): [(2, -1)],
            (1, 5): [(6, 1)],
            (1, 6): [(5, -1)],
            (2, 3): [(1, 1)],
            (2, 4): [(6, -1)],
            (2, 6): [(4, 1)],
            (3, 4): [(5, 1)],
            (3, 5): [(4, -1)],
            (4, 5): [(3, -1)],
            (4, 6): [(2, 1)],
            (5, 6): [(1, -1)],
        },
    )
    inv1 = _poly(6, {((1, 1), (4, 1)): 1, ((2, 1), (5, 1)): 1, ((3, 1), (6, 1)): 1})
    inv2 = _poly(
        6,
        {
            ((1, 2),): 1,
            ((2, 2),): 1,
            ((3, 2),): 1,
            ((4, 2),): -1,
            ((5, 2),): -1,
            ((6, 2),): -1,
        },
    )
    return CatalogEntry(
        algebra=alg,
        invariants=(inv1, inv2),
        closure=dict(g_deg=2, c_deg=2, projective=False, depth_limit=3, span="products"),
    )


def _n55():
    alg = make_lie_algebra(
        "n55", 5, {(2, 5): [(1, 1)], (3, 5): [(2, 1)], (4, 5): [(3, 1)]}
    )
    lin = _poly(5, {((1, 1),): 1})
    quad = _poly(5, {((1, 1), (3, 1)): 2, ((2, 2),): -1})
    cub = _poly(5, {((2, 3),): 1, ((1, 2), (4, 1)): 3, ((1, 1), (2, 1), (3, 1)): -3})
    return CatalogEntry(
        algebra=alg,
        invariants=(lin, quad, cub),
        closure=dict(g_deg=2, c_deg=2, projective=False, depth_limit=3, span="products"),
    )


def _n61():
    alg = make_lie_algebra(
        "n61", 6, {(4, 5): [(2, 1)], (4, 6): [(3, 1)], (5, 6): [(1, 1)]}
    )
    lins = tuple(_poly(6, {((i, 1),): 1}) for i in (1, 2, 3))
    quad = _poly(6, {((1, 1), (4, 1)): 1, ((2, 1), (6, 1)): 1, ((3, 1), (5, 1)): -1})
    return CatalogEntry(
        algebra=alg,
        invariants=lins + (quad,),
        closure=dict(g_deg=1, c_deg=3, projective=False, depth_limit=3, span="nested"),
    )


def _n619():
    alg = make_lie_algebra(
        "n619",
        6,
        {
            (2, 6): [(1, 1)],
            (3, 4): [(1, 1)],
            (3, 5): [(2, 1)],
            (4, 5): [(3, 1)],
            (4, 6): [(2, 1)],
            (5, 6): [(4, 1)],
        },
    )
    lin = _poly(6, {((1, 1),): 1})
    cub = _poly(
        6,
        {
            ((1, 2), (5, 1)): 6,
            ((1, 1), (2, 1), (4, 1)): -6,
            ((1, 1), (3, 2)): 3,
            ((2, 3),): 2,
        },
    )
    return CatalogEntry(
        algebra=alg,
        invariants=(lin, cub),
        closure=dict(g_deg=1, c_deg=2, projective=True, depth_limit=4, span="nested"),
    )


def _s6160():
    alg = make_lie_algebra(
        "s6160",
        6,
        {
            (2, 4): [(1, 1)],
            (3, 5): [(1, 1)],
            (3, 6): [(3, -1)],
            (4, 6): [(2, -1)],
            (5, 6): [(5, 1)],
        },
    )
    lin = _poly(6, {((1, 1),): 1})
    quad = _poly(6, {((1, 1), (6, 1)): 2, ((3, 1), (5, 1)): 2, ((2, 2),): -1})
    return CatalogEntry(
        algebra=alg,
        invariants=(lin, quad),
        center_reduce=True,
        closure=dict(g_deg=1, c_deg=4, projective=False, depth_limit=4, span="nested"),
    )


def _s6183():
    alg = make_lie_algebra(
        "s6183",
        6,
        {
            (2, 5): [(1, 1)],
            (2, 6): [(2, 1)],
            (3, 4): [(1, 1)],
            (3, 6): [(3, -2)],
            (4, 5): [(2, 1)],
            (4, 6): [(4, 2)],
            (5, 6): [(5, -1)],
        },
    )
    lin = _poly(6, {((1, 1),): 1})
    cub = _poly(
        6,
        {
            ((1, 2), (6, 1)): 1,
            ((1, 1), (3, 1), (4, 1)): 2,
            ((1, 1), (2, 1), (5, 1)): -1,
            ((2, 2), (3, 1)): -1,
        },
    )
    return CatalogEntry(
        algebra=alg,
        invariants=(lin, cub),
        center_reduce=True,
        closure=dict(g_deg=1, c_deg=24, projective=True, depth_limit=5, span="nested"),
    )


def _sl2_3n11():
    alg = make_lie_algebra(
        "sl2_3n11",
        6,
        {
            (1, 2): [(1, 2)],
            (1, 3): [(2, -1)],
            (1, 5): [(4, 2)],
            (1, 6): [(5, -1)],
            (2, 3): [(3, 2)],
            (2, 4): [(4, -2)],
            (2, 6): [(6, 2)],
            (3, 4): [(5, 1)],
            (3, 5): [(6, -2)],
        },
    )
    inv1 = _poly(
        6, {((1, 1), (6, 1)): 2, ((2, 1), (5, 1)): 1, ((3, 1), (4, 1)): 2}
    )
    inv2 = _poly(6, {((5, 2),): 1, ((4, 1), (6, 1)): 4})
    return CatalogEntry(
        algebra=alg,
        invariants=(inv1, inv2),
        closure=dict(g_deg=2, c_deg=2, projective=False, depth_limit=3, span="products"),
    )


def _sl2_n31():
    alg = make_lie_algebra(
        "sl2_n31",
        6,
        {
            (1, 2): [(1, 2)],
            (1, 3): [(2, -1)],
            (1, 5): [(6, 1)],
            (2, 3): [(3, 2)],
            (2, 5): [(5, 1)],
            (2, 6): [(6, -1)],
            (3, 6): [(5, 1)],
            (5, 6): [(4, 1)],
        },
    )
    lin = _poly(6, {((4, 1),): 1})
    cub = _poly(
        6,
        {
            ((1, 1), (3, 1), (4, 1)): 4,
            ((1, 1), (5, 2)): -2,
            ((2, 2), (4, 1)): 1,
            ((2, 1), (5, 1), (6, 1)): 2,
            ((3, 1), (6, 2)): 2,
        },
    )
    virtual = VirtualCopyData(
        levi=_sl2().algebra,
        defs={
            1: [(1, ((1, 1), (4, 1))), ((1, 2), ((6, 2),))],
            2: [(1, ((2, 1), (4, 1))), (1, ((5, 1), (6, 1))), ((-1, 2), ((4, 1),))],
            3: [(1, ((3, 1), (4, 1))), ((-1, 2), ((5, 2),))],
        },
        scale_index=4,
    )
    return CatalogEntry(
        algebra=alg,
        invariants=(lin, cub),
        center_reduce=True,
        closure=dict(g_deg=2, c_deg=4, projective=True, depth_limit=3, span="nested"),
        virtual=virtual,
    )


_BUILDERS = {
    "sl2": _sl2,
    "so13": _so13,
    "n55": _n55,
    "n61": _n61,
    "n619": _n619,
    "s6160": _s6160,
    "s6183": _s6183,
    "sl2_3n11": _sl2_3n11,
    "sl2_n31": _sl2_n31,
}

_CACHE = {}


def names():
    return sorted(_BUILDERS)


def entry(name) -> CatalogEntry:
    if name not in _BUILDERS:
        raise ValidationError(
            "unknown catalog entry %r (known: %s)" % (name, ", ".join(names()))
        )
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def algebra(name) -> LieAlgebra:
    return entry(name).algebra


# -- auxiliary algebras used by documented workflows (not catalog entries) --


def heisenberg3():
    """Heisenberg algebra [Y1, Y2] = Y3 (the n55 subalgebra in the Y basis)."""
    return make_lie_algebra("heis3", 3, {(1, 2): [(3, 1)]})


def rescaled_sl2():
    """Target of the n55 rescaled generators: [W1,W2]=4W3, [W1,W3]=2W1, [W2,W3]=-2W2."""
    return make_lie_algebra(
        "wsl2", 3, {(1, 2): [(3, 4)], (1, 3): [(1, 2)], (2, 3): [(2, -2)]}
    )


def rescaled_sl2_invariant():
    """Invariant w3^2 - w1 w2 of the rescaled algebra (symmetrizes to
    W3^2 - W1 W2 + 2 W3)."""
    return _poly(3, {((3, 2),): 1, ((1, 1), (2, 1)): -1})
