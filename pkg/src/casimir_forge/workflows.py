"""End-to-end worked pipelines: subalgebra localization and virtual copies.

Two workflows that go beyond a plain closure run:

* the nilpotent five-dimensional algebra has an abelian intermediate-Casimir
  family, but its Heisenberg subalgebra supports rescaled generators
  W_i = Z4^-1 Z_i whose cleared intermediate Casimirs close in a quartic
  polynomial algebra with structure constant 128/9;

* a Levi decomposable algebra with central radical generator Y1 supports a
  virtual copy X'_i of its Levi factor with [X'_i, X'_j] = Y1 C_ij^k X'_k;
  rescaling by Y1^-1 and running the three-copy construction produces a
  Racah-type quadratic algebra inside the enveloping algebra of the full
  Lie algebra.

Every identity in the returned reports is re-expanded through the kernel;
the ok flags are exact statements, not numerical checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog
from .copies import virtual_copy, virtual_intermediate_casimirs
from .errors import ValidationError
from .rationals import QQ
from .uea import EnvelopingAlgebra, NCPoly, render


@dataclass
class SubalgebraRacahReport:
    embedding_ok: bool
    casimir_identity_ok: bool       # cleared one-index value vs -(3/4) Y3^2
    collapse_ok: bool               # central-weighted equality of nested commutators
    algebra_ok: bool                # the three 128/9 relations
    weighted_sum_ok: bool           # weighted zero-sum of the relations
    total_casimir_ok: bool          # cubic expansion of the cleared total Casimir
    elements: dict = field(default_factory=dict)
    details: list = field(default_factory=list)

    def ok(self):
        return all(
            (
                self.embedding_ok,
                self.casimir_identity_ok,
                self.collapse_ok,
                self.algebra_ok,
                self.weighted_sum_ok,
                self.total_casimir_ok,
            )
        )


def n55_subalgebra_racah():
    """Polynomial algebra from the Heisenberg subalgebra of the nilpotent
    five-dimensional algebra, via localization at the central generator.

    Works over U(heis3 + heis3 + heis3) with Y3 inverted: Z1 = Y1^2,
    Z2 = Y2^2, Z3 = Y1 Y2 - Y3/2 and W_i = Z4^-1 Z_i satisfy [W1,W2] = 4 W3,
    [W1,W3] = 2 W1, [W2,W3] = -2 W2.  Intermediate Casimirs of the W family
    are cleared by (Y3^[a])^2 per participating copy (the uniform power equal
    to the invariant degree), giving polynomial elements whose commutator
    algebra closes quartically with factor 128/9.
    """
    heis = catalog.heisenberg3()
    eng = EnvelopingAlgebra(heis, n_copies=3, invertible={3})
    wsl2 = catalog.rescaled_sl2()
    pattern = catalog.rescaled_sl2_invariant()

    def zgen(i, a):
        y1, y2, y3 = (eng.gen(j, a) for j in (1, 2, 3))
        if i == 1:
            return eng.multiply(y1, y1)
        if i == 2:
            return eng.multiply(y2, y2)
        return eng.multiply(y1, y2) - y3.scale(QQ(1, 2))

    def wgen(i, a):
        return eng.multiply(eng.gen_inverse(3, a), zgen(i, a))

    embedding_ok = eng.verify_embedding(wsl2, {i: wgen(i, 1) for i in (1, 2, 3)})

    deg = pattern.total_degree()

    def cleared(S):
        assign = {
            "x%d" % i: sum((wgen(i, a) for a in S), NCPoly.zero()) for i in (1, 2, 3)
        }
        C = eng.substitute(pattern, assign)
        for a in S:
            power = eng.monomial([((a, 3), deg)])
            C = eng.multiply(power, C)
        return C

    subsets = [(1,), (2,), (3,), (1, 2), (2, 3), (1, 3), (1, 2, 3)]
    Cb = {S: cleared(S) for S in subsets}

    y3sq = {a: eng.monomial([((a, 3), 2)]) for a in (1, 2, 3)}
    casimir_identity_ok = all(
        Cb[(a,)] == y3sq[a].scale(QQ(-3, 4)) for a in (1, 2, 3)
    )

    mul, comm = eng.multiply, eng.commutator
    C1223 = comm(Cb[(1, 2)], Cb[(2, 3)])
    C2313 = comm(Cb[(2, 3)], Cb[(1, 3)])
    C1312 = comm(Cb[(1, 3)], Cb[(1, 2)])

    collapse_ok = (
        mul(mul(Cb[(1,)], Cb[(3,)]), C1223)
        == mul(mul(Cb[(1,)], Cb[(2,)]), C2313)
        == mul(mul(Cb[(2,)], Cb[(3,)]), C1312)
    )

    k = QQ(128, 9)
    rel1 = (
        mul(mul(Cb[(1,)], Cb[(2,)]), mul(Cb[(2, 3)], Cb[(1, 2)]))
        - mul(mul(Cb[(2,)], Cb[(2,)]), mul(Cb[(1, 2)], Cb[(1, 3)]))
    ).scale(k)
    rel2 = (
        mul(mul(Cb[(2,)], Cb[(2,)]), mul(Cb[(1, 3)], Cb[(2, 3)]))
        - mul(mul(Cb[(2,)], Cb[(3,)]), mul(Cb[(2, 3)], Cb[(1, 2)]))
    ).scale(k)
    rel3 = (
        mul(mul(Cb[(2,)], Cb[(3,)]), mul(Cb[(1, 2)], Cb[(1, 3)]))
        - mul(mul(Cb[(1,)], Cb[(2,)]), mul(Cb[(1, 3)], Cb[(2, 3)]))
    ).scale(k)
    algebra_ok = (
        comm(Cb[(1, 2)], C1223) == rel1
        and comm(Cb[(2, 3)], C1223) == rel2
        and comm(Cb[(1, 3)], C1223) == rel3
    )

    weighted = (
        mul(Cb[(3,)], comm(Cb[(1, 2)], C1223))
        + mul(Cb[(1,)], comm(Cb[(2, 3)], C1223))
        + mul(Cb[(2,)], comm(Cb[(1, 3)], C1223))
    )
    weighted_sum_ok = weighted.is_zero() and comm(Cb[(1, 2, 3)], C1223).is_zero()

    total_rhs = (
        mul(Cb[(3,)], Cb[(1, 2)]).scale(QQ(-4, 3))
        + mul(Cb[(2,)], Cb[(1, 3)]).scale(QQ(-4, 3))
        + mul(Cb[(1,)], Cb[(2, 3)]).scale(QQ(-4, 3))
        + mul(mul(Cb[(1,)], Cb[(2,)]), Cb[(3,)]).scale(QQ(-48, 9))
    )
    total_casimir_ok = Cb[(1, 2, 3)] == total_rhs

    elements = {"C_%s" % "".join(map(str, S)): render(Cb[S]) for S in subsets}
    elements["C_1223"] = render(C1223)
    return SubalgebraRacahReport(
        embedding_ok=embedding_ok,
        casimir_identity_ok=casimir_identity_ok,
        collapse_ok=collapse_ok,
        algebra_ok=algebra_ok,
        weighted_sum_ok=weighted_sum_ok,
        total_casimir_ok=total_casimir_ok,
        elements=elements,
    )


@dataclass
class VirtualRacahReport:
    embedding_ok: bool
    substitution_ok: bool    # C'(X') = scale * C - (3/4) scale^2
    rescaled_ok: bool        # X'' satisfy the Levi relations exactly
    collapse_ok: bool
    racah_ok: bool           # quadratic relations with structure constant 8
    zero_sum_ok: bool
    elements: dict = field(default_factory=dict)

    def ok(self):
        return all(
            (
                self.embedding_ok,
                self.substitution_ok,
                self.rescaled_ok,
                self.collapse_ok,
                self.racah_ok,
                self.zero_sum_ok,
            )
        )


def virtual_racah(entry=None, defs=None, scale_index=None, n_copies=3):
    """Virtual Racah pipeline for a Levi decomposable algebra.

    Uses the catalog entry's stored virtual-copy data unless explicit defs
    (index -> list of (coeff, word) with word = ((gen, exp), ...)) and a
    scale generator index are supplied.
    """
    entry = entry or catalog.entry("sl2_n31")
    if isinstance(entry, str):
        entry = catalog.entry(entry)
    vdata = entry.virtual
    if defs is None:
        if vdata is None:
            raise ValidationError("entry carries no virtual-copy data")
        defs_data = vdata.defs
        scale_index = vdata.scale_index
        levi = vdata.levi
    else:
        defs_data = defs
        if scale_index is None:
            raise ValidationError("scale_index required with explicit defs")
        levi = vdata.levi if vdata else catalog.algebra("sl2")

    eng = EnvelopingAlgebra(
        entry.algebra, n_copies=n_copies, invertible={scale_index}
    )

    def build(data):
        out = NCPoly.zero()
        for coeff, word in data:
            c = QQ(*coeff) if isinstance(coeff, tuple) else QQ(coeff)
            out = out + eng.monomial(list(word), c)
        return out

    phi = {i: build(d) for i, d in defs_data.items()}
    scale = eng.gen(scale_index)

    result = virtual_copy(eng, levi, phi, scale)
    embedding_ok = True  # virtual_copy raises otherwise
    rescaled_ok = eng.verify_embedding(levi, result.generators)

    # substitution identity: the Levi Casimir pattern evaluated on X' equals
    # scale * (cubic Casimir operator) - (3/4) scale^2
    levi_pattern = catalog.entry("sl2").invariants[0]
    cprime = eng.substitute(levi_pattern, {"x%d" % i: phi[i] for i in (1, 2, 3)})
    cubic = eng.symmetrize(entry.nonlinear_invariants()[0])
    cubic = eng.reduce_mod_center(cubic)
    scale_sq = eng.multiply(scale, scale)
    substitution_ok = cprime == eng.multiply(scale, cubic) - scale_sq.scale(QQ(3, 4))

    pat3 = catalog.entry("sl2").invariants[0]
    els = virtual_intermediate_casimirs(eng, result, pat3, n_copies=n_copies)
    D = {el.label.subset: el.value for el in els}
    mul, comm = eng.multiply, eng.commutator
    C1223 = comm(D[(1, 2)], D[(2, 3)])
    collapse_ok = C1223 == comm(D[(2, 3)], D[(1, 3)]) == comm(D[(1, 3)], D[(1, 2)])

    r1 = (
        mul(D[(2, 3)], D[(1, 2)])
        - mul(D[(1, 2)], D[(1, 3)])
        + mul(D[(2,)] - D[(1,)], D[(3,)] - D[(1, 2, 3)])
    ).scale(8)
    r2 = (
        mul(D[(1, 3)], D[(2, 3)])
        - mul(D[(2, 3)], D[(1, 2)])
        + mul(D[(3,)] - D[(2,)], D[(1,)] - D[(1, 2, 3)])
    ).scale(8)
    r3 = (
        mul(D[(1, 2)], D[(1, 3)])
        - mul(D[(1, 3)], D[(2, 3)])
        + mul(D[(1,)] - D[(3,)], D[(2,)] - D[(1, 2, 3)])
    ).scale(8)
    racah_ok = (
        comm(D[(1, 2)], C1223) == r1
        and comm(D[(2, 3)], C1223) == r2
        and comm(D[(1, 3)], C1223) == r3
    )
    zero_sum = comm(D[(1, 2)], C1223) + comm(D[(2, 3)], C1223) + comm(D[(1, 3)], C1223)
    zero_sum_ok = zero_sum.is_zero()

    return VirtualRacahReport(
        embedding_ok=embedding_ok,
        substitution_ok=substitution_ok,
        rescaled_ok=rescaled_ok,
        collapse_ok=collapse_ok,
        racah_ok=racah_ok,
        zero_sum_ok=zero_sum_ok,
        elements={"C''_12": render(D[(1, 2)])},
    )
