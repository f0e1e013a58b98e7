import random

import pytest
from hypothesis import given, settings, strategies as st

from casimir_forge import catalog
from casimir_forge.commpoly import CommPoly
from casimir_forge.errors import BudgetExceeded, ValidationError
from casimir_forge.rationals import QQ
from casimir_forge.uea import (
    EnvelopingAlgebra,
    NCPoly,
    gid,
    render,
)

from .conftest import random_poly
from .oracles import normal_order_reference

XV = ("x1", "x2", "x3")


@pytest.fixture(scope="module")
def sl2():
    return EnvelopingAlgebra(catalog.algebra("sl2"), n_copies=3)


def test_multiply_rewrites_out_of_order(sl2):
    # X3 X1 = X1 X3 + X2 from [X1, X3] = -X2
    got = sl2.multiply(sl2.gen(3), sl2.gen(1))
    want = sl2.multiply(sl2.gen(1), sl2.gen(3)) + sl2.gen(2)
    assert got == want
    assert render(got) == "X2^[1] + X1^[1] X3^[1]"


def test_multiply_same_generator(sl2):
    sq = sl2.multiply(sl2.gen(1), sl2.gen(1))
    assert sq == sl2.monomial([(1, 2)])


def test_cross_copy_generators_commute(sl2):
    got = sl2.multiply(sl2.gen(3, 2), sl2.gen(1, 1))
    assert render(got) == "X1^[1] X3^[2]"
    assert sl2.commutator(sl2.gen(3, 2), sl2.gen(1, 1)).is_zero()


def test_casimir_commutes(sl2):
    C = sl2.symmetrize(catalog.entry("sl2").invariants[0])
    assert render(C) == "2 X2^[1] + 4 X1^[1] X3^[1] + X2^[1]^2"
    for i in (1, 2, 3):
        assert sl2.commutator(sl2.gen(i), C).is_zero()


def test_commutator_self_is_zero(sl2, rng):
    for _ in range(20):
        p = random_poly(sl2, rng)
        assert sl2.commutator(p, p).is_zero()


def test_two_copy_intermediate_casimirs_do_not_commute(sl2):
    pat = catalog.entry("sl2").invariants[0]

    def cas(S):
        assign = {
            "x%d" % i: sum((sl2.gen(i, a) for a in S), NCPoly.zero()) for i in (1, 2, 3)
        }
        return sl2.substitute(pat, assign)

    c12, c23 = cas((1, 2)), cas((2, 3))
    assert not sl2.commutator(c12, c23).is_zero()


def test_symmetrize_examples(sl2):
    # x1 x2 -> X1 X2 - X1 (average of the two orderings)
    p = CommPoly(XV, {(1, 1, 0): 1})
    got = sl2.symmetrize(p)
    want = sl2.multiply(sl2.gen(1), sl2.gen(2)) - sl2.gen(1)
    assert got == want
    # single variable is the identity embedding
    assert sl2.symmetrize(CommPoly.variable(XV, "x1")) == sl2.gen(1)


def test_symmetrize_linearity(sl2):
    p = CommPoly(XV, {(2, 0, 0): 2, (0, 1, 1): -3})
    q = CommPoly(XV, {(0, 2, 0): 1})
    lhs = sl2.symmetrize(p + q.scale(5))
    rhs = sl2.symmetrize(p) + sl2.symmetrize(q).scale(5)
    assert lhs == rhs


def test_symmetrize_vs_naive_lower_degree(sl2, rng):
    # Sym(P) differs from the naive ordered substitution only below top degree
    for _ in range(10):
        exps = tuple(rng.randint(0, 2) for _ in range(3))
        if sum(exps) < 2:
            continue
        P = CommPoly(XV, {exps: 1})
        sym = sl2.symmetrize(P)
        naive = sl2.monomial([(i + 1, e) for i, e in enumerate(exps) if e])
        assert (sym - naive).degree() < sum(exps)


def test_substitute_identity_reproduces_symmetrize(sl2):
    pat = catalog.entry("sl2").invariants[0]
    assign = {"x%d" % i: sl2.gen(i) for i in (1, 2, 3)}
    assert sl2.substitute(pat, assign) == sl2.symmetrize(pat)


def test_substitute_unassigned_symbol(sl2):
    pat = catalog.entry("sl2").invariants[0]
    with pytest.raises(Exception):
        sl2.substitute(pat, {"x1": sl2.gen(1)})


def test_reduce_mod_center_examples():
    entry = catalog.entry("s6160")
    eng = EnvelopingAlgebra(entry.algebra, n_copies=1)
    C = eng.symmetrize(entry.invariants[1])
    red = eng.reduce_mod_center(C)
    want = (
        eng.multiply(eng.gen(1), eng.gen(6)).scale(2)
        + eng.multiply(eng.gen(3), eng.gen(5)).scale(2)
        - eng.multiply(eng.gen(2), eng.gen(2))
    )
    assert red == want
    # p without pure-central terms is unchanged
    assert eng.reduce_mod_center(red) == red
    # constants are dropped too
    assert eng.reduce_mod_center(NCPoly.constant(5)).is_zero()


def test_s6183_center_reduced_casimir():
    entry = catalog.entry("s6183")
    eng = EnvelopingAlgebra(entry.algebra, n_copies=1)
    C = eng.reduce_mod_center(eng.symmetrize(entry.invariants[1]))
    x = eng.gen
    want = (
        eng.product([x(1), x(1), x(6)])
        + eng.product([x(1), x(3), x(4)]).scale(2)
        - eng.product([x(1), x(2), x(5)])
        - eng.product([x(2), x(2), x(3)])
    )
    assert C == want


def test_localization_soundness():
    heis = catalog.heisenberg3()
    eng = EnvelopingAlgebra(heis, n_copies=2, invertible={3})
    z = eng.gen(3)
    zinv = eng.gen_inverse(3)
    assert eng.multiply(zinv, z) == NCPoly.constant(1)
    assert eng.multiply(z, zinv) == NCPoly.constant(1)
    # inverse commutes with everything
    for i in (1, 2):
        assert eng.commutator(zinv, eng.gen(i)).is_zero()
    # only central generators may be inverted
    with pytest.raises(ValidationError):
        eng.gen_inverse(1)
    with pytest.raises(ValidationError):
        EnvelopingAlgebra(catalog.algebra("sl2"), invertible={1})


def test_clear_central_denominators():
    heis = catalog.heisenberg3()
    eng = EnvelopingAlgebra(heis, n_copies=1, invertible={3})
    p = eng.multiply(eng.gen_inverse(3), eng.gen(1))
    cleared, mult = eng.clear_central_denominators(p)
    assert cleared == eng.gen(1)
    assert mult == eng.gen(3)


def test_budget_exceeded():
    eng = EnvelopingAlgebra(catalog.algebra("so13"), n_copies=1, term_budget=3)
    p = sum((eng.gen(i) for i in range(1, 7)), NCPoly.zero())
    with pytest.raises(BudgetExceeded):
        eng.multiply(p, p)


def test_verify_embedding_identity_and_scaled():
    sl2alg = catalog.algebra("sl2")
    eng = EnvelopingAlgebra(sl2alg, n_copies=1)
    assert eng.verify_embedding(sl2alg, {i: eng.gen(i) for i in (1, 2, 3)})
    entry = catalog.entry("sl2_n31")
    host = EnvelopingAlgebra(entry.algebra, n_copies=1, invertible={4})
    x = host.gen
    half = QQ(1, 2)
    phi = {
        1: host.multiply(x(1), x(4)) + host.multiply(x(6), x(6)).scale(half),
        2: host.multiply(x(2), x(4)) + host.multiply(x(5), x(6)) - x(4).scale(half),
        3: host.multiply(x(3), x(4)) - host.multiply(x(5), x(5)).scale(half),
    }
    assert host.verify_embedding(sl2alg, phi, scale=x(4))
    assert not host.verify_embedding(sl2alg, phi)  # unscaled relations fail


def test_relabel_copies(sl2):
    p = sl2.multiply(sl2.gen(1, 1), sl2.gen(2, 2))
    q = sl2.relabel_copies(p, {1: 2, 2: 1})
    assert q == sl2.multiply(sl2.gen(1, 2), sl2.gen(2, 1))


def test_render_canonical_forms(sl2):
    assert render(NCPoly.zero()) == "0"
    assert render(NCPoly.constant(QQ(-3, 2))) == "-3/2"
    p = sl2.monomial([(2, 2)], QQ(1, 3)) + sl2.gen(1).scale(-1)
    assert render(p) == "-X1^[1] + 1/3 X2^[1]^2"


# -- randomized algebraic laws ----------------------------------------------


@pytest.mark.parametrize("name", sorted(catalog.names()))
def test_associativity_random(name, engines):
    eng = engines[name]
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(12):
        p = random_poly(eng, rng, max_terms=2, max_len=2)
        q = random_poly(eng, rng, max_terms=2, max_len=2)
        r = random_poly(eng, rng, max_terms=2, max_len=2)
        assert eng.multiply(eng.multiply(p, q), r) == eng.multiply(p, eng.multiply(q, r))


@pytest.mark.parametrize("name", sorted(catalog.names()))
def test_jacobi_random(name, engines):
    eng = engines[name]
    rng = random.Random(hash(name) & 0xFFF)
    for _ in range(8):
        p = random_poly(eng, rng, max_terms=2, max_len=2)
        q = random_poly(eng, rng, max_terms=2, max_len=2)
        r = random_poly(eng, rng, max_terms=2, max_len=2)
        s = (
            eng.commutator(eng.commutator(p, q), r)
            + eng.commutator(eng.commutator(q, r), p)
            + eng.commutator(eng.commutator(r, p), q)
        )
        assert s.is_zero()


@pytest.mark.parametrize("name", sorted(catalog.names()))
def test_commutator_degree_bound(name, engines):
    eng = engines[name]
    rng = random.Random(hash(name) & 0xFF)
    for _ in range(10):
        p = random_poly(eng, rng, max_terms=2, max_len=3)
        q = random_poly(eng, rng, max_terms=2, max_len=3)
        if p.degree() < 1 or q.degree() < 1:
            continue
        c = eng.commutator(p, q)
        if not c.is_zero():
            assert c.degree() <= p.degree() + q.degree() - 1


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_normal_ordering_dual_oracle(data):
    name = data.draw(st.sampled_from(sorted(catalog.names())))
    eng = EnvelopingAlgebra(catalog.algebra(name), n_copies=3)
    dim = eng.algebra.dim
    word = data.draw(
        st.lists(
            st.tuples(st.integers(1, 3), st.integers(1, dim)),
            min_size=1,
            max_size=6,
        )
    )
    gids = tuple(gid(c, i) for c, i in word)
    got = {}
    eng._normalize([(g, 1) for g in gids], QQ(1), got)
    ref = normal_order_reference(eng, gids)
    assert {m: (int(c.numerator), int(c.denominator)) for m, c in got.items()} == {
        m: (c.numerator, c.denominator) for m, c in ref.items()
    }
