import random

import pytest

from casimir_forge import catalog
from casimir_forge.uea import GID_MASK, GID_SHIFT, EnvelopingAlgebra, NCPoly, gid


@pytest.fixture(scope="session")
def engines():
    """One three-copy engine per catalog algebra, shared across tests."""
    return {
        name: EnvelopingAlgebra(catalog.algebra(name), n_copies=3)
        for name in catalog.names()
    }


def random_word(rng, dim, n_copies, max_len=4):
    length = rng.randint(1, max_len)
    return tuple(
        gid(rng.randint(1, n_copies), rng.randint(1, dim)) for _ in range(length)
    )


def random_poly(engine, rng, max_terms=3, max_len=3):
    p = NCPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        word = random_word(rng, engine.algebra.dim, engine.n_copies, max_len)
        coeff = rng.randint(-4, 4) or 1
        runs = [((g >> GID_SHIFT, g & GID_MASK), 1) for g in word]
        p = p + engine.monomial(runs, coeff)
    return p


@pytest.fixture
def rng():
    return random.Random(20230911)
