import random

import pytest

from mukailat.lattices import k3_lattice, mukai_lattice


@pytest.fixture(scope="session")
def k3():
    return k3_lattice()


@pytest.fixture(scope="session")
def mukai():
    return mukai_lattice()


@pytest.fixture
def rng():
    return random.Random(20240817)


def label_vector(lattice, **coeffs):
    """Vector with the given label -> coefficient assignments."""
    v = [0] * lattice.rank
    for label, c in coeffs.items():
        v[lattice.basis_labels.index(label)] = c
    return tuple(v)


def random_vector(lattice, rng, bound=5, density=0.5):
    return tuple(
        rng.randint(-bound, bound) if rng.random() < density else 0
        for _ in range(lattice.rank)
    )
