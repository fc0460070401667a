"""Shared helpers: seeded generators and a session-wide census cache."""

import random

import pytest

import matrix_census as mc


def make_rng(seed):
    return random.Random(seed)


def rand_matrix(spec, n, rng):
    """Uniform random n x n matrix over the field."""
    return mc.SquareMatrix.from_flat(
        spec, n, [rng.randrange(spec.q) for _ in range(n * n)])


def rand_invertible(spec, n, rng):
    """Rejection-sampled invertible matrix."""
    while True:
        M = rand_matrix(spec, n, rng)
        if bool(M.det()):
            return M


def rand_poly(spec, degree, rng, monic=True):
    """Random polynomial of exactly the given degree."""
    coeffs = [rng.randrange(spec.q) for _ in range(degree)]
    lead = 1 if monic else rng.randrange(1, spec.q)
    return mc.Polynomial(spec, coeffs + [lead])


def rand_irreducible_charpoly_matrix(spec, n, rng):
    """Rejection-sampled matrix whose charpoly is irreducible."""
    while True:
        M = rand_matrix(spec, n, rng)
        if mc.is_irreducible(M.charpoly()):
            return M


@pytest.fixture(scope="session")
def census_cache():
    """Memoized full censuses so acceptance checks share one enumeration."""
    cache = {}

    def get(q, n):
        key = (q, n)
        if key not in cache:
            cache[key] = mc.census_bruteforce(mc.field_from_order(q), n)
        return cache[key]

    return get
