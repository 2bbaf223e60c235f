import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgale.cone import (
    Cone,
    cone_from_generators,
    cone_from_inequalities,
    contains,
    full_space,
    intersect,
    is_face,
    is_subcone,
    simplicial_contains,
    simplicial_facets,
    zero_cone,
)
from toricgale.exactmat import DimensionError, dot, is_primitive, rank

vectors3 = st.lists(st.integers(-4, 4), min_size=3, max_size=3).map(tuple)
gen_lists = st.lists(vectors3, min_size=0, max_size=6)


def test_simplicial_cone_from_fan_columns():
    # columns 1, 3, 6 of the Nef = 0 fan matrix
    c = cone_from_generators(3, [(1, 0, 0), (0, 0, 1), (1, 3, 2)])
    assert c.dim == 3 and len(c.rays) == 3
    assert c.rays == tuple(sorted([(1, 0, 0), (0, 0, 1), (1, 3, 2)]))


def test_line():
    c = cone_from_generators(2, [(1, 0), (-1, 0)])
    assert c.rays == () and len(c.equations) == 1 and c.dim == 1
    assert c.lineality == ((1, 0),)


def test_zero_and_full():
    z = cone_from_generators(3, [])
    assert z.dim == 0 and z.rays == () and len(z.equations) == 3
    f = full_space(3)
    assert f.dim == 3 and f.inequalities == () and f.equations == ()
    assert intersect(z, f) == z
    assert contains(f, (5, -1, 2), "relative_interior")
    assert contains(z, (0, 0, 0)) and not contains(z, (0, 1, 0))


def test_intersect_examples():
    a = cone_from_generators(2, [(1, 0), (1, 1)])
    b = cone_from_generators(2, [(0, 1), (1, 1)])
    assert intersect(a, b).rays == ((1, 1),)
    assert intersect(a, a) == a


def test_p1p1_bunch_intersection():
    q = {1: (1, 0), 2: (1, 0), 3: (0, 1), 4: (0, 1)}
    cones = [cone_from_generators(2, [q[i] for i in I]) for I in [(2, 4), (1, 4), (1, 3), (2, 3)]]
    out = cones[0]
    for c in cones[1:]:
        out = intersect(out, c)
    assert out == cone_from_generators(2, [(1, 0), (0, 1)])
    # enumeration oracle over a box: membership in every cone = nonnegative quadrant
    for x in itertools.product(range(-3, 4), repeat=2):
        assert contains(out, x) == (x[0] >= 0 and x[1] >= 0)


def test_contains_modes():
    quad = cone_from_generators(2, [(1, 0), (0, 1)])
    assert contains(quad, (0, 0))
    assert not contains(quad, (0, 0), "relative_interior")
    assert contains(quad, (1, 1), "relative_interior")
    assert contains(quad, (1, 0)) and not contains(quad, (1, 0), "relative_interior")
    ray = cone_from_generators(3, [(1, 1, 1)])
    assert contains(ray, (1, 1, 1)) and contains(ray, (3, 3, 3), "relative_interior")
    assert not contains(ray, (1, 1, 2))
    with pytest.raises(DimensionError):
        contains(quad, (1, 1, 1))
    with pytest.raises(ValueError):
        contains(quad, (1, 1), "interior")


def test_is_face():
    quad = cone_from_generators(2, [(1, 0), (0, 1)])
    assert is_face(zero_cone(2), quad)
    assert is_face(cone_from_generators(2, [(1, 0)]), quad)
    assert not is_face(cone_from_generators(2, [(1, 1)]), quad)
    assert is_face(quad, quad)
    assert not is_face(cone_from_generators(2, [(1, 0), (-1, 0)]), quad)
    half = cone_from_inequalities(2, [(0, 1)])
    assert is_face(cone_from_generators(2, [(1, 0), (-1, 0)]), half)
    assert not is_face(zero_cone(2), half)


def test_non_pointed_canonical():
    a = cone_from_generators(2, [(1, 0), (-1, 0), (3, 1)])
    b = cone_from_inequalities(2, [(0, 1)])
    assert a == b
    assert a.rays == ((0, 1),) and a.lineality == ((1, 0),)


@given(gen_lists)
@settings(max_examples=200, deadline=None)
def test_representations_agree(gens):
    c = cone_from_generators(3, gens)
    for g in gens:
        assert contains(c, g)
    for r in c.rays:
        assert is_primitive(r)
    assert len(set(c.rays)) == len(c.rays)
    assert list(c.rays) == sorted(c.rays)
    assert c.dim == 3 - rank(c.equations) if c.equations else c.dim == 3
    assert c.dim == (rank(gens) if gens else 0)
    # every facet normal supports the cone and is tight on a (dim-1)-face
    gens_all = c.generators()
    for u in c.inequalities:
        assert is_primitive(u)
        assert all(dot(u, g) >= 0 for g in gens_all)
        tight = [g for g in gens_all if dot(u, g) == 0]
        assert (rank(tight) if tight else 0) == c.dim - 1
    # round trip through its own rays and lineality
    assert cone_from_generators(3, gens_all) == c


@given(gen_lists, gen_lists, gen_lists)
@settings(max_examples=60, deadline=None)
def test_intersection_algebra(a, b, c):
    A, B, C = (cone_from_generators(3, g) for g in (a, b, c))
    assert intersect(A, B) == intersect(B, A)
    assert intersect(intersect(A, B), C) == intersect(A, intersect(B, C))
    assert intersect(A, A) == A
    ab = intersect(A, B)
    assert is_subcone(ab, A) and is_subcone(ab, B)
    for x in itertools.product(range(-2, 3), repeat=3):
        assert contains(ab, x) == (contains(A, x) and contains(B, x))


def _random_simplicial(rng, d):
    while True:
        gens = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(d)]
        if rank(gens) == d:
            return gens


def test_simplicial_oracle_matches_hrep():
    rng = random.Random(7)
    for d in (2, 3, 4):
        for _ in range(10):
            gens = _random_simplicial(rng, d)
            c = cone_from_generators(d, gens)
            facets = simplicial_facets(gens)
            assert sorted(set(facets)) == list(c.inequalities)
            for _ in range(100):
                x = [rng.randint(-6, 6) for _ in range(d)]
                assert simplicial_contains(gens, x) == contains(c, x)
                assert simplicial_contains(gens, x, strict=True) == contains(c, x, "relative_interior")


def test_intersection_against_simplicial_oracle():
    rng = random.Random(11)
    for _ in range(20):
        g1, g2 = _random_simplicial(rng, 3), _random_simplicial(rng, 3)
        both = intersect(cone_from_generators(3, g1), cone_from_generators(3, g2))
        for _ in range(100):
            x = [rng.randint(-5, 5) for _ in range(3)]
            assert contains(both, x) == (simplicial_contains(g1, x) and simplicial_contains(g2, x))


def test_cone_is_hashable_value():
    a = cone_from_generators(2, [(2, 0), (0, 3), (1, 1)])
    b = cone_from_inequalities(2, [(1, 0), (0, 1)])
    assert a == b and hash(a) == hash(b)
    assert isinstance(a, Cone)
