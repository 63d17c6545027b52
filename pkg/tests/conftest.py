"""Shared fixtures: canonical instances and the seeded random corpus."""

import random
from fractions import Fraction
from functools import cmp_to_key

import pytest

from convexcover import PolygonWithHoles, pt
from convexcover.errors import InvalidPolygonError
from convexcover.exact_geom import ccw_compare_from

CORPUS_SEED = 20260815
SIMPLE_COUNT = 100
HOLED_COUNT = 20


@pytest.fixture(scope="session")
def square4():
    return PolygonWithHoles((pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)))


@pytest.fixture(scope="session")
def triangle():
    return PolygonWithHoles((pt(0, 0), pt(4, 0), pt(0, 4)))


@pytest.fixture(scope="session")
def lshape():
    return PolygonWithHoles(
        (pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)))


@pytest.fixture(scope="session")
def holed_square():
    return PolygonWithHoles(
        (pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)),
        ((pt(1, 1), pt(1, 3), pt(3, 3), pt(3, 1)),))


def star_ring(rng, n, span=9):
    """Simple polygon ring: n distinct grid points sorted around their centroid.

    Rejects draws where a point hits the centroid or two points share a
    direction from it, so the angular order is strict and the ring simple.
    """
    while True:
        seen = set()
        while len(seen) < n:
            seen.add((rng.randint(0, span), rng.randint(0, span)))
        pts = [pt(x, y) for x, y in sorted(seen)]
        cx = Fraction(sum(p.x for p in pts), n)
        cy = Fraction(sum(p.y for p in pts), n)
        c = pt(cx, cy)
        if any(p == c for p in pts):
            continue
        cmp = ccw_compare_from(pt(1, 0))
        if any(cmp(a - c, b - c) == 0
               for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        return tuple(sorted(pts, key=cmp_to_key(lambda a, b: cmp(a - c, b - c))))


def simple_instance(rng, nmin=4, nmax=12):
    while True:
        try:
            return PolygonWithHoles(star_ring(rng, rng.randint(nmin, nmax)))
        except InvalidPolygonError:
            continue


HOLE_SHAPES = (
    ((0, 0), (0, 1), (1, 1), (1, 0)),   # unit square, clockwise
    ((0, 0), (1, 1), (2, 0)),           # flat triangle, clockwise
)


def holed_instance(rng, total_max=10):
    while True:
        shape = HOLE_SHAPES[rng.randrange(len(HOLE_SHAPES))]
        nh = len(shape)
        outer = star_ring(rng, rng.randint(max(4, 7 - nh), total_max - nh))
        ox, oy = rng.randint(1, 7), rng.randint(1, 7)
        hole = tuple(pt(x + ox, y + oy) for x, y in shape)
        try:
            return PolygonWithHoles(outer, (hole,))
        except InvalidPolygonError:
            continue


def build_corpus():
    """The deterministic test corpus: 100 simple + 20 one-hole instances."""
    rng = random.Random(CORPUS_SEED)
    corpus = [(f"s{i:03d}", simple_instance(rng)) for i in range(SIMPLE_COUNT)]
    corpus += [(f"h{i:03d}", holed_instance(rng)) for i in range(HOLED_COUNT)]
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def corpus_sample(corpus):
    """A slice of the corpus for per-module checks; acceptance runs it all."""
    rng = random.Random(7)
    picks = rng.sample(range(SIMPLE_COUNT), 8)
    picks += [SIMPLE_COUNT + i for i in rng.sample(range(HOLED_COUNT), 4)]
    return [corpus[i] for i in sorted(picks)]
