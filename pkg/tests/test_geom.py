import numpy as np
import pytest

from qhcodes.geom import (gaussian_binomial, line_count, num_points,
                          normalize_point, pg_space, dot_rows, row_reduce,
                          rref_bases, span_rank, subspace_points)
from qhcodes.gf import make_field


def test_point_counts():
    assert num_points(2, 9) == 91
    assert num_points(3, 9) == 820
    assert num_points(3, 16) == 4369
    assert gaussian_binomial(4, 2, 3) == 130


def test_space_enumeration_is_canonical():
    """Points are lexicographically sorted leading-one representatives."""
    ctx = make_field(3, 2)
    space = pg_space(ctx, 2)
    pts = space.points
    assert len(pts) == 91
    # first coordinate block: X0 = 1 comes after the X0 = 0 block of a
    # lex sort on tuples, so just check sortedness and normalization
    as_tuples = [tuple(int(x) for x in row) for row in pts]
    assert as_tuples == sorted(as_tuples)
    for row in as_tuples:
        lead = next(x for x in row if x)
        assert lead == 1
    assert len(set(as_tuples)) == 91


def test_point_lookup_roundtrip():
    ctx = make_field(2, 2)
    space = pg_space(ctx, 3)
    for i in (0, 1, 17, 84):
        assert space.index_of(space.points[i]) == i
    # a scaled representative resolves to the same point
    vec = space.points[10].copy()
    scaled = np.array([ctx.mul(2, int(x)) for x in vec])
    assert space.index_of(np.array(normalize_point(ctx, scaled))) == 10


def test_dot_rows_matches_scalar():
    ctx = make_field(3, 2)
    space = pg_space(ctx, 2)
    h = space.points[7]
    acc = dot_rows(ctx, h, space.points[:20])
    for j in range(20):
        s = 0
        for a, b in zip(h, space.points[j]):
            s = ctx.add(s, ctx.mul(int(a), int(b)))
        assert acc[j] == s


def test_hyperplane_incidence_count():
    """Every hyperplane of PG(2, 4) holds q + 1 = 5 points."""
    ctx = make_field(2, 2)
    space = pg_space(ctx, 2)
    for i in range(space.n_points):
        acc = dot_rows(ctx, space.points[i], space.points)
        assert int((acc == 0).sum()) == 5


def test_row_reduce_rank():
    ctx = make_field(3, 2)
    mat = np.array([[1, 2, 0], [2, 4, 0], [0, 0, 1]])
    # row 2 = 2 * row 1 in GF(9) encoding terms iff vmul says so; build
    # a dependent row explicitly instead
    dep = np.array([ctx.mul(2, int(x)) for x in mat[0]])
    stacked = np.vstack([mat[0], dep, mat[2]])
    rank, red = row_reduce(ctx, stacked)
    assert rank == 2
    assert len(red) == 2


def test_span_rank_full():
    ctx = make_field(2, 2)
    space = pg_space(ctx, 3)
    assert span_rank(ctx, space.points).rank == 4


def test_rref_bases_count():
    """Row-echelon bases enumerate each subspace exactly once."""
    ctx = make_field(2, 2)
    seen = set()
    for basis in rref_bases(ctx, 2, 2):
        pts = subspace_points(ctx, basis)
        seen.add(tuple(sorted(tuple(int(x) for x in p) for p in pts)))
    assert len(seen) == gaussian_binomial(3, 2, 4) == line_count(ctx, 2)


def test_line_count_pg3():
    ctx = make_field(3, 2)
    assert line_count(ctx, 3) == 7462
