"""Projective geometry PG(r, q) over integer-encoded finite fields.

Points and hyperplanes are length r+1 coordinate vectors normalized so
the leftmost nonzero coordinate is 1.  The canonical order is
lexicographic on the encoding tuples, which places the all-but-last-zero
point (0, ..., 0, 1) first and the affine chart (1, x_1, ..., x_r) last.
Hyperplanes use the same normalization and order on their dual vectors;
a point P lies on a hyperplane H iff sum(P_i * H_i) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .budget import check_budget
from .gf import FiniteField


def num_points(r: int, q: int) -> int:
    return (q ** (r + 1) - 1) // (q - 1)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def normalize_point(ctx: FiniteField, vec) -> tuple:
    vec = tuple(int(v) for v in vec)
    for i, v in enumerate(vec):
        if v:
            if v == 1:
                return vec
            s = ctx.inv(v)
            return tuple(0 if j < i else ctx.mul(s, w) for j, w in enumerate(vec))
    raise ValueError("the zero vector is not a projective point")


def _digit_matrix(q: int, width: int, count: int) -> np.ndarray:
    """Rows 0..count-1 written base q, most significant digit first."""
    cols = []
    n = np.arange(count, dtype=np.int64)
    for i in range(width - 1, -1, -1):
        cols.append((n // q ** i) % q)
    return np.stack(cols, axis=1) if width else np.zeros((count, 0), dtype=np.int64)


class ProjectiveSpace:
    """All points of PG(r, q) in canonical order, with index lookup."""

    def __init__(self, ctx: FiniteField, r: int, budget: int | None = None):
        if r < 1:
            raise ValueError(f"r = {r} must be at least 1")
        q = ctx.order
        n = num_points(r, q)
        check_budget(f"enumerating {n} points of PG({r},{q})", n, budget)
        self.ctx = ctx
        self.r = r
        self.n_points = n
        blocks = []
        for lead in range(r, -1, -1):
            width = r - lead
            count = q ** width
            block = np.zeros((count, r + 1), dtype=np.int64)
            block[:, lead] = 1
            if width:
                block[:, lead + 1:] = _digit_matrix(q, width, count)
            blocks.append(block)
        self.points = np.concatenate(blocks, axis=0)
        # base-q value of the coordinate tuple; ascending because blocks
        # follow the lexicographic order
        weights = q ** np.arange(r, -1, -1, dtype=np.int64)
        self.keys = self.points @ weights
        assert bool(np.all(np.diff(self.keys) > 0))

    @property
    def hyperplanes(self) -> np.ndarray:
        """Dual coordinate vectors, same normalization and order as points."""
        return self.points

    def key_of(self, vec) -> int:
        q = self.ctx.order
        k = 0
        for v in vec:
            k = k * q + int(v)
        return k

    def index_of(self, vec) -> int:
        """Canonical index of a (normalized) point."""
        k = self.key_of(vec)
        i = int(np.searchsorted(self.keys, k))
        if i == self.n_points or self.keys[i] != k:
            raise KeyError(f"{tuple(vec)} is not a normalized point")
        return i

    def index_array(self, pts: np.ndarray) -> np.ndarray:
        q = self.ctx.order
        weights = q ** np.arange(self.r, -1, -1, dtype=np.int64)
        keys = pts @ weights
        idx = np.searchsorted(self.keys, keys)
        if np.any(idx >= self.n_points) or np.any(self.keys[idx] != keys):
            raise KeyError("some rows are not normalized points")
        return idx


@lru_cache(maxsize=None)
def pg_space(ctx: FiniteField, r: int) -> ProjectiveSpace:
    return ProjectiveSpace(ctx, r)


def enumerate_points(ctx: FiniteField, r: int) -> np.ndarray:
    return pg_space(ctx, r).points


def enumerate_hyperplanes(ctx: FiniteField, r: int) -> np.ndarray:
    return pg_space(ctx, r).hyperplanes


def dot_rows(ctx: FiniteField, h, pts: np.ndarray) -> np.ndarray:
    """Evaluate the functional h on every row of pts."""
    acc = None
    for k, c in enumerate(h):
        c = int(c)
        if c == 0:
            continue
        term = pts[:, k] if c == 1 else ctx.scalar_mul_row(c)[pts[:, k]]
        acc = term if acc is None else ctx.vadd(acc, term)
    if acc is None:
        raise ValueError("zero functional")
    return acc


def incident(ctx: FiniteField, point, hyperplane) -> bool:
    acc = 0
    for a, b in zip(point, hyperplane):
        acc = ctx.add(acc, ctx.mul(int(a), int(b)))
    return acc == 0


@dataclass(frozen=True)
class SubspaceBasis:
    rank: int
    rows: tuple


def row_reduce(ctx: FiniteField, mat: np.ndarray, max_rank: int | None = None):
    """Row echelon form over the field; returns (rank, reduced rows)."""
    mat = np.array(mat, dtype=np.int64, copy=True)
    if mat.ndim != 2:
        raise ValueError("need a 2d matrix")
    n, w = mat.shape
    cap = w if max_rank is None else min(w, max_rank)
    rank = 0
    for col in range(w):
        if rank >= min(n, cap):
            break
        rest = mat[rank:, col]
        nz = np.nonzero(rest)[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            mat[[rank, piv]] = mat[[piv, rank]]
        pv = int(mat[rank, col])
        if pv != 1:
            mat[rank] = ctx.scalar_mul_row(ctx.inv(pv))[mat[rank]]
        factors = mat[:, col].copy()
        factors[rank] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            scaled = ctx.vmul(ctx.vneg(factors[rows])[:, None], mat[rank][None, :])
            mat[rows] = ctx.vadd(mat[rows], scaled)
        rank += 1
    return rank, mat[:rank]


def span_rank(ctx: FiniteField, vectors) -> SubspaceBasis:
    """Rank and echelon basis of the span of the given coordinate vectors."""
    arr = np.atleast_2d(np.array(list(vectors), dtype=np.int64))
    if arr.size == 0:
        return SubspaceBasis(0, ())
    rank, rows = row_reduce(ctx, arr)
    return SubspaceBasis(rank, tuple(tuple(int(v) for v in row) for row in rows))


def veronese2(ctx: FiniteField, point) -> tuple:
    """Degree-2 Veronese image: all monomials x_i * x_j, i <= j, in
    lexicographic order.  Normalized inputs map to normalized outputs."""
    pt = tuple(int(v) for v in point)
    out = []
    for i in range(len(pt)):
        for j in range(i, len(pt)):
            out.append(ctx.mul(pt[i], pt[j]))
    return tuple(out)


def rref_bases(ctx: FiniteField, r: int, nrows: int, budget: int | None = None):
    """All nrows-dimensional row spaces in PG(r, q), one reduced basis each.

    Yields (nrows, r+1) integer matrices in reduced row echelon form,
    every subspace exactly once.
    """
    q = ctx.order
    total = gaussian_binomial(r + 1, nrows, q)
    check_budget(f"enumerating {total} subspaces of PG({r},{q})", total, budget)
    for pivots in combinations(range(r + 1), nrows):
        free = []
        for t, p in enumerate(pivots):
            free.extend((t, c) for c in range(p + 1, r + 1) if c not in pivots)
        for values in product(range(q), repeat=len(free)):
            mat = np.zeros((nrows, r + 1), dtype=np.int64)
            for t, p in enumerate(pivots):
                mat[t, p] = 1
            for (t, c), v in zip(free, values):
                mat[t, c] = v
            yield mat


def subspace_points(ctx: FiniteField, basis: np.ndarray) -> np.ndarray:
    """Normalized points of the projective subspace spanned by basis rows.

    The basis must be in reduced row echelon form (as from rref_bases);
    the combinations it produces are then already normalized.
    """
    s = basis.shape[0]
    q = ctx.order
    chunks = []
    for lead in range(s):
        width = s - lead - 1
        coeffs = _digit_matrix(q, width, q ** width)
        pts = np.broadcast_to(basis[lead], (q ** width, basis.shape[1])).copy()
        for j in range(width):
            col = coeffs[:, j]
            row = basis[lead + 1 + j]
            scaled = ctx.vmul(col[:, None], row[None, :])
            pts = ctx.vadd(pts, scaled)
        chunks.append(pts)
    return np.concatenate(chunks, axis=0)


def enumerate_lines(ctx: FiniteField, r: int, budget: int | None = None):
    """All lines of PG(r, q) as canonical point pairs (a, b).

    a and b are the two lexicographically smallest points on the line;
    the full point set is a plus the q combinations b + t*a.
    """
    for mat in rref_bases(ctx, r, 2, budget):
        # row 1 pivots later, so it is the smaller point; row 0 is the
        # smallest of the q combinations row0 + t*row1
        yield (tuple(int(v) for v in mat[1]), tuple(int(v) for v in mat[0]))


def line_points(ctx: FiniteField, a, b) -> list:
    """The q+1 points of the line through canonical pair (a, b)."""
    pts = [tuple(a)]
    arr_a = np.array(a, dtype=np.int64)
    arr_b = np.array(b, dtype=np.int64)
    for t in range(ctx.order):
        combo = ctx.vadd(arr_b, ctx.scalar_mul_row(t)[arr_a])
        pts.append(tuple(int(v) for v in combo))
    return pts


def line_count(ctx: FiniteField, r: int) -> int:
    return gaussian_binomial(r + 1, 2, ctx.order)
