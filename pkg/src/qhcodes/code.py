"""Projective linear codes from point sets of PG(r, q^2).

The points of a spanning set V, in canonical order, are the columns of
a generator matrix; nonzero codewords correspond to nonzero linear
functionals, so the weight of a word equals |V| minus the size of the
section of V by the functional's hyperplane.  This gives two
independent routes to every weight statement: hyperplane sections and
exhaustive codeword enumeration.

Minimality of the whole code is checked three ways: the sufficient
minimum/maximum weight ratio condition (q w_min > (q-1) w_max), the
geometric cutting criterion (every hyperplane section spans its
hyperplane), and brute-force support containment over all codewords.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .budget import check_budget
from .geom import dot_rows, span_rank
from .gf import FiniteField
from .variety import (Variety, hyperplane_section_sizes, line_section_sizes,
                      resolve_engine)

WORDS_HARD_CAP = 2 ** 24


class CodeError(ValueError):
    pass


@dataclass
class LinearCode:
    """Code given by the columns of its generator matrix.

    cols[j] holds the j-th column, a vector of length k; messages are
    row vectors u and the j-th symbol of the codeword is u . cols[j].
    """
    ctx: FiniteField
    cols: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.cols.shape[0])

    @property
    def k(self) -> int:
        return int(self.cols.shape[1])

    def codeword(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        if u.shape != (self.k,):
            raise CodeError(f"message must have length {self.k}")
        if not u.any():
            return np.zeros(self.n, dtype=np.int64)
        return dot_rows(self.ctx, u, self.cols)

    def weight(self, u) -> int:
        return int(np.count_nonzero(self.codeword(u)))

    def message_block(self, lo: int, hi: int) -> np.ndarray:
        """Messages lo .. hi-1 as base-q digit rows, most significant first."""
        q = self.ctx.order
        idx = np.arange(lo, hi, dtype=np.int64)
        return np.stack([(idx // q ** (self.k - 1 - i)) % q
                         for i in range(self.k)], axis=1)

    def codeword_block(self, msgs: np.ndarray) -> np.ndarray:
        """Codewords of a block of messages, one row per message."""
        ctx = self.ctx
        out = np.zeros((len(msgs), self.n), dtype=np.int64)
        for j in range(self.n):
            acc = np.zeros(len(msgs), dtype=np.int64)
            for i in range(self.k):
                c = int(self.cols[j, i])
                if c:
                    acc = ctx.vadd(acc, ctx.scalar_mul_row(c)[msgs[:, i]])
            out[:, j] = acc
        return out


def code_from_variety(v: Variety, p0: int | None = None) -> LinearCode:
    """Code whose columns are the points of v in canonical order.

    p0, a position into that order, moves the chosen point to column 0
    (used by the secret sharing layer).  Refuses point sets that do not
    span, since then some coordinates of the message are invisible.
    """
    cols = v.coords.copy()
    if p0 is not None:
        if not 0 <= p0 < len(cols):
            raise CodeError(f"p0 = {p0} out of range 0 .. {len(cols) - 1}")
        order = np.concatenate(([p0], np.delete(np.arange(len(cols)), p0)))
        cols = cols[order]
    rank = span_rank(v.ctx, cols).rank
    if rank != v.r + 1:
        raise CodeError(
            f"point set spans a proper subspace: rank {rank} < {v.r + 1}")
    return LinearCode(v.ctx, cols, {"variety": v.meta(), "p0": p0})


# ---------------------------------------------------------------------------
# weight distributions

@dataclass
class WeightDistribution:
    q: int               # field size of the code alphabet
    n: int
    k: int
    weights: dict        # weight -> number of nonzero codewords
    source: str

    @property
    def w_min(self) -> int:
        return min(self.weights)

    @property
    def w_max(self) -> int:
        return max(self.weights)

    def check_complete(self) -> None:
        total = sum(self.weights.values())
        expect = self.q ** self.k - 1
        if total != expect:
            raise CodeError(
                f"weight distribution covers {total} words, expected {expect}")

    def as_dict(self) -> dict:
        return {
            "q": self.q, "n": self.n, "k": self.k, "source": self.source,
            "weights": [{"w": int(w), "count": int(c)}
                        for w, c in sorted(self.weights.items())],
        }


def weights_from_sections(v: Variety, engine: str = "auto", parallel: int = 1,
                          budget: int | None = None) -> WeightDistribution:
    """Weight distribution via hyperplane sections: each hyperplane of
    section size s accounts for q-1 words of weight n - s."""
    sizes = hyperplane_section_sizes(v, engine, parallel, budget)
    q = v.ctx.order
    vals, cnts = np.unique(sizes, return_counts=True)
    weights = {int(v.n - s): int(c) * (q - 1) for s, c in zip(vals, cnts)}
    dist = WeightDistribution(q, v.n, v.r + 1, weights, "hyperplane-sections")
    dist.check_complete()
    return dist


def weights_bruteforce(code: LinearCode, budget: int | None = None,
                       chunk: int = 4096) -> WeightDistribution:
    """Weight distribution by enumerating every codeword."""
    q, k = code.ctx.order, code.k
    n_words = q ** k
    check_budget(f"enumerating {n_words} codewords", n_words, budget)
    if n_words > WORDS_HARD_CAP:
        raise CodeError(f"codeword enumeration of {n_words} words exceeds "
                        f"the hard cap {WORDS_HARD_CAP}")
    hist: dict = {}
    for lo in range(0, n_words, chunk):
        hi = min(lo + chunk, n_words)
        words = code.codeword_block(code.message_block(lo, hi))
        wt = (words != 0).sum(axis=1)
        if lo == 0:
            wt = wt[1:]
        for w, c in zip(*np.unique(wt, return_counts=True)):
            hist[int(w)] = hist.get(int(w), 0) + int(c)
    dist = WeightDistribution(q, code.n, k, hist, "exhaustive")
    dist.check_complete()
    return dist


# ---------------------------------------------------------------------------
# divisibility and higher weights

@dataclass
class DivisibilityReport:
    divisor: int
    all_divisible: bool
    offenders: dict

    def as_dict(self):
        return {"divisor": self.divisor, "all_divisible": self.all_divisible,
                "offenders": [{"w": int(w), "count": int(c)}
                              for w, c in sorted(self.offenders.items())]}


def divisibility_report(dist: WeightDistribution, divisor: int) -> DivisibilityReport:
    offenders = {w: c for w, c in dist.weights.items() if w % divisor}
    return DivisibilityReport(divisor, not offenders, offenders)


@dataclass
class HigherWeightReport:
    k: int
    d: int
    max_section: int
    subspaces: int

    def as_dict(self):
        return {"k": self.k, "d": self.d, "max_section": self.max_section,
                "subspaces": self.subspaces}


def higher_weight(v: Variety, k: int, engine: str = "auto", parallel: int = 1,
                  budget: int | None = None) -> HigherWeightReport:
    """Generalized Hamming weight d_k = n - max |V meet codim-k subspace|."""
    from .geom import gaussian_binomial, rref_bases, subspace_points

    r = v.r
    if not 1 <= k <= r:
        raise CodeError(f"k = {k} out of range 1 .. {r}")
    if k == r:
        return HigherWeightReport(k, v.n - 1, 1, v.space.n_points)
    if k == 1:
        sizes = hyperplane_section_sizes(v, engine, parallel, budget)
        return HigherWeightReport(1, v.n - int(sizes.max()), int(sizes.max()),
                                  len(sizes))
    if k == r - 1:
        sizes = line_section_sizes(v, budget)
        return HigherWeightReport(k, v.n - int(sizes.max()), int(sizes.max()),
                                  len(sizes))
    nrows = r + 1 - k
    q = v.ctx.order
    total = gaussian_binomial(r + 1, nrows, q)
    check_budget(f"enumerating {total} subspaces", total, budget)
    memb = v.membership()
    best = 0
    count = 0
    for basis in rref_bases(v.ctx, r, nrows, budget):
        pts = subspace_points(v.ctx, basis)
        sec = int(memb[v.space.index_array(pts)].sum())
        best = max(best, sec)
        count += 1
    return HigherWeightReport(k, v.n - best, best, count)


# ---------------------------------------------------------------------------
# minimality

@dataclass
class ABReport:
    w_min: int
    w_max: int
    lhs: int            # q * w_min
    rhs: int            # (q-1) * w_max
    passes: bool

    def as_dict(self):
        return {"w_min": self.w_min, "w_max": self.w_max,
                "lhs_q_wmin": self.lhs, "rhs_qm1_wmax": self.rhs,
                "passes": self.passes}


def ab_condition(dist: WeightDistribution) -> ABReport:
    """Sufficient condition for minimality: q w_min > (q-1) w_max,
    compared in exact integers."""
    lhs = dist.q * dist.w_min
    rhs = (dist.q - 1) * dist.w_max
    return ABReport(dist.w_min, dist.w_max, lhs, rhs, lhs > rhs)


@dataclass
class CuttingReport:
    ok: bool
    hyperplanes: int
    witness_index: int | None = None
    witness_coords: tuple | None = None
    witness_rank: int | None = None

    def as_dict(self):
        return {"ok": self.ok, "hyperplanes": self.hyperplanes,
                "witness_index": self.witness_index,
                "witness_coords": (None if self.witness_coords is None
                                   else list(self.witness_coords)),
                "witness_rank": self.witness_rank}


def cutting_blocking_check(v: Variety, budget: int | None = None) -> CuttingReport:
    """Does every hyperplane section of v span its hyperplane?

    Equivalent to minimality of the code with columns v.  On failure the
    witness hyperplane (as a functional coordinate vector) is reported.
    """
    ctx, space = v.ctx, v.space
    n_h = space.n_points
    check_budget(f"rank-checking {n_h} hyperplane sections", n_h, budget)
    hyp = space.points
    for i in range(n_h):
        mask = dot_rows(ctx, hyp[i], v.coords) == 0
        rank = span_rank(ctx, v.coords[mask]).rank if mask.any() else 0
        if rank != v.r:
            return CuttingReport(False, n_h, i, tuple(int(x) for x in hyp[i]), rank)
    return CuttingReport(True, n_h)


@dataclass
class MinimalityReport:
    ok: bool
    words: int
    classes: int
    non_minimal_words: int
    non_minimal_weights: dict
    witnesses: list

    def as_dict(self):
        return {
            "ok": self.ok, "words": self.words, "classes": self.classes,
            "non_minimal_words": self.non_minimal_words,
            "non_minimal_weights": [{"w": int(w), "count": int(c)}
                                    for w, c in sorted(self.non_minimal_weights.items())],
            "witnesses": self.witnesses[:8],
        }


def minimality_bruteforce(code: LinearCode, budget: int | None = None,
                          chunk: int = 4096) -> MinimalityReport:
    """Exhaustive minimality check by support containment.

    Enumerates every nonzero codeword, collapses the scalar classes
    (equal supports), and tests proper containment between classes of
    different support sizes.  A word is non-minimal exactly when some
    class has support strictly inside its own.
    """
    q, k = code.ctx.order, code.k
    n_words = q ** k
    check_budget(f"enumerating {n_words} codewords", n_words, budget)
    if n_words > WORDS_HARD_CAP:
        raise CodeError(f"codeword enumeration of {n_words} words exceeds "
                        f"the hard cap {WORDS_HARD_CAP}")
    packs = []
    for lo in range(0, n_words, chunk):
        hi = min(lo + chunk, n_words)
        words = code.codeword_block(code.message_block(lo, hi))
        if lo == 0:
            words = words[1:]
        packs.append(np.packbits(words != 0, axis=1))
    supports = np.concatenate(packs, axis=0)
    classes, inverse = np.unique(supports, axis=0, return_inverse=True)
    mult = np.bincount(inverse)
    sizes = np.unpackbits(classes, axis=1).sum(axis=1).astype(np.int64)
    n_cls = len(classes)
    pair_ops = n_cls * (n_cls - 1) // 2
    check_budget(f"{pair_ops} support containment tests", pair_ops, budget)
    order = np.argsort(sizes, kind="stable")
    classes = classes[order]
    sizes = sizes[order]
    mult = mult[order]
    non_min_words = 0
    non_min_weights: dict = {}
    witnesses = []
    for j in range(n_cls):
        smaller = np.searchsorted(sizes, sizes[j], side="left")
        if smaller == 0:
            continue
        cand = classes[:smaller]
        outside = (cand & ~classes[j]).any(axis=1)
        if not outside.all():
            i = int(np.nonzero(~outside)[0][0])
            non_min_words += int(mult[j])
            w = int(sizes[j])
            non_min_weights[w] = non_min_weights.get(w, 0) + int(mult[j])
            witnesses.append({"weight": w, "contains_weight": int(sizes[i])})
    return MinimalityReport(non_min_words == 0, n_words - 1, n_cls,
                            non_min_words, non_min_weights, witnesses)


def minimality_summary(v: Variety, engine: str = "auto", parallel: int = 1,
                       budget: int | None = None) -> dict:
    """All three minimality views of the code on v, cross-checked."""
    dist = weights_from_sections(v, engine, parallel, budget)
    ab = ab_condition(dist)
    cut = cutting_blocking_check(v, budget)
    out = {"variety": v.meta(), "weights": dist.as_dict(),
           "ab": ab.as_dict(), "cutting": cut.as_dict()}
    n_words = v.ctx.order ** (v.r + 1)
    if n_words <= WORDS_HARD_CAP:
        bf = minimality_bruteforce(code_from_variety(v), budget)
        out["bruteforce"] = bf.as_dict()
        out["agree"] = bool(cut.ok == bf.ok)
    return out
