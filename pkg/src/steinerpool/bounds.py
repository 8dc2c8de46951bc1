"""Lower bound on the average covering size, and the stage-2 workload bound.

Everything except :func:`expected_unresolved_lower_bound` is exact rational
arithmetic, since the equality case is an exact identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping

from .design import Design, coverage_counts
from .errors import (
    BracketFailure,
    MultiplyCoveredSubset,
    NotACovering,
    OutOfRange,
    UncoveredSubset,
)


@dataclass(frozen=True)
class BoundWitness:
    v: int
    t: int
    T: int
    k: int
    alpha: Fraction
    g: Fraction


@dataclass(frozen=True)
class CoveringReport:
    average_size: Fraction
    family_size: int
    bound: Fraction
    meets_bound: bool


def g_t(v: int, t: int, T: int) -> BoundWitness:
    """Evaluate g_t(T) = k + (k+1)(1 - alpha)/t.

    k is the unique integer in t..v with T C(k,t) = alpha C(v,t) and
    1 - t/(k+1) < alpha <= 1.
    """
    if not 1 <= t <= v:
        raise OutOfRange(f"need 1 <= t <= v, got t={t} v={v}")
    total = comb(v, t)
    if not 1 <= T <= total:
        raise OutOfRange(f"need 1 <= T <= C({v},{t}) = {total}, got {T}")
    hits = []
    for k in range(t, v + 1):
        alpha = Fraction(T * comb(k, t), total)
        if 1 - Fraction(t, k + 1) < alpha <= 1:
            hits.append((k, alpha))
    if len(hits) != 1:
        raise BracketFailure(f"{len(hits)} values of k satisfy the bracket for v={v} t={t} T={T}")
    k, alpha = hits[0]
    return BoundWitness(v, t, T, k, alpha, k + Fraction(k + 1, t) * (1 - alpha))


def _steiner_coverage_check(design: Design, t: int) -> None:
    counts = coverage_counts(design, t)
    for sub, c in sorted(counts.items()):
        if c > 1:
            raise MultiplyCoveredSubset(f"{list(sub)} lies in {c} blocks", witness=sub)
    if len(counts) != comb(design.v, t):
        for sub in combinations(range(design.v), t):
            if sub not in counts:
                raise UncoveredSubset(f"{list(sub)} lies in no block", witness=sub)


def average_covering_size(design: Design, t: int) -> CoveringReport:
    """Exact mean of |F(x)| over t-subsets x, F(x) = the unique block holding x."""
    _steiner_coverage_check(design, t)
    total = sum(len(blk) * comb(len(blk), t) for blk in design.blocks)
    avg = Fraction(total, comb(design.v, t))
    bound = g_t(design.v, t, design.b).g
    return CoveringReport(avg, design.b, bound, avg == bound)


def covering_average(F: Mapping, v: int, t: int) -> tuple[Fraction, int]:
    """(mean |F(x)|, number of distinct images) for an explicit covering operator."""
    if len(F) != comb(v, t):
        raise NotACovering(f"operator defined on {len(F)} of {comb(v, t)} {t}-subsets")
    images = set()
    total = 0
    for x, img in F.items():
        xs, ims = frozenset(x), frozenset(img)
        if len(xs) != t or not xs <= ims or not ims <= set(range(v)):
            raise NotACovering(f"F({sorted(xs)}) = {sorted(ims)} is not a superset within 0..{v - 1}")
        images.add(ims)
        total += len(ims)
    return Fraction(total, comb(v, t)), len(images)


def covering_inequality_holds(F: Mapping, v: int, t: int) -> bool:
    """Whether mean |F(x)| >= g_t(|{F(x)}|) for the operator F."""
    avg, size = covering_average(F, v, t)
    return avg >= g_t(v, t, size).g


def expected_unresolved_lower_bound(v: int, u: int, p: float) -> float:
    """v * sum_{t=1..v} C(v,t) p^t (1-p)^(v-t) 2^(-u/t) - v p.

    Evaluated with an exactly rounded float sum; may be negative.
    """
    if v < 1 or u < 0 or not 0.0 <= p <= 1.0:
        raise OutOfRange(f"need v >= 1, u >= 0, 0 <= p <= 1; got v={v} u={u} p={p}")
    q = 1.0 - p
    terms = []
    for t in range(1, v + 1):
        exponent = Fraction(-u, t)
        terms.append(v * comb(v, t) * p**t * q ** (v - t) * 2.0 ** float(exponent))
    terms.sort(key=abs, reverse=True)
    return math.fsum(terms + [-v * p])
