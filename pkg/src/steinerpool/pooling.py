"""Two-stage disjunctive testing: pools, syndromes, decoding and simulation.

Item sets are Python ints used as bitsets (bit j set means item j). The
decoder applies two rules once:

* every item in a pool that tested negative is negative;
* an item that is the only non-negative member of a positive pool is positive.

Everything else is unresolved and tested individually at stage 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .bounds import expected_unresolved_lower_bound
from .design import Design, Resolution
from .errors import (
    LengthMismatch,
    OutOfRange,
    PreconditionViolated,
    UncoveredSubset,
)

GENERATOR = "philox4x64"
MAX_ITEMS = 4096


def to_mask(items: Iterable[int]) -> int:
    m = 0
    for j in items:
        m |= 1 << j
    return m


def from_mask(mask: int) -> list[int]:
    out, j = [], 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


@dataclass(frozen=True)
class PoolingMatrix:
    v: int
    pools: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.pools:
            raise PreconditionViolated("a pooling matrix needs at least one pool")
        if not 1 <= self.v <= MAX_ITEMS:
            raise PreconditionViolated(f"item count {self.v} outside 1..{MAX_ITEMS}")
        for pool in self.pools:
            if not pool:
                raise PreconditionViolated("empty pool")
            if min(pool) < 0 or max(pool) >= self.v:
                raise PreconditionViolated(f"pool {list(pool)} leaves 0..{self.v - 1}")

    @classmethod
    def of(cls, v: int, pools) -> PoolingMatrix:
        return cls(v, tuple(tuple(sorted(set(p))) for p in pools))

    @property
    def u(self) -> int:
        return len(self.pools)

    def masks(self) -> list[int]:
        return [to_mask(p) for p in self.pools]

    def incidence(self) -> np.ndarray:
        H = np.zeros((self.u, self.v), dtype=bool)
        for i, pool in enumerate(self.pools):
            H[i, list(pool)] = True
        return H


@dataclass(frozen=True)
class DecodeResult:
    negatives: frozenset[int]
    positives: frozenset[int]
    unresolved: frozenset[int]

    @property
    def stage2_tests(self) -> int:
        return len(self.unresolved)


def syndrome(H: PoolingMatrix, defectives: Iterable[int]) -> tuple[int, ...]:
    x = to_mask(defectives)
    return tuple(int(bool(m & x)) for m in H.masks())


def decode(H: PoolingMatrix, s: Sequence[int]) -> DecodeResult:
    if len(s) != H.u:
        raise LengthMismatch(f"syndrome has {len(s)} entries, matrix has {H.u} pools")
    masks = H.masks()
    neg = 0
    for m, si in zip(masks, s):
        if not si:
            neg |= m
    pos = 0
    for m, si in zip(masks, s):
        if si:
            rest = m & ~neg
            if rest and rest & (rest - 1) == 0:
                pos |= rest
    everything = (1 << H.v) - 1
    return DecodeResult(
        frozenset(from_mask(neg)),
        frozenset(from_mask(pos)),
        frozenset(from_mask(everything & ~neg & ~pos)),
    )


def pools_from_partition(design: Design, blocks: Sequence[int] | None = None) -> PoolingMatrix:
    """One pool per block; the chosen blocks (default: all) must partition the points."""
    chosen = range(design.b) if blocks is None else blocks
    pools = [design.blocks[i] for i in chosen]
    flat = [x for p in pools for x in p]
    if len(flat) != design.v or set(flat) != set(range(design.v)):
        raise PreconditionViolated("blocks do not partition the point set")
    return PoolingMatrix.of(design.v, pools)


def pools_from_class(design: Design, resolution: Resolution, index: int = 0) -> PoolingMatrix:
    return pools_from_partition(design, resolution.classes[index])


def star_partition(design: Design, point: int | None = None) -> PoolingMatrix:
    """Partition through one point: its blocks, the point kept only in the first.

    In a Steiner 2-design the blocks through any point cover every point and
    meet pairwise only there. The default point is the last one, which for an
    extended design is the added point, so the extended class comes back as
    Dorfman groups of sizes k+1, k, ..., k.
    """
    x = design.v - 1 if point is None else point
    star = [blk for blk in design.blocks if x in blk]
    pools = [star[0]] + [tuple(y for y in blk if y != x) for blk in star[1:]]
    return pools_from_partition(Design.normalize(design.v, pools))


def pools_from_design_transpose(design: Design) -> PoolingMatrix:
    """Items are blocks, pools are points: pool i holds the blocks through point i."""
    pools = [[] for _ in range(design.v)]
    for j, blk in enumerate(design.blocks):
        for x in blk:
            pools[x].append(j)
    return PoolingMatrix.of(design.b, pools)


def identity_pools(v: int) -> PoolingMatrix:
    return PoolingMatrix.of(v, [[j] for j in range(v)])


def covering_operator_stage2(design: Design, x: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """The block containing the t-subset x and its size."""
    xs = set(x)
    hits = [blk for blk in design.blocks if xs <= set(blk)]
    if not hits:
        raise UncoveredSubset(f"{sorted(xs)} lies in no block", witness=tuple(sorted(xs)))
    if len(hits) > 1:
        raise PreconditionViolated(f"{sorted(xs)} lies in {len(hits)} blocks; not a Steiner design")
    return hits[0], len(hits[0])


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    p: float
    seed: int
    u: int
    v: int
    stage2_total: int
    stage2_sq_total: int
    violations: int
    bound: float

    @property
    def mean_stage2(self) -> Fraction:
        return Fraction(self.stage2_total, self.trials)

    @property
    def mean_total(self) -> Fraction:
        return self.u + self.mean_stage2

    @property
    def stderr(self) -> float:
        n = self.trials
        if n < 2:
            return 0.0
        var = Fraction(self.stage2_sq_total * n - self.stage2_total**2, n * (n - 1))
        return math.sqrt(var / n)

    def to_text(self) -> str:
        def frac(f: Fraction) -> str:
            return f"{f.numerator}/{f.denominator}"

        lines = [
            f"trials={self.trials}",
            f"p={self.p!r}",
            f"seed={self.seed}",
            f"generator={GENERATOR}",
            f"u={self.u}",
            f"v={self.v}",
            f"mean_stage2={frac(self.mean_stage2)}",
            f"mean_total={frac(self.mean_total)}",
            f"stderr={self.stderr!r}",
            f"bound={self.bound!r}",
            f"violations={self.violations}",
        ]
        return "\n".join(lines) + "\n"


def _decode_batch(H: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised decoder: (negatives, positives) as boolean arrays, one row per trial."""
    Hi = H.astype(np.int32)
    S = (X.astype(np.int32) @ Hi.T) > 0
    N = ((~S).astype(np.int32) @ Hi) > 0
    open_counts = (~N).astype(np.int32) @ Hi.T
    sole = S & (open_counts == 1)
    P = ((sole.astype(np.int32) @ Hi) > 0) & ~N
    return N, P


def sample_defects(v: int, p: float, trials: int, seed: int, start: int = 0) -> np.ndarray:
    """Defect indicators for trials start..start+trials-1.

    Trial i reads uniforms i*v .. (i+1)*v - 1 of the Philox stream keyed by
    ``seed``; an item is defective when its uniform is below p.
    """
    bitgen = np.random.Philox(key=seed)
    offset = start * v
    # Philox yields four 64-bit words per counter step, one double per word
    bitgen.advance(offset // 4)
    gen = np.random.Generator(bitgen)
    skip = offset % 4
    if skip:
        gen.random(skip)
    return gen.random((trials, v)) < p


def simulate(H: PoolingMatrix, p: float, trials: int, seed: int, chunk: int = 8192) -> SimulationReport:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p={p} outside [0, 1]")
    if trials < 1:
        raise OutOfRange("need at least one trial")
    if seed < 0:
        raise OutOfRange("seed must be non-negative")
    Hb = H.incidence()
    total = sq = bad = 0
    for start in range(0, trials, chunk):
        n = min(chunk, trials - start)
        X = sample_defects(H.v, p, n, seed, start)
        N, P = _decode_batch(Hb, X)
        unresolved = (~N & ~P).sum(axis=1).astype(np.int64)
        total += int(unresolved.sum())
        sq += int((unresolved * unresolved).sum())
        bad += int(((N & X).any(axis=1) | (P & ~X).any(axis=1)).sum())
    bound = expected_unresolved_lower_bound(H.v, H.u, p)
    return SimulationReport(trials, p, seed, H.u, H.v, total, sq, bad, bound)


@dataclass(frozen=True)
class BoundComparison:
    simulated_mean: float
    bound: float
    stderr: float
    z: float
    violated: bool


def compare_to_bound(report: SimulationReport, v: int | None = None, u: int | None = None,
                     p: float | None = None) -> BoundComparison:
    """Flag the simulated mean falling more than 4 standard errors below the bound."""
    v = report.v if v is None else v
    u = report.u if u is None else u
    p = report.p if p is None else p
    bound = expected_unresolved_lower_bound(v, u, p)
    mean = float(report.mean_stage2)
    se = report.stderr
    gap = bound - mean
    z = gap / se if se > 0 else (math.inf if gap > 0 else 0.0)
    return BoundComparison(mean, bound, se, z, gap > 4 * se if se > 0 else gap > 1e-12)
