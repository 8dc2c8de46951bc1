"""Block designs on the points 0..v-1 and exhaustive verification.

A :class:`Design` is immutable once built through :meth:`Design.normalize`;
all verifiers enumerate every t-subset, nothing is sampled.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import (
    DuplicateBlock,
    NonIntegralParameters,
    NotABijection,
    NotATDesign,
    PointOutOfRange,
    PreconditionViolated,
)
from .exact_cover import DEFAULT_BUDGET, ExactCover

Block = tuple[int, ...]


@dataclass(frozen=True)
class Design:
    v: int
    blocks: tuple[Block, ...]

    @classmethod
    def normalize(cls, v: int, blocks) -> Design:
        """Sort every block and the block list; reject repeats and stray points."""
        out = []
        for blk in blocks:
            s = tuple(sorted(blk))
            if not s:
                raise PreconditionViolated("empty block")
            if len(set(s)) != len(s):
                raise PreconditionViolated(f"block {list(blk)} repeats a point")
            if s[0] < 0 or s[-1] >= v:
                raise PointOutOfRange(f"block {list(blk)} leaves 0..{v - 1}")
            out.append(s)
        out.sort()
        for a, b in zip(out, out[1:]):
            if a == b:
                raise DuplicateBlock(f"block {list(a)} appears twice")
        return cls(v, tuple(out))

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> Counter:
        return Counter(len(blk) for blk in self.blocks)

    def replication(self) -> list[int]:
        counts = [0] * self.v
        for blk in self.blocks:
            for x in blk:
                counts[x] += 1
        return counts

    def index(self, block) -> int:
        """Position of ``block`` in canonical order."""
        return self._positions()[tuple(sorted(block))]

    def _positions(self) -> dict[Block, int]:
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {blk: i for i, blk in enumerate(self.blocks)}
            object.__setattr__(self, "_pos", cache)
        return cache

    def block_set(self) -> frozenset[Block]:
        return frozenset(self._positions())


@dataclass(frozen=True)
class DesignProfile:
    t: int
    lam: int
    block_sizes: dict[int, int]
    b: int
    r: int | None


@dataclass(frozen=True)
class Resolution:
    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, classes) -> Resolution:
        return cls(tuple(tuple(c) for c in classes))

    def __len__(self) -> int:
        return len(self.classes)


def normalize(design: Design) -> Design:
    return Design.normalize(design.v, design.blocks)


def coverage_counts(design: Design, t: int) -> Counter:
    counts: Counter = Counter()
    for blk in design.blocks:
        counts.update(combinations(blk, t))
    return counts


def verify_t_design(design: Design, t: int) -> DesignProfile:
    """Check that every t-subset of points lies in the same number of blocks.

    Raises NotATDesign carrying the first t-subset (lexicographic order) whose
    coverage differs from that of ``(0, 1, ..., t-1)``.
    """
    sizes = design.block_sizes()
    if t < 1 or not sizes or t > min(sizes):
        raise PreconditionViolated(f"strength t={t} outside 1..min block size")
    if t > design.v:
        raise PreconditionViolated("t exceeds the number of points")
    counts = coverage_counts(design, t)
    lam = counts.get(tuple(range(t)), 0)
    total = comb(design.v, t)
    # all subsets covered equally iff the key set is complete and counts are flat
    if lam == 0 or len(counts) != total or any(c != lam for c in counts.values()):
        for sub in combinations(range(design.v), t):
            c = counts.get(sub, 0)
            if c != lam or c == 0:
                raise NotATDesign(
                    f"{t}-subset {list(sub)} lies in {c} blocks, expected {lam}",
                    witness=sub,
                    count=c,
                    expected=lam,
                )
    rep = design.replication()
    r = rep[0] if rep and all(x == rep[0] for x in rep) else None
    return DesignProfile(t=t, lam=lam, block_sizes=dict(sorted(sizes.items())), b=design.b, r=r)


def steiner_defect(design: Design, t: int, k: int) -> str | None:
    """Why ``design`` is not a Steiner t-(v,{k,k+1},1) design, or None if it is."""
    bad = sorted(s for s in design.block_sizes() if s not in (k, k + 1))
    if bad:
        return f"block sizes {bad} outside {{{k},{k + 1}}}"
    try:
        prof = verify_t_design(design, t)
    except NotATDesign as exc:
        return str(exc)
    except PreconditionViolated as exc:
        return str(exc)
    if prof.lam != 1:
        return f"every {t}-subset lies in {prof.lam} blocks, not 1"
    return None


def verify_steiner_two_sizes(design: Design, t: int, k: int) -> bool:
    return steiner_defect(design, t, k) is None


def check_parameter_relations(t: int, v: int, k: int, lam: int) -> tuple[int, int]:
    """Solve r(k-1) = lam(v-1) and bk = vr for integral (b, r)."""
    if t != 2:
        raise PreconditionViolated("parameter relations are implemented for t = 2")
    if k < 2 or v < k:
        raise PreconditionViolated(f"need 2 <= k <= v, got k={k} v={v}")
    r, rem = divmod(lam * (v - 1), k - 1)
    if rem:
        raise NonIntegralParameters(f"r = {lam * (v - 1)}/{k - 1} is not an integer")
    b, rem = divmod(v * r, k)
    if rem:
        raise NonIntegralParameters(f"b = {v * r}/{k} is not an integer")
    return b, r


def resolution_defect(design: Design, resolution: Resolution) -> str | None:
    """First reason ``resolution`` is invalid for ``design``, or None."""
    seen: set[int] = set()
    full = set(range(design.v))
    for ci, cls in enumerate(resolution.classes):
        covered: list[int] = []
        for bi in cls:
            if not 0 <= bi < design.b:
                return f"class {ci} names block index {bi} out of range"
            if bi in seen:
                return f"block {bi} appears in more than one class"
            seen.add(bi)
            covered.extend(design.blocks[bi])
        if len(covered) != len(set(covered)):
            dup = next(x for x, c in Counter(covered).items() if c > 1)
            return f"class {ci} covers point {dup} more than once"
        if set(covered) != full:
            miss = min(full - set(covered))
            return f"class {ci} misses point {miss}"
    if len(seen) != design.b:
        miss = min(set(range(design.b)) - seen)
        return f"block {miss} belongs to no class"
    return None


def verify_resolution(design: Design, resolution: Resolution) -> bool:
    return resolution_defect(design, resolution) is None


def find_resolution(design: Design, budget: int | None = DEFAULT_BUDGET) -> Resolution | None:
    """Partition the blocks into parallel classes by exact-cover search.

    Returns None only when the search space is exhausted; running out of
    budget raises SearchBudgetExceeded instead.
    """
    sizes = design.block_sizes()
    if len(sizes) != 1:
        raise PreconditionViolated("find_resolution needs a uniform block size")
    (k,) = sizes
    if design.v % k:
        raise PreconditionViolated(f"block size {k} does not divide v={design.v}")
    rep = design.replication()
    if any(x != rep[0] for x in rep):
        return None
    r = rep[0]
    per_class = design.v // k
    if r * per_class != design.b:
        return None
    # every class holds exactly one block through point 0; pin those to fix labels
    anchors = [i for i, blk in enumerate(design.blocks) if blk[0] == 0]
    anchor_class = {bi: c for c, bi in enumerate(anchors)}
    columns = [("blk", i) for i in range(design.b)]
    columns += [("pt", c, x) for c in range(r) for x in range(design.v)]
    rows = {}
    for i, blk in enumerate(design.blocks):
        targets = [anchor_class[i]] if i in anchor_class else range(r)
        for c in targets:
            rows[(i, c)] = [("blk", i)] + [("pt", c, x) for x in blk]
    sol = ExactCover(columns, rows, budget).first()
    if sol is None:
        return None
    classes: list[list[int]] = [[] for _ in range(r)]
    for i, c in sol:
        classes[c].append(i)
    return Resolution.of(sorted(classes[c]) for c in range(r))


def _check_perm(sigma: Sequence[int], v: int) -> None:
    if len(sigma) != v or sorted(sigma) != list(range(v)):
        raise NotABijection(f"not a permutation of 0..{v - 1}")


def apply_permutation(design: Design, sigma: Sequence[int]) -> Design:
    _check_perm(sigma, design.v)
    return Design.normalize(design.v, ([sigma[x] for x in blk] for blk in design.blocks))


def is_automorphism(design: Design, sigma: Sequence[int]) -> bool:
    _check_perm(sigma, design.v)
    own = design.block_set()
    return all(tuple(sorted(sigma[x] for x in blk)) in own for blk in design.blocks)


def shift(v: int, step: int = 1) -> list[int]:
    """The permutation i -> i + step (mod v)."""
    return [(i + step) % v for i in range(v)]


def _class_image(design: Design, cls: Sequence[int], sigma: Sequence[int]) -> frozenset[int]:
    return frozenset(design.index(sigma[x] for x in design.blocks[bi]) for bi in cls)


def resolution_class_orbits(
    design: Design, resolution: Resolution, sigma: Sequence[int] | None = None
) -> list[list[int]] | None:
    """Orbits of resolution classes under ``sigma`` (default i -> i+1 mod v).

    None when sigma is not an automorphism or does not permute the classes.
    """
    if sigma is None:
        sigma = shift(design.v)
    if not is_automorphism(design, sigma):
        return None
    lookup = {frozenset(cls): ci for ci, cls in enumerate(resolution.classes)}
    image = []
    for cls in resolution.classes:
        img = lookup.get(_class_image(design, cls, sigma))
        if img is None:
            return None
        image.append(img)
    orbits, done = [], set()
    for start in range(len(resolution.classes)):
        if start in done:
            continue
        orbit, c = [], start
        while c not in done:
            done.add(c)
            orbit.append(c)
            c = image[c]
        orbits.append(orbit)
    return orbits


def verify_cyclic_resolvability(design: Design, resolution: Resolution) -> bool:
    if not verify_resolution(design, resolution):
        return False
    return resolution_class_orbits(design, resolution) is not None


def find_subdesign(
    design: Design, t_sub: int, lambda_sub: int = 1, budget: int | None = DEFAULT_BUDGET
) -> list[int] | None:
    """Indices of blocks forming a Steiner t_sub-(v,k,1) subdesign.

    Exact cover of all t_sub-subsets of points by blocks. ``t_sub = 0`` asks
    for a single block.
    """
    if len(design.block_sizes()) != 1:
        raise PreconditionViolated("find_subdesign needs a uniform block size")
    if lambda_sub != 1:
        raise PreconditionViolated("subdesign search covers lambda = 1 only")
    if t_sub == 0:
        return [0] if design.blocks else None
    columns = list(combinations(range(design.v), t_sub))
    rows = {i: list(combinations(blk, t_sub)) for i, blk in enumerate(design.blocks)}
    sol = ExactCover(columns, rows, budget).first()
    return None if sol is None else sorted(sol)
