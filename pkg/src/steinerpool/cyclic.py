"""Cyclic designs over Z_v: translates, difference families, radical families.

Also holds the two closed-form existence predicates for radical difference
families with block size 5 and 7, and the lift of a radical family over Z_p
to a cyclically resolvable design on pk points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .design import Design, Resolution, resolution_class_orbits, resolution_defect, verify_t_design
from .errors import (
    ConstructionFailed,
    NotATDesign,
    NotPrime,
    OrbitCollision,
    OrderDoesNotDivide,
    PreconditionViolated,
)
from .exact_cover import DEFAULT_BUDGET, ExactCover


# modular helpers ----------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    order = p - 1
    for q in prime_factors(p - 1):
        while order % q == 0 and pow(x, order // q, p) == 1:
            order //= q
    return order


def primitive_root(p: int) -> int:
    """Smallest primitive root modulo the prime p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def primitive_kth_root(p: int, k: int) -> int:
    """Smallest residue of multiplicative order exactly k modulo p."""
    if (p - 1) % k:
        raise OrderDoesNotDivide(f"{k} does not divide {p - 1}")
    if k == 1:
        return 1
    for x in range(2, p):
        if pow(x, k, p) == 1 and multiplicative_order(x, p) == k:
            return x
    raise ArithmeticError("no element of the requested order")  # unreachable for prime p


def is_power_residue(x: int, m: int, p: int) -> bool:
    """Whether x is an m-th power in Z_p^*; requires m | p - 1."""
    if (p - 1) % m:
        raise OrderDoesNotDivide(f"{m} does not divide {p - 1}")
    return pow(x % p, (p - 1) // m, p) == 1


def two_adic(n: int) -> int:
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    return e


# types --------------------------------------------------------------------

@dataclass(frozen=True)
class BaseBlockSet:
    v: int
    k: int
    full_orbit_blocks: tuple[tuple[int, ...], ...]
    has_regular_short_orbit: bool = False

    def short_block(self) -> tuple[int, ...]:
        step = self.v // self.k
        return tuple(i * step for i in range(self.k))


@dataclass(frozen=True)
class DifferenceFamily:
    v: int
    k: int
    base_blocks: tuple[tuple[int, ...], ...]
    radical: bool = False


def delta(block: Sequence[int], v: int) -> Counter:
    """Multiset of the ordered differences b_i - b_j (i != j) mod v."""
    out: Counter = Counter()
    for i, a in enumerate(block):
        for j, b in enumerate(block):
            if i != j:
                out[(a - b) % v] += 1
    return out


def difference_family_defect(fam: DifferenceFamily, short_orbit: bool | None = None) -> str | None:
    """Why ``fam`` is not a CDF(v,k,1), or None.

    When v is congruent to k (mod k(k-1)) the multiples of v/k are left to the
    regular short orbit and must not occur among the base-block differences.
    ``short_orbit`` forces either reading; by default it is inferred from v.
    """
    v, k = fam.v, fam.k
    if short_orbit is None:
        short_orbit = v % (k * (k - 1)) == k % (k * (k - 1)) and v % k == 0 and k > 1 and v != 1
    for blk in fam.base_blocks:
        if len(set(x % v for x in blk)) != k or len(blk) != k:
            return f"base block {list(blk)} is not a {k}-subset of Z_{v}"
    total: Counter = Counter()
    for blk in fam.base_blocks:
        total.update(delta(blk, v))
    needed = set(range(1, v))
    if short_orbit:
        needed -= {i * (v // k) for i in range(1, k)}
    for d in sorted(total):
        if total[d] > 1:
            return f"difference {d} occurs {total[d]} times"
        if d not in needed:
            return f"difference {d} belongs to the short orbit"
    missing = needed - set(total)
    if missing:
        return f"difference {min(missing)} never occurs"
    return None


def verify_difference_family(fam: DifferenceFamily, short_orbit: bool | None = None) -> bool:
    return difference_family_defect(fam, short_orbit) is None


def orbit(block: Sequence[int], v: int) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(v):
        img = tuple(sorted((x + i) % v for x in block))
        if img not in seen:
            seen.add(img)
            out.append(img)
    return out


def develop(base: BaseBlockSet) -> Design:
    """All distinct translates of every base block, plus the short orbit if flagged."""
    v, k = base.v, base.k
    if base.has_regular_short_orbit and v % k:
        raise PreconditionViolated(f"{k} does not divide {v}: no regular short orbit")
    blocks: set[tuple[int, ...]] = set()
    bases = list(base.full_orbit_blocks)
    if base.has_regular_short_orbit:
        bases.append(base.short_block())
    for blk in bases:
        if len(set(x % v for x in blk)) != len(blk):
            raise PreconditionViolated(f"base block {list(blk)} repeats a point mod {v}")
        orb = orbit(blk, v)
        clash = blocks.intersection(orb)
        if clash:
            raise OrbitCollision(f"orbit of {list(blk)} meets an earlier orbit at {list(min(clash))}")
        blocks.update(orb)
    return Design.normalize(v, blocks)


# radical difference families ------------------------------------------------

def kth_roots_of_unity(p: int, k: int) -> tuple[int, ...]:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if (p - 1) % k:
        raise OrderDoesNotDivide(f"{k} does not divide {p - 1}")
    h = pow(primitive_root(p), (p - 1) // k, p)
    return tuple(sorted(pow(h, i, p) for i in range(k)))


def _coset_index_table(p: int, k: int) -> tuple[int, list[int]]:
    """(n, idx) where idx[x] is the coset of x modulo the k-th roots, n = (p-1)/k."""
    g = primitive_root(p)
    n = (p - 1) // k
    idx = [0] * p
    x = 1
    for e in range(p - 1):
        idx[x] = e % n
        x = x * g % p
    return n, idx


def _rdf_preconditions(p: int, k: int) -> None:
    if k not in (3, 5, 7, 9):
        raise PreconditionViolated(f"block size {k} not in 3, 5, 7, 9")
    if not is_prime(p):
        raise PreconditionViolated(f"{p} is not prime")
    if p % (k * (k - 1)) != 1:
        raise PreconditionViolated(f"{p} is not 1 mod {k * (k - 1)}")


def find_rdf(p: int, k: int, budget: int | None = DEFAULT_BUDGET) -> DifferenceFamily | None:
    """A radical difference family RDF(p,k,1), or None if none exists.

    Base blocks are cosets xH of the k-th roots of unity H. Since
    delta(xH) = x.delta(H) and delta(-xH) = delta(xH), the search runs over
    cosets of <H, -1>: it must tile Z_m, m = (p-1)/(2k), by translates of the
    coset indices of the elements e^d - 1. For k = 3 the tiling is trivial and
    every coset of <H, -1> contributes its smallest element.
    """
    _rdf_preconditions(p, k)
    roots = kth_roots_of_unity(p, k)
    n, idx = _coset_index_table(p, k)
    m = n // 2  # -1 has coset index n/2 since k is odd
    eps = pow(primitive_root(p), n, p)
    diffs = [idx[(pow(eps, d, p) - 1) % p] for d in range(1, (k + 1) // 2)]
    shape = sorted({d % m for d in diffs})
    # representative of each coset of <H,-1>, indexed by coset index mod m
    reps: dict[int, int] = {}
    for x in range(1, p):
        reps.setdefault(idx[x] % m, x)
    if len(shape) != len(diffs):
        return None
    if k == 3:
        chosen = sorted(reps)
    else:
        rows = {}
        for c in range(m):
            cells = [(c + d) % m for d in shape]
            if len(set(cells)) == len(cells):
                rows[c] = cells
        sol = ExactCover(range(m), rows, budget).first()
        if sol is None:
            return None
        # shape is anchored at diffs[0]; the block x.H owns the translate x + shape
        chosen = sorted(sol)
    blocks = tuple(sorted(tuple(sorted(reps[c] * h % p for h in roots)) for c in chosen))
    fam = DifferenceFamily(v=p, k=k, base_blocks=blocks, radical=True)
    defect = difference_family_defect(fam, short_orbit=False)
    if defect:
        raise ConstructionFailed(f"RDF({p},{k},1) candidate failed verification: {defect}")
    return fam


def is_radical(fam: DifferenceFamily) -> bool:
    """Every base block is a coset of the k-th roots of unity in Z_p."""
    p, k = fam.v, fam.k
    if k % 2 == 0 or not is_prime(p) or p % (k * (k - 1)) != 1:
        return False
    roots = kth_roots_of_unity(p, k)
    for blk in fam.base_blocks:
        x = blk[0] % p
        if x == 0 or sorted(x * h % p for h in roots) != sorted(b % p for b in blk):
            return False
    return True


def rdf_condition_k5(p: int) -> bool:
    """Closed-form existence test for an RDF(p,5,1), p = 20a + 1 prime.

    With 2^e the largest power of two dividing a and eps the smallest
    primitive fifth root of unity: true iff eps + 1 is not a 2^(e+1)-th power.
    """
    if not is_prime(p) or p % 20 != 1:
        raise PreconditionViolated(f"{p} is not a prime of the form 20a + 1")
    a = (p - 1) // 20
    eps = primitive_kth_root(p, 5)
    return not is_power_residue(eps + 1, 2 ** (two_adic(a) + 1), p)


def rdf_condition_k7(p: int) -> bool:
    """Closed-form existence test for an RDF(p,7,1), p = 42a + 1 prime.

    True iff some f >= 0 with 3^f | a makes eps+1, eps^2+eps+1 and
    (eps^2+eps+1)/(eps+1) all 3^f-th powers but not 3^(f+1)-th powers.
    """
    if not is_prime(p) or p % 42 != 1:
        raise PreconditionViolated(f"{p} is not a prime of the form 42a + 1")
    a = (p - 1) // 42
    eps = primitive_kth_root(p, 7)
    q1 = (eps + 1) % p
    q2 = (eps * eps + eps + 1) % p
    quantities = (q1, q2, q2 * pow(q1, -1, p) % p)
    f = 0
    while a % 3**f == 0:
        if all(
            is_power_residue(q, 3**f, p) and not is_power_residue(q, 3 ** (f + 1), p)
            for q in quantities
        ):
            return True
        f += 1
    return False


# cyclically resolvable lift -------------------------------------------------

def crt_point(a: int, y: int, p: int, k: int) -> int:
    """The element of Z_pk congruent to a mod p and y mod k."""
    return (a * k * pow(k, -1, p) + y * p * pow(p, -1, k)) % (p * k)


def crbibd_base_blocks(fam: DifferenceFamily) -> BaseBlockSet:
    """Base blocks of a cyclic BIBD(pk,k,1) lifted from a radical family.

    Points of Z_pk are read as pairs (a mod p, y mod k). Writing H = <eps> and
    labelling each coset gH as g.eps^i, i in Z_k, the full-orbit base blocks are

    * every coset gH of H in Z_p^*, lifted with y = 0 when gH is a block of
      the family and y = i otherwise;
    * every block xH of the family, lifted with y = i;

    together with the regular short orbit {0} x Z_k. The first kind covers the
    differences (d, y) with y in Z_k minus one value per d, and the family's
    own blocks supply exactly the value left out.
    """
    p, k = fam.v, fam.k
    _check_rdf(fam)
    eps = pow(primitive_root(p), (p - 1) // k, p)
    family_cosets = {frozenset(blk) for blk in fam.base_blocks}
    reps: list[int] = []
    seen: set[int] = set()
    for g in range(1, p):
        if g not in seen:
            reps.append(g)
            seen.update(g * pow(eps, i, p) % p for i in range(k))
    blocks = []
    for g in reps:
        coset = [g * pow(eps, i, p) % p for i in range(k)]
        slope = 0 if frozenset(coset) in family_cosets else 1
        blocks.append(tuple(sorted(crt_point(c, slope * i, p, k) for i, c in enumerate(coset))))
    for blk in fam.base_blocks:
        g = blk[0]
        coset = [g * pow(eps, i, p) % p for i in range(k)]
        blocks.append(tuple(sorted(crt_point(c, i, p, k) for i, c in enumerate(coset))))
    return BaseBlockSet(v=p * k, k=k, full_orbit_blocks=tuple(blocks), has_regular_short_orbit=True)


def _check_rdf(fam: DifferenceFamily) -> None:
    if not fam.radical:
        raise PreconditionViolated("family is not flagged radical")
    if gcd(fam.v, fam.k) != 1:
        raise PreconditionViolated("p and k must be coprime")
    if not is_radical(fam) or not verify_difference_family(fam, short_orbit=False):
        raise PreconditionViolated(f"not a verified RDF({fam.v},{fam.k},1)")


def crbibd_from_rdf(fam: DifferenceFamily) -> tuple[Design, Resolution]:
    """A cyclically resolvable BIBD(pk,k,1) from a radical family RDF(p,k,1).

    Resolution, in (mod p, mod k) coordinates:

    * p classes: the short block {a} x Z_k with the k translates in the second
      coordinate of every coset-lift, shifted by a in the first coordinate;
    * k classes per family block: the p first-coordinate translates of its
      lift, shifted by y in the second coordinate.

    The result is checked (2-design with lambda 1, resolution, cyclic action
    on classes) before it is returned.
    """
    p, k = fam.v, fam.k
    base = crbibd_base_blocks(fam)
    design = develop(base)
    v = p * k
    lifts = base.full_orbit_blocks
    n_cosets = (p - 1) // k
    coset_lifts, family_lifts = lifts[:n_cosets], lifts[n_cosets:]

    def translate(blk, a, y):
        return tuple(sorted((z + crt_point(a, y, p, k)) % v for z in blk))

    classes = []
    short = base.short_block()
    for a in range(p):
        cls = [translate(short, a, 0)]
        for blk in coset_lifts:
            cls.extend(translate(blk, a, y) for y in range(k))
        classes.append(cls)
    for blk in family_lifts:
        for y in range(k):
            classes.append([translate(blk, a, y) for a in range(p)])
    resolution = Resolution.of(sorted(design.index(b) for b in cls) for cls in classes)
    try:
        prof = verify_t_design(design, 2)
    except NotATDesign as exc:
        raise ConstructionFailed(f"lifted design is not a 2-design: {exc}") from exc
    if prof.lam != 1:
        raise ConstructionFailed(f"lifted design has lambda {prof.lam}")
    defect = resolution_defect(design, resolution)
    if defect:
        raise ConstructionFailed(f"lifted resolution invalid: {defect}")
    if resolution_class_orbits(design, resolution) is None:
        raise ConstructionFailed("shift by one does not permute the resolution classes")
    return design, resolution

