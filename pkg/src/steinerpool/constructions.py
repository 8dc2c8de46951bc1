"""Design factories and the one-point extension to two block sizes.

The extension: if a Steiner t-(v,k,1) design contains a Steiner
(t-1)-(v,k,1) subdesign, adding a new point to every subdesign block gives a
Steiner t-(v+1,{k,k+1},1) design. Every family below feeds a resolvable or
subdesign-bearing design into :func:`one_point_extension`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .cyclic import crbibd_from_rdf, find_rdf, is_prime
from .design import (
    Design,
    Resolution,
    find_resolution,
    find_subdesign,
    resolution_defect,
    steiner_defect,
    verify_t_design,
)
from .errors import (
    ConstructionFailed,
    NotASteinerDesign,
    NotASubdesign,
    NotATDesign,
    PreconditionViolated,
    UnsupportedOrder,
)
from .exact_cover import DEFAULT_BUDGET
from .fields import FiniteField, field_make, prime_power
from .known import known_design


def affine_rbibd(F: FiniteField, e: int) -> tuple[Design, Resolution]:
    """Lines of the affine space AG(e, q), resolved by direction.

    Point index of (x_0, ..., x_{e-1}) is sum x_j q^(e-1-j). Classes follow
    the projective directions (first nonzero coordinate 1) in lexicographic
    order.
    """
    if e < 2:
        raise PreconditionViolated("dimension must be at least 2")
    q = F.q
    vectors = list(product(range(q), repeat=e))

    def code(vec):
        out = 0
        for x in vec:
            out = out * q + x
        return out

    directions = [d for d in vectors if any(d) and d[next(i for i, x in enumerate(d) if x)] == 1]
    lines_by_dir = []
    for d in directions:
        seen: set[int] = set()
        lines = []
        for a in vectors:
            if code(a) in seen:
                continue
            line = tuple(
                sorted(code(tuple(F.add(ai, F.mul(s, di)) for ai, di in zip(a, d))) for s in range(q))
            )
            seen.update(line)
            lines.append(line)
        lines_by_dir.append(lines)
    design = Design.normalize(q**e, [ln for lines in lines_by_dir for ln in lines])
    res = Resolution.of(sorted(design.index(ln) for ln in lines) for lines in lines_by_dir)
    return design, res


def boolean_sqs(m: int) -> Design:
    """The Steiner quadruple system on binary m-vectors: 4-sets with zero XOR."""
    if not 3 <= m <= 5:
        raise PreconditionViolated(f"dimension {m} outside 3..5")
    v = 2**m
    blocks = []
    for a, b, c in combinations(range(v), 3):
        d = a ^ b ^ c
        if d > c:
            blocks.append((a, b, c, d))
    return Design.normalize(v, blocks)


def kirkman_ts(v: int) -> tuple[Design, Resolution]:
    """A Kirkman triple system of order v from one of the supported routes."""
    if v % 6 != 3:
        raise PreconditionViolated(f"{v} is not 3 mod 6")
    pp = prime_power(v)
    if pp is not None and pp[0] == 3:
        return affine_rbibd(field_make(3, 1), pp[1])
    if v in (15, 21):
        design, res = known_design("kts15" if v == 15 else "table1")
        return design, res
    p = v // 3
    if is_prime(p) and p % 6 == 1:
        fam = find_rdf(p, 3)
        return crbibd_from_rdf(fam)
    raise UnsupportedOrder(
        f"KTS({v}): not a power of 3, not an embedded order, and {v}/3 is not a prime 1 mod 6"
    )


def one_point_extension(design: Design, subdesign_blocks, t: int) -> Design:
    """Add point v to every block of the chosen (t-1)-subdesign."""
    sizes = design.block_sizes()
    if len(sizes) != 1:
        raise NotASteinerDesign("extension needs a uniform block size")
    (k,) = sizes
    defect = steiner_defect(design, t, k)
    if defect:
        raise NotASteinerDesign(f"not a Steiner {t}-design: {defect}")
    chosen = sorted(set(subdesign_blocks))
    if any(not 0 <= i < design.b for i in chosen):
        raise NotASubdesign("block index out of range")
    if t - 1 == 0:
        if len(chosen) != 1:
            raise NotASubdesign("a 0-subdesign with lambda 1 is a single block")
    else:
        sub = Design(design.v, tuple(design.blocks[i] for i in chosen))
        try:
            prof = verify_t_design(sub, t - 1)
        except NotATDesign as exc:
            raise NotASubdesign(f"selected blocks are not a {t - 1}-design: {exc}") from exc
        if prof.lam != 1:
            raise NotASubdesign(f"selected blocks have lambda {prof.lam}, not 1")
    pick = set(chosen)
    x = design.v
    blocks = [blk + (x,) if i in pick else blk for i, blk in enumerate(design.blocks)]
    out = Design.normalize(design.v + 1, blocks)
    defect = steiner_defect(out, t, k)
    if defect:  # pragma: no cover - would mean the extension argument failed
        raise ConstructionFailed(f"extension did not verify: {defect}")
    return out


def first_class(resolution: Resolution) -> tuple[int, ...]:
    """The class holding block 0, i.e. the first class in canonical order."""
    return next(c for c in resolution.classes if 0 in c)


@dataclass(frozen=True)
class FamilyRequest:
    family: str
    q: int | None = None
    e: int | None = None
    p: int | None = None
    k: int | None = None
    v: int | None = None
    a: int | None = None
    f: int | None = None
    name: str | None = None


@dataclass(frozen=True)
class BaseConstruction:
    """The ingredient design, how to extend it, and at which strength."""

    design: Design
    resolution: Resolution | None
    t: int
    subdesign: tuple[int, ...]


FAMILIES = ("affine", "kirkman", "rdf-chain", "boolean-sqs", "catalog")


def _need(req: FamilyRequest, *names: str) -> list[int]:
    vals = []
    for n in names:
        val = getattr(req, n)
        if val is None:
            raise PreconditionViolated(f"family {req.family} needs parameter {n}")
        vals.append(val)
    return vals


def build_base(req: FamilyRequest, budget: int | None = DEFAULT_BUDGET) -> BaseConstruction:
    """Construct the resolvable (or SQS) ingredient for ``req``."""
    fam = req.family
    if fam == "affine":
        q, e = _need(req, "q", "e")
        pp = prime_power(q)
        if pp is None:
            raise PreconditionViolated(f"{q} is not a prime power")
        design, res = affine_rbibd(field_make(*pp), e)
    elif fam == "kirkman":
        if req.v is None and req.a is not None:
            v = 6 * req.a + 3
        else:
            (v,) = _need(req, "v")
        design, res = kirkman_ts(v)
    elif fam == "rdf-chain":
        k, p = _need(req, "k", "p")
        if k % 2 == 0:
            raise UnsupportedOrder(f"k={k}: radical difference families need odd k")
        rdf = find_rdf(p, k, budget)
        if rdf is None:
            raise UnsupportedOrder(f"no RDF({p},{k},1) exists")
        design, res = crbibd_from_rdf(rdf)
    elif fam == "boolean-sqs":
        (f,) = _need(req, "f")
        m = 2 * f
        if not 3 <= m <= 5:
            raise UnsupportedOrder(f"f={f}: only f=2 (the SQS on 16 points) is in scope")
        design = boolean_sqs(m)
        sub = find_subdesign(design, 2, 1, budget)
        if sub is None:
            raise ConstructionFailed(f"SQS({2**m}) has no 2-(v,4,1) subdesign")
        return BaseConstruction(design, None, 3, tuple(sub))
    elif fam in ("catalog", "known"):
        (name,) = _need(req, "name")
        design, res = known_design(name)
        if res is None:
            res = find_resolution(design, budget)
            if res is None:
                raise UnsupportedOrder(f"{name} is not resolvable")
    else:
        raise UnsupportedOrder(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    defect = resolution_defect(design, res)
    if defect:  # pragma: no cover
        raise ConstructionFailed(f"constructed resolution invalid: {defect}")
    return BaseConstruction(design, res, 2, first_class(res))


def build_family(req: FamilyRequest, budget: int | None = DEFAULT_BUDGET) -> Design:
    """Full pipeline: ingredient, extension by its first class or subdesign, check."""
    base = build_base(req, budget)
    out = one_point_extension(base.design, base.subdesign, base.t)
    (k,) = base.design.block_sizes()
    defect = steiner_defect(out, base.t, k)
    if defect:  # pragma: no cover
        raise ConstructionFailed(defect)
    return out


def prime_power_rbibd_conditions(v: int, k: int) -> bool:
    """Necessary conditions for an RBIBD(v,k,1) with v, k powers of one prime.

    Only the affine case v = k^e is built here.
    """
    pv, pk = prime_power(v), prime_power(k)
    if pv is None or pk is None or pv[0] != pk[0]:
        raise PreconditionViolated(f"{v} and {k} are not powers of the same prime")
    return (v - 1) % (k - 1) == 0 and v % k == 0
