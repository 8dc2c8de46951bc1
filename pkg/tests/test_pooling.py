from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinerpool.constructions import FamilyRequest, build_family
from steinerpool.design import Design
from steinerpool.errors import LengthMismatch, OutOfRange, PreconditionViolated
from steinerpool.known import known_design
from steinerpool.pooling import (
    PoolingMatrix,
    _decode_batch,
    compare_to_bound,
    covering_operator_stage2,
    decode,
    from_mask,
    identity_pools,
    pools_from_class,
    pools_from_design_transpose,
    pools_from_partition,
    sample_defects,
    simulate,
    star_partition,
    syndrome,
    to_mask,
)


def brute_decode(pools, v, s):
    neg = {j for pool, si in zip(pools, s) if not si for j in pool}
    pos = set()
    for pool, si in zip(pools, s):
        rest = [j for j in pool if j not in neg]
        if si and len(rest) == 1:
            pos.add(rest[0])
    return neg, pos, set(range(v)) - neg - pos


def dorfman_exact(sizes, p):
    return sum(n * (1 - (1 - p) ** n) for n in sizes if n > 1)


matrices = st.integers(2, 9).flatmap(
    lambda v: st.tuples(
        st.just(v),
        st.lists(st.frozensets(st.integers(0, v - 1), min_size=1), min_size=1, max_size=8),
        st.frozensets(st.integers(0, v - 1)),
    )
)


def test_mask_round_trip():
    assert from_mask(to_mask([0, 3, 9])) == [0, 3, 9]


@given(matrices)
def test_decode_matches_brute_force(case):
    v, pools, x = case
    H = PoolingMatrix.of(v, pools)
    s = syndrome(H, x)
    r = decode(H, s)
    neg, pos, unres = brute_decode(H.pools, v, s)
    assert (set(r.negatives), set(r.positives), set(r.unresolved)) == (neg, pos, unres)


@given(matrices)
def test_decode_sound(case):
    v, pools, x = case
    H = PoolingMatrix.of(v, pools)
    r = decode(H, syndrome(H, x))
    assert not (r.negatives & x) and r.positives <= x


@given(matrices, st.frozensets(st.integers(0, 8), min_size=1))
def test_extra_pool_never_adds_work(case, extra):
    v, pools, x = case
    extra = {j % v for j in extra}
    H = PoolingMatrix.of(v, pools)
    H2 = PoolingMatrix.of(v, list(pools) + [extra])
    a = decode(H, syndrome(H, x))
    b = decode(H2, syndrome(H2, x))
    assert b.unresolved <= a.unresolved


@settings(max_examples=40)
@given(matrices, st.integers(0, 2**32))
def test_vectorised_decoder_matches_scalar(case, seed):
    v, pools, _ = case
    H = PoolingMatrix.of(v, pools)
    X = sample_defects(v, 0.3, 20, seed)
    N, P = _decode_batch(H.incidence(), X)
    for row, n, pz in zip(X, N, P):
        r = decode(H, syndrome(H, np.flatnonzero(row)))
        assert set(np.flatnonzero(n)) == r.negatives
        assert set(np.flatnonzero(pz)) == r.positives


def test_decode_length_mismatch():
    with pytest.raises(LengthMismatch):
        decode(identity_pools(3), (0, 1))


def test_identity_resolves_everything():
    H = identity_pools(5)
    r = decode(H, syndrome(H, [1, 4]))
    assert r.positives == {1, 4} and r.stage2_tests == 0


def test_chunked_stream_equals_contiguous():
    whole = sample_defects(7, 0.4, 50, 9)
    parts = np.vstack([sample_defects(7, 0.4, min(13, 50 - s), 9, s) for s in range(0, 50, 13)])
    assert (whole == parts).all()


def test_simulate_is_chunk_independent():
    H = pools_from_partition(Design.normalize(10, [(0, 1, 2), (3, 4, 5), (6, 7, 8, 9)]))
    a = simulate(H, 0.1, 3000, 5, chunk=3000)
    b = simulate(H, 0.1, 3000, 5, chunk=7)
    assert a == b


def test_dorfman_matches_closed_form():
    H = pools_from_partition(Design.normalize(10, [(0, 1, 2), (3, 4, 5), (6, 7, 8, 9)]))
    rep = simulate(H, 0.05, 20000, 3)
    assert abs(float(rep.mean_stage2) - dorfman_exact([3, 3, 4], 0.05)) < 4 * rep.stderr
    assert rep.violations == 0
    assert not compare_to_bound(rep).violated


def test_simulate_argument_checks():
    H = identity_pools(3)
    with pytest.raises(OutOfRange):
        simulate(H, 1.5, 10, 0)
    with pytest.raises(OutOfRange):
        simulate(H, 0.5, 0, 0)


def test_star_partition_of_extension():
    d = build_family(FamilyRequest("affine", q=3, e=2))
    H = star_partition(d)
    assert sorted(len(p) for p in H.pools) == [3, 3, 4]


def test_class_pools():
    d, res = known_design("example2")
    H = pools_from_class(d, res, 0)
    assert H.u == 3 and sorted(j for p in H.pools for j in p) == list(range(9))


def test_partition_required():
    d, _ = known_design("example1")
    with pytest.raises(PreconditionViolated):
        pools_from_partition(d)


def test_transpose_pools():
    d, _ = known_design("example1")
    H = pools_from_design_transpose(d)
    assert (H.u, H.v) == (9, 12) and all(len(p) == 4 for p in H.pools)


def test_covering_operator_stage2():
    d = build_family(FamilyRequest("affine", q=3, e=2))
    sizes = [covering_operator_stage2(d, x)[1] for x in combinations(range(10), 2)]
    assert sum(sizes) / len(sizes) == pytest.approx(17 / 5)


def test_report_text():
    rep = simulate(identity_pools(2), 0.5, 4, 1)
    text = rep.to_text()
    assert text.splitlines()[0] == "trials=4" and "generator=philox4x64" in text
