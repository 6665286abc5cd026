"""Normal-form enumeration, counting formulas, brute-force oracles."""

import pytest

from hptcanon import census, ring
from hptcanon.census import (LimitExceeded, brute_force_mn, count_closed_form,
                             enumerate_normal_forms, verify_remark_r,
                             verify_uniqueness)
from hptcanon.normalize import Block, normal_form_matrix
from hptcanon.ring import RingElem, UMat2


def test_closed_forms():
    assert count_closed_form(0) == 192
    assert count_closed_form(1) == 768
    assert count_closed_form(2) == 1920
    assert count_closed_form(3) == 4224   # 192 * (3*2**3 - 2)
    assert count_closed_form(0, exact=True) == 192
    assert count_closed_form(1, exact=True) == 576
    assert count_closed_form(2, exact=True) == 1152
    assert count_closed_form(3, exact=True) == 2304


def test_closed_form_consistency():
    for n in range(1, 15):
        assert count_closed_form(n) == count_closed_form(n - 1) \
            + count_closed_form(n, exact=True)


def test_enumeration_counts(table):
    for n in range(0, 7):
        got = sum(1 for _ in enumerate_normal_forms(n, table))
        assert got == count_closed_form(n)


def test_enumeration_layers_and_shape(table):
    layer = {}
    seen = set()
    for nf in enumerate_normal_forms(3, table):
        layer[len(nf.blocks)] = layer.get(len(nf.blocks), 0) + 1
        assert nf not in seen
        seen.add(nf)
        if nf.blocks:
            for b in nf.blocks[1:]:
                assert b in (Block.HT, Block.PHT)
    assert layer == {0: 192, 1: 576, 2: 1152, 3: 2304}


def test_enumeration_order_is_deterministic_and_monotone(table):
    first = list(enumerate_normal_forms(2, table))
    second = list(enumerate_normal_forms(2, table))
    assert first == second
    encoded = [(len(nf.blocks), tuple(int(b) for b in nf.blocks), nf.cliff)
               for nf in first]
    assert encoded == sorted(encoded)
    assert len(set(encoded)) == len(encoded)


def _naive_closure(n, table):
    # Definitional oracle: plain matrix closure with no layering tricks,
    # no scalar batching, and no dedupe beyond a set of canonical keys.
    cliffords = [table.matrix(g) for g in range(table.order)]
    current = {m.scaled_key(): m for m in cliffords}
    for _ in range(n):
        nxt = dict(current)
        for c in cliffords:
            ct = c * ring.T
            for m in current.values():
                prod = ct * m
                nxt.setdefault(prod.scaled_key(), prod)
        current = nxt
    return set(current)


def test_oracle_matches_naive_closure_small(table):
    for n in range(0, 3):
        fast, _ = brute_force_mn(n, table)
        assert fast == _naive_closure(n, table)


def test_oracle_counts_and_layers(table):
    matrices, layers = brute_force_mn(4, table)
    assert len(matrices) == 8832
    assert layers == (192, 576, 1152, 2304, 4608)
    for n, width in enumerate(layers):
        assert width == count_closed_form(n, exact=True)


def test_oracle_strict_containment(table):
    prev, _ = brute_force_mn(0, table)
    for n in range(1, 5):
        cur, _ = brute_force_mn(n, table)
        assert prev < cur
        assert len(cur) - len(prev) == count_closed_form(n, exact=True)
        prev = cur


def test_oracle_recurrence(table):
    sizes = [len(brute_force_mn(n, table)[0]) for n in range(0, 5)]
    for n in range(1, 5):
        assert sizes[n] == 2 * sizes[n - 1] + 384


def _matrix_from_key(key):
    k = key[0]
    es = [RingElem(*key[i:i + 4], k) for i in range(1, 17, 4)]
    return UMat2(*es)


def test_exact_layers_closed_under_inverse(table):
    prev = set()
    for n in range(0, 4):
        cur, _ = brute_force_mn(n, table)
        exact = cur - prev
        assert len(exact) == count_closed_form(n, exact=True)
        for key in exact:
            inv_key = _matrix_from_key(key).adjoint().scaled_key()
            assert inv_key in exact
        prev = cur


def test_oracle_limit(table):
    with pytest.raises(LimitExceeded):
        brute_force_mn(5, table)
    big, _ = brute_force_mn(5, table, max_n=5)
    assert len(big) == count_closed_form(5)


def test_verify_uniqueness_with_oracle(table):
    report = verify_uniqueness(2, table)
    assert report.ok
    assert report.normal_form_count == 1920
    assert report.distinct_matrix_count == 1920
    assert report.oracle_count == 1920


def test_verify_uniqueness_enumeration_only(table):
    report = verify_uniqueness(5, table, with_oracle=False)
    assert report.ok
    assert report.normal_form_count == 18048
    assert report.distinct_matrix_count == 18048
    assert report.oracle_count is None


def test_enumerated_matrices_equal_oracle_set(table):
    keys = {normal_form_matrix(nf, table).scaled_key()
            for nf in enumerate_normal_forms(3, table)}
    oracle, _ = brute_force_mn(3, table)
    assert keys == oracle


def test_remark_basis():
    report = verify_remark_r(3)
    assert report.ok
    assert report.decomposition_ok
    assert report.group_order == 192
    assert report.census.ok
    assert report.census.normal_form_count == 4224
