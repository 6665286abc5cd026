"""Exact arithmetic in Z[omega] with sqrt(2)-power denominators."""

import cmath
import math
import random
from itertools import product

from hptcanon import ring
from hptcanon.ring import RingElem, StateVec, UMat2

OMEGA_C = cmath.exp(1j * math.pi / 4)


def rand_elem(rng, kmax=0):
    return RingElem(rng.randint(-100, 100), rng.randint(-100, 100),
                    rng.randint(-100, 100), rng.randint(-100, 100),
                    rng.randint(0, kmax))


def close(x, y, tol=1e-9):
    return abs(x - y) <= tol * (1 + abs(x) + abs(y))


def test_omega_powers():
    omega3 = RingElem(0, 0, 0, 1)
    assert ring.OMEGA * omega3 == -ring.ONE
    assert ring.OMEGA * ring.OMEGA == ring.I_UNIT
    # omega - omega**3 is sqrt(2)
    assert ring.OMEGA - omega3 == ring.SQRT2


def test_half_stays_at_denominator_exponent_two():
    half = ring.SQRT2_INV * ring.SQRT2_INV
    assert half.coeffs == (1, 0, 0, 0)
    assert half.k == 2  # (1,0): parities differ, no reduction applies


def test_sqrt2_multiplication_map():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c, d = (rng.randint(-100, 100) for _ in range(4))
        prod = RingElem(a, b, c, d) * ring.SQRT2
        assert prod.coeffs == (b - d, a + c, b + d, c - a)
        assert prod.k == 0


def test_canonicalize_examples():
    e = RingElem(0, 2, 0, 0, 2)
    assert (e.a, e.b, e.c, e.d, e.k) == (0, 1, 0, 0, 0)
    e = RingElem(1, 0, 0, 0, 0)
    assert (e.a, e.b, e.c, e.d, e.k) == (1, 0, 0, 0, 0)
    # (1,1,1,1)/sqrt2 reduces once; multiply the result back by sqrt2 to
    # confirm the numerator is recovered.
    e = RingElem(1, 1, 1, 1, 1)
    assert (e.a, e.b, e.c, e.d, e.k) == (0, 1, 1, 0, 0)
    assert e.times_sqrt2() == RingElem(1, 1, 1, 1, 0)


def test_canonicalize_idempotent_and_value_preserving():
    rng = random.Random(11)
    for _ in range(500):
        a, b, c, d = (rng.randint(-100, 100) for _ in range(4))
        k = rng.randint(0, 6)
        e = RingElem(a, b, c, d, k)
        again = RingElem(e.a, e.b, e.c, e.d, e.k)
        assert (again.coeffs, again.k) == (e.coeffs, e.k)
        raw = (a + b * OMEGA_C + c * OMEGA_C**2 + d * OMEGA_C**3) \
            / math.sqrt(2) ** k
        assert close(e.to_complex(), raw)


def test_conjugation():
    omega3 = RingElem(0, 0, 0, 1)
    assert ring.OMEGA.conj() == -omega3
    assert ring.ONE.conj() == ring.ONE
    assert ring.I_UNIT.conj() == -ring.I_UNIT
    rng = random.Random(13)
    for _ in range(100):
        e = rand_elem(rng)
        assert e.conj().coeffs == (e.a, -e.d, -e.c, -e.b)
        assert close(e.conj().to_complex(), e.to_complex().conjugate())


def test_mul_matches_complex_arithmetic():
    rng = random.Random(17)
    for _ in range(2000):
        x, y = rand_elem(rng, 3), rand_elem(rng, 3)
        assert close((x * y).to_complex(), x.to_complex() * y.to_complex(),
                     tol=1e-12)


def test_mul_associative_and_commutative():
    rng = random.Random(19)
    for _ in range(10000):
        x, y, z = rand_elem(rng), rand_elem(rng), rand_elem(rng)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)


def test_sqrt2_roundtrip():
    rng = random.Random(23)
    for _ in range(300):
        x = rand_elem(rng, 4)
        up = x.times_sqrt2()
        assert RingElem(up.a, up.b, up.c, up.d, up.k + 1) == x


def test_addition_aligns_denominators():
    x = RingElem(1, 0, 0, 0, 1)   # 1/sqrt2
    y = RingElem(1, 0, 0, 0, 1)
    assert x + y == ring.SQRT2    # 2/sqrt2 = sqrt2
    assert x - y == ring.ZERO
    rng = random.Random(29)
    for _ in range(300):
        a, b = rand_elem(rng, 3), rand_elem(rng, 3)
        assert close((a + b).to_complex(), a.to_complex() + b.to_complex())


def test_gate_products():
    assert ring.T * ring.T == ring.P
    assert ring.H * ring.H == ring.IDENTITY
    hp = ring.H * ring.P
    assert hp * hp * hp == UMat2(ring.OMEGA, ring.ZERO, ring.ZERO, ring.OMEGA)


def test_adjoints():
    neg_omega3 = RingElem(0, 0, 0, -1)
    assert ring.T.adjoint() == UMat2(ring.ONE, ring.ZERO, ring.ZERO,
                                     neg_omega3)
    assert ring.H.adjoint() == ring.H
    assert ring.P.adjoint() == UMat2(ring.ONE, ring.ZERO, ring.ZERO,
                                     -ring.I_UNIT)


def test_apply():
    assert ring.IDENTITY.apply(ring.KET0) == ring.KET0
    assert ring.H.apply(ring.KET0) == StateVec(ring.SQRT2_INV, ring.SQRT2_INV)
    assert ring.PAULI_X.apply(ring.KET0) == StateVec(ring.ZERO, ring.ONE)


def test_words_up_to_seven_are_unitary_and_normalized():
    # Extend products letter by letter so each word costs one multiply.
    frontier = [ring.IDENTITY]
    for _ in range(7):
        nxt = []
        for m in frontier:
            for g in "HPT":
                prod = m * ring.GATES[g]
                nxt.append(prod)
                assert prod * prod.adjoint() == ring.IDENTITY
                state = prod.apply(ring.KET0)
                norm = state.c0 * state.c0.conj() + state.c1 * state.c1.conj()
                assert norm == ring.ONE
        frontier = nxt


def test_json_serialization_uses_common_denominator():
    assert ring.H.to_json_dict() == {
        "den_exp": 1,
        "entries": [[[1, 0, 0, 0], [1, 0, 0, 0]],
                    [[1, 0, 0, 0], [-1, 0, 0, 0]]],
    }
    assert ring.T.to_json_dict() == {
        "den_exp": 0,
        "entries": [[[1, 0, 0, 0], [0, 0, 0, 0]],
                    [[0, 0, 0, 0], [0, 1, 0, 0]]],
    }
    # Mixed entry exponents: every serialized entry re-evaluates to the
    # original element at the common exponent.
    m = ring.H * ring.T * ring.H
    d = m.to_json_dict()
    entries = [m.e00, m.e01, m.e10, m.e11]
    flat = d["entries"][0] + d["entries"][1]
    assert d["den_exp"] == max(e.k for e in entries)
    for coeffs, entry in zip(flat, entries):
        assert RingElem(*coeffs, d["den_exp"]) == entry


def test_scaled_key_identifies_matrices():
    # Same key must mean same matrix across a generating corpus.
    seen = {}
    frontier = [ring.IDENTITY]
    for _ in range(6):
        nxt = []
        for m in frontier:
            for g in "HPT":
                prod = m * ring.GATES[g]
                nxt.append(prod)
                key = prod.scaled_key()
                if key in seen:
                    assert seen[key] == prod
                else:
                    seen[key] = prod
        frontier = nxt


def test_matrix_hashing_matches_equality():
    a = ring.H * ring.P
    b = ring.H * ring.P
    assert a == b and hash(a) == hash(b)
    assert a != ring.P * ring.H
