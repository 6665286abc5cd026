"""Counting, enumeration, and independent verification of uniqueness.

M_n is the set of matrices computable with at most n T gates.  The
closed forms |M_n| = order*(3*2**n - 2) and |M_=n| = 3*order*2**(n-1)
are checked against two independent routes: enumerating normal forms
and evaluating them exactly, and a brute-force closure oracle that
multiplies matrices without ever consulting the normalizer or rules.
The same pipeline reruns with the alternate generator R (the pi/4
y-rotation) in place of H.
"""

import random
from dataclasses import dataclass
from itertools import product

from . import ring
from .group import build_group
from .normalize import Block, NormalForm, evaluate, normal_form_matrix, normalize
from .rules import RuleDerivationFailure, build_rules


class LimitExceeded(Exception):
    """Requested oracle depth above the configured cap (the sets grow as
    3*order*2**(n-1))."""


class VerificationFailure(Exception):
    """A uniqueness or counting check failed; the message carries the
    first counterexample."""


@dataclass
class CensusReport:
    n: int
    normal_form_count: int
    distinct_matrix_count: int
    oracle_count: int | None
    layer_counts: tuple
    ok: bool


@dataclass
class RemarkReport:
    group_order: int
    decomposition_ok: bool
    census: CensusReport | None
    ok: bool


def count_closed_form(n, exact=False, order=192):
    """|M_n|, or |M_=n| when exact=True (the layer of T-count exactly n)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if exact:
        return order if n == 0 else 3 * order * 2 ** (n - 1)
    return order * (3 * 2 ** n - 2)


def enumerate_normal_forms(n, table=None):
    """All normal forms with at most n blocks, deterministically:
    T-count ascending, then block tuples in product order, then the
    Clifford tail by element id."""
    order = table.order if table is not None else 192
    for cliff in range(order):
        yield NormalForm((), cliff)
    first = (Block.T, Block.HT, Block.PHT)
    rest = (Block.HT, Block.PHT)
    for k in range(1, n + 1):
        for blocks in product(first, *((rest,) * (k - 1))):
            for cliff in range(order):
                yield NormalForm(blocks, cliff)


def _flat_mul(x, y):
    # Product of two matrices in scaled_key form (den exponent + 16
    # numerator coefficients); same arithmetic as UMat2 but on flat
    # tuples, kept separate so the oracle does not ride on UMat2.__mul__.
    k = x[0] + y[0]
    (xa0, xb0, xc0, xd0, xa1, xb1, xc1, xd1,
     xa2, xb2, xc2, xd2, xa3, xb3, xc3, xd3) = x[1:]
    (ya0, yb0, yc0, yd0, ya1, yb1, yc1, yd1,
     ya2, yb2, yc2, yd2, ya3, yb3, yc3, yd3) = y[1:]
    a0 = xa0*ya0 - xb0*yd0 - xc0*yc0 - xd0*yb0 + xa1*ya2 - xb1*yd2 - xc1*yc2 - xd1*yb2
    b0 = xa0*yb0 + xb0*ya0 - xc0*yd0 - xd0*yc0 + xa1*yb2 + xb1*ya2 - xc1*yd2 - xd1*yc2
    c0 = xa0*yc0 + xb0*yb0 + xc0*ya0 - xd0*yd0 + xa1*yc2 + xb1*yb2 + xc1*ya2 - xd1*yd2
    d0 = xa0*yd0 + xb0*yc0 + xc0*yb0 + xd0*ya0 + xa1*yd2 + xb1*yc2 + xc1*yb2 + xd1*ya2
    a1 = xa0*ya1 - xb0*yd1 - xc0*yc1 - xd0*yb1 + xa1*ya3 - xb1*yd3 - xc1*yc3 - xd1*yb3
    b1 = xa0*yb1 + xb0*ya1 - xc0*yd1 - xd0*yc1 + xa1*yb3 + xb1*ya3 - xc1*yd3 - xd1*yc3
    c1 = xa0*yc1 + xb0*yb1 + xc0*ya1 - xd0*yd1 + xa1*yc3 + xb1*yb3 + xc1*ya3 - xd1*yd3
    d1 = xa0*yd1 + xb0*yc1 + xc0*yb1 + xd0*ya1 + xa1*yd3 + xb1*yc3 + xc1*yb3 + xd1*ya3
    a2 = xa2*ya0 - xb2*yd0 - xc2*yc0 - xd2*yb0 + xa3*ya2 - xb3*yd2 - xc3*yc2 - xd3*yb2
    b2 = xa2*yb0 + xb2*ya0 - xc2*yd0 - xd2*yc0 + xa3*yb2 + xb3*ya2 - xc3*yd2 - xd3*yc2
    c2 = xa2*yc0 + xb2*yb0 + xc2*ya0 - xd2*yd0 + xa3*yc2 + xb3*yb2 + xc3*ya2 - xd3*yd2
    d2 = xa2*yd0 + xb2*yc0 + xc2*yb0 + xd2*ya0 + xa3*yd2 + xb3*yc2 + xc3*yb2 + xd3*ya2
    a3 = xa2*ya1 - xb2*yd1 - xc2*yc1 - xd2*yb1 + xa3*ya3 - xb3*yd3 - xc3*yc3 - xd3*yb3
    b3 = xa2*yb1 + xb2*ya1 - xc2*yd1 - xd2*yc1 + xa3*yb3 + xb3*ya3 - xc3*yd3 - xd3*yc3
    c3 = xa2*yc1 + xb2*yb1 + xc2*ya1 - xd2*yd1 + xa3*yc3 + xb3*yb3 + xc3*ya3 - xd3*yd3
    d3 = xa2*yd1 + xb2*yc1 + xc2*yb1 + xd2*ya1 + xa3*yd3 + xb3*yc3 + xc3*yb3 + xd3*ya3
    while k > 0 and not ((a0 ^ c0) | (b0 ^ d0) | (a1 ^ c1) | (b1 ^ d1)
                         | (a2 ^ c2) | (b2 ^ d2) | (a3 ^ c3) | (b3 ^ d3)) & 1:
        a0, b0, c0, d0 = (b0-d0)//2, (a0+c0)//2, (b0+d0)//2, (c0-a0)//2
        a1, b1, c1, d1 = (b1-d1)//2, (a1+c1)//2, (b1+d1)//2, (c1-a1)//2
        a2, b2, c2, d2 = (b2-d2)//2, (a2+c2)//2, (b2+d2)//2, (c2-a2)//2
        a3, b3, c3, d3 = (b3-d3)//2, (a3+c3)//2, (b3+d3)//2, (c3-a3)//2
        k -= 1
    return (k, a0, b0, c0, d0, a1, b1, c1, d1,
            a2, b2, c2, d2, a3, b3, c3, d3)


def _scalar_action(key):
    # A scalar matrix s*I with s = (+-1) * omega**j acts on a flat key as
    # a signed permutation of the 16 coefficients (one omega rotation per
    # power, sign carried through); return that fast action, or None if
    # the scalar is not of this single-coefficient unit shape.
    if key[0] != 0 or any(key[5:13]) or key[1:5] != key[13:17]:
        return None
    coeffs = key[1:5]
    nonzero = [(j, v) for j, v in enumerate(coeffs) if v]
    if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
        return None
    j, sign = nonzero[0]
    perm, signs = list(range(4)), [1, 1, 1, 1]
    for _ in range(j):
        # multiply by omega: (a,b,c,d) -> (-d, a, b, c)
        perm = [perm[3], perm[0], perm[1], perm[2]]
        signs = [-signs[3], signs[0], signs[1], signs[2]]
    idx = [0] + [base + p for base in (1, 5, 9, 13) for p in perm]
    sgn = [1] + [sign * s for _ in (0, 1, 2, 3) for s in signs]

    def act(m):
        return tuple(s * m[i] for s, i in zip(sgn, idx))

    return act


def brute_force_mn(n, table, max_n=4):
    """Closure oracle for M_n on flat matrix keys; never consults the
    normalizer.

    Starts from all group elements and repeatedly adds c*T*m over all
    group elements c.  Products are only taken against the previous
    layer's new matrices: c*T*m for older m is in M_{k-1} by definition
    and was produced at an earlier step.  The c loop is batched by
    scalar orbit — c = s*r with s scalar — so each orbit costs one real
    multiplication plus cheap coefficient rotations.

    Returns (set of flat keys, per-layer new-matrix counts).
    """
    if n > max_n:
        raise LimitExceeded(f"oracle capped at n={max_n}, requested {n}")
    cliff_keys = [m.scaled_key() for m in table.elements]
    t_key = table.t_mat.scaled_key()

    actions = []
    for key in cliff_keys:
        act = _scalar_action(key)
        if act is not None:
            actions.append(act)
    reps = []
    assigned = set()
    for key in cliff_keys:
        if key in assigned:
            continue
        reps.append(key)
        assigned.update(act(key) for act in actions)
    if len(assigned) != len(cliff_keys) or \
            len(reps) * len(actions) != len(cliff_keys):
        raise VerificationFailure("scalar orbits do not tile the group")

    total = set(cliff_keys)
    layer_sizes = [len(total)]
    frontier = cliff_keys
    for _ in range(n):
        new = set()
        for m in frontier:
            tm = _flat_mul(t_key, m)
            for r in reps:
                p = _flat_mul(r, tm)
                for act in actions:
                    new.add(act(p))
        new -= total
        total |= new
        layer_sizes.append(len(new))
        frontier = list(new)
    return total, tuple(layer_sizes)


def verify_uniqueness(n, table, with_oracle=True, oracle_max=4):
    """Evaluate every normal form with <= n blocks and check Theorem-1
    style uniqueness: all matrices pairwise distinct, counts equal to the
    closed forms, and (when enabled) the matrix set equal to the
    brute-force oracle's."""
    order = table.order
    seen = {}
    layer_counts = [0] * (n + 1)
    for nf in enumerate_normal_forms(n, table):
        key = normal_form_matrix(nf, table).scaled_key()
        other = seen.get(key)
        if other is not None:
            raise VerificationFailure(
                f"distinct normal forms share a matrix: {other} vs {nf}")
        seen[key] = nf
        layer_counts[len(nf.blocks)] += 1
    for k, got in enumerate(layer_counts):
        want = count_closed_form(k, exact=True, order=order)
        if got != want:
            raise VerificationFailure(
                f"layer {k}: enumerated {got}, closed form {want}")
    total = sum(layer_counts)
    if total != count_closed_form(n, order=order):
        raise VerificationFailure(
            f"total {total} != closed form {count_closed_form(n, order=order)}")

    oracle_count = None
    if with_oracle:
        okeys, _ = brute_force_mn(n, table, max_n=oracle_max)
        oracle_count = len(okeys)
        if set(seen) != okeys:
            extra = next(iter(set(seen) - okeys), None)
            missing = next(iter(okeys - set(seen)), None)
            raise VerificationFailure(
                f"enumeration/oracle sets differ: enumerated-only key "
                f"{extra}, oracle-only key {missing}")
    return CensusReport(n=n, normal_form_count=total,
                        distinct_matrix_count=len(seen),
                        oracle_count=oracle_count,
                        layer_counts=tuple(layer_counts), ok=True)


def verify_remark_r(n=3, rng=None):
    """Rerun the whole pipeline with generator R in place of H.

    Builds the closure of {R, P} (order recorded, not asserted), derives
    the rewrite rules for the {I, R, PR} syndromes (the coset
    decomposition analog; failure is reported, not raised), checks
    uniqueness with the oracle, and round-trips the normalizer on a few
    hundred random {R,P,T} words.
    """
    table = build_group([("R", ring.R), ("P", ring.P)])
    try:
        rules = build_rules(table)
    except RuleDerivationFailure:
        return RemarkReport(table.order, False, None, False)

    census = verify_uniqueness(n, table, oracle_max=max(n, 4))

    rng = rng or random.Random(20260825)
    gates = {"R": ring.R, "P": ring.P, "T": ring.T}
    for _ in range(200):
        word = "".join(rng.choice("RPT") for _ in range(rng.randrange(0, 40)))
        nf = normalize(word, table, rules)
        if normal_form_matrix(nf, table) != evaluate(word, gates):
            return RemarkReport(table.order, True, census, False)
    return RemarkReport(table.order, True, census, census.ok)
