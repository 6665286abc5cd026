"""Finite matrix group closure over exact-ring generators.

Builds the 192-element group generated by H and P by breadth-first
closure, assigning every element a canonical word: the shortest word in
the generators, ties broken lexicographically in the given generator
order.  The table also records the subgroup of elements that commute
with conjugation by T, the resulting three-coset decomposition, and the
scalar (global phase) subgroup.
"""

from __future__ import annotations

from collections import deque
from enum import Enum

from . import ring
from .ring import UMat2


class ClosureExceedsLimit(Exception):
    def __init__(self, limit):
        super().__init__(f"group closure exceeded {limit} elements")
        self.limit = limit


class CosetTag(Enum):
    """Which syndrome coset an element falls in: S * C_T with S drawn from
    {I, g0, g1*g0} for generators (g0, g1).  For the standard basis the
    syndromes are I, H and PH."""

    S_I = 0
    S_H = 1
    S_PH = 2


class GroupTable:
    """Immutable closure table; elements are addressed by integer id.

    Id 0 is the identity (canonical word "").  `mul[i][j]` is the id of
    matrix(i) * matrix(j), matching left-to-right circuit composition.
    """

    def __init__(self, gen_names, elements, words, index, gen_step, mul,
                 inv, t_mat, ct_ids, coset_slots, syndrome_ids,
                 syndrome_labels, scalar_ids):
        self.gen_names = gen_names
        self.elements = elements
        self.words = words
        self.index = index
        self.gen_step = gen_step
        self.mul = mul
        self.inv = inv
        self.t_mat = t_mat
        self.ct_ids = ct_ids
        self.coset_slots = coset_slots
        self.syndrome_ids = syndrome_ids
        self.syndrome_labels = syndrome_labels
        self.scalar_ids = scalar_ids
        self.identity_id = 0
        self._gen_pos = {name: pos for pos, name in enumerate(gen_names)}
        self.gen_ids = {name: gen_step[pos][0]
                        for pos, name in enumerate(gen_names)}
        self.block_labels = tuple(
            ("" if lbl == "I" else lbl) + "T" for lbl in syndrome_labels)
        self.block_matrices = tuple(
            elements[sid] * t_mat for sid in syndrome_ids)

    @property
    def order(self):
        return len(self.elements)

    @property
    def diameter(self):
        return max(len(w) for w in self.words)

    def word(self, g):
        return self.words[g]

    def matrix(self, g):
        return self.elements[g]

    def element_id(self, mat):
        return self.index[mat]

    def __contains__(self, mat):
        return mat in self.index

    def mul_id(self, i, j):
        return self.mul[i][j]

    def inv_id(self, g):
        return self.inv[g]

    def word_id(self, word, start=0):
        """Id of matrix(start) * f(word) for a word over the generators."""
        g = start
        step = self.gen_step
        pos = self._gen_pos
        for ch in word:
            g = step[pos[ch]][g]
        return g


def build_group(generators, limit=10000, t=ring.T):
    """Close `generators` (sequence of (single-letter name, matrix) pairs)
    under multiplication.

    Raises ClosureExceedsLimit if more than `limit` distinct elements
    appear, so a typo'd generator set cannot loop forever.  `t` is the
    non-Clifford gate used for the conjugation subgroup and cosets.
    """
    gens = [(name, mat) for name, mat in generators]
    if not gens:
        raise ValueError("at least one generator required")
    for name, _ in gens:
        if len(name) != 1:
            raise ValueError(f"generator names must be single letters: {name!r}")

    elements = [ring.IDENTITY]
    words = [""]
    index = {ring.IDENTITY: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        base = elements[i]
        for name, mat in gens:
            prod = base * mat
            if prod not in index:
                if len(elements) >= limit:
                    raise ClosureExceedsLimit(limit)
                index[prod] = len(elements)
                elements.append(prod)
                words.append(words[i] + name)
                queue.append(index[prod])

    n = len(elements)
    gen_step = [[index[elements[i] * mat] for i in range(n)]
                for _, mat in gens]

    # Full multiplication table, filled by walking canonical words through
    # the per-generator step tables; this costs table lookups only.
    gen_pos = {name: pos for pos, (name, _) in enumerate(gens)}
    word_seqs = [tuple(gen_pos[ch] for ch in w) for w in words]
    mul = []
    for i in range(n):
        row = [0] * n
        for j in range(n):
            x = i
            for gp in word_seqs[j]:
                x = gen_step[gp][x]
            row[j] = x
        mul.append(row)

    # Unitary, so inverse = adjoint; a finite closure contains it.
    inv = [index[m.adjoint()] for m in elements]

    t_adj = t.adjoint()
    ct_ids = frozenset(i for i, m in enumerate(elements)
                       if (t * m) * t_adj in index)

    # Syndromes I, g0, g1*g0; with a single generator the second syndrome
    # degenerates to g0*g0 so the triple stays well-formed (the coset
    # decomposition is only meaningful for two-generator sets).
    syn0 = gens[0][1]
    second = gens[1] if len(gens) > 1 else gens[0]
    syn1 = second[1] * syn0
    syndrome_ids = (0, index[syn0], index[syn1])
    syndrome_labels = ("I", gens[0][0], second[0] + gens[0][0])

    coset_slots = []
    for g in range(n):
        matches = [s for s, sid in enumerate(syndrome_ids)
                   if mul[inv[sid]][g] in ct_ids]
        coset_slots.append(matches[0] if len(matches) == 1 else None)
    coset_slots = tuple(coset_slots)

    zero = ring.ZERO
    scalar_ids = tuple(i for i, m in enumerate(elements)
                       if m.e01 == zero and m.e10 == zero and m.e00 == m.e11)

    return GroupTable(tuple(name for name, _ in gens), elements, words,
                      index, gen_step, mul, inv, t, ct_ids, coset_slots,
                      syndrome_ids, syndrome_labels, scalar_ids)


def build_standard_table(limit=10000):
    """The 192-element group generated by H and P, with T-cosets."""
    return build_group([("H", ring.H), ("P", ring.P)], limit=limit)


def subgroup_ct(table, t=None):
    """Recompute {g : t * g * t_adjoint stays in the group} from scratch.

    Same set as table.ct_ids when t is the table's own T; kept separate so
    tests can cross-check the stored value against the definition.
    """
    if t is None:
        t = table.t_mat
    t_adj = t.adjoint()
    return frozenset(i for i, m in enumerate(table.elements)
                     if (t * m) * t_adj in table.index)


def coset_of(table, g):
    """The unique tag S with S**-1 * g in C_T (three-coset decomposition)."""
    slot = table.coset_slots[g]
    if slot is None:
        raise ValueError(f"element {g} has no unique syndrome coset")
    return CosetTag(slot)


def scalar_subgroup(table):
    """Ids of the scalar matrices (global phases) in the group."""
    return table.scalar_ids


def subgroup_closure(table, ids):
    """Closure of a subset of element ids under the group multiplication."""
    seen = set(ids)
    seen.add(table.identity_id)
    queue = deque(seen)
    mul = table.mul
    gens = tuple(ids)
    while queue:
        i = queue.popleft()
        for j in gens:
            p = mul[i][j]
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return frozenset(seen)


def quotient_profile(table):
    """Structure of C_T modulo the scalar subgroup.

    Returns (order, is_abelian, {element_order: count}).  Scalars commute
    with everything, so left and right cosets agree and the quotient is a
    genuine group on the canonical (minimum-id) coset representatives.
    """
    mul = table.mul
    scalars = table.scalar_ids
    for s in scalars:
        if s not in table.ct_ids:
            raise ValueError("scalar subgroup not contained in C_T")

    def rep(g):
        return min(mul[s][g] for s in scalars)

    reps = sorted({rep(g) for g in table.ct_ids})
    rep_set = set(reps)
    if len(reps) * len(scalars) != len(table.ct_ids):
        raise ValueError("scalar cosets do not partition C_T evenly")

    def qmul(a, b):
        return rep(mul[a][b])

    e = rep(table.identity_id)
    orders = {}
    for g in reps:
        x, o = g, 1
        while x != e:
            x = qmul(x, g)
            o += 1
        orders[o] = orders.get(o, 0) + 1

    abelian = all(qmul(a, b) == qmul(b, a) for a in reps for b in rep_set)
    return len(reps), abelian, orders
