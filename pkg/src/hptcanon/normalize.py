"""Streaming canonicalizer for {H,P,T} circuits.

Any circuit equals a unique normal form: a left-to-right chain of blocks
from {T, HT, PHT} (bare T allowed only as the leftmost block) followed
by a single Clifford tail.  The pass below reads gates once, folding
Cliffords into a pending element and pushing T gates through it with the
rewrite rules; adjacent T blocks merge into a P.  Equivalence checking,
T-counting and exact inversion ride on top.
"""

from enum import IntEnum
from functools import lru_cache
from typing import NamedTuple

from . import ring
from .group import build_standard_table
from .rules import build_rules


class Block(IntEnum):
    T = 0
    HT = 1
    PHT = 2


class ParseError(Exception):
    def __init__(self, position, character):
        super().__init__(
            f"unexpected character {character!r} at position {position}")
        self.position = position
        self.character = character


class NormalForm(NamedTuple):
    blocks: tuple
    cliff: int

    @property
    def t_count(self):
        return len(self.blocks)


@lru_cache(maxsize=1)
def _default_context():
    table = build_standard_table()
    return table, build_rules(table)


def parse(text):
    """Clean a circuit string to its gate letters.

    Whitespace, the '.'/'|' separators used by render, and the explicit
    identity letter 'I' are ignored, so rendered normal forms (including
    an "|I" tail) parse back.  Anything else raises ParseError with the
    offending position.
    """
    gates = []
    for pos, ch in enumerate(text):
        if ch in "HPT":
            gates.append(ch)
        elif ch == "I" or ch.isspace() or ch in ".|":
            continue
        else:
            raise ParseError(pos, ch)
    return "".join(gates)


def evaluate(circuit, gates=ring.GATES):
    """Exact matrix of a circuit: gate matrices multiplied in string
    order, leftmost gate leftmost factor.  Empty circuit is the identity."""
    m = ring.IDENTITY
    for ch in circuit:
        m = m * gates[ch]
    return m


def normalize(circuit, table=None, rules=None):
    """Normal form of a circuit in one left-to-right pass.

    State is a block stack plus a pending Clifford (initially identity).
    H/P fold into pending via the multiplication table.  Each T looks up
    pending*T = S*T*W1: a non-identity syndrome S pushes block S*T, and
    an identity syndrome either starts the chain with a bare T or pops
    the previous block X*T, merging T*T into P (pending becomes X*P*W1).
    Amortized O(1) table lookups per gate.
    """
    if table is None:
        table, rules = _default_context()
    blocks = []
    pending = table.identity_id
    gen_pos = table._gen_pos
    gen_step = table.gen_step
    mul = table.mul
    slots = rules.slots
    w1s = rules.w1_ids
    syn_ids = table.syndrome_ids
    p_id = table.gen_ids[table.gen_names[1]]
    for ch in circuit:
        if ch != "T":
            try:
                pending = gen_step[gen_pos[ch]][pending]
            except KeyError:
                raise ValueError(f"gate {ch!r} not in this basis") from None
            continue
        slot = slots[pending]
        w1 = w1s[pending]
        if slot != 0:
            blocks.append(slot)
            pending = w1
        elif not blocks:
            blocks.append(0)
            pending = w1
        else:
            x = blocks.pop()
            pending = mul[mul[syn_ids[x]][p_id]][w1]
    return NormalForm(tuple(Block(b) for b in blocks), pending)


def render(nf, table=None):
    """Text form: blocks joined with '.', then '|', then the canonical
    Clifford word ('I' when empty)."""
    if table is None:
        table, _ = _default_context()
    head = ".".join(table.block_labels[b] for b in nf.blocks)
    return head + "|" + (table.words[nf.cliff] or "I")


def normal_form_matrix(nf, table=None):
    """Exact matrix of a normal form, without re-parsing its rendering."""
    if table is None:
        table, _ = _default_context()
    m = ring.IDENTITY
    for b in nf.blocks:
        m = m * table.block_matrices[b]
    return m * table.elements[nf.cliff]


def equivalent(c1, c2, table=None, rules=None):
    """Exact equality of the two circuits' matrices, decided structurally
    on normal forms."""
    return normalize(c1, table, rules) == normalize(c2, table, rules)


def t_count(circuit, table=None, rules=None):
    """Minimal number of T gates over all circuits computing the same
    matrix; the block count of the normal form."""
    return len(normalize(circuit, table, rules).blocks)


def invert(circuit, table=None, rules=None):
    """Normal form of the exact inverse circuit.

    The word is reversed letterwise with each Clifford generator replaced
    by its inverse's canonical word and T by T followed by the phase
    gate's inverse word (T**-1 = T**7 = T*P**3), then normalized.  The
    T count is preserved.
    """
    if table is None:
        table, rules = _default_context()
    inv_words = {name: table.words[table.inv[gid]]
                 for name, gid in table.gen_ids.items()}
    t_inv = "T" + inv_words[table.gen_names[1]]
    parts = []
    for ch in reversed(circuit):
        parts.append(t_inv if ch == "T" else inv_words[ch])
    return normalize("".join(parts), table, rules)
