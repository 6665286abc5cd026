"""Rewrite rules W0*T = S*T*W1 for pushing T gates left through Cliffords.

For every group element W0 there is exactly one syndrome S in {I, H, PH}
and one element W1 with f(W0)*T = f(S)*T*f(W1); S is W0's coset tag and
W1 = T_adj * S_adj * W0 * T.  The normalizer consumes these as pure
table lookups.
"""

from __future__ import annotations

from importlib import resources

from . import ring
from .group import CosetTag


class RuleDerivationFailure(Exception):
    """The coset decomposition behind the rules does not hold, so some
    conjugate T_adj * S_adj * W0 * T lands outside the group.  Impossible
    for the standard H/P basis; reachable with exotic generator sets."""


class RuleTable:
    """One rule per group element, indexed by the W0 element id."""

    def __init__(self, table, slots, w1_ids):
        self.table = table
        self.slots = slots
        self.w1_ids = w1_ids

    def rule_for(self, w0):
        """(CosetTag, W1 id) with f(W0)*T = f(S)*T*f(W1)."""
        return CosetTag(self.slots[w0]), self.w1_ids[w0]

    def __len__(self):
        return len(self.slots)


def build_rules(table):
    t = table.t_mat
    t_adj = t.adjoint()
    slots = []
    w1_ids = []
    for w0, m in enumerate(table.elements):
        slot = table.coset_slots[w0]
        if slot is None:
            raise RuleDerivationFailure(
                f"element {table.words[w0]!r} is in no unique syndrome coset")
        syn_adj = table.elements[table.syndrome_ids[slot]].adjoint()
        w1_mat = ((t_adj * syn_adj) * m) * t
        try:
            w1 = table.index[w1_mat]
        except KeyError:
            raise RuleDerivationFailure(
                f"conjugate of {table.words[w0]!r} leaves the group") from None
        slots.append(slot)
        w1_ids.append(w1)
    return RuleTable(table, tuple(slots), tuple(w1_ids))


def _word_or_i(word):
    return word if word else "I"


def emit_rules(rules):
    """Render all rules as text, one per line, in three syndrome sections.

    Within a section rules are ordered by W0 element id, which is the
    breadth-first discovery order, so output is deterministic.
    """
    table = rules.table
    out = []
    for slot in range(3):
        label = table.syndrome_labels[slot]
        prefix = "" if label == "I" else label
        out.append(f"# section S = {label}")
        for w0 in range(table.order):
            if rules.slots[w0] != slot:
                continue
            lhs = _word_or_i(table.words[w0])
            rhs = _word_or_i(table.words[rules.w1_ids[w0]])
            out.append(f"{lhs}T = {prefix}T{rhs}")
    return "\n".join(out) + "\n"


def eval_word(table, word):
    """Evaluate a word over the table's generators plus T, with I allowed
    as an explicit identity letter."""
    gates = {name: table.elements[gid]
             for name, gid in table.gen_ids.items()}
    gates["T"] = table.t_mat
    m = ring.IDENTITY
    for ch in word:
        if ch == "I":
            continue
        try:
            m = m * gates[ch]
        except KeyError:
            raise ValueError(f"unknown gate letter {ch!r} in {word!r}") from None
    return m


def parse_fixture(text):
    """Parse fixture text into (lhs, rhs) word pairs; '#' starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("=")
        if len(parts) != 2:
            raise ValueError(f"fixture line {lineno}: expected one '=': {raw!r}")
        rows.append((parts[0].strip(), parts[1].strip()))
    return rows


def load_bundled_fixture():
    return resources.files("hptcanon.data").joinpath(
        "appendix_rules.txt").read_text()


def check_fixture(rules, rows):
    """Check fixture rows against exact arithmetic and the derived rules.

    Each row W0T = <S>T<W1> is checked at matrix level: both sides must
    evaluate to the same matrix, and the row's (S, W1) must agree with the
    derived rule for W0 as matrices.  Returns a list of mismatch
    descriptions; empty means the fixture passes.
    """
    table = rules.table
    by_len = sorted(range(3), key=lambda s: -len(table.block_labels[s]))
    problems = []
    seen_w0 = set()
    for lhs, rhs in rows:
        where = f"{lhs} = {rhs}"
        if not lhs.endswith("T"):
            problems.append(f"{where}: left side does not end in T")
            continue
        slot = None
        for s in by_len:
            if rhs.startswith(table.block_labels[s]):
                slot = s
                break
        if slot is None:
            problems.append(f"{where}: right side has no T block prefix")
            continue
        w1_word = rhs[len(table.block_labels[slot]):]
        try:
            lhs_mat = eval_word(table, lhs)
            rhs_mat = eval_word(table, rhs)
            w0_mat = eval_word(table, lhs[:-1])
            w1_mat = eval_word(table, w1_word)
        except ValueError as exc:
            problems.append(f"{where}: {exc}")
            continue
        if lhs_mat != rhs_mat:
            problems.append(f"{where}: sides evaluate to different matrices")
            continue
        try:
            w0 = table.index[w0_mat]
        except KeyError:
            problems.append(f"{where}: left side is not a group element")
            continue
        seen_w0.add(w0)
        if rules.slots[w0] != slot:
            problems.append(f"{where}: syndrome differs from derived rule")
        if table.elements[rules.w1_ids[w0]] != w1_mat:
            problems.append(f"{where}: W1 differs from derived rule")
    if len(rows) != len(rules.slots):
        problems.append(
            f"fixture has {len(rows)} rules, expected {len(rules.slots)}")
    elif len(seen_w0) != len(rules.slots):
        problems.append("fixture left-hand sides do not cover every element")
    return problems
