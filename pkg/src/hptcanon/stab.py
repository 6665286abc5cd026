"""Stabilizer triples for normal-form states, with exact parity classes.

A normal-form prefix applied to |0> is stabilized by x*X + y*Y + z*Z
where each coefficient is (a + b*sqrt2)/sqrt2**level with integers a, b
and level = number of T blocks applied.  The triples update by integer
recurrences per block, are deliberately never reduced (the parity
classes T1..T9 are defined at this fixed level), and certify that
normal forms with T gates cannot be the identity.
"""

from enum import Enum
from typing import NamedTuple

from . import ring
from .normalize import Block, normal_form_matrix


class NotSignedPauli(Exception):
    """Conjugating Z by the given element is not a signed Pauli; cannot
    happen for genuine Clifford group elements."""


class NoTGates(Exception):
    """The non-identity certificate only applies to forms with T blocks."""


class ParityClass(Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"
    T9 = "T9"
    OTHER = "OTHER"


class StabTriple(NamedTuple):
    x: tuple
    y: tuple
    z: tuple
    level: int


# Parities of (x_a, x_b, y_a, y_b, z_a, z_b), 1 = odd.
_CLASS_BY_PARITY = {
    (0, 1, 0, 0, 0, 1): ParityClass.T1,
    (0, 0, 0, 1, 0, 1): ParityClass.T2,
    (0, 1, 0, 1, 0, 0): ParityClass.T3,
    (0, 1, 1, 0, 1, 0): ParityClass.T4,
    (1, 0, 0, 1, 1, 0): ParityClass.T5,
    (1, 0, 1, 0, 0, 1): ParityClass.T6,
    (0, 1, 1, 1, 1, 1): ParityClass.T7,
    (1, 1, 0, 1, 1, 1): ParityClass.T8,
    (1, 1, 1, 1, 0, 1): ParityClass.T9,
}

_AXES = (
    ((1, 0, 0), ring.PAULI_X),
    ((-1, 0, 0), -ring.PAULI_X),
    ((0, 1, 0), ring.PAULI_Y),
    ((0, -1, 0), -ring.PAULI_Y),
    ((0, 0, 1), ring.PAULI_Z),
    ((0, 0, -1), -ring.PAULI_Z),
)


def initial_stab(w0, table):
    """Signed Pauli axis stabilizing f(W0)|0>: conjugate Z by f(W0) and
    pattern-match.  Level starts at 0."""
    m = table.elements[w0]
    conj = (m * ring.PAULI_Z) * m.adjoint()
    for (vx, vy, vz), pauli in _AXES:
        if conj == pauli:
            return StabTriple((vx, 0), (vy, 0), (vz, 0), 0)
    raise NotSignedPauli(f"element {table.words[w0]!r} does not map Z to "
                         "a signed Pauli")


def step_block(st, block):
    """Triple for block * (current state); one more sqrt2 in the
    denominator, pure integer updates on the six coefficients."""
    (xa, xb), (ya, yb), (za, zb) = st.x, st.y, st.z
    if block == Block.T:
        nxt = (xa - ya, xb - yb), (xa + ya, xb + yb), (2 * zb, za)
    elif block == Block.HT:
        nxt = (2 * zb, za), (-xa - ya, -xb - yb), (xa - ya, xb - yb)
    elif block == Block.PHT:
        nxt = (xa + ya, xb + yb), (2 * zb, za), (xa - ya, xb - yb)
    else:
        raise ValueError(f"unknown block {block!r}")
    return StabTriple(*nxt, st.level + 1)


def classify(st):
    parity = (st.x[0] & 1, st.x[1] & 1, st.y[0] & 1, st.y[1] & 1,
              st.z[0] & 1, st.z[1] & 1)
    return _CLASS_BY_PARITY.get(parity, ParityClass.OTHER)


def stab_of_normal_form(nf, table):
    """Fold step_block over the blocks from rightmost (adjacent to the
    Clifford tail) to leftmost, starting from the tail's axis."""
    st = initial_stab(nf.cliff, table)
    for b in reversed(nf.blocks):
        st = step_block(st, b)
    return st


def _coeff(pair, level):
    a, b = pair
    # a + b*sqrt2 over sqrt2**level, with sqrt2 = omega - omega**3.
    return ring.RingElem(a, b, 0, -b, level)


def stab_matrix(st):
    """M = x*X + y*Y + z*Z as an exact ring matrix."""
    x = _coeff(st.x, st.level)
    y = _coeff(st.y, st.level)
    z = _coeff(st.z, st.level)
    iy = ring.I_UNIT * y
    return ring.UMat2(z, x - iy, x + iy, -z)


def verify_stabilizes(st, state):
    """Exact check that (x, y, z) stabilizes the state: M s = s."""
    return stab_matrix(st).apply(state) == state


def nonidentity_witness(nf, table):
    """Certify that a normal form with >= 1 block is not the identity.

    One or two blocks: direct exact-matrix comparison.  Three or more:
    the folded triple's parity class lands in T1..T9, which forces an
    odd (hence nonzero) x or y coefficient, so the stabilizer axis of
    the output state is not (0,0,+-1) and the state differs from |0>.
    """
    if not nf.blocks:
        raise NoTGates("normal form has no T blocks")
    if len(nf.blocks) <= 2:
        return normal_form_matrix(nf, table) != ring.IDENTITY
    return classify(stab_of_normal_form(nf, table)) is not ParityClass.OTHER
