"""Exact arithmetic in Z[omega, 1/sqrt2] with omega = e^{i pi/4}.

Every value is (a + b*omega + c*omega**2 + d*omega**3) / sqrt2**k with
integer coefficients, using omega**4 = -1, omega**2 = i and
sqrt2 = omega - omega**3.  All single-qubit matrices generated by H, P
and T have entries of this shape, so circuit evaluation never leaves
the ring and equality is decidable structurally.
"""

from __future__ import annotations

import cmath

_OMEGA_C = cmath.exp(1j * cmath.pi / 4)


def _reduced(a: int, b: int, c: int, d: int, k: int) -> tuple[int, int, int, int, int]:
    # Canonical form: k == 0, or the numerator is not divisible by sqrt2.
    # Dividing (a, b, c, d) by sqrt2 gives ((b-d)/2, (a+c)/2, (b+d)/2, (c-a)/2),
    # which is integral exactly when a = c and b = d (mod 2).
    while k > 0 and (a - c) % 2 == 0 and (b - d) % 2 == 0:
        a, b, c, d = (b - d) // 2, (a + c) // 2, (b + d) // 2, (c - a) // 2
        k -= 1
    return a, b, c, d, k


def _scaled(a: int, b: int, c: int, d: int, m: int) -> tuple[int, int, int, int]:
    # Multiply the numerator by sqrt2**m, m >= 0.
    if m & 1:
        a, b, c, d = b - d, a + c, b + d, c - a
    f = 1 << (m >> 1)
    return a * f, b * f, c * f, d * f


class RingElem:
    """One ring value, always stored in canonical form.

    The constructor canonicalizes, so two equal values are structurally
    identical and hash alike.  Global phase is significant: omega * x != x.
    """

    __slots__ = ("_a", "_b", "_c", "_d", "_k")

    def __init__(self, a: int, b: int, c: int, d: int, k: int = 0) -> None:
        if k < 0:
            raise ValueError(f"denominator exponent must be >= 0, got {k}")
        self._a, self._b, self._c, self._d, self._k = _reduced(a, b, c, d, k)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int, k: int) -> RingElem:
        # Internal: wrap coefficients already known to be canonical.
        self = object.__new__(cls)
        self._a, self._b, self._c, self._d, self._k = a, b, c, d, k
        return self

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @property
    def c(self) -> int:
        return self._c

    @property
    def d(self) -> int:
        return self._d

    @property
    def k(self) -> int:
        return self._k

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return self._a, self._b, self._c, self._d

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElem):
            return NotImplemented
        return (self._a == other._a and self._b == other._b
                and self._c == other._c and self._d == other._d
                and self._k == other._k)

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._c, self._d, self._k))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0 or self._c != 0 or self._d != 0

    def __neg__(self) -> RingElem:
        return RingElem._raw(-self._a, -self._b, -self._c, -self._d, self._k)

    def __add__(self, other: RingElem) -> RingElem:
        if not isinstance(other, RingElem):
            return NotImplemented
        k0, k1 = self._k, other._k
        x = self.coeffs
        y = other.coeffs
        if k0 < k1:
            x = _scaled(*x, k1 - k0)
            k0 = k1
        elif k1 < k0:
            y = _scaled(*y, k0 - k1)
        return RingElem(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3], k0)

    def __sub__(self, other: RingElem) -> RingElem:
        if not isinstance(other, RingElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: RingElem) -> RingElem:
        if not isinstance(other, RingElem):
            return NotImplemented
        a0, b0, c0, d0 = self._a, self._b, self._c, self._d
        a1, b1, c1, d1 = other._a, other._b, other._c, other._d
        # Negacyclic convolution: omega**4 = -1 folds degree >= 4 terms back
        # with a sign flip.
        return RingElem(
            a0 * a1 - b0 * d1 - c0 * c1 - d0 * b1,
            a0 * b1 + b0 * a1 - c0 * d1 - d0 * c1,
            a0 * c1 + b0 * b1 + c0 * a1 - d0 * d1,
            a0 * d1 + b0 * c1 + c0 * b1 + d0 * a1,
            self._k + other._k,
        )

    def conj(self) -> RingElem:
        # Complex conjugate: omega -> omega**-1 = -omega**3.  Preserves
        # canonicality (the parity pattern is symmetric in b and d).
        return RingElem._raw(self._a, -self._d, -self._c, -self._b, self._k)

    def times_sqrt2(self) -> RingElem:
        a, b, c, d = self._a, self._b, self._c, self._d
        return RingElem(b - d, a + c, b + d, c - a, self._k)

    def to_complex(self) -> complex:
        # Float projection for diagnostics and cross-checks only; the
        # library itself never computes with floats.
        w = _OMEGA_C
        num = self._a + self._b * w + self._c * w * w + self._d * w ** 3
        return num / (2 ** (self._k / 2))

    def __repr__(self) -> str:
        return (f"RingElem({self._a}, {self._b}, {self._c}, {self._d}, "
                f"{self._k})")

    def __str__(self) -> str:
        num = f"({self._a} + {self._b}w + {self._c}w2 + {self._d}w3)"
        return num if self._k == 0 else f"{num}/sqrt2^{self._k}"


def _mul_add(x: RingElem, y: RingElem, z: RingElem, w: RingElem) -> RingElem:
    # x*y + z*w with one reduction at the end; the workhorse of matrix
    # multiplication.
    a0, b0, c0, d0, k0 = x._a, x._b, x._c, x._d, x._k
    a1, b1, c1, d1, k1 = y._a, y._b, y._c, y._d, y._k
    pa = a0 * a1 - b0 * d1 - c0 * c1 - d0 * b1
    pb = a0 * b1 + b0 * a1 - c0 * d1 - d0 * c1
    pc = a0 * c1 + b0 * b1 + c0 * a1 - d0 * d1
    pd = a0 * d1 + b0 * c1 + c0 * b1 + d0 * a1
    pk = k0 + k1
    a0, b0, c0, d0, k0 = z._a, z._b, z._c, z._d, z._k
    a1, b1, c1, d1, k1 = w._a, w._b, w._c, w._d, w._k
    qa = a0 * a1 - b0 * d1 - c0 * c1 - d0 * b1
    qb = a0 * b1 + b0 * a1 - c0 * d1 - d0 * c1
    qc = a0 * c1 + b0 * b1 + c0 * a1 - d0 * d1
    qd = a0 * d1 + b0 * c1 + c0 * b1 + d0 * a1
    qk = k0 + k1
    if pk < qk:
        pa, pb, pc, pd = _scaled(pa, pb, pc, pd, qk - pk)
        pk = qk
    elif qk < pk:
        qa, qb, qc, qd = _scaled(qa, qb, qc, qd, pk - qk)
    return RingElem._raw(*_reduced(pa + qa, pb + qb, pc + qc, pd + qd, pk))


class UMat2:
    """2x2 matrix over the ring; row-major entries e00, e01, e10, e11."""

    __slots__ = ("_e00", "_e01", "_e10", "_e11")

    def __init__(self, e00: RingElem, e01: RingElem, e10: RingElem,
                 e11: RingElem) -> None:
        self._e00, self._e01, self._e10, self._e11 = e00, e01, e10, e11

    @property
    def e00(self) -> RingElem:
        return self._e00

    @property
    def e01(self) -> RingElem:
        return self._e01

    @property
    def e10(self) -> RingElem:
        return self._e10

    @property
    def e11(self) -> RingElem:
        return self._e11

    @property
    def entries(self) -> tuple[RingElem, RingElem, RingElem, RingElem]:
        return self._e00, self._e01, self._e10, self._e11

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UMat2):
            return NotImplemented
        return (self._e00 == other._e00 and self._e01 == other._e01
                and self._e10 == other._e10 and self._e11 == other._e11)

    def __hash__(self) -> int:
        return hash((self._e00, self._e01, self._e10, self._e11))

    def __mul__(self, other: UMat2) -> UMat2:
        if not isinstance(other, UMat2):
            return NotImplemented
        return UMat2(
            _mul_add(self._e00, other._e00, self._e01, other._e10),
            _mul_add(self._e00, other._e01, self._e01, other._e11),
            _mul_add(self._e10, other._e00, self._e11, other._e10),
            _mul_add(self._e10, other._e01, self._e11, other._e11),
        )

    def __neg__(self) -> UMat2:
        return UMat2(-self._e00, -self._e01, -self._e10, -self._e11)

    def adjoint(self) -> UMat2:
        return UMat2(self._e00.conj(), self._e10.conj(),
                     self._e01.conj(), self._e11.conj())

    def apply(self, state: StateVec) -> StateVec:
        return StateVec(
            _mul_add(self._e00, state._c0, self._e01, state._c1),
            _mul_add(self._e10, state._c0, self._e11, state._c1),
        )

    def scaled_key(self) -> tuple[int, ...]:
        """Flat integer key: common denominator exponent, then the 16
        numerator coefficients row-major.

        Per-entry canonical form makes the common exponent minimal, so the
        key is injective and safe for dedup sets and JSON round-trips.
        """
        kk = max(self._e00._k, self._e01._k, self._e10._k, self._e11._k)
        out = [kk]
        for e in (self._e00, self._e01, self._e10, self._e11):
            out.extend(_scaled(e._a, e._b, e._c, e._d, kk - e._k))
        return tuple(out)

    def to_json_dict(self) -> dict:
        key = self.scaled_key()
        rows = [
            [list(key[1:5]), list(key[5:9])],
            [list(key[9:13]), list(key[13:17])],
        ]
        return {"den_exp": key[0], "entries": rows}

    def to_complex(self) -> list[list[complex]]:
        return [[self._e00.to_complex(), self._e01.to_complex()],
                [self._e10.to_complex(), self._e11.to_complex()]]

    def __repr__(self) -> str:
        return (f"UMat2({self._e00!r}, {self._e01!r}, "
                f"{self._e10!r}, {self._e11!r})")


class StateVec:
    """Single-qubit state with exact ring amplitudes c0, c1."""

    __slots__ = ("_c0", "_c1")

    def __init__(self, c0: RingElem, c1: RingElem) -> None:
        self._c0, self._c1 = c0, c1

    @property
    def c0(self) -> RingElem:
        return self._c0

    @property
    def c1(self) -> RingElem:
        return self._c1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVec):
            return NotImplemented
        return self._c0 == other._c0 and self._c1 == other._c1

    def __hash__(self) -> int:
        return hash((self._c0, self._c1))

    def __repr__(self) -> str:
        return f"StateVec({self._c0!r}, {self._c1!r})"


_ZERO = RingElem._raw(0, 0, 0, 0, 0)

ZERO = _ZERO
ONE = RingElem(1, 0, 0, 0)
OMEGA = RingElem(0, 1, 0, 0)
I_UNIT = RingElem(0, 0, 1, 0)
SQRT2 = RingElem(0, 1, 0, -1)
SQRT2_INV = RingElem(1, 0, 0, 0, 1)

IDENTITY = UMat2(ONE, ZERO, ZERO, ONE)
H = UMat2(SQRT2_INV, SQRT2_INV, SQRT2_INV, -SQRT2_INV)
P = UMat2(ONE, ZERO, ZERO, I_UNIT)
T = UMat2(ONE, ZERO, ZERO, OMEGA)
R = UMat2(SQRT2_INV, SQRT2_INV, -SQRT2_INV, SQRT2_INV)
PAULI_X = UMat2(ZERO, ONE, ONE, ZERO)
PAULI_Y = UMat2(ZERO, -I_UNIT, I_UNIT, ZERO)
PAULI_Z = UMat2(ONE, ZERO, ZERO, -ONE)

GATES = {"H": H, "P": P, "T": T}

KET0 = StateVec(ONE, ZERO)
