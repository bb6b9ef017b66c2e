"""Lucas sequence pairs U_n, V_n over any commutative ring.

U and V satisfy y_{n+1} = P*y_n - Q*y_{n-1} with (U0, U1) = (0, 1) and
(V0, V1) = (2, P).  For roots r, s of z**2 - P*z + Q they realize
(r**n - s**n)/(r - s) and r**n + s**n, which is how every closed form
in this package is checked without ever constructing a radical: each
pair of characteristic roots becomes a (P, Q) pair and the root-power
differences collapse to U values.

Works over LaurentPoly, TowerElem, Fraction, int, and ModInt: the only
requirements are +, -, * and that P - P yields the ring zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import ABX2, AX, BX, A, B, LaurentPoly, Mat2, X, monomial_inverse
from .ring import TowerElem


@dataclass(frozen=True)
class LucasParams:
    """Characteristic data (P, Q) of one Lucas recurrence."""

    P: object
    Q: object


class ModInt:
    """Residue modulo a fixed odd modulus, for the numeric fast path."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.modulus = modulus
        self.value = value % modulus

    @classmethod
    def from_fraction(cls, q, modulus: int) -> ModInt:
        q = Fraction(q)
        inv = pow(q.denominator, -1, modulus)
        return cls(q.numerator * inv, modulus)

    def _check(self, other) -> ModInt | None:
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ModInt(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ModInt(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ModInt(other.value - self.value, self.modulus)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ModInt(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __eq__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self.value == other.value

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"ModInt({self.value} mod {self.modulus})"


def _one_like(x):
    if isinstance(x, LaurentPoly):
        return LaurentPoly.one()
    if isinstance(x, TowerElem):
        return TowerElem.one()
    if isinstance(x, ModInt):
        return ModInt(1, x.modulus)
    if isinstance(x, Fraction):
        return Fraction(1)
    if isinstance(x, int):
        return 1
    raise TypeError(f"no unit known for {type(x).__name__}")


def lucas_uv_iter(n: int, params: LucasParams):
    """(U_n, V_n) by n recurrence steps; the reference oracle."""
    P, Q = params.P, params.Q
    one = _one_like(P)
    u0, u1 = P - P, one
    v0, v1 = one + one, P
    for _ in range(n):
        u0, u1 = u1, P * u1 - Q * u0
        v0, v1 = v1, P * v1 - Q * v0
    return u0, v0


def _lucas_chain(n: int, P, Q):
    """Fast-doubling state (U_n, U_{n+1}, V_n, V_{n+1}, Q**n).

    Walks the bits of n from the most significant end.  The doubling
    step uses U_{2m} = U_m V_m, V_{2m} = V_m**2 - 2Q**m and the odd
    companions U_{2m+1} = U_{m+1} V_m - Q**m, V_{2m+1} = V_{m+1} V_m
    - P Q**m, none of which divide by 2.
    """
    one = _one_like(P)
    zero = P - P
    u, u1 = zero, one
    v, v1 = one + one, P
    qm = one
    if n:
        for bit in bin(n)[2:]:
            du = u * v
            dv = v * v - (qm + qm)
            du1 = u1 * v - qm
            dv1 = v1 * v - P * qm
            qm = qm * qm
            if bit == "1":
                u, v = du1, dv1
                u1 = P * du1 - Q * du
                v1 = P * dv1 - Q * dv
                qm = qm * Q
            else:
                u, v = du, dv
                u1, v1 = du1, dv1
    return u, u1, v, v1, qm


def lucas_uv_fast(n: int, params: LucasParams):
    """(U_n, V_n) in O(log n) ring multiplications."""
    u, _, v, _, _ = _lucas_chain(n, params.P, params.Q)
    return u, v


def lucas_u_pair(n: int, params: LucasParams):
    """(U_n, U_{n+1}) via the doubling chain; avoids any halving."""
    u, u1, _, _, _ = _lucas_chain(n, params.P, params.Q)
    return u, u1


# (P, Q) whose roots solve r**2 - abx**2 r - abx**2 = 0: the
# characteristic pair of the even/odd-index subsequence recurrence.
F_BINET_PARAMS = LucasParams(ABX2, -ABX2)


def binet_f_residual(n: int) -> Mat2:
    """Matrix sequence member minus its closed form, expected zero.

    The closed form splits into a part proportional to U_n and a part
    proportional to U_{2*floor(n/2)+2}, both over the pair (abx**2,
    -abx**2); the leading matrix constants differ by parity and carry
    monomial denominators, inverted exactly.
    """
    from . import sequences

    half = n // 2
    eps = n & 1
    f0 = sequences.f_matrix(0)
    f1 = sequences.f_matrix(1)
    if eps:
        a_num = f1 - f0 * BX
    else:
        a_num = f1 * AX - f0 - f0 * ABX2
    a_coef = a_num * monomial_inverse((A * B) ** half * X ** (2 * half))
    b_den = (A * B) ** (half + 1) * X ** (n + 2 * ((n + 1) & 1))
    b_coef = (f0 * B ** eps) * monomial_inverse(b_den)
    u_n, _ = lucas_uv_iter(n, F_BINET_PARAMS)
    u_top, _ = lucas_uv_iter(2 * half + 2, F_BINET_PARAMS)
    return sequences.f_matrix(n) - (a_coef * u_n + b_coef * u_top)
