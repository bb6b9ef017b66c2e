"""The alternating-coefficient Fibonacci-type polynomial q_n, its 2x2
matrix companion, the square-root-scaled matrix sequence, and the
identity residuals that relate them.

q follows q_n = a*x*q_{n-1} + q_{n-2} when n is even and
q_n = b*x*q_{n-1} + q_{n-2} when n is odd, from q_0 = 0, q_1 = 1.
The matrix sequence follows the same alternation from the identity
matrix and [[bx, b/a], [1, 0]].  All caches are append-only and
lock-guarded, so concurrent verification suites can share them.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .lucas import LucasParams, lucas_u_pair, ModInt
from .ring import (
    AX,
    BX,
    A,
    B,
    LaurentPoly,
    Mat2,
    TowerElem,
    X,
    monomial_inverse,
)

_B_OVER_A = B * monomial_inverse(A)

_q_lock = threading.Lock()
_q_cache: list[LaurentPoly] = [LaurentPoly.zero(), LaurentPoly.one()]

_f_lock = threading.Lock()
_f_cache: list[Mat2] = [
    Mat2.identity(LaurentPoly.one(), LaurentPoly.zero()),
    Mat2(BX, _B_OVER_A, LaurentPoly.one(), LaurentPoly.zero()),
]

_a_lock = threading.Lock()
_a_cache: list[Mat2] = []


def epsilon(n: int) -> int:
    """Parity indicator: 1 for odd n, 0 for even n."""
    return n & 1


def q_poly(n: int) -> LaurentPoly:
    """The n-th polynomial by the alternating recurrence, memoized."""
    if n < 0:
        raise ValueError("index must be a natural number")
    if n >= len(_q_cache):
        with _q_lock:
            while len(_q_cache) <= n:
                m = len(_q_cache)
                mult = BX if m & 1 else AX
                _q_cache.append(mult * _q_cache[m - 1] + _q_cache[m - 2])
    return _q_cache[n]


def f_matrix(n: int) -> Mat2:
    """The n-th matrix by the alternating recurrence, memoized."""
    if n < 0:
        raise ValueError("index must be a natural number")
    if n >= len(_f_cache):
        with _f_lock:
            while len(_f_cache) <= n:
                m = len(_f_cache)
                mult = BX if m & 1 else AX
                _f_cache.append(_f_cache[m - 1] * mult + _f_cache[m - 2])
    return _f_cache[n]


def f_matrix_explicit(n: int) -> Mat2:
    """The n-th matrix assembled from q values instead of the recurrence.

    [[(b/a)^eps q_{n+1}, (b/a) q_n], [q_n, (b/a)^eps q_{n-1}]] with
    q_{-1} = 1, the value forced by the n = 0 case being the identity.
    """
    if n < 0:
        raise ValueError("index must be a natural number")
    q_prev = LaurentPoly.one() if n == 0 else q_poly(n - 1)
    q_n = q_poly(n)
    q_next = q_poly(n + 1)
    if epsilon(n):
        return Mat2(_B_OVER_A * q_next, _B_OVER_A * q_n, q_n,
                    _B_OVER_A * q_prev)
    return Mat2(q_next, _B_OVER_A * q_n, q_n, q_prev)


def det_residual(n: int) -> LaurentPoly:
    """det of the n-th matrix minus (-b/a)^eps(n); expected zero."""
    expected = -_B_OVER_A if epsilon(n) else LaurentPoly.one()
    return f_matrix(n).det() - expected


def cassini_residual(n: int) -> LaurentPoly:
    """a^(1-eps) b^eps q_{n+1} q_{n-1} - a^eps b^(1-eps) q_n^2 - a(-1)^n."""
    if n < 1:
        raise ValueError("needs n >= 1: q_{-1} is outside the recurrence")
    eps = epsilon(n)
    lhs = (A ** (1 - eps) * B ** eps) * q_poly(n + 1) * q_poly(n - 1) \
        - (A ** eps * B ** (1 - eps)) * q_poly(n) * q_poly(n)
    sign = -1 if n & 1 else 1
    return lhs - A * sign


def a_matrix(n: int) -> Mat2:
    """The n-th matrix scaled into the tower: v-coordinate entries for
    even n, u-coordinate entries for odd n."""
    if n < 0:
        raise ValueError("index must be a natural number")
    if n >= len(_a_cache):
        with _a_lock:
            while len(_a_cache) <= n:
                m = len(_a_cache)
                f = f_matrix(m)
                if m & 1:
                    lifted = f.map(lambda p: TowerElem(cu=p))
                else:
                    lifted = f.map(lambda p: TowerElem(cv=p))
                _a_cache.append(lifted)
    return _a_cache[n]


def sum_f_residual(n: int) -> Mat2:
    """Prefix sum of the matrix sequence minus its closed form.

    sum_{k<n} F_k - [a^eps b^(1-eps) F_n + a^(1-eps) b^eps F_{n-1}
    - a F_1 + abx F_0 - b F_0] / (abx); expected zero.
    """
    if n < 1:
        raise ValueError("needs n >= 1")
    acc = f_matrix(0)
    for k in range(1, n):
        acc = acc + f_matrix(k)
    eps = epsilon(n)
    numer = (f_matrix(n) * (A ** eps * B ** (1 - eps))
             + f_matrix(n - 1) * (A ** (1 - eps) * B ** eps)
             - f_matrix(1) * A
             + f_matrix(0) * (A * B * X)
             - f_matrix(0) * B)
    closed = numer * monomial_inverse(A * B * X)
    return acc - closed


def q_eval_iter(n: int, a0, b0, x0) -> Fraction:
    """Exact O(n) evaluation of q_n at a rational point.

    Runs the recurrence over integers by clearing denominators: with
    ax = p/c and bx = r/d in lowest terms, the scaled values satisfy
    V_m = p*V_{m-1} + c*d*V_{m-2} (m even), V_m = r*V_{m-1} + c*d*V_{m-2}
    (m odd), and q_n = V_n / (c^floor(n/2) d^floor((n-1)/2)).
    """
    if n < 0:
        raise ValueError("index must be a natural number")
    if n == 0:
        return Fraction(0)
    ax = Fraction(a0) * Fraction(x0)
    bx = Fraction(b0) * Fraction(x0)
    p, c = ax.numerator, ax.denominator
    r, d = bx.numerator, bx.denominator
    cd = c * d
    v_prev, v = 0, 1
    for m in range(2, n + 1):
        mult = r if m & 1 else p
        v_prev, v = v, mult * v + cd * v_prev
    return Fraction(v, c ** (n // 2) * d ** ((n - 1) // 2))


def q_eval_iter_mod(n: int, a0, b0, x0, modulus: int) -> int:
    """The same denominator-cleared recurrence, reduced mod an odd prime."""
    if n < 0:
        raise ValueError("index must be a natural number")
    if n == 0:
        return 0
    ax = Fraction(a0) * Fraction(x0)
    bx = Fraction(b0) * Fraction(x0)
    p, c = ax.numerator % modulus, ax.denominator
    r, d = bx.numerator % modulus, bx.denominator
    cd = (c * d) % modulus
    v_prev, v = 0, 1
    for m in range(2, n + 1):
        mult = r if m & 1 else p
        v_prev, v = v, (mult * v + cd * v_prev) % modulus
    den = pow(c, n // 2, modulus) * pow(d, (n - 1) // 2, modulus)
    return v * pow(den, -1, modulus) % modulus


def _q_fast_params(a0, b0, x0) -> LucasParams:
    return LucasParams(Fraction(a0) * Fraction(b0) * Fraction(x0) ** 2 + 2,
                       Fraction(1))


def q_fast(n: int, a0, b0, x0) -> Fraction:
    """Exact evaluation of q_n in O(log n) multiplications.

    Both parity classes of the sequence satisfy y_{m+1} = (abx^2+2) y_m
    - y_{m-1}, so with P = a0 b0 x0^2 + 2 the even terms are
    a0 x0 U_m(P, 1) and the odd ones U_{m+1}(P, 1) - U_m(P, 1).
    """
    if n < 0:
        raise ValueError("index must be a natural number")
    params = _q_fast_params(a0, b0, x0)
    m = n // 2
    u_m, u_next = lucas_u_pair(m, params)
    if n & 1:
        return u_next - u_m
    return Fraction(a0) * Fraction(x0) * u_m


def q_fast_mod(n: int, a0, b0, x0, modulus: int) -> int:
    """q_fast with all arithmetic modulo an odd prime."""
    if n < 0:
        raise ValueError("index must be a natural number")
    p_mod = ModInt.from_fraction(
        Fraction(a0) * Fraction(b0) * Fraction(x0) ** 2 + 2, modulus)
    params = LucasParams(p_mod, ModInt(1, modulus))
    m = n // 2
    u_m, u_next = lucas_u_pair(m, params)
    if n & 1:
        return (u_next - u_m).value
    ax = ModInt.from_fraction(Fraction(a0) * Fraction(x0), modulus)
    return (ax * u_m).value


def eval_matrix(mat: Mat2, a0, b0, x0) -> Mat2:
    """Substitute numbers into every LaurentPoly entry of a matrix."""
    a0, b0, x0 = Fraction(a0), Fraction(b0), Fraction(x0)
    return mat.map(lambda p: p.eval(a0, b0, x0))
