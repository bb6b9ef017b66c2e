"""Exact arithmetic tower used by every other module.

Four layers, all immutable and safe to share between threads:

* rationals -- ``fractions.Fraction``, re-exported as :data:`Rational`;
* :class:`LaurentPoly` -- polynomials in the variables ``a, b, x, t``
  with integer exponents of either sign and rational coefficients;
* :class:`TowerElem` -- the quadratic extension adjoining ``u`` and ``v``
  with ``u**2 = a*x`` and ``v**2 = b*x``, stored on the basis
  ``{1, u, v, u*v}`` (the product ``u*v`` is written ``w`` and plays the
  role of ``x*sqrt(a*b)``);
* :class:`Mat2` -- 2x2 matrices over any of the rings above.

No radical is ever evaluated: square roots exist only structurally via
the relations of the tower.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Mapping

Rational = Fraction

_VARS = ("a", "b", "x", "t")

# exponent tuples are (e_a, e_b, e_x, e_t)
Exponents = tuple[int, int, int, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _term_order_key(exps: Exponents) -> tuple[int, int, int, int]:
    ea, eb, ex, et = exps
    return (et, ea, eb, ex)


def _render_term(coeff: Fraction, exps: Exponents) -> str:
    factors = [
        name if e == 1 else f"{name}^{e}"
        for name, e in zip(_VARS, exps)
        if e != 0
    ]
    if not factors:
        return str(coeff)
    if coeff != 1:
        factors.insert(0, str(coeff))
    return "*".join(factors)


class LaurentPoly:
    """Laurent polynomial in ``a, b, x, t`` over the rationals.

    Internally a mapping from exponent tuples ``(e_a, e_b, e_x, e_t)``
    to nonzero rational coefficients.  Zero coefficients are never
    stored, so structural equality is semantic equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, Fraction] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(exps)] = coeff  # type: ignore[index]
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({(0, 0, 0, 0): _ONE})

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({(0, 0, 0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, coeff, ea: int = 0, eb: int = 0, ex: int = 0,
                 et: int = 0) -> LaurentPoly:
        return cls({(ea, eb, ex, et): Fraction(coeff)})

    @classmethod
    def var(cls, name: str) -> LaurentPoly:
        exps = [0, 0, 0, 0]
        exps[_VARS.index(name)] = 1
        return cls({tuple(exps): _ONE})  # type: ignore[arg-type]

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- coercion ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return None

    # -- ring operations -----------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            total = terms.get(exps, _ZERO) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {exps: -coeff for exps, coeff in self._terms.items()}
        return out

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = (e1[0] + e2[0], e1[1] + e2[1],
                        e1[2] + e2[2], e1[3] + e2[3])
                total = terms.get(exps, _ZERO) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return monomial_inverse(self ** (-n))
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    # -- evaluation and t-manipulation ----------------------------------

    def eval(self, a0, b0, x0, t0=0) -> Fraction:
        """Exact substitution.  Zero at a negative exponent is rejected."""
        point = (Fraction(a0), Fraction(b0), Fraction(x0), Fraction(t0))
        total = _ZERO
        for exps, coeff in self._terms.items():
            value = coeff
            for base, e in zip(point, exps):
                if e == 0:
                    continue
                if base == 0 and e < 0:
                    raise ZeroDivisionError(
                        "zero substituted into a negative exponent")
                value *= base ** e
            total += value
        return total

    def t_slice(self, lo: int | None = None,
                hi: int | None = None) -> LaurentPoly:
        """Keep only monomials whose t-exponent lies in [lo, hi]."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {
            exps: coeff for exps, coeff in self._terms.items()
            if (lo is None or exps[3] >= lo) and (hi is None or exps[3] <= hi)
        }
        return out

    def t_coefficient(self, j: int) -> LaurentPoly:
        """Coefficient of t**j, as a Laurent polynomial in a, b, x."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {
            (ea, eb, ex, 0): coeff
            for (ea, eb, ex, et), coeff in self._terms.items() if et == j
        }
        return out

    def t_exponents(self) -> list[int]:
        return sorted({exps[3] for exps in self._terms})

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps in sorted(self._terms, key=_term_order_key, reverse=True):
            coeff = self._terms[exps]
            body = _render_term(abs(coeff), exps)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def monomial_inverse(p: LaurentPoly) -> LaurentPoly:
    """Invert a single-term polynomial by negating its exponents.

    Only monomials have an inverse inside the Laurent ring; anything
    else is rejected.
    """
    if p.is_zero:
        raise ZeroDivisionError("zero has no inverse")
    if not p.is_monomial:
        raise ValueError(f"not a monomial, cannot invert: {p}")
    ((exps, coeff),) = p.terms().items()
    ea, eb, ex, et = exps
    return LaurentPoly.monomial(1 / coeff, -ea, -eb, -ex, -et)


A = LaurentPoly.var("a")
B = LaurentPoly.var("b")
X = LaurentPoly.var("x")
T = LaurentPoly.var("t")

AX = A * X
BX = B * X
ABX2 = A * B * X * X


class TowerElem:
    """Element of the extension LaurentPoly[u, v] / (u**2 - a*x, v**2 - b*x).

    Coordinates c1, cu, cv, cuv on the basis {1, u, v, w} with w = u*v.
    The defining relations give the multiplication table

        u*u = a*x      v*v = b*x      u*v = w
        w*u = a*x*v    w*v = b*x*u    w*w = a*b*x**2

    so products never leave the four-dimensional module.  Elements
    supported on {1, w} form a subring (the even sector); even times
    odd ({u, v}) stays odd, odd times odd lands even.
    """

    __slots__ = ("c1", "cu", "cv", "cuv")

    def __init__(self, c1=None, cu=None, cv=None, cuv=None):
        zero = LaurentPoly.zero()
        self.c1 = zero if c1 is None else c1
        self.cu = zero if cu is None else cu
        self.cv = zero if cv is None else cv
        self.cuv = zero if cuv is None else cuv

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> TowerElem:
        return cls()

    @classmethod
    def one(cls) -> TowerElem:
        return cls(c1=LaurentPoly.one())

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> TowerElem:
        return cls(c1=p)

    @classmethod
    def u(cls) -> TowerElem:
        return cls(cu=LaurentPoly.one())

    @classmethod
    def v(cls) -> TowerElem:
        return cls(cv=LaurentPoly.one())

    @classmethod
    def k(cls) -> TowerElem:
        """The element w = u*v, i.e. x*sqrt(a*b); satisfies k**2 = a*b*x**2."""
        return cls(cuv=LaurentPoly.one())

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> TowerElem | None:
        if isinstance(other, TowerElem):
            return other
        if isinstance(other, LaurentPoly):
            return TowerElem(c1=other)
        if isinstance(other, (int, Fraction)):
            return TowerElem(c1=LaurentPoly.const(other))
        return None

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return (self.c1.is_zero and self.cu.is_zero
                and self.cv.is_zero and self.cuv.is_zero)

    @property
    def is_even_sector(self) -> bool:
        """Supported on {1, w} only."""
        return self.cu.is_zero and self.cv.is_zero

    @property
    def is_odd_sector(self) -> bool:
        """Supported on {u, v} only."""
        return self.c1.is_zero and self.cuv.is_zero

    def coords(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return (self.c1, self.cu, self.cv, self.cuv)

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> TowerElem:
        return TowerElem(fn(self.c1), fn(self.cu), fn(self.cv), fn(self.cuv))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> TowerElem:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TowerElem(self.c1 + other.c1, self.cu + other.cu,
                         self.cv + other.cv, self.cuv + other.cuv)

    __radd__ = __add__

    def __neg__(self) -> TowerElem:
        return TowerElem(-self.c1, -self.cu, -self.cv, -self.cuv)

    def __sub__(self, other) -> TowerElem:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> TowerElem:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> TowerElem:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p1, pu, pv, pw = self.coords()
        q1, qu, qv, qw = other.coords()
        return TowerElem(
            p1 * q1 + AX * (pu * qu) + BX * (pv * qv) + ABX2 * (pw * qw),
            p1 * qu + pu * q1 + BX * (pv * qw + pw * qv),
            p1 * qv + pv * q1 + AX * (pu * qw + pw * qu),
            p1 * qw + pw * q1 + pu * qv + pv * qu,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TowerElem:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = TowerElem.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.c1 == other.c1 and self.cu == other.cu
                and self.cv == other.cv and self.cuv == other.cuv)

    __hash__ = None  # type: ignore[assignment]

    # -- evaluation -------------------------------------------------------

    def eval_coords(self, a0, b0, x0, t0=0) -> tuple[Fraction, ...]:
        """Substitute a, b, x, t; coordinates stay exact rationals."""
        return tuple(c.eval(a0, b0, x0, t0) for c in self.coords())

    def eval_float(self, a0, b0, x0, t0=0) -> float:
        """Numeric value with u, v mapped to the positive real roots.

        Requires a0*x0 >= 0 and b0*x0 >= 0.
        """
        import math

        ru = math.sqrt(Fraction(a0) * Fraction(x0))
        rv = math.sqrt(Fraction(b0) * Fraction(x0))
        c1, cu, cv, cuv = self.eval_coords(a0, b0, x0, t0)
        return float(c1) + float(cu) * ru + float(cv) * rv + float(cuv) * ru * rv

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        return (f"({self.c1}) + ({self.cu})*u + ({self.cv})*v"
                f" + ({self.cuv})*w")

    def __repr__(self) -> str:
        return f"TowerElem({self})"


U = TowerElem.u()
V = TowerElem.v()
K = TowerElem.k()


class Mat2:
    """2x2 matrix over a commutative ring (LaurentPoly, TowerElem, ...).

    Entries only need +, -, * among themselves; scalars multiply in
    from either side entrywise.
    """

    __slots__ = ("e11", "e12", "e21", "e22")

    def __init__(self, e11, e12, e21, e22):
        self.e11 = e11
        self.e12 = e12
        self.e21 = e21
        self.e22 = e22

    @classmethod
    def identity(cls, one, zero) -> Mat2:
        return cls(one, zero, zero, one)

    def entries(self) -> tuple:
        return (self.e11, self.e12, self.e21, self.e22)

    def map(self, fn: Callable) -> Mat2:
        return Mat2(fn(self.e11), fn(self.e12), fn(self.e21), fn(self.e22))

    def __add__(self, other) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.e11 + other.e11, self.e12 + other.e12,
                    self.e21 + other.e21, self.e22 + other.e22)

    def __sub__(self, other) -> Mat2:
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.e11 - other.e11, self.e12 - other.e12,
                    self.e21 - other.e21, self.e22 - other.e22)

    def __neg__(self) -> Mat2:
        return Mat2(-self.e11, -self.e12, -self.e21, -self.e22)

    def __mul__(self, other) -> Mat2:
        if isinstance(other, Mat2):
            return Mat2(
                self.e11 * other.e11 + self.e12 * other.e21,
                self.e11 * other.e12 + self.e12 * other.e22,
                self.e21 * other.e11 + self.e22 * other.e21,
                self.e21 * other.e12 + self.e22 * other.e22,
            )
        return Mat2(self.e11 * other, self.e12 * other,
                    self.e21 * other, self.e22 * other)

    def __rmul__(self, other) -> Mat2:
        # scalars only; Mat2 * Mat2 is handled by __mul__
        return Mat2(other * self.e11, other * self.e12,
                    other * self.e21, other * self.e22)

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.e11 == other.e11 and self.e12 == other.e12
                and self.e21 == other.e21 and self.e22 == other.e22)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries())

    def __str__(self) -> str:
        return f"[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]"

    def __repr__(self) -> str:
        return f"Mat2({self})"
