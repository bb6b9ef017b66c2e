"""Generating-function identities as truncated Laurent computations.

t is an ordinary ring variable, so "multiply the series by its
denominator and compare against the numerator" is a finite exact
calculation: the only care needed is where the truncation garbage
lives (above degree N for ascending series, below -N+4 for the
descending sum), and those windows are sliced off before asserting
zero.  The exponential generating function is the one identity checked
in floating point, since its algebraic content is exactly the
binomial-transform closed form already verified symbolically.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from . import sequences, transforms
from .report import CheckReport
from .ring import (
    ABX2,
    AX,
    BX,
    A,
    B,
    LaurentPoly,
    Mat2,
    T,
    TowerElem,
    U,
    V,
)
from .transforms import TransformKind

_B_OVER_A = sequences._B_OVER_A

OGF_KINDS = ("F-ogf", "b-ogf", "w-ogf")


@dataclass(frozen=True)
class GfSpec:
    """One generating function: series terms against numerator/denominator."""

    kind: str
    denominator: object
    numerator: Mat2

    def term(self, i: int) -> Mat2:
        if self.kind == "F-ogf":
            return sequences.f_matrix(i)
        if self.kind == "b-ogf":
            return transforms.transform(TransformKind.BINOMIAL, i).value
        return transforms.transform(TransformKind.K_BINOMIAL, i).value


def _lift(mat: Mat2, factor: TowerElem) -> Mat2:
    return mat.map(lambda p: factor * TowerElem.from_poly(p))


def gf_spec(kind: str) -> GfSpec:
    """Denominator and numerator of one stated generating function."""
    f0 = sequences.f_matrix(0)
    f1 = sequences.f_matrix(1)
    if kind == "F-ogf":
        den = LaurentPoly.one() - (ABX2 + 2) * T ** 2 + T ** 4
        num = Mat2(
            1 + BX * T - T ** 2,
            _B_OVER_A * T + BX * T ** 2 - _B_OVER_A * T ** 3,
            T + AX * T ** 2 - T ** 3,
            1 - (ABX2 + 1) * T ** 2 + BX * T ** 3,
        )
        return GfSpec(kind, den, num)
    if kind == "b-ogf":
        den = TowerElem(c1=LaurentPoly.one() - 2 * T, cuv=T ** 2 - T)
        num = _lift(f0, V) + (_lift(f1, U) - _lift(f0, V + U * BX)) * T
        return GfSpec(kind, den, num)
    if kind == "w-ogf":
        den = TowerElem(c1=LaurentPoly.one() - ABX2 * T,
                        cuv=ABX2 * T ** 2 - 2 * T)
        num = _lift(f0, V) + (_lift(f1, V * AX)
                              - _lift(f0, U * BX + V * ABX2)) * T
        return GfSpec(kind, den, num)
    raise ValueError(f"unknown generating function kind: {kind}")


def _slice_t(entry, lo: int | None, hi: int | None):
    if isinstance(entry, TowerElem):
        return entry.map(lambda p: p.t_slice(lo, hi))
    return entry.t_slice(lo, hi)


def ogf_residual(kind: str, n_max: int) -> Mat2:
    """denominator * (series truncated at t^N) - numerator, sliced to
    the degrees the identity constrains (<= N); expected zero."""
    if n_max < 4:
        raise ValueError("needs N >= 4: the numerator has degree up to 4")
    spec = gf_spec(kind)
    acc = spec.term(0)
    t_pow = LaurentPoly.one()
    for i in range(1, n_max + 1):
        t_pow = t_pow * T
        acc = acc + spec.term(i) * t_pow
    diff = acc * spec.denominator - spec.numerator
    return diff.map(lambda e: _slice_t(e, None, n_max))


def series_inverse(den: LaurentPoly, n_max: int) -> LaurentPoly:
    """Reciprocal of a unit-constant polynomial, truncated at t^N."""
    const = den.t_coefficient(0)
    if const != LaurentPoly.one():
        raise ValueError("denominator must have constant term 1")
    d = (LaurentPoly.one() - den).t_slice(None, n_max)
    acc = LaurentPoly.one()
    p = d
    while not p.is_zero:
        acc = acc + p
        p = (p * d).t_slice(1, n_max)
    return acc


def truncated_series_div(num: LaurentPoly, den: LaurentPoly,
                         n_max: int) -> LaurentPoly:
    return (num * series_inverse(den, n_max)).t_slice(None, n_max)


def ogf_roundtrip_residual(n_max: int) -> Mat2:
    """Reconstruct the series prefix by truncated division and subtract
    the directly computed terms; expected zero."""
    spec = gf_spec("F-ogf")
    inv = series_inverse(spec.denominator, n_max)
    recon = spec.numerator.map(lambda p: (p * inv).t_slice(None, n_max))
    acc = spec.term(0)
    t_pow = LaurentPoly.one()
    for i in range(1, n_max + 1):
        t_pow = t_pow * T
        acc = acc + spec.term(i) * t_pow
    return recon - acc


NEGSUM_DEN_READINGS = ("abx2", "ab")
NEGSUM_TAIL_READINGS = ("n-2", "n+2")


def negsum_numerator() -> Mat2:
    """The stated closed form of the descending infinite sum, without
    its leading factor t."""
    return Mat2(
        T ** 3 + BX * T ** 2 - T,
        _B_OVER_A * T ** 2 + BX * T - _B_OVER_A,
        T ** 2 + AX * T - 1,
        T ** 3 - (ABX2 + 1) * T + BX,
    )


def negsum_residual(variant: str, n_or_max: int, *,
                    den_reading: str = "abx2",
                    tail_reading: str = "n-2") -> Mat2:
    """Descending-power sum identities, exact in the Laurent ring.

    finite: denominator * sum_{k=0..n} F_k t^-k minus the stated
    eight-term closed form, as printed except where a reading argument
    corrects it; expected zero only under den_reading="abx2" (the
    denominator the ascending series uses) and tail_reading="n-2" (the
    exponent forced by the recurrence bookkeeping).  The other readings
    are kept runnable because the source prints them.

    infinite: denominator * sum_{k=0..N} F_k t^-k minus t times the
    stated numerator matrix, sliced to t-exponents >= -N+4; the four
    boundary monomials of the truncated tail sit at exponents -N..-N+3
    and are discarded.  Expected zero.
    """
    if variant == "finite":
        n = n_or_max
        if n < 2:
            raise ValueError("needs n >= 2: the closed form references "
                             "indices n-1 through n+2")
        if den_reading not in NEGSUM_DEN_READINGS:
            raise ValueError(f"unknown denominator reading: {den_reading}")
        if tail_reading not in NEGSUM_TAIL_READINGS:
            raise ValueError(f"unknown tail exponent reading: {tail_reading}")
        if den_reading == "abx2":
            den = LaurentPoly.one() - (ABX2 + 2) * T ** 2 + T ** 4
        else:
            den = LaurentPoly.one() - (A * B + 2) * T ** 2 + T ** 4
        f = sequences.f_matrix
        acc = f(0)
        for k in range(1, n + 1):
            acc = acc + f(k) * LaurentPoly.monomial(1, 0, 0, 0, -k)
        tail_exp = -(n - 2) if tail_reading == "n-2" else -(n + 2)
        closed = (f(n) * LaurentPoly.monomial(1, 0, 0, 0, -n)
                  + f(n - 1) * LaurentPoly.monomial(1, 0, 0, 0, -(n - 1))
                  - f(n + 1) * LaurentPoly.monomial(1, 0, 0, 0, -(n - 3))
                  - f(n + 2) * LaurentPoly.monomial(1, 0, 0, 0, tail_exp)
                  + f(0) * T ** 4
                  + f(1) * T ** 3
                  - (f(0) * (ABX2 + 1) - f(1) * AX) * T ** 2
                  - (f(1) - f(0) * BX) * T)
        return acc * den - closed
    if variant == "infinite":
        n_max = n_or_max
        if n_max < 4:
            raise ValueError("needs N >= 4 so the residual window exists")
        den = LaurentPoly.one() - (ABX2 + 2) * T ** 2 + T ** 4
        f = sequences.f_matrix
        acc = f(0)
        for k in range(1, n_max + 1):
            acc = acc + f(k) * LaurentPoly.monomial(1, 0, 0, 0, -k)
        diff = acc * den - negsum_numerator() * T
        return diff.map(lambda e: e.t_slice(-n_max + 4, None))
    raise ValueError(f"unknown variant: {variant}")


def egf_numeric_check(samples: list, terms: int = 40,
                      tol: float = 1e-8) -> CheckReport:
    """Float comparison of the exponential generating function of the
    binomial transform against its two-exponential closed form.

    Entries are evaluated with u, v sent to the positive square roots,
    which is why every sample coordinate must be positive.
    """
    if terms < 20:
        raise ValueError("needs terms >= 20 for the partial sum to settle")
    for sample in samples:
        if any(Fraction(c) <= 0 for c in sample[:3]):
            raise ValueError("a, b, x sample coordinates must be positive")
    start = time.perf_counter()
    d_num = transforms.binet_base_constant()
    e_num = transforms.binet_companion_constant()
    worst = 0.0
    first_failure = None
    residual = None
    for idx, (a0, b0, x0, t0) in enumerate(samples):
        a0, b0, x0, t0 = (Fraction(c) for c in (a0, b0, x0, t0))
        tf = float(t0)
        lhs = [[0.0, 0.0], [0.0, 0.0]]
        fact = 1.0
        power = 1.0
        for n in range(terms + 1):
            if n:
                fact *= n
                power *= tf
            bn = transforms.transform(TransformKind.BINOMIAL, n).value
            scale = power / fact
            for r in range(2):
                for c in range(2):
                    entry = bn.entries()[2 * r + c]
                    lhs[r][c] += entry.eval_float(a0, b0, x0) * scale
        k = float(x0) * math.sqrt(float(a0) * float(b0))
        disc = math.sqrt(k * k + 4)
        r1 = (k + 2 - disc) / 2
        r2 = (k + 2 + disc) / 2
        e1, e2 = math.exp(r1 * tf), math.exp(r2 * tf)
        err = 0.0
        for r in range(2):
            for c in range(2):
                dv = d_num.entries()[2 * r + c].eval_float(a0, b0, x0)
                ev = e_num.entries()[2 * r + c].eval_float(a0, b0, x0)
                rhs = dv * (e2 - e1) / disc + ev * (e2 + e1)
                denom = max(abs(lhs[r][c]), abs(rhs), 1.0)
                err = max(err, abs(lhs[r][c] - rhs) / denom)
        worst = max(worst, err)
        if err > tol and first_failure is None:
            first_failure = idx
            residual = (f"sample {tuple(map(str, (a0, b0, x0, t0)))}: "
                        f"max relative error {err:.3e} exceeds {tol:.1e}")
    elapsed = (time.perf_counter() - start) * 1000.0
    range_ = f"samples={len(samples)},terms={terms}"
    if first_failure is None:
        return CheckReport.passed("egf", range_, elapsed,
                                  residual=f"max_rel_err={worst:.3e}")
    return CheckReport.failed("egf", range_, first_failure, residual, elapsed)
