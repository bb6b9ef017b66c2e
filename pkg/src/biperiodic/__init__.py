"""Exact arithmetic for alternating-coefficient Fibonacci-type matrix
polynomials, their binomial transforms, and machine verification of the
identities that relate them."""

from __future__ import annotations

from .ring import (
    A,
    ABX2,
    AX,
    B,
    BX,
    K,
    LaurentPoly,
    Mat2,
    Rational,
    T,
    TowerElem,
    U,
    V,
    X,
    monomial_inverse,
)

__all__ = [
    "A", "ABX2", "AX", "B", "BX", "K", "LaurentPoly", "Mat2", "Rational",
    "T", "TowerElem", "U", "V", "X", "monomial_inverse",
]

__version__ = "0.1.0"
