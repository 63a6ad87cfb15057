"""Exact-rational JSON encoding helpers.

Rationals travel as "p/q" strings (plain integers for denominator 1) so
reports round-trip without any float loss.
"""

from __future__ import annotations

from fractions import Fraction


def frac_to_str(w: Fraction) -> str:
    w = Fraction(w)
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def frac_from_str(text: str) -> Fraction:
    return Fraction(text)


def opt_frac_to_str(w) -> "str | None":
    return None if w is None else frac_to_str(w)


def opt_frac_from_str(text) -> "Fraction | None":
    return None if text is None else Fraction(text)
