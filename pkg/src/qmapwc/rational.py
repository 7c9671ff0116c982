"""Canonical string form for exact rationals: "p/q" with q > 0, or "p"."""

from __future__ import annotations

from fractions import Fraction


def fmt(x) -> str:
    return str(Fraction(x))


def parse(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str) or "." in s or "e" in s.lower():
        raise ValueError(f"not a canonical rational string: {s!r}")
    return Fraction(s)
