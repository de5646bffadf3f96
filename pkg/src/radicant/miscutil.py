"""Small number-theory helpers shared across modules."""

from __future__ import annotations

from sympy import isprime


def primes_in_range(lo: int, hi: int) -> list:
    return [n for n in range(lo, hi) if isprime(n)]
