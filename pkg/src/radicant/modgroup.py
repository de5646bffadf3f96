"""Exact computation with congruence subgroups through their finite images.

Everything happens inside SL2(Z/M): the infinite groups are represented by
the congruence conditions defining them, and reduction mod M is surjective
onto the matrices satisfying those conditions, so orders, indices and
normality can be decided exhaustively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import EnumerationBound

SL2_ENUM_BOUND = 50  # default ceiling for the modulus M

KINDS = ("full", "gamma", "gamma1", "gamma0", "gamma1_rescaled")


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over Z/M with determinant 1."""

    a: int
    b: int
    c: int
    d: int
    M: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.M)
        object.__setattr__(self, "b", self.b % self.M)
        object.__setattr__(self, "c", self.c % self.M)
        object.__setattr__(self, "d", self.d % self.M)
        if self.det() != 1 % self.M:
            raise ValueError("matrix does not have determinant 1")

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.M

    def __mul__(self, other: "Mat2") -> "Mat2":
        if self.M != other.M:
            raise ValueError("modulus mismatch")
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.M,
        )

    def inv(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a, self.M)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


def identity(M: int) -> Mat2:
    return Mat2(1, 0, 0, 1, M)


def rescale_matrix(N: int, M: Optional[int] = None) -> Mat2:
    """The matrix [[1-N, -1], [N^2, 1+N]] realizing the point-rescaling
    operator on level-N^2 structures."""
    return Mat2(1 - N, -1, N * N, 1 + N, M if M is not None else N * N)


@dataclass(frozen=True)
class SubgroupSpec:
    """A congruence subgroup viewed inside SL2(Z/M)."""

    kind: str
    N: int
    M: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "gamma1_rescaled":
            if self.M != self.N * self.N:
                raise ValueError("the rescaled subgroup lives at modulus N^2")
        elif self.kind != "full" and self.M % self.N != 0:
            raise ValueError("level must divide the ambient modulus")


def member(m: Mat2, s: SubgroupSpec) -> bool:
    """Exact congruence-condition test."""
    if m.M != s.M:
        raise ValueError("matrix modulus does not match the subgroup spec")
    a, b, c, d = m.entries()
    N = s.N
    if s.kind == "full":
        return True
    if s.kind == "gamma":
        return a % N == 1 and d % N == 1 and b % N == 0 and c % N == 0
    if s.kind == "gamma1":
        return a % N == 1 and d % N == 1 and c % N == 0
    if s.kind == "gamma0":
        return c % N == 0
    # gamma1_rescaled: c = 0 mod N^2, a = d = 1 mod N
    return c % (N * N) == 0 and a % N == 1 and d % N == 1


def _solve_d(a: int, rhs: int, M: int) -> list:
    """All d with a*d = rhs (mod M)."""
    g = math.gcd(a, M)
    if rhs % g != 0:
        return []
    Mg = M // g
    d0 = (rhs // g) * pow(a // g, -1, Mg) % Mg
    return [d0 + j * Mg for j in range(g)]


def sl2_elements(M: int, bound: int = SL2_ENUM_BOUND) -> Iterator[tuple]:
    """All (a, b, c, d) in SL2(Z/M), streamed."""
    if M > bound:
        raise EnumerationBound(f"modulus {M} exceeds the enumeration bound {bound}")
    for a in range(M):
        for b in range(M):
            for c in range(M):
                rhs = (1 + b * c) % M
                for d in _solve_d(a, rhs, M):
                    yield (a, b, c, d)


def sl2_count(M: int, bound: int = SL2_ENUM_BOUND) -> int:
    """|SL2(Z/M)| by exhaustive enumeration."""
    return sum(1 for _ in sl2_elements(M, bound))


def sl2_count_formula(M: int) -> int:
    """The classical closed form M^3 prod_{p | M} (1 - p^-2)."""
    from sympy import factorint

    n = M**3
    for p in factorint(M):
        n = n // (p * p) * (p * p - 1)
    return n


def subgroup_elements(s: SubgroupSpec, bound: int = SL2_ENUM_BOUND) -> list:
    """All matrices of the finite image, as Mat2 values."""
    out = []
    for a, b, c, d in sl2_elements(s.M, bound):
        m = Mat2(a, b, c, d, s.M)
        if member(m, s):
            out.append(m)
    return out


def subgroup_order(s: SubgroupSpec, bound: int = SL2_ENUM_BOUND) -> int:
    return len(subgroup_elements(s, bound))


def index(sub: SubgroupSpec, sup: SubgroupSpec, bound: int = SL2_ENUM_BOUND) -> int:
    """Index of sub in sup over the common finite image."""
    if sub.M != sup.M:
        raise ValueError("index needs a common ambient modulus")
    sub_elems = subgroup_elements(sub, bound)
    for m in sub_elems:
        if not member(m, sup):
            raise ValueError("first argument is not contained in the second")
    sup_order = subgroup_order(sup, bound)
    if sup_order % len(sub_elems) != 0:
        raise ValueError("orders are incompatible")
    return sup_order // len(sub_elems)


@dataclass(frozen=True)
class NormalityReport:
    normal: bool
    witness: Optional[tuple]  # (g, h, ghg^-1) on failure


def is_normal(sub: SubgroupSpec, sup: SubgroupSpec, bound: int = SL2_ENUM_BOUND) -> NormalityReport:
    """Exhaustive conjugation test of sub inside sup, with witness."""
    if sub.M != sup.M:
        raise ValueError("normality needs a common ambient modulus")
    sub_elems = subgroup_elements(sub, bound)
    sub_set = {m.entries() for m in sub_elems}
    for m in sub_elems:
        if not member(m, sup):
            raise ValueError("first argument is not contained in the second")
    for g_t in sl2_elements(sup.M, bound):
        g = Mat2(*g_t, sup.M)
        if not member(g, sup):
            continue
        gi = g.inv()
        for h in sub_elems:
            conj = g * h * gi
            if conj.entries() not in sub_set:
                return NormalityReport(False, (g, h, conj))
    return NormalityReport(True, None)


def conjugation_closed_form(N: int, b: int) -> Mat2:
    """Image of the unipotent [[1, b], [0, 1]] under conjugation by the
    rescaling matrix, reduced mod N^2: equals [[1, b(2N+1)], [0, 1]]."""
    M = N * N
    return Mat2(1, (b * (2 * N + 1)) % M, 0, 1, M)
