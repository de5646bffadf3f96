"""Prime fields F_p and small extensions F_{p^k}.

Elements carry their coefficient vector (constant term first) plus a
reference to the field context.  Everything is immutable, so values can be
shared freely.  The canonical ordering used everywhere downstream is the
lexicographic order on coefficient tuples.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from sympy import factorint, isprime

from .errors import ContextMismatch, NoRootError, RadicantError

MAX_FIELD_BITS = 63  # q = p^k must stay in a machine-word range


class FieldCtx:
    """Descriptor of F_{p^k}: characteristic, degree and defining polynomial.

    The defining polynomial is monic of degree k, stored as an ascending
    coefficient tuple of length k+1.  For k = 1 the convention is x - 0,
    i.e. (0, 1).
    """

    __slots__ = ("p", "k", "modulus", "q", "_key")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(c % p for c in modulus[:-1]) + (1,)
        self.q = p**k
        self._key = (p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    # -- element construction -------------------------------------------

    def el(self, value) -> "FieldElement":
        """Coerce an int or coefficient sequence into a field element."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ContextMismatch(f"element of {value.ctx} used in {self}")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, coeffs)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise ValueError(f"coefficient vector longer than degree {self.k}")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    @property
    def zero(self) -> "FieldElement":
        return self.el(0)

    @property
    def one(self) -> "FieldElement":
        return self.el(1)

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical (coefficient-lex) order."""
        def rec(prefix):
            if len(prefix) == self.k:
                yield FieldElement(self, tuple(prefix))
                return
            for c in range(self.p):
                yield from rec(prefix + [c])

        yield from rec([])

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        for x in self.elements():
            if not x.is_zero():
                yield x

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def embed(self, elem: "FieldElement") -> "FieldElement":
        """Embed an element of the prime subfield F_p into this field."""
        if elem.ctx == self:
            return elem
        if elem.ctx.k != 1 or elem.ctx.p != self.p:
            raise ContextMismatch("only prime-subfield embeddings are supported")
        return self.el(elem.coeffs[0])

    def descend(self, elem: "FieldElement", base: "FieldCtx") -> "FieldElement":
        """Map an element with only a constant coefficient down to F_p."""
        if elem.ctx != self:
            raise ContextMismatch("element does not belong to this field")
        if base.p != self.p or base.k != 1:
            raise ContextMismatch("descent target must be the prime subfield")
        if any(c != 0 for c in elem.coeffs[1:]):
            raise ValueError(f"{elem!r} is not in the prime subfield")
        return base.el(elem.coeffs[0])


class FieldElement:
    """A single element of a FieldCtx; supports the usual operators."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- helpers ---------------------------------------------------------

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.ctx.el(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch(f"cannot mix {self.ctx} and {other.ctx}")
        return other

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_int(self) -> int:
        """Value as an int; only valid over a prime field."""
        if self.ctx.k != 1:
            raise ValueError("to_int is only defined over prime fields")
        return self.coeffs[0]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return self.ctx.el(other) - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p, k = self.ctx.p, self.ctx.k
        if k == 1:
            return FieldElement(self.ctx, ((self.coeffs[0] * other.coeffs[0]) % p,))
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] += a * b
        mod = self.ctx.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k):
                    prod[d - k + j] -= c * mod[j]
            prod[d] = 0
        return FieldElement(self.ctx, tuple(c % p for c in prod[:k]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        p, k = self.ctx.p, self.ctx.k
        if k == 1:
            return FieldElement(self.ctx, (pow(self.coeffs[0], -1, p),))
        # extended Euclid in F_p[x] against the defining polynomial
        r0, r1 = list(self.ctx.modulus), list(self.coeffs)
        s0, s1 = [0], [1]
        while any(c % p for c in r1):
            q, r = _poly_divmod_int(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_int(s0, _poly_mul_int(q, s1, p), p)
        # r0 is now the gcd, a nonzero constant
        c_inv = pow(_poly_trim_int(r0, p)[0], -1, p)
        inv = [(c * c_inv) % p for c in s0]
        inv = inv[:k] + [0] * max(0, k - len(inv))
        return FieldElement(self.ctx, tuple(inv[:k]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx.el(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ctx.one
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.el(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx._key, self.coeffs))

    def __repr__(self):
        if self.ctx.k == 1:
            return f"{self.coeffs[0]}"
        return f"{list(self.coeffs)}"


# ---------------------------------------------------------------------------
# int-coefficient polynomial helpers (used for inversion and make_field)
# ---------------------------------------------------------------------------

def _poly_trim_int(a, p):
    a = [c % p for c in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_sub_int(a, b, p):
    n = max(len(a), len(b))
    return [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(n)
    ]


def _poly_mul_int(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_divmod_int(a, b, p):
    a = _poly_trim_int(a, p)
    b = _poly_trim_int(b, p)
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(1, len(a) - len(b) + 1)
    r = a[:]
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b) and any(c for c in r):
        r = _poly_trim_int(r, p)
        if len(r) < len(b):
            break
        coef = (r[-1] * inv_lead) % p
        deg = len(r) - len(b)
        q[deg] = coef
        for i, c in enumerate(b):
            r[deg + i] = (r[deg + i] - coef * c) % p
        r = _poly_trim_int(r, p)
    return _poly_trim_int(q, p), _poly_trim_int(r, p)


def _poly_powmod_int(base, exponent, mod, p):
    result = [1]
    b = _poly_divmod_int(base, mod, p)[1]
    e = exponent
    while e:
        if e & 1:
            result = _poly_divmod_int(_poly_mul_int(result, b, p), mod, p)[1]
        b = _poly_divmod_int(_poly_mul_int(b, b, p), mod, p)[1]
        e >>= 1
    return result


def _poly_gcd_int(a, b, p):
    a, b = _poly_trim_int(a, p), _poly_trim_int(b, p)
    while b != [0]:
        a, b = b, _poly_divmod_int(a, b, p)[1]
    return a


def _is_irreducible_int(f, p) -> bool:
    """Rabin's irreducibility test for a monic f in F_p[x]."""
    f = _poly_trim_int(f, p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for r in sorted(set(factorint(n))):
        h = _poly_sub_int(_poly_powmod_int(x, p ** (n // r), f, p), x, p)
        g = _poly_gcd_int(h, f, p)
        if len(_poly_trim_int(g, p)) > 1:
            return False
    h = _poly_sub_int(_poly_powmod_int(x, p**n, f, p), x, p)
    return _poly_trim_int(h, p) == [0]


def _smallest_irreducible(p: int, k: int):
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficient tuples (c0, ..., c_{k-1}) are scanned in lexicographic
    order with the constant term most significant, so the result is
    reproducible across runs and platforms.
    """
    if k == 1:
        return (0, 1)

    def rec(prefix):
        if len(prefix) == k:
            f = list(prefix) + [1]
            if _is_irreducible_int(f, p):
                return tuple(f)
            return None
        for c in range(p):
            found = rec(prefix + [c])
            if found is not None:
                return found
        return None

    found = rec([])
    if found is None:  # cannot happen: irreducibles exist in every degree
        raise RadicantError(f"no irreducible polynomial of degree {k} over F_{p}")
    return found


# ---------------------------------------------------------------------------
# public constructors and operations
# ---------------------------------------------------------------------------

def make_field(p: int, k: int = 1) -> FieldCtx:
    """Build F_{p^k} with a deterministically chosen defining polynomial."""
    if p < 5 or not isprime(p):
        raise ValueError(f"{p} is not a prime >= 5")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k >= 1 << MAX_FIELD_BITS:
        raise ValueError(f"field order p^k = {p}^{k} exceeds the integer width")
    return FieldCtx(p, k, _smallest_irreducible(p, k))


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Functional form of the four basic operations (used by the CLI)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def multiplicative_order(a: FieldElement) -> int:
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    n = a.ctx.q - 1
    order = n
    for r in factorint(n):
        while order % r == 0 and (a ** (order // r)) == a.ctx.one:
            order //= r
    return order


def _roots_of_unity(ctx: FieldCtx, r: int) -> list:
    """All r-th roots of unity, for prime r dividing q - 1."""
    n = ctx.q - 1
    for z in ctx.nonzero_elements():
        w = z ** (n // r)
        if w != ctx.one:
            return sorted(
                (w**i for i in range(r)), key=lambda e: e.coeffs
            )
    raise RadicantError("no generator of the root-of-unity group found")


def _prime_roots(a: FieldElement, r: int) -> list:
    """All solutions of x^r = a for prime r (possibly empty)."""
    ctx = a.ctx
    n = ctx.q - 1
    if n % r != 0:
        # x -> x^r is a bijection
        return [a ** pow(r, -1, n)]
    if a ** (n // r) != ctx.one:
        return []
    # Adleman-Manders-Miller style lifting: write n = r^t * w with r ∤ w
    t, w = 0, n
    while w % r == 0:
        t += 1
        w //= r
    x0 = a ** pow(r, -1, w)
    # x0^r = a * u with u in the Sylow r-subgroup; fix up by brute force there
    sylow_order = r**t
    if sylow_order > 10**6:
        raise RadicantError("Sylow subgroup too large for root extraction")
    gen = None
    for z in ctx.nonzero_elements():
        cand = z**w
        if cand ** (sylow_order // r) != ctx.one:
            gen = cand
            break
    if gen is None:
        raise RadicantError("failed to find a Sylow generator")
    g = ctx.one
    root = None
    for _ in range(sylow_order):
        if (x0 * g) ** r == a:
            root = x0 * g
            break
        g = g * gen
    if root is None:
        return []
    zetas = _roots_of_unity(ctx, r)
    return [root * z for z in zetas]


def nth_roots(rho: FieldElement, n: int) -> list:
    """All solutions of x^n = rho, sorted in canonical coefficient order.

    The result has gcd(n, q-1) entries when rho is an n-th power and is
    empty otherwise.  rho = 0 is rejected: upstream it signals a vanishing
    discriminant.
    """
    if n < 1:
        raise ValueError("root degree must be positive")
    if rho.is_zero():
        raise NoRootError("zero radicand (degenerate instance)")
    roots = {rho}
    for r, e in sorted(factorint(n).items()):
        for _ in range(e):
            roots = {x for a in roots for x in _prime_roots(a, r)}
            if not roots:
                return []
    expected = math.gcd(n, rho.ctx.q - 1)
    out = sorted(roots, key=lambda e: e.coeffs)
    assert len(out) in (0, expected), "root count does not match gcd(n, q-1)"
    return out
