"""Degree-5 radical steps, chain drivers, and the Velu-based reference oracle.

A radical step turns the normal-form parameter b into its successor b'
through a fifth root of the radicand, with no torsion-point sampling.  The
reference oracle recomputes the set of legal successors from first
principles (quotient isogeny, dual, distinguished points) and is what the
closed-form step is tested against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .curve import (
    Point,
    TateParams,
    WeierstrassCurve,
    degree5_curve,
    normal_form_discriminant,
    to_tate_normal,
)
from .errors import DegenerateParams, DegenerateStep, NoRootError
from .field import FieldCtx, FieldElement, nth_roots
from .isogeny import distinguished_points, velu
from .pairing import radicand


@dataclass(frozen=True)
class RadicalStep:
    """One degree-5 step: input b, chosen fifth root, output b'."""

    b: FieldElement
    alpha: FieldElement
    b_next: FieldElement
    root_index: int


@dataclass(frozen=True)
class ChainResult:
    """A full chain of successive normal-form parameters."""

    b_values: tuple
    ctx: FieldCtx
    policy: str

    def as_json(self) -> str:
        payload = {
            "p": self.ctx.p,
            "k": self.ctx.k,
            "policy": self.policy,
            "chain": [list(b.coeffs) if self.ctx.k > 1 else b.to_int()
                      for b in self.b_values],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _check_params(b: FieldElement):
    if b.is_zero():
        raise DegenerateParams("b = 0 gives a singular curve")
    if normal_form_discriminant(b, b).is_zero():
        raise DegenerateParams("discriminant vanishes for this b")


def _pick_root(roots: list, policy: str) -> tuple:
    if not roots:
        raise NoRootError("the radicand has no fifth root in this field")
    if policy == "unique":
        if len(roots) != 1:
            raise NoRootError(
                "policy 'unique' needs gcd(5, q-1) = 1; "
                f"found {len(roots)} roots"
            )
        return roots[0], 0
    if policy == "canonical":
        return roots[0], 0
    if policy.startswith("index:"):
        i = int(policy.split(":", 1)[1])
        if not 0 <= i < len(roots):
            raise NoRootError(f"root index {i} out of range ({len(roots)} roots)")
        return roots[i], i
    raise ValueError(f"unknown root policy {policy!r}")


def step_from_root(b: FieldElement, alpha: FieldElement, root_index: int = 0) -> RadicalStep:
    """Evaluate the closed-form successor parameter at a chosen root."""
    num = alpha**4 + 3 * alpha**3 + 4 * alpha * alpha + 2 * alpha + 1
    den = alpha**4 - 2 * alpha**3 + 4 * alpha * alpha - 3 * alpha + 1
    if den.is_zero():
        raise DegenerateStep("pole of the step expression", alpha=alpha)
    b_next = alpha * num / den
    if normal_form_discriminant(b_next, b_next).is_zero():
        raise DegenerateStep("successor parameter is degenerate", alpha=alpha)
    return RadicalStep(b, alpha, b_next, root_index)


def radical_step_5(b: FieldElement, policy: str = "canonical") -> RadicalStep:
    """One radical step of degree 5 under the given root-selection policy."""
    _check_params(b)
    rho = radicand(TateParams(b, b, 5))
    roots = nth_roots(rho, 5)
    alpha, idx = _pick_root(roots, policy)
    return step_from_root(b, alpha, idx)


def distinguished_point_5(b: FieldElement, alpha: FieldElement) -> Point:
    """Closed-form order-5 point on the quotient curve, for a fifth root of b."""
    _check_params(b)
    if not alpha**5 == b:
        raise ValueError("alpha is not a fifth root of b")
    x0 = (
        5 * alpha**4
        + (b - 3) * alpha**3
        + (b + 2) * alpha * alpha
        + (2 * b - 1) * alpha
        - 2 * b
    )
    y0 = (
        5 * alpha**4
        + (b - 3) * alpha**3
        + (b * b - 10 * b + 1) * alpha * alpha
        + (13 * b - b * b) * alpha
        - b * b
        - 11 * b
    )
    return Point(x0, y0)


def radical_chain(b0: FieldElement, steps: int, policy: str = "canonical") -> ChainResult:
    """Iterate the radical step; deterministic given (b0, policy)."""
    _check_params(b0)
    values = [b0]
    b = b0
    for i in range(steps):
        try:
            step = radical_step_5(b, policy)
        except (DegenerateParams, DegenerateStep, NoRootError) as exc:
            raise type(exc)(f"step {i}: {exc}") from exc
        b = step.b_next
        values.append(b)
    return ChainResult(tuple(values), b0.ctx, policy)


def velu_reference_step(b: FieldElement) -> list:
    """All legal successor parameters, computed without radical formulas.

    Quotients by the marked order-5 subgroup, finds every distinguished
    point on the other side, and reads off the normal-form parameter of
    each resulting pair.  Sorted canonically.
    """
    _check_params(b)
    E = degree5_curve(b)
    P = Point(b.ctx.zero, b.ctx.zero)
    phi = velu(E, P)
    out = []
    for P2 in distinguished_points(phi):
        tp, _ = to_tate_normal(phi.codomain if P2.x.ctx == b.ctx
                               else _lift_curve(phi.codomain, P2.x.ctx), P2, 5)
        out.append(tp.b)
    return sorted(set(out), key=lambda e: e.coeffs)


def _lift_curve(E: WeierstrassCurve, ext) -> WeierstrassCurve:
    from .curve import base_change

    return base_change(E, ext)


def radical_poly_irreducible(rho: FieldElement, n: int, ctx: FieldCtx) -> bool:
    """Is x^n - rho irreducible?  For prime n this holds exactly when n
    divides q - 1 and rho is not an n-th power."""
    from sympy import isprime

    if not isprime(n):
        raise ValueError("only prime radical degrees are supported")
    rho = ctx.el(rho) if not isinstance(rho, FieldElement) else rho
    if rho.is_zero():
        raise ValueError("zero radicand")
    q = ctx.q
    if (q - 1) % n != 0:
        return False
    return rho ** ((q - 1) // n) != ctx.one


def radical_poly_irreducible_oracle(rho: FieldElement, n: int, ctx: FieldCtx) -> bool:
    """Independent route: run the generic irreducibility test on x^n - rho."""
    from . import poly

    f = [-rho] + [ctx.zero] * (n - 1) + [ctx.one]
    return poly.is_irreducible(f, ctx)


# ---------------------------------------------------------------------------
# the sampling-based chain (benchmark comparand)
# ---------------------------------------------------------------------------

def velu_chain(b0: FieldElement, steps: int) -> ChainResult:
    """Chain driver that finds each successor through torsion sampling.

    Must produce the same parameter sequence as the radical chain under
    policy 'unique' (fields with gcd(5, q-1) = 1), at the cost of sampling
    torsion points on every step.
    """
    _check_params(b0)
    if (b0.ctx.q - 1) % 5 == 0:
        raise ValueError("sampling chain comparand requires gcd(5, q-1) = 1")
    values = [b0]
    b = b0
    for _ in range(steps):
        E = degree5_curve(b)
        P = Point(b.ctx.zero, b.ctx.zero)
        phi = velu(E, P)
        candidates = _sampled_distinguished(phi)
        if len(candidates) != 1:
            raise DegenerateStep(
                f"expected a unique distinguished point, found {len(candidates)}"
            )
        tp, _ = to_tate_normal(phi.codomain, candidates[0], 5)
        b = tp.b
        values.append(b)
    return ChainResult(tuple(values), b0.ctx, "unique")


def _sampled_distinguished(phi) -> list:
    """Rational distinguished points, found by sampling rather than scanning."""
    from .curve import _rng_for, group_order, random_point
    from .isogeny import cached_dual

    E2 = phi.codomain
    n = group_order(phi.domain)  # isogenous curves have equal counts
    v = 0
    m = n
    while m % 5 == 0:
        v += 1
        m //= 5
    rng = _rng_for(E2, "bench-sampling")
    dual = cached_dual(phi)
    seen = set()
    found = []
    for _ in range(200):
        Q = random_point(E2, rng)
        S = E2.mul(m, Q)
        while not S.is_infinity and not E2.mul(5, S).is_infinity:
            S = E2.mul(5, S)
        if S.is_infinity or S in seen:
            continue
        for cand in (E2.mul(i, S) for i in range(1, 5)):
            seen.add(cand)
            if dual(cand) == phi.kernel_generator:
                found.append(cand)
        if found:
            break
    return sorted(set(found), key=lambda P: (P.x.coeffs, P.y.coeffs))
