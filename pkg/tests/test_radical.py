import json
import random

import pytest

from radicant.curve import (
    Point,
    degree5_curve,
    normal_form_discriminant,
    point_order,
)
from radicant.errors import DegenerateParams, DegenerateStep, NoRootError
from radicant.field import make_field, nth_roots
from radicant.isogeny import is_distinguished, velu
from radicant.radical import (
    ChainResult,
    distinguished_point_5,
    radical_chain,
    radical_poly_irreducible,
    radical_poly_irreducible_oracle,
    radical_step_5,
    step_from_root,
    velu_chain,
    velu_reference_step,
)


class TestStep:
    def test_f13_worked_instance(self, F13):
        step = radical_step_5(F13.el(4), policy="unique")
        assert step.alpha == F13.el(10)
        assert step.b_next == F13.el(2)
        assert step.root_index == 0

    def test_formula_shape(self, F13):
        # recompute the rational expression independently of step_from_root
        b = F13.el(4)
        (alpha,) = nth_roots(b, 5)
        num = alpha**4 + 3 * alpha**3 + 4 * alpha**2 + 2 * alpha + 1
        den = alpha**4 - 2 * alpha**3 + 4 * alpha**2 - 3 * alpha + 1
        assert step_from_root(b, alpha).b_next == alpha * num / den

    def test_zero_b_rejected(self, F13):
        with pytest.raises(DegenerateParams):
            radical_step_5(F13.zero)

    def test_degenerate_delta_rejected(self, F11):
        assert normal_form_discriminant(F11.one, F11.one).is_zero()
        with pytest.raises(DegenerateParams):
            radical_step_5(F11.one)

    def test_no_root_raises(self, F11):
        # 3 is not a fifth power mod 11
        with pytest.raises(NoRootError):
            radical_step_5(F11.el(3), policy="canonical")

    def test_pole_of_expression_reported(self):
        # roots of the denominator quartic only occur at degenerate b, so the
        # pole is reachable only by calling the raw step directly
        F = make_field(31)
        alpha = F.el(7)
        den = alpha**4 - 2 * alpha**3 + 4 * alpha**2 - 3 * alpha + 1
        assert den.is_zero()
        with pytest.raises(DegenerateStep) as err:
            step_from_root(alpha**5, alpha)
        assert err.value.alpha == alpha
        # and the corresponding b is itself degenerate, caught upstream
        with pytest.raises(DegenerateParams):
            radical_step_5(alpha**5)

    def test_policies(self):
        F = make_field(41)
        b = F.el(2) ** 5
        roots = nth_roots(b, 5)
        assert len(roots) == 5
        with pytest.raises(NoRootError):
            radical_step_5(b, policy="unique")
        st = radical_step_5(b, policy="canonical")
        assert st.alpha == roots[0]
        for i in range(5):
            sti = radical_step_5(b, policy=f"index:{i}")
            assert sti.alpha == roots[i] and sti.root_index == i
        with pytest.raises(NoRootError):
            radical_step_5(b, policy="index:5")
        with pytest.raises(ValueError):
            radical_step_5(b, policy="biggest")

    def test_output_is_valid_parameter(self):
        rng = random.Random(15)
        checked = 0
        while checked < 30:
            p = rng.choice([13, 17, 19, 23, 37, 43, 47])
            if (p - 1) % 5 == 0:
                continue
            F = make_field(p)
            v = rng.randrange(1, p)
            b = F.el(v)
            if normal_form_discriminant(b, b).is_zero():
                continue
            step = radical_step_5(b, policy="unique")
            assert not normal_form_discriminant(step.b_next, step.b_next).is_zero()
            checked += 1


class TestDistinguishedPoint:
    def test_lies_on_codomain_has_order_5_and_is_distinguished(self):
        F = make_field(41)
        b = F.el(2) ** 5
        E = degree5_curve(b)
        phi = velu(E, Point(F.zero, F.zero))
        for alpha in nth_roots(b, 5):
            P2 = distinguished_point_5(b, alpha)
            assert phi.codomain.contains(P2)
            assert point_order(phi.codomain, P2) == 5
            assert is_distinguished(phi, P2)

    def test_f13_closed_form_point(self, F13):
        b = F13.el(4)
        (alpha,) = nth_roots(b, 5)
        P2 = distinguished_point_5(b, alpha)
        assert P2 == Point(F13.zero, F13.el(3))

    def test_wrong_root_rejected(self, F13):
        with pytest.raises(ValueError):
            distinguished_point_5(F13.el(4), F13.el(3))


class TestChain:
    def test_zero_steps(self, F13):
        chain = radical_chain(F13.el(4), 0, policy="unique")
        assert [b.to_int() for b in chain.b_values] == [4]

    def test_one_step_consistency(self, F13):
        chain = radical_chain(F13.el(4), 1, policy="unique")
        step = radical_step_5(F13.el(4), policy="unique")
        assert chain.b_values == (F13.el(4), step.b_next)

    def test_two_steps_f13(self, F13):
        chain = radical_chain(F13.el(4), 2, policy="unique")
        assert [b.to_int() for b in chain.b_values[:2]] == [4, 2]
        nxt = radical_step_5(F13.el(2), policy="unique").b_next
        assert chain.b_values[2] == nxt

    def test_deterministic_bytes(self, F13):
        a = radical_chain(F13.el(4), 6, policy="unique").as_json()
        b = radical_chain(F13.el(4), 6, policy="unique").as_json()
        assert a == b
        assert json.loads(a)["chain"][0] == 4

    def test_error_carries_step_index(self, F11):
        # over F_11 the first step from b=2 yields another valid parameter;
        # b=3 has no fifth root at all, so step 0 fails
        with pytest.raises(NoRootError) as err:
            radical_chain(F11.el(3), 2, policy="canonical")
        assert "step 0" in str(err.value)


class TestReferenceOracle:
    def test_all_roots_land_in_reference_set(self):
        rng = random.Random(99)
        checked = 0
        while checked < 6:
            p = rng.choice([31, 41, 61, 71, 101])
            F = make_field(p)
            b = F.el(rng.randrange(2, p)) ** 5
            if b.is_zero() or normal_form_discriminant(b, b).is_zero():
                continue
            roots = nth_roots(b, 5)
            assert len(roots) == 5
            ref = {e.coeffs for e in velu_reference_step(b)}
            assert len(ref) <= 5
            for i, alpha in enumerate(roots):
                assert step_from_root(b, alpha, i).b_next.coeffs in ref
            checked += 1

    def test_unique_regime_reference_matches_step(self, F13):
        for v in (2, 3, 4, 6):
            b = F13.el(v)
            if normal_form_discriminant(b, b).is_zero():
                continue
            ref = velu_reference_step(b)
            assert len(ref) == 1
            assert ref[0] == radical_step_5(b, policy="unique").b_next

    @pytest.mark.parametrize("p,b0", [(13, 4), (7, 3)])
    def test_velu_chain_agrees_with_radical_chain(self, p, b0):
        F = make_field(p)
        rad = radical_chain(F.el(b0), 3, policy="unique")
        vel = velu_chain(F.el(b0), 3)
        assert rad.b_values == vel.b_values

    def test_velu_chain_rejects_mod5_fields(self, F31):
        with pytest.raises(ValueError):
            velu_chain(F31.el(2), 1)


class TestIrreducibility:
    def test_f11_examples(self, F11):
        assert radical_poly_irreducible(F11.el(3), 5, F11) is True
        assert radical_poly_irreducible(F11.el(10), 5, F11) is False

    def test_f11_exhaustive_vs_oracle(self, F11):
        fifth_powers = {(F11.el(v) ** 5).to_int() for v in range(1, 11)}
        for v in range(1, 11):
            b = F11.el(v)
            crit = radical_poly_irreducible(b, 5, F11)
            assert crit == radical_poly_irreducible_oracle(b, 5, F11)
            assert crit == (v not in fifth_powers)

    def test_f13_always_reducible(self, F13):
        for v in range(1, 13):
            assert radical_poly_irreducible(F13.el(v), 5, F13) is False
            assert radical_poly_irreducible_oracle(F13.el(v), 5, F13) is False

    def test_sylow_heavy_field(self):
        # q = 1 mod 25: the criterion must still match the generic oracle
        F = make_field(101)
        rng = random.Random(3)
        for _ in range(6):
            v = rng.randrange(1, 101)
            b = F.el(v)
            assert radical_poly_irreducible(b, 5, F) == radical_poly_irreducible_oracle(b, 5, F)

    def test_composite_degree_rejected(self, F11):
        with pytest.raises(ValueError):
            radical_poly_irreducible(F11.el(3), 6, F11)
