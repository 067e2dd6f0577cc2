import random
from fractions import Fraction

import pytest

from gasprover.parsing import parse_poly
from gasprover.polynomial import MultiPoly
from gasprover.recurrence import (
    Equilibrium,
    UnsupportedInputError,
    build_contraction_poly,
    find_equilibrium,
    parse_rde,
    q_power,
)

F = Fraction

# The order-2 benchmark x_{n+1} = (4+x_n)/(1+x_{n-1}) and its known
# contraction polynomial for K=5 (variables: x0 = x_n, x1 = x_{n-1}).
BENCH = "(4+x0)/(1+x1)"

BENCH_P5 = (
    "25*x1^8*x0^4+340*x1^8*x0^3+1606*x1^8*x0^2+3060*x1^8*x0+2025*x1^8"
    "+60*x1^7*x0^5+1158*x1^7*x0^4+8460*x1^7*x0^3+28936*x1^7*x0^2+45848*x1^7*x0"
    "+27090*x1^7"
    "+71*x1^6*x0^6+1418*x1^6*x0^5+11229*x1^6*x0^4+53362*x1^6*x0^3"
    "+147345*x1^6*x0^2+207144*x1^6*x0+113103*x1^6"
    "+72*x1^5*x0^7+1420*x1^5*x0^6+9012*x1^5*x0^5+20174*x1^5*x0^4"
    "+24716*x1^5*x0^3+74718*x1^5*x0^2+163032*x1^5*x0+108952*x1^5"
    "+47*x1^4*x0^8+1276*x1^4*x0^7+11120*x1^4*x0^6+25528*x1^4*x0^5"
    "-118780*x1^4*x0^4-688300*x1^4*x0^3-1195361*x1^4*x0^2-790736*x1^4*x0"
    "-148969*x1^4"
    "+12*x1^3*x0^9+538*x1^3*x0^8+7854*x1^3*x0^7+45864*x1^3*x0^6"
    "+53604*x1^3*x0^5-515564*x1^3*x0^4-2066454*x1^3*x0^3-2469564*x1^3*x0^2"
    "-207576*x1^3*x0+833882*x1^3"
    "+x1^2*x0^10+86*x1^2*x0^9+2109*x1^2*x0^8+22070*x1^2*x0^7+102117*x1^2*x0^6"
    "+105526*x1^2*x0^5-695269*x1^2*x0^4-1867364*x1^2*x0^3+785343*x1^2*x0^2"
    "+6256056*x1^2*x0+4716817*x1^2"
    "+4*x1*x0^10+198*x1*x0^9+3530*x1*x0^8+29636*x1*x0^7+117218*x1*x0^6"
    "+136288*x1*x0^5-289440*x1*x0^4+253318*x1*x0^3+5674806*x1*x0^2"
    "+11634024*x1*x0+7054300*x1"
    "+4*x0^10+148*x0^9+2145*x0^8+15348*x0^7+53870*x0^6+69340*x0^5+30579*x0^4"
    "+801874*x0^3+3802411*x0^2+6262908*x0+3488704"
)


class TestParseRde:
    def test_benchmark(self):
        spec = parse_rde(BENCH)
        assert spec.order == 2
        assert spec.closed_domain

    def test_open_domain(self):
        spec = parse_rde("9/x0")
        assert spec.order == 1
        assert not spec.closed_domain

    def test_negative_coefficient_rejected(self):
        with pytest.raises(UnsupportedInputError) as exc:
            parse_rde("(1+x0) - 2")
        assert exc.value.kind == "negative-coefficient"

    def test_explicit_order(self):
        spec = parse_rde("x0+1", 3)
        assert spec.order == 3


class TestFindEquilibrium:
    def test_benchmark(self):
        eq = find_equilibrium(parse_rde(BENCH))
        assert eq.value == 2
        assert eq.vector == [2, 2]

    def test_linear_decay(self):
        eq = find_equilibrium(parse_rde("1/2*x0"))
        assert eq.value == 0

    def test_boundary_zero_narrowed_to_positive(self):
        # fixed points are 0 and 1; the positive one is the equilibrium
        eq = find_equilibrium(parse_rde("2*x0/(1+x0)"))
        assert eq.value == 1

    def test_open_domain(self):
        eq = find_equilibrium(parse_rde("9/x0"))
        assert eq.value == 3

    def test_irrational_rejected(self):
        with pytest.raises(UnsupportedInputError) as exc:
            find_equilibrium(parse_rde("(1+x0)/(1+2*x0)"))
        assert exc.value.kind == "irrational-equilibrium"

    def test_multiple_rejected(self):
        with pytest.raises(UnsupportedInputError) as exc:
            find_equilibrium(parse_rde("(x0^2+6)/5"))
        assert exc.value.kind == "multiple-equilibria"

    def test_no_equilibrium(self):
        with pytest.raises(UnsupportedInputError) as exc:
            find_equilibrium(parse_rde("x0+1"))
        assert exc.value.kind == "no-equilibrium"

    def test_identity_map_rejected(self):
        with pytest.raises(UnsupportedInputError) as exc:
            find_equilibrium(parse_rde("x0"))
        assert exc.value.kind == "multiple-equilibria"


class TestQPower:
    def test_benchmark_k1(self):
        spec = parse_rde(BENCH)
        c0, c1 = q_power(spec, 1)
        assert c0.num == parse_poly("4+x0", 2)
        assert c0.den == parse_poly("1+x1", 2)
        assert c1.num == parse_poly("x0", 2)

    def test_reciprocal_period_two(self):
        spec = parse_rde("1/x0")
        (c,) = q_power(spec, 2)
        assert c.num == parse_poly("x0")
        assert c.den == parse_poly("1", 1)

    def test_projection_structure(self):
        spec = parse_rde(BENCH)
        for k in range(2, 5):
            prev = q_power(spec, k - 1)
            cur = q_power(spec, k)
            assert cur[1:] == prev[:-1]

    def test_fixed_point_invariant(self):
        for text in (BENCH, "9/x0", "2*x0/(1+x0)"):
            spec = parse_rde(text)
            eq = find_equilibrium(spec)
            for k in range(1, 7):
                for comp in q_power(spec, k):
                    assert comp.evaluate(eq.vector) == eq.value

    def test_denominator_positivity(self):
        for text in (BENCH, "9/x0", "(1+x0+x1)/(2+x2)"):
            spec = parse_rde(text)
            for k in range(1, 6):
                for comp in q_power(spec, k):
                    assert all(c > 0 for c in comp.den.terms.values())


class TestBuildContractionPoly:
    def test_benchmark_k5_term_for_term(self):
        spec = parse_rde(BENCH)
        eq = find_equilibrium(spec)
        p = build_contraction_poly(spec, eq, 5)
        assert p == parse_poly(BENCH_P5, 2)

    def test_reciprocal_k1(self):
        spec = parse_rde("1/x0")
        p = build_contraction_poly(spec, Equilibrium(F(1), 1), 1)
        assert p == parse_poly("x0^4-2*x0^3+2*x0-1")

    def test_vanishes_at_equilibrium(self):
        for text in (BENCH, "9/x0", "2*x0/(1+x0)"):
            spec = parse_rde(text)
            eq = find_equilibrium(spec)
            for k in (1, 2, 3):
                p = build_contraction_poly(spec, eq, k)
                assert p.evaluate(eq.vector) == 0

    def test_sign_equivalence_random(self):
        rng = random.Random(41)

        def sign(v):
            return (v > 0) - (v < 0)

        for text in (BENCH, "9/x0", "2*x0/(1+x0)"):
            spec = parse_rde(text)
            eq = find_equilibrium(spec)
            for k in (1, 2, 3):
                p = build_contraction_poly(spec, eq, k)
                comps = q_power(spec, k)
                for _ in range(12):
                    v = [
                        F(rng.randrange(1, 40), rng.randrange(1, 10))
                        for _ in range(spec.order)
                    ]
                    before = sum((x - eq.value) ** 2 for x in v)
                    after = sum(
                        (c.evaluate(v) - eq.value) ** 2 for c in comps
                    )
                    assert sign(p.evaluate(v)) == sign(before - after)
