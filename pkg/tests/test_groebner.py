from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import poly, random_poly
from sparsenull.errors import ContractViolation, DegenerateInput
from sparsenull.groebner import (
    MonomialOrder,
    buchberger,
    has_common_zero_affine,
    has_common_zero_torus,
    ideal_member,
    is_groebner,
    normal_form,
    radical_member,
)
from sparsenull.sparsepoly import SparsePolynomial

Z = sympy.symbols("z1:4")


def to_sympy(p):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.prod([z**k for z, k in zip(Z, e)]) for e, c in p.items()),
        sympy.Integer(0),
    )


def from_sympy(expr, n):
    P = sympy.Poly(expr, *Z[:n])
    return SparsePolynomial(n, {e: Fraction(int(c.p), int(c.q)) for e, c in P.terms()})


def sympy_basis(F):
    n = F[0].dim
    G = sympy.groebner([to_sympy(f) for f in F], *Z[:n], order="grevlex")
    return [from_sympy(g, n) for g in G.exprs]


def monic(p):
    lead = max(p.support(), key=MonomialOrder().key)
    return p.scale(1 / p.coeff(lead))


GRID = [(i, j) for i in range(3) for j in range(3) if i + j <= 2]


class TestBuchberger:
    def test_coordinate_ideal(self):
        GB = buchberger([poly("z1"), poly("z2")])
        assert set(GB) == {poly("z1"), poly("z2")}
        assert is_groebner(GB)

    def test_unit_ideal(self):
        GB = buchberger([poly("z1"), poly("z1 - 1")])
        assert GB.is_unit_ideal()
        assert list(GB) == [SparsePolynomial.constant(2, 1)]

    def test_hyperbola_and_diagonal(self):
        GB = buchberger([poly("z1*z2 - 1"), poly("z1 - z2")])
        assert is_groebner(GB)
        assert set(GB) == {poly("z1 - z2"), poly("z2^2 - 1")}

    def test_rejects_empty_and_zero(self):
        with pytest.raises(DegenerateInput):
            buchberger([])
        with pytest.raises(DegenerateInput):
            buchberger([SparsePolynomial(2)])
        with pytest.raises(ContractViolation):
            buchberger([poly("z1"), poly("z1", 3)])

    def test_matches_sympy_on_random_systems(self, rng):
        for _ in range(25):
            F = [random_poly(rng, GRID) for _ in range(rng.randint(1, 3))]
            F = [f for f in F if f] or [poly("z1 + 1")]
            ours = sorted((monic(g) for g in buchberger(F)), key=lambda p: p.to_str())
            ref = sorted((monic(g) for g in sympy_basis(F)), key=lambda p: p.to_str())
            assert ours == ref
            assert is_groebner(buchberger(F))

    def test_three_variables(self):
        F = [poly("z1^2 + z2 - 1", 3), poly("z1*z3 - z2", 3), poly("z3^2 - 2", 3)]
        ours = sorted((monic(g) for g in buchberger(F)), key=lambda p: p.to_str())
        ref = sorted((monic(g) for g in sympy_basis(F)), key=lambda p: p.to_str())
        assert ours == ref


class TestNormalForm:
    def test_idempotent(self, rng):
        GB = buchberger([poly("z1*z2 - 1"), poly("z1^2 - z2")])
        for _ in range(20):
            f = random_poly(rng, [(i, j) for i in range(4) for j in range(4)])
            r = normal_form(f, GB)
            assert normal_form(r, GB) == r
            assert ideal_member(f - r, list(GB))

    def test_random_combinations_are_members(self, rng):
        F = [poly("z1^2 + z2^2 - 1"), poly("z1 - z2^3")]
        for _ in range(20):
            G = [random_poly(rng, GRID) for _ in F]
            combo = sum((g * f for g, f in zip(G, F)), SparsePolynomial(2))
            assert ideal_member(combo, F)


class TestQueries:
    def test_membership_examples(self):
        assert ideal_member(poly("z1 + z2"), [poly("z1"), poly("z2")])
        assert not ideal_member(poly("z1"), [poly("z2")])
        assert ideal_member(poly("z1^2*z2^2 - 1"), [poly("z1*z2 - 1")])
        assert ideal_member(SparsePolynomial(2), [poly("z2")])

    def test_affine(self):
        assert has_common_zero_affine([poly("z1"), poly("z2")])
        assert not has_common_zero_affine([poly("z1"), poly("z1 - 1")])
        assert has_common_zero_affine([poly("z1*z2 - 1"), poly("z1 - z2")])

    def test_torus(self):
        assert not has_common_zero_torus([poly("z1"), poly("z2")])
        assert has_common_zero_torus([poly("z1*z2 - 1"), poly("z1 - z2")])
        assert not has_common_zero_torus([poly("z1*z2")])
        assert has_common_zero_torus([SparsePolynomial(2), SparsePolynomial(2)])
        assert has_common_zero_torus([poly("z1 + z2"), SparsePolynomial(2)])

    def test_radical(self):
        assert radical_member(poly("z1"), [poly("z1^2")])
        assert not ideal_member(poly("z1"), [poly("z1^2")])
        assert radical_member(poly("z1 + z2"), [poly("z1^3"), poly("z2^2")])
        assert not radical_member(poly("z1"), [poly("z1*z2")])

    def test_torus_monotone_under_adding_generators(self, rng):
        for _ in range(15):
            F = [random_poly(rng, GRID) for _ in range(2)]
            F = [f for f in F if f] or [poly("z1 - 1")]
            extra = random_poly(rng, GRID) or poly("z2 + 2")
            if not has_common_zero_torus(F):
                assert not has_common_zero_torus(F + [extra])
            if has_common_zero_torus(F + [extra]):
                assert has_common_zero_torus(F)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-4, 4).filter(bool), st.integers(-4, 4).filter(bool))
    def test_point_ideal_has_torus_zero(self, a, b):
        F = [poly(f"z1 - ({a})"), poly(f"z2 - ({b})")]
        assert has_common_zero_torus(F)
        assert radical_member(poly(f"z1*z2 - ({a * b})"), F)
