from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import poly
from sparsenull.errors import ContractViolation, DegenerateInput, HypothesisViolation
from sparsenull.polytope import cube, faces, hull, minkowski_sum, simplex
from sparsenull.sparsepoly import (
    SparsePolynomial,
    evaluate,
    facial_form,
    facial_system,
    newton_polytope,
    parse_infix,
    support,
)


def polys(n=2, max_exp=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    coeffs = st.fractions(-5, 5, max_denominator=3)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: SparsePolynomial(n, d))


nonzero_polys = polys().filter(lambda p: not p.is_zero())
weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def face_with_points(P, pts):
    return next(f for f in faces(P) if set(f.points) == set(pts))


class TestArithmetic:
    def test_difference_of_squares(self):
        assert poly("z1 + z2") * poly("z1 - z2") == poly("z1^2 - z2^2")

    def test_square(self):
        assert poly("z1*z2 - 1") ** 2 == SparsePolynomial(2, {(2, 2): 1, (1, 1): -2, (0, 0): 1})

    def test_pow_zero(self):
        assert poly("z1 + 3") ** 0 == SparsePolynomial.constant(2, 1)

    @given(polys())
    def test_additive_inverse(self, F):
        assert (F + (-F)).is_zero()

    @settings(max_examples=60)
    @given(polys(), polys(), polys())
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            poly("z1") + poly("z1", 3)

    def test_zero_coefficients_dropped(self):
        p = SparsePolynomial(2, [((1, 0), 1), ((1, 0), -1), ((0, 1), 0)])
        assert p.is_zero() and p.terms == {}

    def test_negative_exponent_rejected(self):
        with pytest.raises(ContractViolation):
            SparsePolynomial(2, {(-1, 0): 1})


class TestSupportAndNewton:
    def test_support(self):
        assert support(poly("1 + z1 + z2")) == [(0, 0), (0, 1), (1, 0)]
        assert support(SparsePolynomial(2)) == []

    def test_newton_polytope(self):
        assert newton_polytope(poly("1 + z1 + z2")) == simplex(2)
        assert newton_polytope(poly("z1*z2 - 1")) == hull([(0, 0), (1, 1)])
        assert newton_polytope([poly("z1"), poly("z2"), poly("1 - z1 - z2")]) == simplex(2)

    def test_newton_of_zero(self):
        with pytest.raises(DegenerateInput):
            newton_polytope(SparsePolynomial(2))

    @settings(max_examples=60, deadline=None)
    @given(nonzero_polys, nonzero_polys)
    def test_ostrowski(self, F, G):
        assert newton_polytope(F * G) == minkowski_sum(newton_polytope(F), newton_polytope(G))

    @settings(max_examples=60, deadline=None)
    @given(nonzero_polys, nonzero_polys)
    def test_product_support_in_sum(self, F, G):
        S = minkowski_sum(newton_polytope(F), newton_polytope(G))
        assert all(S.contains(e) for e in support(F * G))


class TestFacialForms:
    def test_examples(self):
        F = poly("1 + z1 + z2")
        assert facial_form(F, (-1, -1)) == poly("z1 + z2")
        assert facial_form(F, (0, 0)) == F
        assert facial_form(poly("z1^2 + z1*z2^3"), (0, -1)) == poly("z1*z2^3")

    def test_zero(self):
        with pytest.raises(DegenerateInput):
            facial_form(SparsePolynomial(2), (1, 0))

    @settings(max_examples=80, deadline=None)
    @given(nonzero_polys, nonzero_polys, weights)
    def test_multiplicative(self, F, G, w):
        assert facial_form(F * G, w) == facial_form(F, w) * facial_form(G, w)

    def test_facial_system_vertex(self):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        face = face_with_points(cube(2), [(1, 1)])
        assert face.weight() == (-1, -1)
        assert facial_system(F, face) == [poly("z1*z2"), SparsePolynomial(2)]

    def test_facial_system_edge(self):
        F = [poly("z1^2"), poly("z2^2")]
        face = face_with_points(simplex(2, 2), [(2, 0), (0, 2)])
        assert facial_system(F, face) == F

    def test_facial_system_whole_polytope(self):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        face = face_with_points(cube(2), cube(2).vertices)
        assert facial_system(F, face) == F

    def test_facial_system_zero_when_face_missed(self):
        face = face_with_points(simplex(2), [(0, 1)])
        assert facial_system([poly("z1 - 1")], face) == [SparsePolynomial(2)]

    def test_support_outside(self):
        face = face_with_points(simplex(2), [(0, 0)])
        with pytest.raises(HypothesisViolation):
            facial_system([poly("z1*z2")], face)

    def test_terms_on_face(self):
        P = hull([(0, 0), (3, 0), (3, 1), (1, 2), (0, 2)])
        F = [poly("1 + z1^3 + z1^3*z2 + z1*z2^2 + z2^2 + z1*z2 + 2*z1")]
        for face in faces(P):
            sys_ = facial_system(F, face)
            on_face = {e for e in F[0].support() if hull(face.points).contains(e)}
            assert set(sys_[0].support()) == on_face


class TestEvaluate:
    def test_examples(self):
        assert evaluate(parse_infix("z1^2 - 1", ["z1"]), [3]) == 8
        F = poly("3/2 + z1*z2 - 7*z2^2")
        assert evaluate(F, [0, 0]) == Fraction(3, 2)

    def test_identity_testing(self, rng):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        G = [poly("z1*z2 + 1"), SparsePolynomial(2)]
        phi = poly("z1^2*z2^2 - 1")
        for _ in range(10):
            x = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2)]
            lhs = sum(evaluate(f, x) * evaluate(g, x) for f, g in zip(F, G))
            assert lhs == evaluate(phi, x)

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            evaluate(poly("z1"), [1])


class TestSerialisation:
    @given(polys())
    def test_json_round_trip(self, F):
        assert SparsePolynomial.from_json(F.to_json()) == F

    def test_duplicates_summed(self):
        data = {"dim": 2, "terms": [{"coeff": "1/2", "exp": [1, 0]}, {"coeff": "1/2", "exp": [1, 0]}]}
        assert SparsePolynomial.from_json(data) == poly("z1")

    def test_to_str_round_trip(self):
        for text in ["z1^2*z2 - 3/2*z1 + 1", "-z2 + 4", "0", "-1/3*z1*z2"]:
            p = poly(text)
            assert poly(p.to_str()) == p

    def test_parse_infix(self):
        assert parse_infix("(x + y)^2 - 2*x*y", ["x", "y"]) == parse_infix("x^2 + y^2", ["x", "y"])
        assert parse_infix("x**3", ["x"]) == SparsePolynomial(1, {(3,): 1})
        with pytest.raises(ContractViolation):
            parse_infix("x + w", ["x", "y"])
        with pytest.raises(ContractViolation):
            parse_infix("x^(1/2)", ["x"])
        with pytest.raises(ContractViolation):
            parse_infix("(x + 1", ["x"])
