import itertools
from fractions import Fraction

import pytest

from conftest import poly, random_poly
from oracles import shift_fits
from sparsenull.errors import ContractViolation, DegenerateInput, HypothesisViolation
from sparsenull.groebner import ideal_member
from sparsenull.membership import (
    Certificate,
    allowed_exponents,
    default_cmax,
    escalate_solve,
    solve_membership,
    verify_certificate,
)
from sparsenull.polytope import cube, dilate, hull, lattice_points, simplex
from sparsenull.sparsepoly import SparsePolynomial, evaluate


def brute_allowed(Fj, bound):
    box = itertools.product(*[range(0, hi + 1) for _, hi in bound.bounding_box()])
    return sorted(b for b in box if shift_fits(b, Fj.support(), bound))


def solve_checked(F, phi, nu, bound):
    cert = solve_membership(F, phi, nu, bound)
    if cert is not None:
        assert verify_certificate(cert, F, phi)
    return cert


class TestAllowedExponents:
    def test_linear_on_doubled_simplex(self):
        assert allowed_exponents(poly("z1"), simplex(2, 2)) == [(0, 0), (0, 1), (1, 0)]

    def test_constant(self):
        for P in (simplex(2, 3), cube(2), hull([(0, 0), (3, 1), (1, 3)])):
            assert allowed_exponents(poly("5"), P) == lattice_points(P)

    def test_too_big(self):
        assert allowed_exponents(poly("z1^4"), simplex(2, 3)) == []

    def test_zero(self):
        with pytest.raises(DegenerateInput):
            allowed_exponents(SparsePolynomial(2), simplex(2))

    def test_matches_shift_test(self, rng):
        bounds = [simplex(2, 3), cube(2, 2), hull([(0, 0), (4, 0), (1, 3)]), simplex(3, 2)]
        for _ in range(40):
            B = rng.choice(bounds)
            pts = lattice_points(simplex(B.dim, 2))
            f = random_poly(rng, pts) or SparsePolynomial.monomial(pts[-1])
            assert allowed_exponents(f, B) == brute_allowed(f, B)


class TestSolve:
    def test_partition_of_unity(self):
        F = [poly("z1"), poly("z2"), poly("1 - z1 - z2")]
        cert = solve_checked(F, poly("1"), 1, simplex(2, 3))
        assert cert is not None and cert.power == 1

    def test_square_of_monomial(self):
        F = [poly("z1^2"), poly("z2^2")]
        cert = solve_checked(F, poly("z1*z2"), 2, simplex(2, 6))
        assert cert is not None

    def test_non_member(self):
        for B in (simplex(2, 2), cube(2, 3), simplex(2, 6)):
            assert solve_checked([poly("z2")], poly("z1"), 1, B) is None

    def test_target_outside_bound(self):
        with pytest.raises(HypothesisViolation):
            solve_membership([poly("z1")], poly("z1^3"), 1, simplex(2, 2))

    def test_contract(self):
        with pytest.raises(ContractViolation):
            solve_membership([], poly("1"), 1, simplex(2))
        with pytest.raises(ContractViolation):
            solve_membership([poly("z1", 3)], poly("1"), 1, simplex(2))

    def test_matrix_shape(self):
        cert = solve_membership([poly("z1"), poly("z2")], poly("z1 + z2"), 1, simplex(2))
        assert cert.matrix_shape == (3, 2)

    def test_deterministic(self):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        a = solve_membership(F, poly("z1^2*z2^2 - 1"), 1, cube(2, 2))
        b = solve_membership(F, poly("z1^2*z2^2 - 1"), 1, cube(2, 2))
        assert a == b and a.to_json() == b.to_json()


class TestEscalate:
    def test_hyperbola(self):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        phi = poly("z1^2*z2^2 - 1")
        cert, c = escalate_solve(F, phi, 1, cube(2), 2, 6)
        assert c == 2
        assert verify_certificate(cert, F, phi)
        # z1^2 z2^2 - 1 = (z1 z2 + 1)(z1 z2 - 1) is one valid certificate
        hand = Certificate([poly("z1*z2 + 1"), SparsePolynomial(2)], 1, dilate(cube(2), 2))
        assert verify_certificate(hand, F, phi)

    def test_coordinates(self):
        _, c = escalate_solve([poly("z1"), poly("z2")], poly("z1 + z2"), 1, simplex(2), 1, 3)
        assert c == 1

    def test_radical_excluded(self):
        F = [poly("z1^2"), poly("z2")]
        assert not ideal_member(poly("z1"), F)
        assert escalate_solve(F, poly("z1"), 1, simplex(2), 1, 6) is None

    def test_bad_range(self):
        with pytest.raises(ContractViolation):
            escalate_solve([poly("z1")], poly("z1"), 1, simplex(2), 3, 2)

    def test_default_cmax(self):
        assert default_cmax(2, 1) == 11
        assert default_cmax(2, 5) == 13


class TestVerify:
    def setup_method(self):
        self.F = [poly("z1"), poly("z2"), poly("1 - z1 - z2")]
        self.cert = solve_membership(self.F, poly("1"), 1, simplex(2, 3))

    def test_tampered(self):
        G = list(self.cert.cofactors)
        e, c = next(iter(G[0].items())) if G[0] else ((0, 0), Fraction(0))
        G[0] = G[0] + SparsePolynomial(2, {e: 1})
        bad = Certificate(G, 1, self.cert.bound)
        v = verify_certificate(bad, self.F, poly("1"))
        assert not v and "identity mismatch" in v.reason

    def test_wrong_power(self):
        bad = Certificate(self.cert.cofactors, 2, self.cert.bound)
        assert verify_certificate(bad, self.F, poly("2")).ok is False

    def test_support_outside(self):
        cert = Certificate([poly("1 + z1^3"), poly("1"), poly("1 - z1^4 + z1^3")], 1, simplex(2, 3))
        v = verify_certificate(cert, self.F, poly("1"))
        assert not v and "leaves the bound" in v.reason

    def test_cancellation_accepted(self):
        # both cofactors carry z1^2, which the per-term shape on 2*simplex
        # forbids; the products cancel and only products are checked
        F = [poly("z1"), poly("z1")]
        G = [poly("1 + z1^2"), poly("-z1^2")]
        cert = Certificate(G, 1, simplex(2, 3))
        assert verify_certificate(cert, F, poly("z1"))
        assert (0, 0) in allowed_exponents(poly("z1"), simplex(2, 3))
        assert (2, 0) not in allowed_exponents(poly("z1"), simplex(2, 2))

    def test_count_mismatch(self):
        v = verify_certificate(Certificate(self.cert.cofactors[:2], 1, self.cert.bound), self.F, poly("1"))
        assert not v and "cofactors" in v.reason

    def test_json_round_trip(self):
        data = self.cert.to_json()
        assert set(data) == {"theorem", "power", "bound", "cofactors"}
        again = Certificate.from_json(data)
        assert again == self.cert
        assert verify_certificate(again, self.F, poly("1"))

    def test_from_json_rejects(self):
        with pytest.raises(ContractViolation):
            Certificate.from_json({"theorem": "custom"})
        data = self.cert.to_json()
        data["theorem"] = "hilbert"
        with pytest.raises(ContractViolation):
            Certificate.from_json(data)


class TestProperties:
    def test_monotone_in_bound(self, rng):
        for _ in range(15):
            F = [random_poly(rng, lattice_points(simplex(2))) or poly("z1") for _ in range(2)]
            combo = sum((random_poly(rng, lattice_points(simplex(2))) * f for f in F), SparsePolynomial(2))
            if combo.is_zero():
                continue
            B = simplex(2, 2)
            if solve_checked(F, combo, 1, B) is not None:
                assert solve_checked(F, combo, 1, simplex(2, 3)) is not None
                assert solve_checked(F, combo, 1, cube(2, 2)) is not None

    def test_success_implies_membership(self, rng):
        for _ in range(20):
            F = [random_poly(rng, lattice_points(simplex(2))) or poly("1 + z2") for _ in range(2)]
            phi = random_poly(rng, lattice_points(simplex(2))) or poly("z1")
            cert = solve_checked(F, phi, 1, simplex(2, 3))
            if cert is not None:
                assert ideal_member(phi, F)

    def test_linearity(self):
        F = [poly("z1*z2 - 1"), poly("z1 - z2")]
        B = cube(2, 2)
        p1, p2 = poly("z1^2*z2^2 - 1"), poly("z1^2 - z1*z2")
        c1, c2 = solve_membership(F, p1, 1, B), solve_membership(F, p2, 1, B)
        summed = Certificate([a + b for a, b in zip(c1.cofactors, c2.cofactors)], 1, B)
        assert verify_certificate(summed, F, p1 + p2)

    def test_identity_at_random_points(self, rng):
        F = [poly("z1^2"), poly("z2^2")]
        cert = solve_membership(F, poly("z1*z2"), 2, simplex(2, 6))
        for _ in range(10):
            x = [Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(2)]
            lhs = sum(evaluate(f, x) * evaluate(g, x) for f, g in zip(F, cert.cofactors))
            assert lhs == evaluate(poly("z1*z2"), x) ** 2
