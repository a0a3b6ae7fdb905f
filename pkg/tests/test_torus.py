"""Quadratic-field arithmetic and hyperbolic automorphism iterates."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normlines.core import PrimitiveDirection
from normlines.torus import (
    QuadElement,
    TorusMatrix,
    autom_family,
    matrix_power,
    solution_lines_for_autom,
    stable_iterate,
    unstable_iterate,
)


class TestQuadElementCanonicalization:
    def test_square_factors_pulled_out(self):
        x = QuadElement(0, 5, 50)  # 5*sqrt(50) = 25*sqrt(2)
        assert (x.a, x.b, x.d) == (0, 25, 2)

    def test_square_radicand_becomes_rational(self):
        x = QuadElement(1, 3, 9)  # 1 + 3*sqrt(9) = 10
        assert (x.a, x.b, x.d) == (10, 0, 1)

    def test_zero_coefficient_resets_radicand(self):
        x = QuadElement(7, 0, 5)
        assert x.d == 1

    def test_rejects_nonpositive_radicand(self):
        with pytest.raises(ValueError):
            QuadElement(1, 1, 0)


class TestQuadElementArithmetic:
    def test_field_operations(self):
        x = QuadElement(1, 2, 3)
        y = QuadElement(4, -1, 3)
        assert x + y == QuadElement(5, 1, 3)
        assert x - y == QuadElement(-3, 3, 3)
        assert x * y == QuadElement(4 - 6, 8 - 1, 3)
        assert x / y == x * y.conjugate() / y.norm()

    def test_mixed_radicands_rejected(self):
        with pytest.raises(ValueError):
            QuadElement(1, 1, 2) + QuadElement(1, 1, 3)

    def test_rational_values_mix_freely(self):
        assert QuadElement(2) + QuadElement(0, 1, 5) == QuadElement(2, 1, 5)
        assert 3 * QuadElement(1, 1, 5) == QuadElement(3, 3, 5)

    def test_norm_is_multiplicative(self):
        x = QuadElement(2, 3, 7)
        y = QuadElement(-1, F(1, 2), 7)
        assert (x * y).norm() == x.norm() * y.norm()

    def test_power(self):
        phi_ish = QuadElement(1, 1, 5)  # 1 + sqrt(5) = 2*phi
        assert phi_ish ** 2 == QuadElement(6, 2, 5)
        assert phi_ish ** 0 == QuadElement(1)
        # (1 + sqrt(5))^n = 2^n * F(n-1) + 2^n * F(n) * phi pattern check
        assert phi_ish ** 10 == QuadElement(1) * (phi_ish ** 5) * (phi_ish ** 5)

    def test_exact_sign_and_comparison(self):
        assert QuadElement(-2, 1, 5).sign() > 0  # sqrt(5) > 2
        assert QuadElement(-3, 1, 5).sign() < 0  # sqrt(5) < 3
        assert QuadElement(0, 0, 1).sign() == 0
        assert QuadElement(-2, 1, 5) > 0
        assert abs(QuadElement(-3, 1, 5)) == QuadElement(3, -1, 5)

    def test_sign_with_huge_balanced_terms(self):
        # a^2 differs from d*b^2 by 1: floats cannot separate these
        assert QuadElement(10 ** 30, -1, 10 ** 60 - 1).sign() > 0
        assert QuadElement(-(10 ** 30), 1, 10 ** 60 - 1).sign() < 0
        assert QuadElement(10 ** 30, -1, 10 ** 60 - 1) > 0

    @given(
        st.integers(-9, 9),
        st.integers(-9, 9),
        st.integers(-9, 9),
        st.integers(-9, 9),
    )
    def test_mul_distributes(self, a, b, c, d):
        x = QuadElement(a, b, 5)
        y = QuadElement(c, d, 5)
        z = QuadElement(1, -2, 5)
        assert (x + y) * z == x * z + y * z

    def test_str_forms(self):
        assert str(QuadElement(514229, F(1149851, 5), 5)) == (
            "514229 + 1149851/sqrt(5)"
        )
        assert str(QuadElement(1, -1, 5)) == "1 - 5/sqrt(5)"
        assert str(QuadElement(3)) == "3"


class TestTorusMatrix:
    def test_family_members(self):
        assert autom_family(2).rows == ((3, 2), (2, 1))
        assert autom_family(0).rows == ((1, 0), (0, -1))
        assert autom_family(-1).rows == ((0, -1), (-1, -2))

    def test_validation(self):
        with pytest.raises(ValueError):
            TorusMatrix(((1, 2), (3, 4)))  # not symmetric
        with pytest.raises(ValueError):
            TorusMatrix(((1, 0), (0, 1)))  # determinant +1

    def test_power_exact(self):
        assert matrix_power(autom_family(2), 10) == (
            (1346269, 832040),
            (832040, 514229),
        )
        assert matrix_power(autom_family(2), 0) == ((1, 0), (0, 1))
        assert matrix_power(((3, 2), (2, 1)), 1) == ((3, 2), (2, 1))

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            matrix_power(autom_family(2), -1)

    def test_power_entries_are_fibonacci(self):
        # [[3,2],[2,1]]^n = [[F(2n+1), F(2n)], [F(2n), F(2n-1)]]
        assert matrix_power(autom_family(2), 4) == ((233, 144), (144, 89))
        assert matrix_power(autom_family(2), 5) == ((987, 610), (610, 377))


class TestSolutionLines:
    def test_reflection_axes_for_q0(self):
        lines = solution_lines_for_autom(0)
        assert lines == (PrimitiveDirection((1, 0)), PrimitiveDirection((0, 1)))

    def test_q2_lines(self):
        lines = solution_lines_for_autom(2)
        assert lines[0] == PrimitiveDirection((1, -1))
        assert lines[1] == PrimitiveDirection((1, -3))

    def test_every_q_has_two_integer_lines(self):
        from normlines.core import verify_norm_preserving

        for q in range(-6, 7):
            lines = solution_lines_for_autom(q)
            A = autom_family(q).to_matrix2()
            for d in lines:
                assert verify_norm_preserving(A, d.coords)


class TestIterates:
    def test_tenth_iterate_components(self):
        u10 = unstable_iterate(2, 10)
        assert u10[0] == QuadElement(514229, F(1149851, 5), 5)
        assert u10[1] == QuadElement(317811, F(710647, 5), 5)
        assert str(u10[0]) == "514229 + 1149851/sqrt(5)"
        assert str(u10[1]) == "317811 + 710647/sqrt(5)"

    def test_base_vector(self):
        u0 = unstable_iterate(2, 0)
        assert u0[0] == QuadElement(1, F(-1, 5), 5)
        assert u0[1] == QuadElement(-1, F(3, 5), 5)

    def test_iterate_equals_eigenvalue_power(self):
        # the expanding eigenvalue of [[q+1, q], [q, q-1]] is
        # q + sqrt(q^2+1) for positive q and q - sqrt(q^2+1) for negative q
        for q, lam in (
            (1, QuadElement(1, 1, 2)),
            (2, QuadElement(2, 1, 5)),
            (3, QuadElement(3, 1, 10)),
            (-2, QuadElement(-2, -1, 5)),
        ):
            assert abs(lam) > 1
            u0 = unstable_iterate(q, 0)
            for n in (1, 2, 7, 15, 30):
                un = unstable_iterate(q, n)
                p = lam ** n
                assert un == (p * u0[0], p * u0[1]), (q, n)

    def test_stable_component_contracts(self):
        s0 = stable_iterate(2, 0)
        s5 = stable_iterate(2, 5)
        assert abs(s5[0]) < abs(s0[0])
        assert abs(s5[1]) < abs(s0[1])

    def test_stable_eigenvalue_power(self):
        q = 2
        lam2 = QuadElement(q, -1, q * q + 1)
        s0 = stable_iterate(q, 0)
        s8 = stable_iterate(q, 8)
        p = lam2 ** 8
        assert s8 == (p * s0[0], p * s0[1])

    def test_q_zero_rejected(self):
        with pytest.raises(ValueError):
            unstable_iterate(0, 3)

    def test_matrix_application_consistency(self):
        # applying the matrix once advances the iterate by one step
        for q in (1, 2, -3):
            A = autom_family(q).rows
            for n in (0, 1, 4):
                u_n = unstable_iterate(q, n)
                u_next = unstable_iterate(q, n + 1)
                advanced = (
                    A[0][0] * u_n[0] + A[0][1] * u_n[1],
                    A[1][0] * u_n[0] + A[1][1] * u_n[1],
                )
                assert advanced == u_next
