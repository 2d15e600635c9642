import math

import numpy as np
import pytest

from quasicompact.manufactured import Profile, SeparableSolution
from quasicompact.specialfn import DomainError, MonomialDerivSpec, Side, rl_monomial_deriv


def test_product_profile_expansion():
    P = Profile.from_product(3, 3)
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(P(x), x ** 3 * (1 - x) ** 3, atol=1e-15)
    assert P.integer_powers()
    assert [s for _, s in P.terms] == [3.0, 4.0, 5.0, 6.0]


def test_profile_rejects_negative_powers():
    with pytest.raises(DomainError):
        Profile(((1.0, -0.5),))


def test_left_derivative_is_termwise():
    alpha = 1.35
    P = Profile(((2.0, 2.0), (-0.5, 4.25)))
    x = np.array([0.2, 0.8])
    expected = (2.0 * rl_monomial_deriv(MonomialDerivSpec(2.0, alpha), x)
                - 0.5 * rl_monomial_deriv(MonomialDerivSpec(4.25, alpha), x))
    np.testing.assert_allclose(P.left_deriv(alpha, x), expected, rtol=1e-13)


def test_left_derivative_of_constant_is_singular_at_zero():
    P = Profile(((1.0, 0.0),))
    d = P.left_deriv(1.5, np.array([0.0, 0.25]))
    assert np.isinf(d[0])
    assert d[1] == pytest.approx(0.25 ** -1.5 / math.gamma(-0.5))


@pytest.mark.parametrize("alpha", [1.2, 1.5, 2.0])
def test_right_derivative_mirrors_left(alpha):
    P = Profile.from_product(2, 3)
    Q = Profile.from_product(3, 2)  # P(1 - x)
    x = np.linspace(0.1, 0.9, 9)
    np.testing.assert_allclose(P.right_deriv(alpha, x), Q.left_deriv(alpha, 1 - x), rtol=1e-10)


def test_right_derivative_needs_integer_powers():
    with pytest.raises(DomainError):
        Profile(((1.0, 2.5),)).right_deriv(1.5, np.array([0.5]))


def test_integer_order_two_is_second_derivative():
    P = Profile(((1.0, 4.0), (3.0, 2.0)))
    x = np.array([0.3, 0.6])
    np.testing.assert_allclose(P.left_deriv(2.0, x), 12 * x ** 2 + 6, rtol=1e-13)
    np.testing.assert_allclose(P.right_deriv(2.0, x), 12 * x ** 2 + 6, rtol=1e-12)


def test_separable_solution_and_boundaries():
    sol = SeparableSolution(Profile(((1.0, 0.0), (2.0, 3.0))), rate=-0.5)
    assert sol(np.array([1.0]), 2.0)[0] == pytest.approx(3 * math.exp(-1))
    assert sol.boundary(0.0)(2.0) == pytest.approx(math.exp(-1))
    assert sol.boundary(1.0)(0.0) == 3.0


def test_source_balances_equation():
    alpha, K1, K2 = 1.6, 0.7, 0.4
    P = Profile.from_product(3, 2)
    sol = SeparableSolution(P, rate=-2.0)
    f = sol.source(alpha, K1, K2)
    x, t = np.linspace(0.1, 0.9, 5), 0.3
    u_t = -2.0 * sol(x, t)
    D = math.exp(-2.0 * t) * (K1 * P.left_deriv(alpha, x) + K2 * P.right_deriv(alpha, x))
    np.testing.assert_allclose(f(x, t), u_t - D, rtol=1e-12)


def test_source_skips_absent_terms():
    sol = SeparableSolution(Profile(((1.0, 2.5),)))
    f = sol.source(1.5, 1.0, 0.0)
    assert np.isfinite(f(np.array([0.5]), 0.0)).all()


def test_left_side_helper_consistency():
    assert MonomialDerivSpec(3.0, 1.5, Side.LEFT).coefficient == pytest.approx(
        math.gamma(4) / math.gamma(2.5))
