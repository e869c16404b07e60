import math

import numpy as np
import pytest

from decoupling.hermite import gauss_hermite, tensor_rule, wick_monomial, wick_power, wick_table

# explicit He_k coefficient forms, used only as an oracle for the recurrence
EXPLICIT = {
    0: lambda x: 1.0,
    1: lambda x: x,
    2: lambda x: x**2 - 1,
    3: lambda x: x**3 - 3 * x,
    4: lambda x: x**4 - 6 * x**2 + 3,
    5: lambda x: x**5 - 10 * x**3 + 15 * x,
}


def test_wick_power_examples():
    assert wick_power(0, 7.3) == 1.0
    assert wick_power(2, 2.0) == 3.0
    assert wick_power(3, 1.0) == -2.0


@pytest.mark.parametrize("k", range(6))
def test_wick_power_matches_explicit(k):
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(wick_power(k, x), [EXPLICIT[k](v) for v in x], atol=1e-12)


def test_wick_table_matches_wick_power():
    x = np.linspace(-2, 2, 7)
    tab = wick_table(x, 6)
    for k in range(7):
        np.testing.assert_allclose(tab[k], wick_power(k, x), atol=1e-12)


def test_wick_monomial():
    assert wick_monomial((2.0, 1.0), (2, 0)) == 3.0
    assert wick_monomial((0.3, -1.2, 4.0), (0, 0, 0)) == 1.0
    assert wick_monomial((1.0, 1.0), (1, 3)) == -2.0
    batch = np.array([[2.0, 1.0], [1.0, 1.0]])
    np.testing.assert_allclose(wick_monomial(batch, (1, 3)), [2.0 * -2.0, -2.0])
    with pytest.raises(ValueError):
        wick_monomial((1.0,), (1, 1))


def test_generating_function():
    for a in np.linspace(-0.5, 0.5, 11):
        for x in np.linspace(-2, 2, 9):
            series = sum(a**k * wick_power(k, x) / math.factorial(k) for k in range(21))
            assert abs(series - math.exp(a * x - a * a / 2)) < 1e-10


def test_gauss_hermite_small_rules():
    r1 = gauss_hermite(1)
    np.testing.assert_array_equal(r1.nodes, [0.0])
    np.testing.assert_array_equal(r1.weights, [1.0])
    r2 = gauss_hermite(2)
    np.testing.assert_allclose(r2.nodes, [-1.0, 1.0], atol=1e-14)
    np.testing.assert_allclose(r2.weights, [0.5, 0.5], atol=1e-14)
    assert gauss_hermite(5).expect(lambda x: wick_power(3, x) ** 2) == pytest.approx(6.0, abs=1e-10)


def test_gauss_hermite_range():
    for m in (0, 65):
        with pytest.raises(ValueError):
            gauss_hermite(m)


@pytest.mark.parametrize("m", [1, 2, 3, 8, 20, 40, 64])
def test_gauss_hermite_rule_invariants(m):
    r = gauss_hermite(m)
    assert np.all(np.diff(r.nodes) > 0)
    np.testing.assert_array_equal(r.nodes, -r.nodes[::-1])
    assert np.all(r.weights > 0)
    assert abs(r.weights.sum() - 1) < 1e-12
    if m >= 2:
        assert abs(np.sum(r.weights * r.nodes**2) - 1) < 1e-10


@pytest.mark.parametrize("m", [2, 5, 10, 16])
def test_gauss_hermite_exact_moments(m):
    r = gauss_hermite(m)
    for j in range(m):  # degree 2j <= 2m - 1
        double_fact = math.prod(range(1, 2 * j, 2))
        assert r.expect(lambda x: x ** (2 * j)) == pytest.approx(double_fact, rel=1e-11)
        assert abs(r.expect(lambda x: x ** (2 * j + 1))) < 1e-9 * max(1, double_fact)


def test_orthogonality_and_normalization():
    r = gauss_hermite(8)
    for k in range(7):
        for l in range(7):
            val = r.expect(lambda x: wick_power(k, x) * wick_power(l, x))
            if k == l:
                assert val == pytest.approx(math.factorial(k), rel=1e-9)
            else:
                assert abs(val) < 1e-9


def test_tensor_rule():
    nodes, weights = tensor_rule(gauss_hermite(4), 3)
    assert nodes.shape == (64, 3) and weights.shape == (64,)
    assert weights.sum() == pytest.approx(1.0, abs=1e-13)
    assert np.sum(weights * nodes[:, 0] ** 2 * nodes[:, 2] ** 2) == pytest.approx(1.0, abs=1e-12)
