import pytest
from sympy import jacobi_symbol

from iqhecke.ntheory import FactorBudgetError, factorint, kronecker


@pytest.mark.parametrize("a", range(-30, 31))
@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 15, 21, 35])
def test_kronecker_matches_jacobi_on_odd_positive(a, n):
    assert kronecker(a, n) == jacobi_symbol(a, n)


def test_kronecker_even_and_negative_arguments():
    # (a/2) by a mod 8
    assert kronecker(7, 2) == 1
    assert kronecker(3, 2) == -1
    assert kronecker(4, 2) == 0
    assert kronecker(-1, -1) == -1
    assert kronecker(1, -1) == 1
    assert kronecker(-3, -6) == 0
    # multiplicativity in the denominator
    for a in (3, 5, -7, 11):
        assert kronecker(a, 6) == kronecker(a, 2) * kronecker(a, 3)


def test_kronecker_zero_denominator():
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(5, 0) == 0


def test_factorint_roundtrip_and_budget():
    f = factorint(2 * 2 * 3 * 49)
    assert f == {2: 2, 3: 1, 7: 2}
    with pytest.raises(FactorBudgetError):
        factorint(10**13 + 1, budget=10**12)
    with pytest.raises(ValueError):
        factorint(0)
