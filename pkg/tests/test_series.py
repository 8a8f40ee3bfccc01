from fractions import Fraction
from pathlib import Path

import pytest

from hyperflow.derivations import apply
from hyperflow.oracle import naive_lambda
from hyperflow.poly import ONE, ZERO, Coordinate, Polynomial, b, homogeneous_weight, parse_polynomial, to_text
from hyperflow.series import (
    LaurentSeries,
    TruncationError,
    apply_derivation_series,
    b_series,
    check_D1_series_identities,
    check_Dk_series_identities,
    check_m_annihilated,
    lambda_poly,
    lambda_table,
    rhs_L1,
    verify_annihilation,
    xi,
)

GOLDEN = Path(__file__).resolve().parents[1] / "src" / "hyperflow" / "golden"


def test_b_series():
    s = b_series(1, 3)
    assert [s[n] for n in (1, 2, 3)] == [b(1, 1), b(1, 3), b(1, 5)]
    assert s[0] == ZERO
    assert s.low == 1 and s.high == 3
    t = b_series(3, 1)
    assert t.items() == [(1, b(3, 1))]
    with pytest.raises(TruncationError):
        s[4]
    with pytest.raises(ValueError):
        b_series(4, 2)


def test_series_arithmetic_examples():
    one_minus = 1 - b_series(1, 4)
    sq = one_minus * one_minus
    assert sq[0] == ONE
    assert sq[1] == b(1, 1) * -2
    assert (xi(-1) * b_series(2, 3))[0] == b(2, 1)


def test_product_truncation_tracking():
    s = b_series(1, 5) * b_series(2, 3)
    assert (s.low, s.high) == (2, 4)
    # exact factor does not limit the order
    u = xi(-2) * b_series(3, 5)
    assert (u.low, u.high) == (-1, 3)
    with pytest.raises(TruncationError):
        u[4]
    assert (b_series(1, 3) + b_series(2, 5)).high == 3
    with pytest.raises(TruncationError):
        LaurentSeries({}, low=3, high=2)


def test_scale_by_polynomial():
    s = b_series(1, 2).scale(b(2, 1))
    assert s[2] == b(2, 1) * b(1, 3)
    assert s.high == 2


def _naive_xi1_coefficient():
    # brute-force xi^1 coefficient of the three products with each series cut at xi^3
    b1 = {1: b(1, 1), 2: b(1, 3), 3: b(1, 5)}
    b2 = {1: b(2, 1), 2: b(2, 3), 3: b(2, 5)}
    b3 = {1: b(3, 1), 2: b(3, 3), 3: b(3, 5)}
    om = {0: ONE, **{n: -c for n, c in b1.items()}}
    total = ZERO
    for p, x in b2.items():
        for q, y in b2.items():
            if p + q == 1:
                total = total + x * y
    for p, x in b3.items():
        for q, y in om.items():
            if p + q == 1:
                total = total + x * y * 2
    for e, c in {-1: ONE, 0: b(1, 1) * 2}.items():
        for p, x in om.items():
            for q, y in om.items():
                if e + p + q == 1:
                    total = total + c * x * y * 4
    return total


def test_rhs_examples():
    s = rhs_L1(4)
    assert s.low == -1 and s.high == 4
    assert s[-1] == Polynomial.constant(4)
    assert s[0] == ZERO
    assert s[1] == b(3, 1) * 2 - b(1, 3) * 8 - b(1, 1) ** 2 * 12
    assert s[1] == _naive_xi1_coefficient()


@pytest.mark.parametrize("order", range(1, 14))
def test_rhs_structure_at_every_order(order):
    s = rhs_L1(order)
    assert s[-1] == Polynomial.constant(4)
    assert s[0] == ZERO


def test_lambda_examples():
    assert lambda_poly(1) == b(3, 1) * Fraction(1, 2) - b(1, 3) * 2 - b(1, 1) ** 2 * 3
    expected = (
        b(2, 1) ** 2 * Fraction(1, 4)
        + b(3, 3) * Fraction(1, 2)
        - b(1, 1) * b(3, 1) * Fraction(1, 2)
        - b(1, 5) * 2
        - b(1, 1) * b(1, 3) * 2
        + b(1, 1) ** 3 * 2
    )
    assert lambda_poly(2) == expected
    assert apply(1, lambda_poly(1)) == ZERO


@pytest.mark.parametrize("j", range(1, 13))
def test_lambda_homogeneous(j):
    assert homogeneous_weight(lambda_poly(j)) == 2 * j + 2


@pytest.mark.parametrize("j", range(1, 11))
def test_lambda_matches_naive_oracle(j):
    assert lambda_poly(j) == naive_lambda(j)


@pytest.mark.parametrize("j", (1, 2, 3, 4))
def test_lambda_golden_files(j):
    frozen = (GOLDEN / f"lambda_{2 * j + 2}.txt").read_text().strip()
    assert to_text(lambda_poly(j)) == frozen
    assert parse_polynomial(frozen) == naive_lambda(j)


@pytest.mark.parametrize("j", range(1, 9))
def test_lambda_independent_of_truncation(j):
    assert lambda_poly(j, order=j) == lambda_poly(j, order=j + 3) == lambda_table(12)[j]


@pytest.mark.parametrize("j", range(1, 11))
def test_lambda_index_bound_and_leading_coefficient(j):
    lam = lambda_poly(j)
    assert lam.max_index() <= 2 * j + 1
    assert lam.coefficient(((Coordinate(1, 2 * j + 1), 1),)) == -2


def test_lambda_rejects_bad_j():
    with pytest.raises(ValueError):
        lambda_poly(0)


@pytest.mark.parametrize("k,j", [(1, 1), (3, 1), (7, 5), (5, 3), (9, 10)])
def test_annihilation_examples(k, j):
    assert verify_annihilation(k, j) == ZERO


def test_apply_derivation_series_examples():
    assert apply_derivation_series(1, b_series(1, 6)) == b_series(2, 6)
    assert apply_derivation_series(1, b_series(2, 6)) == b_series(3, 6)
    const = LaurentSeries.constant(Polynomial.constant(5))
    assert apply_derivation_series(3, const).items() == []


@pytest.mark.parametrize("order", (2, 6, 12))
def test_D1_series_identities(order):
    checks = check_D1_series_identities(order)
    assert [c.name for c in checks] == ["U1", "U2", "U3"]
    for c in checks:
        assert c.passed, c.failures
    u3 = checks[2]
    assert 1 in u3.exponents and order - 1 in u3.exponents and order not in u3.exponents


def test_U3_at_xi1_matches_D1_rule():
    lhs = apply(1, b(3, 1))
    assert lhs == (b(1, 1) * b(2, 1) * 2 + b(2, 1) * b(1, 1) + b(2, 3)) * 4


@pytest.mark.parametrize("k,order", [(3, 10), (5, 12), (7, 12), (9, 12), (11, 14)])
def test_Dk_series_identities(k, order):
    checks = check_Dk_series_identities(k, order)
    kappa = (k + 1) // 2
    # the row-3 form carries an extra xi^-1 b_2 factor, costing one more order
    tops = (order - kappa + 1, order - kappa + 1, order - kappa)
    for c, top in zip(checks, tops):
        assert c.passed, (c.name, c.failures)
        assert c.exponents[-1] == top
        # the closed form reaches down to negative powers that must cancel
        assert min(c.exponents) <= 1


def test_Dk_series_lowest_window_point():
    # left: coefficientwise derivation; right: series algebra
    (c1, _, _) = check_Dk_series_identities(5, 12)
    assert c1.exponents[0] < 1 and not c1.failures


def test_Dk_series_preconditions():
    with pytest.raises(ValueError):
        check_Dk_series_identities(1, 5)
    with pytest.raises(ValueError):
        check_Dk_series_identities(7, 5)


@pytest.mark.parametrize("k", (1, 3, 5))
def test_m_series_annihilated(k):
    assert check_m_annihilated(k, 8).passed
