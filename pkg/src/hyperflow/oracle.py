"""Deliberately naive expansion of the generating relation for lambda_{2j+2}.

Shares nothing with :mod:`hyperflow.series`: each product on the right-hand side
is expanded by explicit nested loops over its factors' terms, keeping only the
ones that land on xi^j.  Used to freeze the golden files and to cross-check
:func:`hyperflow.series.lambda_poly`.
"""

from fractions import Fraction

from hyperflow.poly import ONE, ZERO, b


def _b_term(row, p):
    # coefficient of xi^p in b_row(xi)
    return b(row, 2 * p - 1) if p >= 1 else ZERO


def _one_minus_b1_term(p):
    if p == 0:
        return ONE
    return -_b_term(1, p)


def naive_lambda(j):
    """lambda_{2j+2} by term-by-term expansion."""
    total = ZERO

    # b_2(xi)^2
    for p in range(1, j + 1):
        for q in range(1, j + 1):
            if p + q == j:
                total = total + _b_term(2, p) * _b_term(2, q)

    # 2 b_3(xi) (1 - b_1(xi))
    for p in range(1, j + 1):
        for q in range(0, j + 1):
            if p + q == j:
                total = total + _b_term(3, p) * _one_minus_b1_term(q) * 2

    # 4 (xi^-1 + 2 b[1,1]) (1 - b_1(xi))^2
    prefactor = {-1: ONE, 0: b(1, 1) * 2}
    for e, c in prefactor.items():
        for u in range(0, j + 2):
            for v in range(0, j + 2):
                if e + u + v == j:
                    total = total + c * _one_minus_b1_term(u) * _one_minus_b1_term(v) * 4

    return total * Fraction(1, 4)
