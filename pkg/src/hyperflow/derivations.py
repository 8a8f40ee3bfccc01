"""The commuting derivations D_k (k odd) on the polynomial ring in b[i,j].

On generators, ``D_1`` acts by

    D_1 b[1,j] = b[2,j],   D_1 b[2,j] = b[3,j],
    D_1 b[3,j] = 4 (2 b[1,1] b[2,j] + b[2,1] b[1,j] + b[2,j+2]),

and ``D_k`` for ``k >= 3`` by explicit quadratic/cubic closed forms on each row
(:func:`closed_form`).  Rows 2 and 3 of ``D_k`` are defined compositionally by
``D_k b[2,j] = D_1 D_k b[1,j]`` and ``D_k b[3,j] = D_1 D_k b[2,j]``;
:func:`check_closed_forms` confirms the closed forms agree with that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from hyperflow.poly import ZERO, Coordinate, Polynomial, b, derive


def check_op_index(k) -> int:
    """Validate an operator index: odd natural number."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1 or k % 2 == 0:
        raise ValueError(f"operator index must be an odd positive integer, got {k!r}")
    return k


def _d1_row3(j: int) -> Polynomial:
    # 4 (2 b11 b2j + b21 b1j + b2,j+2)
    return (b(1, 1) * b(2, j) * 2 + b(2, 1) * b(1, j) + b(2, j + 2)) * 4


def _antisym(k: int, j: int, upper: int, lower: int) -> Polynomial:
    # sum_s b[upper,2s-1] b[lower,j+k-2s-1] - b[lower,2s-1] b[upper,j+k-2s-1]
    out = ZERO
    for s in range(1, (k - 1) // 2 + 1):
        out = out + b(upper, 2 * s - 1) * b(lower, j + k - 2 * s - 1)
        out = out - b(lower, 2 * s - 1) * b(upper, j + k - 2 * s - 1)
    return out


def closed_form(k: int, row: int, j: int) -> Polynomial:
    """Explicit formula for ``D_k b[row,j]`` (valid for every odd k, including 1)."""
    check_op_index(k)
    Coordinate(row, j)
    if row == 1:
        return b(2, j + k - 1) + _antisym(k, j, 2, 1)
    if row == 2:
        return b(3, j + k - 1) + _antisym(k, j, 3, 1)
    half = (k - 1) // 2
    out = _d1_row3(j + k - 1)
    for s in range(1, half + 1):
        out = out + _d1_row3(2 * s - 1) * b(1, j + k - 2 * s - 1)
        out = out + b(3, 2 * s - 1) * b(2, j + k - 2 * s - 1)
        out = out - b(2, 2 * s - 1) * b(3, j + k - 2 * s - 1)
        out = out - b(1, 2 * s - 1) * _d1_row3(j + k - 2 * s - 1)
    return out


@lru_cache(maxsize=None)
def _image(k: int, row: int, index: int) -> Polynomial:
    if k == 1:
        if row == 1:
            return b(2, index)
        if row == 2:
            return b(3, index)
        return _d1_row3(index)
    return closed_form(k, row, index)


def generator_image(k: int, c: Coordinate) -> Polynomial:
    """``D_k`` applied to the generator ``c`` (memoized)."""
    check_op_index(k)
    if not isinstance(c, Coordinate):
        c = Coordinate(*c)
    return _image(k, c.row, c.index)


@dataclass(frozen=True)
class Derivation:
    """The operator D_k; callable on polynomials."""

    k: int

    def __post_init__(self):
        check_op_index(self.k)

    def image(self, c: Coordinate) -> Polynomial:
        return _image(self.k, c.row, c.index)

    def __call__(self, p: Polynomial) -> Polynomial:
        return derive(p, self.image)


def apply(k: int, p: Polynomial) -> Polynomial:
    return Derivation(k)(p)


def apply_power(k: int, p: Polynomial, n: int) -> Polynomial:
    if n < 0:
        raise ValueError("power must be nonnegative")
    d = Derivation(k)
    for _ in range(n):
        if not p:
            break
        p = d(p)
    return p


def compositional_image(k: int, row: int, j: int) -> Polynomial:
    """``D_k b[row,j]`` built from row 1 by repeated ``D_1`` (the defining recipe)."""
    p = closed_form(k, 1, j)
    for _ in range(row - 1):
        p = apply(1, p)
    return p


def check_closed_forms(k: int, j: int) -> bool:
    """True iff the row-2 and row-3 closed forms equal D_1 of the previous row."""
    check_op_index(k)
    row1 = closed_form(k, 1, j)
    row2 = closed_form(k, 2, j)
    row3 = closed_form(k, 3, j)
    return apply(1, row1) == row2 and apply(1, row2) == row3


def commutator(k: int, l: int, p: Polynomial) -> Polynomial:
    """``[D_k, D_l] p = D_k D_l p - D_l D_k p``."""
    return apply(k, apply(l, p)) - apply(l, apply(k, p))


def commutator_on_generator(k: int, l: int, c: Coordinate) -> Polynomial:
    return apply(k, generator_image(l, c)) - apply(l, generator_image(k, c))
