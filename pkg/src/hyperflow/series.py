"""Truncated Laurent series in xi with polynomial coefficients, and the lambda polynomials.

A :class:`LaurentSeries` knows its coefficients exactly for every exponent up to
``high``: those below ``low`` are zero, those in ``[low, high]`` are stored (absent
means zero).  Above ``high`` the series is unknown and asking for a coefficient
there raises :class:`TruncationError`.  ``high = None`` marks an exact Laurent
polynomial.

The generating functions are

    b_i(xi) = sum_{j>=1} b[i,2j-1] xi^j,
    m(xi)   = xi^-1 + sum_{j>=1} lambda_{2j+2} xi^j,

tied together by

    4 m = b_2^2 + 2 b_3 (1 - b_1) + 4 (xi^-1 + 2 b[1,1]) (1 - b_1)^2,

which is how :func:`lambda_poly` defines the lambda polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from hyperflow.derivations import Derivation, check_op_index
from hyperflow.poly import ONE, ZERO, Polynomial, b, sum_polynomials


class TruncationError(ValueError):
    """A coefficient beyond the valid range of a truncated series was requested."""


def _min_high(*highs):
    finite = [h for h in highs if h is not None]
    return min(finite) if finite else None


class LaurentSeries:
    __slots__ = ("low", "high", "_coeffs")

    def __init__(self, coeffs: Mapping[int, Polynomial], low: int, high: int | None):
        if high is not None and high < low:
            raise TruncationError(f"empty valid range [{low}, {high}]")
        clean = {}
        for n, c in coeffs.items():
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(c)
            if not c:
                continue
            if n < low or (high is not None and n > high):
                raise ValueError(f"coefficient at xi^{n} outside [{low}, {high}]")
            clean[n] = c
        self.low = low
        self.high = high
        self._coeffs = clean

    @classmethod
    def monomial(cls, n: int, coeff=ONE) -> "LaurentSeries":
        """Exact series ``coeff * xi^n``."""
        return cls({n: coeff}, low=n, high=None)

    @classmethod
    def constant(cls, coeff) -> "LaurentSeries":
        return cls.monomial(0, coeff)

    @property
    def exact(self) -> bool:
        return self.high is None

    def __getitem__(self, n: int) -> Polynomial:
        if self.high is not None and n > self.high:
            raise TruncationError(f"xi^{n} is beyond the truncation order {self.high}")
        return self._coeffs.get(n, ZERO)

    def valid_exponents(self) -> range:
        top = self.high if self.high is not None else max(self._coeffs, default=self.low)
        return range(self.low, top + 1)

    def items(self):
        return sorted(self._coeffs.items())

    def map(self, fn) -> "LaurentSeries":
        """Apply ``fn`` to each coefficient; the truncation is unchanged."""
        return LaurentSeries({n: fn(c) for n, c in self._coeffs.items()}, self.low, self.high)

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        low = min(self.low, other.low)
        high = _min_high(self.high, other.high)
        coeffs = {}
        for n in set(self._coeffs) | set(other._coeffs):
            if high is None or n <= high:
                coeffs[n] = self._coeffs.get(n, ZERO) + other._coeffs.get(n, ZERO)
        return LaurentSeries(coeffs, low, high)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return self.map(lambda c: -c)

    def __sub__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def scale(self, factor) -> "LaurentSeries":
        """Multiply every coefficient by a rational or a polynomial."""
        return self.map(lambda c: c * factor)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        low = self.low + other.low
        high = _min_high(
            None if self.high is None else self.high + other.low,
            None if other.high is None else other.high + self.low,
        )
        if high is not None and high < low:
            raise TruncationError(f"product has empty valid range [{low}, {high}]")
        buckets: dict[int, list] = {}
        for n1, c1 in self._coeffs.items():
            for n2, c2 in other._coeffs.items():
                n = n1 + n2
                if high is None or n <= high:
                    buckets.setdefault(n, []).append(c1 * c2)
        coeffs = {n: sum_polynomials(ps) for n, ps in buckets.items()}
        return LaurentSeries(coeffs, low, high)

    __rmul__ = __mul__

    def truncate(self, high: int) -> "LaurentSeries":
        if self.high is not None and high > self.high:
            raise TruncationError(f"cannot extend truncation from {self.high} to {high}")
        return LaurentSeries({n: c for n, c in self._coeffs.items() if n <= high}, self.low, high)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.low, self.high, self._coeffs) == (other.low, other.high, other._coeffs)

    def __repr__(self) -> str:
        body = ", ".join(f"xi^{n}: {c}" for n, c in self.items())
        top = "exact" if self.high is None else f"O(xi^{self.high + 1})"
        return f"LaurentSeries({{{body}}}, low={self.low}, {top})"


def series_add(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    return s + t


def series_mul(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    return s * t


def series_scale(s: LaurentSeries, factor) -> LaurentSeries:
    return s.scale(factor)


def xi(n: int = 1) -> LaurentSeries:
    return LaurentSeries.monomial(n)


def b_series(row: int, order: int) -> LaurentSeries:
    """``b_row(xi)`` known through ``xi^order``."""
    if row not in (1, 2, 3):
        raise ValueError(f"row must be 1, 2 or 3, got {row!r}")
    if order < 1:
        raise ValueError("order must be >= 1")
    return LaurentSeries({j: b(row, 2 * j - 1) for j in range(1, order + 1)}, low=1, high=order)


def laurent_poly(terms: Mapping[int, Polynomial]) -> LaurentSeries:
    """Exact finite Laurent polynomial from ``{exponent: coefficient}``."""
    terms = {n: c for n, c in terms.items()}
    low = min(terms, default=0)
    return LaurentSeries(terms, low=low, high=None)


@lru_cache(maxsize=None)
def rhs_L1(order: int) -> LaurentSeries:
    """``4 m(xi)`` as the right-hand side of the generating relation, valid through ``xi^order``.

    The ``xi^-1 (1 - b_1)^2`` term needs ``b_1`` one order further, so the
    b-series are built to ``order + 1``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    n = order + 1
    b1, b2, b3 = (b_series(i, n) for i in (1, 2, 3))
    one_minus_b1 = 1 - b1
    prefactor = laurent_poly({-1: ONE, 0: b(1, 1) * 2})
    rhs = b2 * b2 + (b3 * one_minus_b1).scale(2) + (prefactor * one_minus_b1 * one_minus_b1).scale(4)
    return rhs.truncate(order)


def lambda_poly(j: int, order: int | None = None) -> Polynomial:
    """The polynomial lambda_{2j+2}: a quarter of the xi^j coefficient of ``4 m``."""
    if j < 1:
        raise ValueError("j must be >= 1")
    if order is None:
        order = j
    return rhs_L1(order)[j].scale(Fraction(1, 4))


def lambda_table(max_j: int) -> dict[int, Polynomial]:
    """``{j: lambda_{2j+2}}`` for ``1 <= j <= max_j``."""
    rhs = rhs_L1(max_j)
    return {j: rhs[j].scale(Fraction(1, 4)) for j in range(1, max_j + 1)}


def apply_derivation_series(k: int, s: LaurentSeries) -> LaurentSeries:
    return s.map(Derivation(k))


# identities used to show D_k m(xi) = 0 ------------------------------------


@dataclass
class IdentityCheck:
    """Coefficientwise comparison of two series on their common valid window."""

    name: str
    exponents: list[int] = field(default_factory=list)
    failures: dict[int, Polynomial] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.exponents) and not self.failures


def compare_series(name: str, lhs: LaurentSeries, rhs: LaurentSeries) -> IdentityCheck:
    """Compare on ``[min(low), min(high)]``; below both lows the series agree trivially."""
    high = _min_high(lhs.high, rhs.high)
    if high is None:
        high = max(max(lhs.valid_exponents()), max(rhs.valid_exponents()))
    low = min(lhs.low, rhs.low)
    check = IdentityCheck(name)
    for n in range(low, high + 1):
        check.exponents.append(n)
        diff = lhs[n] - rhs[n]
        if diff:
            check.failures[n] = diff
    return check


def check_D1_series_identities(order: int) -> list[IdentityCheck]:
    """D_1 b_1 = b_2, D_1 b_2 = b_3, D_1 b_3 = 4 (2 b11 b_2 + b21 b_1 + xi^-1 b_2 - b21)."""
    if order < 2:
        raise ValueError("order must be >= 2")
    b1, b2, b3 = (b_series(i, order) for i in (1, 2, 3))
    u3 = (b2.scale(b(1, 1) * 2) + b1.scale(b(2, 1)) + xi(-1) * b2 - LaurentSeries.constant(b(2, 1))).scale(4)
    return [
        compare_series("U1", apply_derivation_series(1, b1), b2),
        compare_series("U2", apply_derivation_series(1, b2), b3),
        compare_series("U3", apply_derivation_series(1, b3), u3),
    ]


def _xi_sum(terms) -> LaurentSeries:
    # exact Laurent polynomial from (exponent, coefficient) pairs; repeated exponents add
    acc: dict[int, Polynomial] = {}
    for n, c in terms:
        acc[n] = acc.get(n, ZERO) + c
    return laurent_poly(acc) if acc else LaurentSeries.constant(ZERO)


def Dk_series_rhs(k: int, order: int) -> tuple[LaurentSeries, LaurentSeries, LaurentSeries]:
    """Closed series forms of ``D_k b_i(xi)`` with ``k = 2 kappa - 1``, i = 1, 2, 3."""
    check_op_index(k)
    kappa = (k + 1) // 2
    b1, b2, b3 = (b_series(i, order) for i in (1, 2, 3))
    S = range(1, kappa)

    def weighted(row):
        # sum_s b[row,2s-1] xi^(s+1-kappa)
        return _xi_sum((s + 1 - kappa, b(row, 2 * s - 1)) for s in S)

    lead = xi(1 - kappa)
    factor = lead - weighted(1)  # xi^(1-kappa) - sum_s b[1,2s-1] xi^(s+1-kappa)
    tail2 = _xi_sum((p + 1 - kappa, b(2, 2 * p - 1)) for p in S)
    tail3 = _xi_sum((p + 1 - kappa, b(3, 2 * p - 1)) for p in S)

    d_b1 = b1 * weighted(2) + b2 * factor - tail2
    d_b2 = b1 * weighted(3) + b3 * factor - tail3

    b11, b21 = b(1, 1), b(2, 1)
    first = (b2 * laurent_poly({0: b11 * 2, -1: ONE}) - LaurentSeries.constant(b21)) * factor
    inner = _xi_sum(
        [(1 - kappa, b21)]
        + [(s + 1 - kappa, b11 * b(2, 2 * s - 1) * 2 + b(2, 2 * s + 1)) for s in S]
    )
    tail = _xi_sum(
        (p + 1 - kappa, b11 * b(2, 2 * p - 1) * 2 + b21 * b(1, 2 * p - 1) + b(2, 2 * p + 1))
        for p in S
    )
    d_b3 = (
        first.scale(4)
        + (b1 * inner).scale(4)
        + b2 * weighted(3)
        - b3 * weighted(2)
        - tail.scale(4)
    )
    return d_b1, d_b2, d_b3


def check_Dk_series_identities(k: int, order: int) -> list[IdentityCheck]:
    """Compare ``D_k b_i(xi)`` computed coefficientwise with the closed series forms."""
    check_op_index(k)
    if k < 3:
        raise ValueError("k must be >= 3")
    if order < k:
        raise ValueError("order must be >= k")
    rhs = Dk_series_rhs(k, order)
    return [
        compare_series(f"D{k}(b{i})", apply_derivation_series(k, b_series(i, order)), r)
        for i, r in zip((1, 2, 3), rhs)
    ]


def check_m_annihilated(k: int, order: int) -> IdentityCheck:
    """``D_k`` kills every valid coefficient of ``4 m(xi)``."""
    s = rhs_L1(order)
    zero = LaurentSeries({}, s.low, s.high)
    return compare_series(f"D{k}(m)", apply_derivation_series(k, s), zero)


def verify_annihilation(k: int, j: int) -> Polynomial:
    """``D_k lambda_{2j+2}``; expected to vanish."""
    return Derivation(k)(lambda_poly(j))
