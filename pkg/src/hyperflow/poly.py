"""Sparse multivariate polynomials over the rationals in the coordinates b[i,j].

A coordinate ``b[i,j]`` has a row ``i`` in {1, 2, 3} and an odd index ``j >= 1``
and carries the weight ``i + j``.  Polynomials are immutable mappings from
monomials to nonzero :class:`fractions.Fraction` coefficients.

Monomials are tuples of ``(Coordinate, exponent)`` pairs sorted by coordinate;
they are an internal representation and are exposed read-only through
:attr:`Polynomial.terms`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, NamedTuple, Union

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[Coordinate, int], ...], sorted by coordinate

ROWS = (1, 2, 3)


class _CoordinateBase(NamedTuple):
    row: int
    index: int


class Coordinate(_CoordinateBase):
    """Generator ``b[row,index]``; ordered lexicographically by (row, index)."""

    __slots__ = ()

    def __new__(cls, row: int, index: int) -> "Coordinate":
        if row not in ROWS:
            raise ValueError(f"coordinate row must be 1, 2 or 3, got {row!r}")
        if not isinstance(index, int) or index < 1 or index % 2 == 0:
            raise ValueError(f"coordinate index must be odd and >= 1, got {index!r}")
        return super().__new__(cls, row, index)

    @property
    def weight(self) -> int:
        return self.row + self.index

    def __str__(self) -> str:
        return f"b[{self.row},{self.index}]"

    def __repr__(self) -> str:
        return f"Coordinate({self.row}, {self.index})"

    @classmethod
    def parse(cls, text: str) -> "Coordinate":
        m = _COORD_RE.fullmatch(text.strip())
        if m is None:
            raise ValueError(f"not a coordinate: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


_COORD_RE = re.compile(r"b\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def monomial_weight(mono: Monomial) -> int:
    return sum(c.row * e + c.index * e for c, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for c, e in b:
        merged[c] = merged.get(c, 0) + e
    return tuple(sorted(merged.items()))


def _mono_key(mono: Monomial):
    # graded: ascending weight; inside one weight, lexicographic with the
    # largest coordinate b[3,*] > b[2,*] > b[1,*] (then larger index) leading
    return (monomial_weight(mono), [(-c.row, -c.index, -e) for c, e in reversed(mono)])


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


class AnyWeight:
    """Weight reported for the zero polynomial, which is homogeneous of every weight."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ANY_WEIGHT"


ANY_WEIGHT = AnyWeight()


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _as_rational(coeff)
                if coeff:
                    clean[mono] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already canonical: Fraction coefficients, none zero
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value: Rational) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def var(cls, row: int, index: int) -> "Polynomial":
        return cls._raw({((Coordinate(row, index), 1),): Fraction(1)})

    @classmethod
    def coordinate(cls, c: Coordinate) -> "Polynomial":
        return cls._raw({((c, 1),): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coordinates(self) -> set[Coordinate]:
        return {c for mono in self._terms for c, _ in mono}

    def max_index(self) -> int:
        return max((c.index for c in self.coordinates()), default=0)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: Rational) -> "Polynomial":
        factor = _as_rational(factor)
        if not factor:
            return ZERO
        return Polynomial._raw({m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text form ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _mono_key(t[0]))

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Polynomial({to_text(self)!r})"


ZERO = Polynomial()
ONE = Polynomial.constant(1)


def b(row: int, index: int) -> Polynomial:
    """The coordinate polynomial ``b[row,index]``."""
    return Polynomial.var(row, index)


def _mono_text(mono: Monomial) -> str:
    return "*".join(str(c) if e == 1 else f"{c}^{e}" for c, e in reversed(mono))


def to_text(p: Polynomial) -> str:
    """Canonical text form, e.g. ``1/2*b[3,1] - 2*b[1,3] - 3*b[1,1]^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = _mono_text(mono)
        else:
            body = f"{mag}*{_mono_text(mono)}"
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :func:`to_text` (accepts any term order)."""
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, body = m.group(1), m.group(2).strip()
        pos = m.end()
        coeff = Fraction(1)
        factors: dict = {}
        for piece in body.split("*"):
            piece = piece.strip()
            if piece.startswith("b["):
                base, _, exp = piece.partition("^")
                c = Coordinate.parse(base)
                factors[c] = factors.get(c, 0) + (int(exp) if exp else 1)
            else:
                coeff *= Fraction(piece)
        if sign == "-":
            coeff = -coeff
        out = out + Polynomial({tuple(sorted(factors.items())): coeff})
    return out


# operations ---------------------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


Assignment = Mapping[Coordinate, Rational]


def evaluate(p: Polynomial, point: Assignment) -> Fraction:
    """Exact value of ``p`` at ``point``; unassigned coordinates read as 0."""
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        value = coeff
        for c, e in mono:
            x = point.get(c, 0)
            if not x:
                value = 0
                break
            value = value * Fraction(x) ** e
        total += value
    return total


def evaluate_float(p: Polynomial, point: Mapping[Coordinate, float]) -> float:
    total = 0.0
    for mono, coeff in p.terms.items():
        value = float(coeff)
        for c, e in mono:
            value *= point.get(c, 0.0) ** e
        total += value
    return total


def homogeneous_weight(p: Polynomial):
    """Common weight of all monomials, ``None`` if mixed, ``ANY_WEIGHT`` for zero."""
    weights = {monomial_weight(m) for m in p.terms}
    if not weights:
        return ANY_WEIGHT
    if len(weights) == 1:
        return weights.pop()
    return None


def derive(p: Polynomial, image: Callable[[Coordinate], Polynomial]) -> Polynomial:
    """Extend a rule on generators to ``p`` as a derivation (Leibniz rule).

    ``image`` must be defined on every coordinate that occurs in ``p``.
    """
    out: dict = {}
    images: dict = {}
    for mono, coeff in p.terms.items():
        for pos, (c, e) in enumerate(mono):
            img = images.get(c)
            if img is None:
                img = images[c] = image(c)
            if not img:
                continue
            if e == 1:
                rest = mono[:pos] + mono[pos + 1:]
            else:
                rest = mono[:pos] + ((c, e - 1),) + mono[pos + 1:]
            factor = coeff * e
            for m2, c2 in img.terms.items():
                m = _mono_mul(rest, m2)
                s = out.get(m, 0) + factor * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
    return Polynomial._raw(out)


def is_canonical(p: Polynomial) -> bool:
    """Structural check: no zero coefficients, Fraction coefficients, sorted valid monomials."""
    for mono, coeff in p.terms.items():
        if not isinstance(coeff, Fraction) or coeff == 0:
            return False
        coords = [c for c, _ in mono]
        if coords != sorted(set(coords)):
            return False
        if any(not isinstance(e, int) or e < 1 for _, e in mono):
            return False
    return True


def sum_polynomials(polys: Iterable[Polynomial]) -> Polynomial:
    out: dict = {}
    for p in polys:
        for mono, coeff in p.terms.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
    return Polynomial._raw(out)
