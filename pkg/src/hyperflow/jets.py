"""Time-Taylor jets along the flow d/dt b = D_k b from a finitely supported point.

The coordinate space is infinite-dimensional and no finite truncation of it is
invariant under D_k, so instead of stepping an integrator we expand every
coordinate as an exact power series in t to a fixed order.  The coefficient
recursion is the usual Taylor-mode one: if ``x' = F(x)`` then
``x_{n+1} = [F(x)]_n / (n+1)``.  Only coordinates of index at most
``j + N (k + 1)`` ever enter the N-jet of ``b[i,j]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from hyperflow.derivations import apply_power, check_op_index, generator_image
from hyperflow.poly import Coordinate, Polynomial, evaluate, evaluate_float
from hyperflow.series import lambda_poly


@dataclass(frozen=True)
class TimeJet:
    """Truncated Taylor series ``sum_n coeffs[n] t^n``, exact to ``t^order``."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __call__(self, t: float) -> float:
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * t + float(a)
        return acc

    def exact_at(self, t: Fraction) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def derivative(self) -> "TimeJet":
        return TimeJet(tuple(n * a for n, a in enumerate(self.coeffs) if n))

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])


def _jet_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j in range(0, n + 1 - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def compose(p: Polynomial, jets: Mapping[Coordinate, Sequence[Fraction]], n: int) -> list:
    """Coefficients 0..n of ``p(x(t))`` given the coordinate jets (missing ones are 0)."""
    out = [Fraction(0)] * (n + 1)
    zero = [Fraction(0)] * (n + 1)
    for mono, coeff in p.terms.items():
        term = None
        for c, e in mono:
            x = list(jets.get(c, zero))[: n + 1]
            if len(x) < n + 1:
                raise ValueError(f"jet of {c} is too short for order {n}")
            for _ in range(e):
                term = x if term is None else _jet_mul(term, x, n)
        if term is None:
            out[0] += coeff
            continue
        for i, v in enumerate(term):
            if v:
                out[i] += coeff * v
    return out


class JetEngine:
    """Exact coordinate jets for the D_k flow from ``initial`` (memoized per coordinate)."""

    def __init__(self, k: int, initial: Mapping[Coordinate, Fraction]):
        self.k = check_op_index(k)
        self.initial = {c: Fraction(v) for c, v in initial.items()}
        self._jets: dict[Coordinate, list[Fraction]] = {}
        self.max_index_touched = 0

    def jet(self, c: Coordinate, order: int) -> list[Fraction]:
        """Coefficients ``0..order`` of the t-expansion of ``b[c]``."""
        known = self._jets.get(c)
        if known is None:
            known = self._jets[c] = [self.initial.get(c, Fraction(0))]
            self.max_index_touched = max(self.max_index_touched, c.index)
        while len(known) <= order:
            n = len(known) - 1
            # x_{n+1} = [F_c(x)]_n / (n + 1), which needs the other jets to order n
            field_c = generator_image(self.k, c)
            deps = {d: self.jet(d, n) for d in field_c.coordinates()}
            known.append(compose(field_c, deps, n)[n] / (n + 1))
        return known[: order + 1]

    def time_jet(self, c: Coordinate, order: int) -> TimeJet:
        return TimeJet(tuple(self.jet(c, order)))

    def poly_jet(self, p: Polynomial, order: int) -> TimeJet:
        jets = {c: self.jet(c, order) for c in p.coordinates()}
        return TimeJet(tuple(compose(p, jets, order)))


def taylor_jet(k: int, initial, c: Coordinate, order: int, method: str = "taylor") -> TimeJet:
    """N-jet of ``b[c]`` along the ``D_k`` flow.

    ``method="symbolic"`` evaluates ``D_k^n b[c] / n!`` at the initial point; it is
    slow but independent of the Taylor-mode recursion and is used to cross-check it.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if method == "symbolic":
        check_op_index(k)
        coeffs = []
        p = Polynomial.coordinate(c)
        for n in range(order + 1):
            coeffs.append(evaluate(p, initial) / math.factorial(n))
            p = apply_power(k, p, 1)
        return TimeJet(tuple(coeffs))
    if method != "taylor":
        raise ValueError(f"unknown method {method!r}")
    engine = JetEngine(k, initial)
    jet = engine.time_jet(c, order)
    bound = c.index + order * (k + 1)
    assert engine.max_index_touched <= bound, (engine.max_index_touched, bound)
    return jet


def lambda_jet(k: int, initial, j: int, order: int, engine: JetEngine | None = None) -> TimeJet:
    """Jet of ``lambda_{2j+2}(x(t))``; every coefficient past the constant must vanish."""
    if order < 1:
        raise ValueError("order must be >= 1")
    engine = engine or JetEngine(k, initial)
    return engine.poly_jet(lambda_poly(j), order)


@dataclass
class FlowSpec:
    k: int
    initial: dict[Coordinate, Fraction]
    order: int = 8
    coords: list[Coordinate] = field(default_factory=list)
    lambdas: list[int] = field(default_factory=list)
    times: list[float] = field(default_factory=list)
    # flag grid points whose last retained jet term exceeds this
    truncation_tolerance: float = 1e-6

    def __post_init__(self):
        check_op_index(self.k)
        if self.order < 1:
            raise ValueError("order must be >= 1")


@dataclass
class FlowTable:
    columns: list[str]
    rows: list[list[float]]
    warnings: list[str]
    lambda_jets: dict[int, TimeJet]

    @property
    def conserved(self) -> bool:
        return all(jet.is_constant() for jet in self.lambda_jets.values())


def time_grid(t0: float, t1: float, steps: int) -> list[float]:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    return [t0 + (t1 - t0) * i / steps for i in range(steps + 1)]


def flow_sample(spec: FlowSpec) -> FlowTable:
    """Float samples of the coordinate and lambda jets on the time grid."""
    engine = JetEngine(spec.k, spec.initial)
    n = spec.order
    lambdas = {j: lambda_poly(j) for j in spec.lambdas}
    needed = set(spec.coords)
    for p in lambdas.values():
        needed |= p.coordinates()
    jets = {c: engine.time_jet(c, n) for c in sorted(needed)}
    lambda_jets = {j: engine.poly_jet(p, n) for j, p in lambdas.items()}
    lambda0 = {j: float(evaluate(p, spec.initial)) for j, p in lambdas.items()}

    columns = ["t"] + [str(c) for c in spec.coords]
    columns += [f"lambda_{2 * j + 2}" for j in spec.lambdas]
    columns += [f"drift_{2 * j + 2}" for j in spec.lambdas]

    rows = []
    flagged = []
    for t in spec.times:
        point = {c: jet(t) for c, jet in jets.items()}
        tail = max((abs(float(jet[n])) * abs(t) ** n for jet in jets.values()), default=0.0)
        if tail > spec.truncation_tolerance:
            flagged.append(t)
        values = [evaluate_float(p, point) for p in lambdas.values()]
        row = [t] + [point[c] for c in spec.coords] + values
        row += [abs(v - lambda0[j]) for v, j in zip(values, lambdas)]
        rows.append(row)

    warnings = []
    if flagged:
        warnings.append(
            f"{len(flagged)} grid time(s) with |t| up to {max(map(abs, flagged)):.3g} exceed the "
            f"truncation tolerance {spec.truncation_tolerance:g} for order {n}"
        )
    return FlowTable(columns, rows, warnings, lambda_jets)
