"""Reeb spectrum of an ellipsoid and its lattice-path bookkeeping.

The boundary of the ellipsoid E(a_1, ..., a_n) carries one simple closed Reeb
orbit per axis; the m-fold cover of the axis-i orbit has action m * a_i.  When
some ratio a_i / a_j is rational these actions collide, so the spectrum is
ordered after a symbolic first-order perturbation of the parameters:

* ``Side.CANONICAL`` multiplies each a_i by (1 + i*ε), which separates every
  tie for an arbitrary number of axes;
* ``Side.PLUS`` / ``Side.MINUS`` (two axes only) perturb the second parameter
  to a_2 ± ε, modelling evaluation just above / below a rational ratio.

``gamma(params, k)`` is the lattice point Γ_k recording how many covers of
each axis orbit appear among the k smallest actions; equivalently it is the
unique minimizer of max_i(perturbed a_i * v_i) over nonnegative integer
vectors with v_1 + ... + v_n = k.  It is computed by a greedy walk (each step
increments the axis whose next cover is cheapest) with memoized prefixes; the
equivalence with the min-max description is enforced against a brute-force
oracle in the test suite.

``jump_set(k)`` = {k/1, (k-1)/2, ..., 1/k} collects the two-axis ratios at
which Γ_k changes, and ``candidate_discontinuities`` aggregates these for the
indices 3i - 1 relevant to degree-d curve counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .exact import DualRational, LatticePoint, rational

__all__ = [
    "Side",
    "OrbitId",
    "SpectrumParams",
    "normalized",
    "perturbed_value",
    "gamma",
    "orbit",
    "action",
    "action_dual",
    "jump_set",
    "candidate_discontinuities",
]


class Side(Enum):
    """Which symbolic perturbation resolves rational ties in the spectrum."""

    MINUS = "minus"
    CANONICAL = "canonical"
    PLUS = "plus"

    def suffix(self) -> str:
        return {"minus": "-", "canonical": "", "plus": "+"}[self.value]


@dataclass(frozen=True)
class OrbitId:
    """A closed Reeb orbit: the ``multiplicity``-fold cover of the ``axis`` orbit (1-based axis)."""

    axis: int
    multiplicity: int

    def __str__(self) -> str:
        return f"nu{self.axis}^{self.multiplicity}"


@dataclass(frozen=True)
class SpectrumParams:
    """Ellipsoid parameters plus the tie-breaking side.

    ``a`` is a tuple of positive rationals (ints and 'p/q' strings are
    coerced).  PLUS/MINUS sides are only meaningful for two axes.
    """

    a: tuple[Fraction, ...]
    side: Side = Side.CANONICAL

    def __post_init__(self) -> None:
        coerced = tuple(rational(x) for x in self.a)
        object.__setattr__(self, "a", coerced)
        if not coerced:
            raise ValueError("need at least one ellipsoid parameter")
        if any(x <= 0 for x in coerced):
            raise ValueError(f"ellipsoid parameters must be positive, got {coerced}")
        if self.side is not Side.CANONICAL and len(coerced) != 2:
            raise ValueError("PLUS/MINUS sides are defined for two-axis ellipsoids only")

    @property
    def n(self) -> int:
        return len(self.a)

    def describe(self) -> str:
        from .exact import format_rational

        return ",".join(format_rational(x) for x in self.a) + self.side.suffix()


def normalized(a: int | str | Fraction, side: Side = Side.CANONICAL) -> SpectrumParams:
    """Parameters for the normalized ellipsoid E(1, a)."""
    return SpectrumParams((Fraction(1), rational(a)), side)


def perturbed_value(params: SpectrumParams, axis: int, multiplicity: int) -> DualRational:
    """Symbolically perturbed action of the multiplicity-fold cover on the given axis.

    CANONICAL: a_i -> a_i * (1 + i*ε), so the value is (m*a_i, i*m*a_i*ε).
    PLUS/MINUS: a_2 -> a_2 ± ε, so axis 2 carries an ε-part of ±m and axis 1
    is unperturbed.
    """
    if not 1 <= axis <= params.n:
        raise ValueError(f"axis must be in 1..{params.n}, got {axis}")
    if multiplicity < 1:
        raise ValueError(f"multiplicity must be >= 1, got {multiplicity}")
    main = params.a[axis - 1] * multiplicity
    if params.side is Side.CANONICAL:
        return DualRational(main, axis * main)
    if axis == 1:
        return DualRational(main, Fraction(0))
    eps = Fraction(multiplicity)
    return DualRational(main, eps if params.side is Side.PLUS else -eps)


class _Walk:
    """Memoized greedy walk through the perturbed spectrum of one parameter set."""

    __slots__ = ("params", "counts", "steps", "points")

    def __init__(self, params: SpectrumParams) -> None:
        self.params = params
        self.counts = [0] * params.n
        self.steps: list[OrbitId] = []
        self.points: list[LatticePoint] = [tuple(self.counts)]

    def ensure(self, k: int) -> None:
        while len(self.steps) < k:
            best_axis = min(
                range(1, self.params.n + 1),
                key=lambda i: perturbed_value(self.params, i, self.counts[i - 1] + 1),
            )
            self.counts[best_axis - 1] += 1
            self.steps.append(OrbitId(best_axis, self.counts[best_axis - 1]))
            self.points.append(tuple(self.counts))


_WALKS: dict[SpectrumParams, _Walk] = {}


def _walk(params: SpectrumParams) -> _Walk:
    walk = _WALKS.get(params)
    if walk is None:
        walk = _WALKS[params] = _Walk(params)
    return walk


def gamma(params: SpectrumParams, k: int) -> LatticePoint:
    """Γ_k: per-axis cover counts among the k smallest perturbed actions."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    walk = _walk(params)
    walk.ensure(k)
    return walk.points[k]


def orbit(params: SpectrumParams, k: int) -> OrbitId:
    """The k-th closed orbit (k >= 1) in increasing perturbed action."""
    if k < 1:
        raise ValueError(f"orbit index must be >= 1, got {k}")
    walk = _walk(params)
    walk.ensure(k)
    return walk.steps[k - 1]


def action(params: SpectrumParams, k: int) -> Fraction:
    """Unperturbed action of the k-th orbit (the ε-free part; side-independent)."""
    o = orbit(params, k)
    return params.a[o.axis - 1] * o.multiplicity


def action_dual(params: SpectrumParams, k: int) -> DualRational:
    """Perturbed action of the k-th orbit."""
    o = orbit(params, k)
    return perturbed_value(params, o.axis, o.multiplicity)


def jump_set(k: int) -> tuple[Fraction, ...]:
    """J_k = {i/(j+1) : i + j = k, i >= 1, j >= 0}, ascending.

    For the normalized ellipsoid E(1, a), Γ_k changes exactly when a crosses
    a value in J_k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return tuple(sorted(Fraction(i, k - i + 1) for i in range(1, k + 1)))


def candidate_discontinuities(d: int, lower: int | str | Fraction) -> tuple[Fraction, ...]:
    """Potential jump locations of degree-<= d counts: union of J_{3i-1}, i = 1..d.

    Only values strictly greater than ``lower`` are returned, sorted ascending
    and deduplicated.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    low = rational(lower)
    values: set[Fraction] = set()
    for i in range(1, d + 1):
        values.update(jump_set(3 * i - 1))
    return tuple(sorted(v for v in values if v > low))
