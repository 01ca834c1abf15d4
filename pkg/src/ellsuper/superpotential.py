"""Ellipsoidal superpotentials: counts of rational curves in a closed
symplectic target with one negative end on a small ellipsoid.

For a class A with c1(A) >= 2 and ellipsoid parameters a, the weighted count
T̃_A^a (curves asymptotic to the (c1(A)-1)-st Reeb orbit, weighted by its
multiplicity) satisfies the recursion

    T̃_A = Γ_{c1(A)-1}! * ( N_A - Σ  Π_s T̃_{A_s} / (|Aut| * (Σ_s Γ_{c1(A_s)-1})!) )

where N_A = N_A⟨psi^{c1(A)-2} pt⟩ is the stationary descendant of the closed
target, the sum runs over unordered decompositions A = A_1 + ... + A_k with
k >= 2, and Γ_i is the lattice path of E(a).  The unweighted count is
T_A = T̃_A / mult(o_{c1(A)-1}).

For CP^2, classes are degrees d, N_d = 1/(d!)^3 (a special case of the Fano
toric formula N_A = Π_i 1/(A·D_i)!), and decompositions are partitions of d.
"Infinite" parameters mean any a > 3d - 1, where every lattice path is
horizontal and the recursion closes over plain factorials; for these values
the generating function F(x) = 1 + Σ_d T̃_d x^d obeys
[x^d] F(x)^{3d} = (3d)!/(d!)^3.

As a function of a, T̃_d^a is piecewise constant with potential jumps on the
sets J_{3i-1}, i <= d; :func:`piecewise_table` tabulates it over an interval
with exact values on open subintervals and (Minus, Plus) side values at each
jump.  T_d^a may additionally jump where the orbit identity of o_{3d-1}
changes (at ratios in J_{3d-2}); :func:`normalized_table` includes those.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import aut_size, partitions, rational, vec_add, vec_factorial
from .orbits import Side, SpectrumParams, action, gamma, jump_set, normalized, orbit
from .report import Report

__all__ = [
    "TargetSpace",
    "CP2Target",
    "closed_descendant_toric",
    "wt_T",
    "T",
    "wt_T_infinity",
    "T_infinity",
    "embedding_bound",
    "PiecewiseTable",
    "piecewise_table",
    "normalized_table",
    "genfun_check",
]


class TargetSpace(ABC):
    """Closed symplectic target: homology classes are opaque hashable labels."""

    @abstractmethod
    def chern(self, label: object) -> int:
        """c1(A) evaluated on the class."""

    @abstractmethod
    def area(self, label: object) -> Fraction:
        """Symplectic area of the class."""

    @abstractmethod
    def point_descendant(self, label: object) -> Fraction:
        """The closed stationary descendant N_A⟨psi^{c1(A)-2} pt⟩."""

    @abstractmethod
    def decompositions(self, label: object) -> Iterable[Sequence[object]]:
        """Unordered decompositions of the class into effective summands,
        each as a canonical tuple (the trivial decomposition included)."""


def closed_descendant_toric(intersections: Sequence[int]) -> Fraction:
    """N_A⟨psi^{c1(A)-2} pt⟩ = Π_i 1/(A·D_i)! for a Fano toric target.

    ``intersections`` lists A·D_i over the toric divisors; all must be
    positive for the formula to apply.
    """
    values = tuple(intersections)
    if not values or any(v < 1 for v in values):
        raise ValueError(f"toric descendant formula needs positive intersections, got {values}")
    denominator = 1
    for v in values:
        denominator *= math.factorial(v)
    return Fraction(1, denominator)


@dataclass(frozen=True)
class CP2Target(TargetSpace):
    """The projective plane with its Fubini-Study form; classes are degrees d >= 1."""

    def _check(self, d: object) -> int:
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"CP2 classes are positive integer degrees, got {d!r}")
        return d

    def chern(self, label: object) -> int:
        return 3 * self._check(label)

    def area(self, label: object) -> Fraction:
        return Fraction(self._check(label))

    def point_descendant(self, label: object) -> Fraction:
        d = self._check(label)
        return closed_descendant_toric((d, d, d))

    def decompositions(self, label: object) -> Iterable[Sequence[object]]:
        return partitions(self._check(label))


_WT_CACHE: dict[tuple[TargetSpace, object, SpectrumParams], Fraction] = {}
_WT_INF_CACHE: dict[int, Fraction] = {}


def wt_T(target: TargetSpace, label: object, params: SpectrumParams) -> Fraction:
    """Weighted count T̃_A^a (multiplicity of the limiting orbit included)."""
    if params.n != 2:
        raise ValueError("superpotential counts are defined for two-axis ellipsoids")
    cache_key = (target, label, params)
    cached = _WT_CACHE.get(cache_key)
    if cached is not None:
        return cached
    c1 = target.chern(label)
    if c1 < 2:
        raise ValueError(f"class needs c1 >= 2, got c1 = {c1}")
    correction = Fraction(0)
    for decomposition in target.decompositions(label):
        parts = tuple(decomposition)
        if len(parts) < 2:
            continue
        product = Fraction(1)
        for part in parts:
            product *= wt_T(target, part, params)
            if product == 0:
                break
        if product == 0:
            continue
        total_gamma = vec_add(*(gamma(params, target.chern(part) - 1) for part in parts))
        correction += product / (aut_size(parts) * vec_factorial(total_gamma))
    value = vec_factorial(gamma(params, c1 - 1)) * (target.point_descendant(label) - correction)
    _WT_CACHE[cache_key] = value
    return value


def T(target: TargetSpace, label: object, params: SpectrumParams) -> Fraction:
    """Unweighted count T_A^a = T̃_A^a / mult(o_{c1(A)-1})."""
    c1 = target.chern(label)
    return wt_T(target, label, params) / orbit(params, c1 - 1).multiplicity


def wt_T_infinity(d: int) -> Fraction:
    """T̃_d for CP^2 at a = infinity (any a > 3d - 1): all paths horizontal."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    cached = _WT_INF_CACHE.get(d)
    if cached is not None:
        return cached
    correction = Fraction(0)
    for parts in partitions(d):
        if len(parts) < 2:
            continue
        product = Fraction(1)
        for part in parts:
            product *= wt_T_infinity(part)
        correction += product / (aut_size(parts) * math.factorial(3 * d - len(parts)))
    value = math.factorial(3 * d - 1) * (Fraction(1, math.factorial(d) ** 3) - correction)
    _WT_INF_CACHE[d] = value
    return value


def T_infinity(d: int) -> Fraction:
    """T_d for CP^2 at a = infinity; the limiting orbit has multiplicity 3d - 1."""
    return wt_T_infinity(d) / (3 * d - 1)


def embedding_bound(target: TargetSpace, label: object, params: SpectrumParams) -> Fraction | None:
    """Obstruction c from a nonzero count: E(λa) embeds in the (scaled) target
    only if λ <= area(A) / action(o_{c1(A)-1}).

    Returns None when the count vanishes (no obstruction from this class).
    """
    if wt_T(target, label, params) == 0:
        return None
    return target.area(label) / action(params, target.chern(label) - 1)


@dataclass(frozen=True)
class PiecewiseTable:
    """A piecewise-constant function of a on (lo, hi), exact breakpoints kept.

    ``values[i]`` is the constant value on the i-th open interval; ``hi`` is
    None when the last interval extends to infinity (the requested range
    exceeded every candidate discontinuity).
    """

    lo: Fraction
    hi: Fraction | None
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def intervals(self) -> tuple[tuple[Fraction, Fraction | None], ...]:
        ends: tuple[Fraction | None, ...] = self.breakpoints + (self.hi,)
        starts = (self.lo,) + self.breakpoints
        return tuple(zip(starts, ends))

    def side_values(self, breakpoint: Fraction) -> tuple[Fraction, Fraction]:
        """(Minus, Plus) values at a kept breakpoint."""
        idx = self.breakpoints.index(breakpoint)
        return self.values[idx], self.values[idx + 1]

    def value_at(self, a: Fraction, side: Side = Side.CANONICAL) -> Fraction:
        a = rational(a)
        if a in self.breakpoints:
            minus, plus = self.side_values(a)
            if side is Side.MINUS:
                return minus
            if side is Side.PLUS:
                return plus
            raise ValueError(f"{a} is a jump; specify Side.MINUS or Side.PLUS")
        if a <= self.lo or (self.hi is not None and a >= self.hi):
            raise ValueError(f"{a} lies outside the tabulated range")
        idx = sum(1 for b in self.breakpoints if b < a)
        return self.values[idx]


def _reachable_labels(target: TargetSpace, label: object) -> set[object]:
    """The class and everything appearing in its iterated decompositions."""
    seen: set[object] = set()
    frontier = [label]
    while frontier:
        current = frontier.pop()
        if current in seen:
            continue
        seen.add(current)
        for decomposition in target.decompositions(current):
            for part in decomposition:
                if part not in seen:
                    frontier.append(part)
    return seen


def _sweep(
    lo: Fraction,
    hi: Fraction | None,
    candidates: Iterable[Fraction],
    value_fn: Callable[[SpectrumParams], Fraction],
) -> PiecewiseTable:
    candidates = tuple(sorted(set(candidates)))
    if lo < 1:
        raise ValueError(f"tables are defined on subranges of (1, inf); got lo = {lo}")
    if hi is not None and hi <= lo:
        raise ValueError(f"empty range ({lo}, {hi})")
    inner = [c for c in candidates if c > lo and (hi is None or c < hi)]
    interiors: list[Fraction] = []
    for gap in range(len(inner) + 1):
        left = lo if gap == 0 else inner[gap - 1]
        if gap == len(inner):
            sample = left + 1 if hi is None else (left + hi) / 2
        else:
            sample = (left + inner[gap]) / 2
        interiors.append(value_fn(normalized(sample)))
    for i, b in enumerate(inner):
        minus = value_fn(normalized(b, Side.MINUS))
        plus = value_fn(normalized(b, Side.PLUS))
        if minus != interiors[i] or plus != interiors[i + 1]:
            raise RuntimeError(
                f"sweep inconsistency at {b}: sides ({minus}, {plus}) vs "
                f"adjacent interior values ({interiors[i]}, {interiors[i + 1]})"
            )
    kept: list[Fraction] = []
    values: list[Fraction] = [interiors[0]]
    for i, b in enumerate(inner):
        if interiors[i + 1] != values[-1]:
            kept.append(b)
            values.append(interiors[i + 1])
    hi_out = None if hi is None or (candidates and hi > candidates[-1]) else hi
    return PiecewiseTable(lo, hi_out, tuple(kept), tuple(values))


def piecewise_table(
    target: TargetSpace,
    label: object,
    lo: int | str | Fraction,
    hi: int | str | Fraction | None,
) -> PiecewiseTable:
    """Tabulate a -> T̃_A^a over (lo, hi); hi = None sweeps to infinity."""
    indices = {target.chern(part) - 1 for part in _reachable_labels(target, label)}
    candidates: set[Fraction] = set()
    for idx in indices:
        candidates.update(jump_set(idx))
    return _sweep(
        rational(lo),
        None if hi is None else rational(hi),
        candidates,
        lambda params: wt_T(target, label, params),
    )


def normalized_table(
    target: TargetSpace,
    label: object,
    lo: int | str | Fraction,
    hi: int | str | Fraction | None,
) -> PiecewiseTable:
    """Tabulate a -> T_A^a; includes the orbit-identity ratios J_{c1(A)-2}."""
    indices = {target.chern(part) - 1 for part in _reachable_labels(target, label)}
    candidates: set[Fraction] = set()
    for idx in indices:
        candidates.update(jump_set(idx))
    candidates.update(jump_set(target.chern(label) - 2))
    return _sweep(
        rational(lo),
        None if hi is None else rational(hi),
        candidates,
        lambda params: T(target, label, params),
    )


def _poly_mul(a: list[Fraction], b: list[Fraction], size: int) -> list[Fraction]:
    out = [Fraction(0)] * size
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if i + j >= size:
                break
            out[i + j] += ca * cb
    return out


def genfun_check(dmax: int) -> Report:
    """Verify [x^d] (1 + Σ T̃_e x^e)^{3d} = (3d)!/(d!)^3 for d = 1..dmax."""
    if dmax < 1:
        raise ValueError(f"dmax must be >= 1, got {dmax}")
    size = dmax + 1
    base = [Fraction(1)] + [wt_T_infinity(e) for e in range(1, size)]
    failures: list[str] = []
    for d in range(1, dmax + 1):
        power = [Fraction(1)] + [Fraction(0)] * dmax
        for _ in range(3 * d):
            power = _poly_mul(power, base, size)
        expected = Fraction(math.factorial(3 * d), math.factorial(d) ** 3)
        if power[d] != expected:
            failures.append(f"d={d}: [x^d] F^{3 * d} = {power[d]}, expected {expected}")
    return Report(not failures, dmax, failures)
