"""L-infinity models attached to an ellipsoid and the cobordism maps between them.

Two abelian models appear:

* ``C_a`` — one even generator o_k per orbit index k >= 1, degree -2-2k,
  filtered by the action of the k-th Reeb orbit of E(a);
* ``C_o`` — the same graded module with generators q_k and no filtration
  (the model of a point, i.e. of the trivial isotropy cylinder data).

The stationary-descendant morphism eps_a : C_a -> C_o has level maps

    eps^k(o_{i_1}, ..., o_{i_k}) = q_{i_1 + ... + i_k + k - 1}
                                   / (Γ_{i_1} + ... + Γ_{i_k})!

where Γ_i is the lattice path of E(a) and (x, y)! = x! * y! (any number of
axes).  Its levelwise inverse is eta_a, and the transfer map between two
parameter sets is Xi = eta_{target} ∘ eps_{source}; its single-generator
coefficients are the building blocks of every jump formula downstream.

``exp_mc`` expands the exponential of a Maurer-Cartan element supported on
single generators T̃_A · o_{c1(A)-1} over unordered decompositions of a class,
weighting each by 1/|Aut|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .exact import aut_size, vec_add, vec_factorial
from .linf import (
    Combination,
    GeneratorSet,
    Key,
    LinfMorphism,
    LinfStructure,
    Word,
    abelian,
    compose,
    identity_morphism,
    invert,
    morphisms_agree,
)
from .orbits import SpectrumParams, action, gamma
from .report import Report, merge_reports

__all__ = [
    "o_key",
    "q_key",
    "ca_generators",
    "ca_algebra",
    "co_generators",
    "co_algebra",
    "epsilon",
    "eta",
    "xi",
    "local_descendant",
    "MCElement",
    "exp_mc",
    "single_coefficient",
    "inverse_check",
    "xi_chain_check",
]


def o_key(k: int) -> Key:
    return ("o", k)


def q_key(k: int) -> Key:
    return ("q", k)


def _orbit_degree(prefix: str, key: Key) -> int:
    if (
        not isinstance(key, tuple)
        or len(key) != 2
        or key[0] != prefix
        or not isinstance(key[1], int)
        or key[1] < 1
    ):
        raise ValueError(f"unknown generator key {key!r} (expected ('{prefix}', k) with k >= 1)")
    return -2 - 2 * key[1]


def ca_generators(params: SpectrumParams) -> GeneratorSet:
    """Generators o_k of the filtered ellipsoid model for E(params)."""

    def action_fn(key: Key) -> Fraction:
        _orbit_degree("o", key)
        return action(params, key[1])

    return GeneratorSet("Ca", lambda key: _orbit_degree("o", key), action_fn)


def ca_algebra(params: SpectrumParams) -> LinfStructure:
    return abelian(ca_generators(params))


def co_generators() -> GeneratorSet:
    """Unfiltered generators q_k (the target of the descendant morphism)."""
    return GeneratorSet("Co", lambda key: _orbit_degree("q", key))


def co_algebra() -> LinfStructure:
    return abelian(co_generators())


_EPSILON_CACHE: dict[SpectrumParams, LinfMorphism] = {}
_ETA_CACHE: dict[tuple[SpectrumParams, int], LinfMorphism] = {}
_XI_CACHE: dict[tuple[SpectrumParams, SpectrumParams, int], LinfMorphism] = {}


def epsilon(params: SpectrumParams) -> LinfMorphism:
    """The stationary-descendant morphism C_a -> C_o (all arities)."""
    cached = _EPSILON_CACHE.get(params)
    if cached is not None:
        return cached

    def rule(k: int, word: Word) -> Combination:
        indices = [key[1] for key in word.keys]
        total = vec_add(*(gamma(params, i) for i in indices))
        out_index = sum(indices) + k - 1
        return Combination.single(
            Word((q_key(out_index),)), Fraction(1, vec_factorial(total))
        )

    morphism = LinfMorphism(ca_generators(params), co_generators(), rule)
    _EPSILON_CACHE[params] = morphism
    return morphism


def eta(params: SpectrumParams, bound: int) -> LinfMorphism:
    """Levelwise inverse of eps_params, defined up to word length ``bound``."""
    cache_key = (params, bound)
    cached = _ETA_CACHE.get(cache_key)
    if cached is None:
        cached = _ETA_CACHE[cache_key] = invert(
            epsilon(params), bound, lambda key: o_key(key[1])
        )
    return cached


def xi(source: SpectrumParams, target: SpectrumParams, bound: int) -> LinfMorphism:
    """Transfer morphism Xi = eta_target ∘ eps_source : C_source -> C_target."""
    cache_key = (source, target, bound)
    cached = _XI_CACHE.get(cache_key)
    if cached is None:
        cached = _XI_CACHE[cache_key] = compose(
            eta(target, bound), epsilon(source), bound
        )
    return cached


def local_descendant(params: SpectrumParams, indices: Sequence[int]) -> tuple[Fraction, int]:
    """Count of rational curves in E(params) with ends o_{i_1}, ..., o_{i_k}
    through a point with a maximal tangency (psi-power) constraint.

    Returns (N, m) with N = 1 / (Σ_s Γ_{i_s})! and m = Σ_s i_s + k - 2 the
    psi-power of the point constraint.
    """
    indices = tuple(indices)
    if not indices or any(i < 1 for i in indices):
        raise ValueError(f"orbit indices must be positive integers, got {indices}")
    total = vec_add(*(gamma(params, i) for i in indices))
    n_value = Fraction(1, vec_factorial(total))
    return n_value, sum(indices) + len(indices) - 2


@dataclass(frozen=True)
class MCElement:
    """Maurer-Cartan summand for one homology class: coefficient * o_{orbit_index}."""

    coefficient: Fraction
    orbit_index: int


def exp_mc(
    mc_of: Callable[[object], MCElement],
    label: object,
    decompositions: Callable[[object], Iterable[Sequence[object]]],
) -> Combination:
    """Exponential of a Maurer-Cartan element, graded piece of one class.

    Sums, over unordered decompositions label = A_1 + ... + A_s supplied by
    ``decompositions``, the words o_{idx(A_1)} ⊙ ... ⊙ o_{idx(A_s)} with
    coefficient (Π_s coeff(A_s)) / |Aut(A_1, ..., A_s)|.
    """
    out: dict[Word, Fraction] = {}
    for decomposition in decompositions(label):
        parts = tuple(decomposition)
        coeff = Fraction(1, aut_size(parts))
        letters = []
        for part in parts:
            element = mc_of(part)
            coeff *= element.coefficient
            letters.append(o_key(element.orbit_index))
        if coeff == 0:
            continue
        word = Word(tuple(sorted(letters)))
        previous = out.get(word, Fraction(0)) + coeff
        if previous == 0:
            out.pop(word, None)
        else:
            out[word] = previous
    return Combination(out)


def single_coefficient(comb: Combination, key: Key) -> Fraction:
    """Coefficient of the length-one word (key) in a combination."""
    return comb[Word((key,))]


def _index_words(key_fn: Callable[[int], Key], length_bound: int, index_cap: int) -> list[Word]:
    out = []
    for length in range(1, length_bound + 1):
        for keys in combinations_with_replacement(
            [key_fn(i) for i in range(1, index_cap + 1)], length
        ):
            out.append(Word(keys))
    return out


def inverse_check(params: SpectrumParams, bound: int, index_cap: int = 4) -> Report:
    """Verify eta∘eps = id on C_a and eps∘eta = id on C_o up to a word-length bound."""
    eps = epsilon(params)
    inv = eta(params, bound)
    left = compose(inv, eps, bound)
    right = compose(eps, inv, bound)
    source_words = _index_words(o_key, bound, index_cap)
    target_words = _index_words(q_key, bound, index_cap)
    return merge_reports(
        morphisms_agree(left, identity_morphism(ca_generators(params)), source_words),
        morphisms_agree(right, identity_morphism(co_generators()), target_words),
    )


def xi_chain_check(
    low: SpectrumParams,
    mid: SpectrumParams,
    high: SpectrumParams,
    bound: int,
    index_cap: int = 3,
) -> Report:
    """Verify Xi_{mid->high} ∘ Xi_{low->mid} = Xi_{low->high} on a word window."""
    chained = compose(xi(mid, high, bound), xi(low, mid, bound), bound)
    direct = xi(low, high, bound)
    return morphisms_agree(chained, direct, _index_words(o_key, bound, index_cap))
