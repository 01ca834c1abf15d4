"""Independent brute-force oracles for the fast implementations.

Each oracle recomputes a quantity by unoptimized first-principles enumeration
and exists only to validate the production code path:

* :func:`gamma_bruteforce` — Γ_k as the argmin of the perturbed max-action
  over *all* compositions of k (the greedy walk never enters);
* :func:`merge_spectrum` — the ordered spectrum via a lazy heap merge of the
  per-axis action streams (again independent of the walk);
* :func:`morphism_bruteforce` — the cofunctor extension as a sum over all set
  partitions of the letter positions with explicit Koszul signs, bypassing
  the block-ordered shuffle enumeration.

Input sizes are hard-guarded: these routines are intentionally exponential.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterator

from .exact import DualRational, LatticePoint, koszul_sign, set_partitions
from .linf import Combination, LinfMorphism, Word, canonical_word
from .orbits import OrbitId, SpectrumParams, perturbed_value

__all__ = ["gamma_bruteforce", "merge_spectrum", "morphism_bruteforce"]

_GAMMA_MAX_K = 40
_GAMMA_MAX_N = 5
_MERGE_MAX_COUNT = 10_000
_MORPHISM_MAX_LEN = 5


def _compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    # local re-implementation: the oracle must not share code with the
    # production enumeration it validates
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, length - 1):
            yield (first,) + rest


def gamma_bruteforce(params: SpectrumParams, k: int) -> LatticePoint:
    """Γ_k as the unique minimizer of max_i perturbed(a_i * v_i) over |v| = k."""
    if k > _GAMMA_MAX_K or params.n > _GAMMA_MAX_N:
        raise ValueError(
            f"brute force guarded to k <= {_GAMMA_MAX_K}, n <= {_GAMMA_MAX_N}; "
            f"got k={k}, n={params.n}"
        )
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return (0,) * params.n
    best_value: DualRational | None = None
    best_vector: tuple[int, ...] | None = None
    tie = False
    for vector in _compositions(k, params.n):
        value = max(
            perturbed_value(params, axis + 1, mult)
            for axis, mult in enumerate(vector)
            if mult > 0
        )
        if best_value is None or value < best_value:
            best_value, best_vector, tie = value, vector, False
        elif value == best_value:
            tie = True
    if tie:
        raise RuntimeError(f"perturbation failed to separate minimizers at k={k}, params={params}")
    assert best_vector is not None
    return best_vector


def merge_spectrum(
    params: SpectrumParams, count: int
) -> list[tuple[DualRational, OrbitId]]:
    """First ``count`` spectrum entries via a heap merge of per-axis streams."""
    if count > _MERGE_MAX_COUNT:
        raise ValueError(f"merge guarded to count <= {_MERGE_MAX_COUNT}, got {count}")
    heap: list[tuple[DualRational, int, int]] = []
    for axis in range(1, params.n + 1):
        heapq.heappush(heap, (perturbed_value(params, axis, 1), axis, 1))
    out: list[tuple[DualRational, OrbitId]] = []
    while len(out) < count:
        value, axis, mult = heapq.heappop(heap)
        out.append((value, OrbitId(axis, mult)))
        heapq.heappush(heap, (perturbed_value(params, axis, mult + 1), axis, mult + 1))
    return out


def morphism_bruteforce(morphism: LinfMorphism, word: Word) -> Combination:
    """φ̂(w) as a sum over set partitions of the letter positions.

    For each set partition (blocks ordered by minimum) the letters are
    rearranged block-by-block, picking up the explicit Koszul sign of that
    rearrangement, each block is fed to the corresponding level map, and the
    outputs are multiplied back together.
    """
    k = len(word)
    if k > _MORPHISM_MAX_LEN:
        raise ValueError(f"brute force guarded to word length <= {_MORPHISM_MAX_LEN}, got {k}")
    degrees = tuple(morphism.source.degree(key) for key in word.keys)
    total: dict[Word, Fraction] = {}
    for blocks in set_partitions(k):
        arrangement = tuple(p for block in blocks for p in block)
        sign = koszul_sign(arrangement, degrees)
        factors: list[Combination] = []
        for block in blocks:
            value = morphism.level(len(block), Word(tuple(word.keys[p] for p in block)))
            if not value:
                factors = []
                break
            factors.append(value)
        if not factors:
            continue
        partial: list[tuple[list, Fraction]] = [([], Fraction(sign))]
        for factor in factors:
            partial = [
                (letters + [w.keys[0]], coeff * c)
                for letters, coeff in partial
                for w, c in factor.terms()
            ]
        for letters, coeff in partial:
            out_word, sort_sign = canonical_word(morphism.target, letters)
            if out_word is None:
                continue
            new = total.get(out_word, Fraction(0)) + coeff * sort_sign
            if new == 0:
                total.pop(out_word, None)
            else:
                total[out_word] = new
    return Combination(total)
