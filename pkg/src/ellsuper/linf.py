"""A small L-infinity algebra engine over exact rationals.

Objects
-------
* :class:`GeneratorSet` — a (possibly infinite) family of graded generators
  addressed by hashable, orderable keys, with a degree rule and an optional
  action (filtration) rule.
* :class:`Word` — a symmetric word of generators in canonical (sorted) order.
  Reordering signs are Koszul: two odd letters crossing contribute -1, and a
  word with a repeated odd letter is zero.
* :class:`Combination` — a finite Q-linear combination of words.
* :class:`LinfStructure` — level maps l^k : Sym^k -> generators of degree +1,
  given lazily by a rule and memoized.
* :class:`LinfMorphism` — level maps phi^k : Sym^k(source) -> target of
  degree 0, same representation.

Operations
----------
* :func:`extend_coderivation` — the coderivation extension
  l̂(v_1 ⊙ ... ⊙ v_k) = Σ_i Σ_{(i, k-i)-shuffles} ± l^i(block) ⊙ rest.
* :meth:`LinfMorphism.extend` — the cofunctor extension
  φ̂(w) = Σ over block-size multisets and block-ordered shuffles of
  ± (φ^{k_1} ⊙ ... ⊙ φ^{k_s})(σ·w); equal-size blocks are enumerated once in
  canonical order (the same sum as over all set partitions of the letters).
* :func:`compose` — (G ∘ F)^k(w) = Σ_{u ∈ F̂(w)} coeff · G^{|u|}(u), lazily.
* :func:`invert` — levelwise inverse of a morphism whose φ^1 is diagonal on
  basis generators: H^1 inverts the diagonal, and for k >= 2
  H^k(u) = -(1/c) Σ H^{s}(non-diagonal blocks of F̂ applied to the preimage),
  where c is the coefficient of the all-singletons term.
* :func:`check_structure` — verifies l̂ ∘ l̂ = 0 on supplied words.

Level maps are required to land in single generators (length-one words);
this holds for every structure in this package and keeps extensions small.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .exact import koszul_sign, ordered_shuffles, partitions
from .report import Report

__all__ = [
    "Key",
    "GeneratorSet",
    "Word",
    "canonical_word",
    "Combination",
    "LinfStructure",
    "LinfMorphism",
    "abelian",
    "extend_coderivation",
    "extend_morphism",
    "identity_morphism",
    "compose",
    "invert",
    "check_structure",
    "morphisms_agree",
]

Key = Hashable


class GeneratorSet:
    """Graded generators addressed by keys (tuples, orderable within one set).

    ``degree_fn`` must raise ValueError on keys outside the family; this is
    how unknown-generator errors surface.  Two generator sets are compatible
    for composition when their labels match — e.g. every ellipsoid algebra
    shares one key space regardless of its parameters.
    """

    def __init__(
        self,
        label: str,
        degree_fn: Callable[[Key], int],
        action_fn: Callable[[Key], Fraction] | None = None,
    ) -> None:
        self.label = label
        self._degree_fn = degree_fn
        self._action_fn = action_fn

    def degree(self, key: Key) -> int:
        return self._degree_fn(key)

    def action(self, key: Key) -> Fraction | None:
        if self._action_fn is None:
            return None
        return self._action_fn(key)

    def compatible(self, other: "GeneratorSet") -> bool:
        return self.label == other.label

    def __repr__(self) -> str:
        return f"GeneratorSet({self.label!r})"


class Word:
    """A symmetric word stored in canonical (key-sorted) order."""

    __slots__ = ("keys",)

    def __init__(self, keys: Sequence[Key]) -> None:
        self.keys = tuple(keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[Key]:
        return iter(self.keys)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.keys == other.keys

    def __hash__(self) -> int:
        return hash(self.keys)

    def __repr__(self) -> str:
        return "(" + " . ".join(map(str, self.keys)) + ")"


def canonical_word(genset: GeneratorSet, keys: Sequence[Key]) -> tuple[Word | None, int]:
    """Sort keys into canonical order, returning (word, Koszul sign).

    Returns (None, 0) when the word vanishes (a repeated odd-degree letter).
    """
    items = list(keys)
    degrees = [genset.degree(k) for k in items]
    sign = 1
    # insertion sort; adjacent swaps of two odd letters flip the sign
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            if degrees[j - 1] % 2 and degrees[j] % 2:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            degrees[j - 1], degrees[j] = degrees[j], degrees[j - 1]
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1] == items[i] and degrees[i] % 2:
            return None, 0
    return Word(items), sign


class Combination:
    """Finite Q-linear combination of words; zero coefficients are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Word, Fraction] | None = None) -> None:
        self._terms = {w: c for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "Combination":
        return cls()

    @classmethod
    def single(cls, word: Word, coeff: int | Fraction = 1) -> "Combination":
        return cls({word: Fraction(coeff)})

    def terms(self) -> Iterable[tuple[Word, Fraction]]:
        return self._terms.items()

    def __getitem__(self, word: Word) -> Fraction:
        return self._terms.get(word, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "Combination") -> "Combination":
        out = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(out, w, c)
        return Combination(out)

    def __sub__(self, other: "Combination") -> "Combination":
        return self + (-1) * other

    def __mul__(self, scalar: int | Fraction) -> "Combination":
        return Combination({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Combination) and self._terms == other._terms

    def __hash__(self) -> int:  # pragma: no cover - combinations are not dict keys in practice
        return hash(frozenset(self._terms.items()))

    def restrict_length(self, length: int) -> "Combination":
        return Combination({w: c for w, c in self._terms.items() if len(w) == length})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{w}" for w, c in sorted(self._terms.items(), key=lambda t: t[0].keys))


def _accumulate(store: dict[Word, Fraction], word: Word, coeff: Fraction) -> None:
    new = store.get(word, Fraction(0)) + coeff
    if new == 0:
        store.pop(word, None)
    else:
        store[word] = new


def _single_letter(comb_word: Word) -> Key:
    if len(comb_word) != 1:
        raise AssertionError(f"level maps must land in single generators, got {comb_word}")
    return comb_word.keys[0]


class LinfStructure:
    """L-infinity structure: lazy, memoized level maps l^k of degree +1."""

    def __init__(
        self,
        generators: GeneratorSet,
        level_rule: Callable[[int, Word], Combination],
        max_arity: int | None = None,
    ) -> None:
        self.generators = generators
        self._rule = level_rule
        self.max_arity = max_arity
        self._memo: dict[Word, Combination] = {}

    def level(self, k: int, word: Word) -> Combination:
        if len(word) != k:
            raise ValueError(f"arity {k} does not match word length {len(word)}")
        if self.max_arity is not None and k > self.max_arity:
            raise ValueError(f"structure levels only defined up to arity {self.max_arity}")
        cached = self._memo.get(word)
        if cached is None:
            cached = self._memo[word] = self._rule(k, word)
        return cached


def abelian(generators: GeneratorSet) -> LinfStructure:
    """The structure with all level maps zero."""
    return LinfStructure(generators, lambda k, word: Combination.zero())


class LinfMorphism:
    """L-infinity morphism: lazy, memoized level maps phi^k of degree 0."""

    def __init__(
        self,
        source: GeneratorSet,
        target: GeneratorSet,
        level_rule: Callable[[int, Word], Combination],
        max_arity: int | None = None,
    ) -> None:
        self.source = source
        self.target = target
        self._rule = level_rule
        self.max_arity = max_arity
        self._level_memo: dict[Word, Combination] = {}
        self._extend_memo: dict[Word, Combination] = {}

    def level(self, k: int, word: Word) -> Combination:
        if len(word) != k:
            raise ValueError(f"arity {k} does not match word length {len(word)}")
        if self.max_arity is not None and k > self.max_arity:
            raise ValueError(f"morphism levels only defined up to arity {self.max_arity}")
        cached = self._level_memo.get(word)
        if cached is None:
            cached = self._level_memo[word] = self._rule(k, word)
        return cached

    def extend(self, word: Word) -> Combination:
        """The cofunctor extension φ̂ evaluated on a canonical word."""
        cached = self._extend_memo.get(word)
        if cached is None:
            cached = self._extend_memo[word] = self._extend(word)
        return cached

    def _extend(self, word: Word) -> Combination:
        k = len(word)
        if k == 0:
            raise ValueError("words must be nonempty")
        degrees = tuple(self.source.degree(key) for key in word.keys)
        out: dict[Word, Fraction] = {}
        for desc_sizes in partitions(k):
            sizes = tuple(reversed(desc_sizes))  # ascending block sizes
            for sigma in ordered_shuffles(sizes):
                shuffle_sign = koszul_sign(sigma, degrees)
                block_values: list[Combination] = []
                pos = 0
                for size in sizes:
                    block = sigma[pos:pos + size]
                    pos += size
                    block_word = Word(tuple(word.keys[p] for p in block))
                    value = self.level(size, block_word)
                    if not value:
                        block_values = []
                        break
                    block_values.append(value)
                if not block_values:
                    continue
                for chosen in product(*(v.terms() for v in block_values)):
                    coeff = Fraction(shuffle_sign)
                    letters = []
                    for out_word, c in chosen:
                        coeff *= c
                        letters.append(_single_letter(out_word))
                    target_word, sort_sign = canonical_word(self.target, letters)
                    if target_word is None:
                        continue
                    _accumulate(out, target_word, coeff * sort_sign)
        return Combination(out)


def extend_morphism(morphism: LinfMorphism, word: Word) -> Combination:
    """Functional alias for :meth:`LinfMorphism.extend`."""
    return morphism.extend(word)


def extend_coderivation(structure: LinfStructure, word: Word) -> Combination:
    """l̂(w) = Σ_{i} Σ_{(i, k-i)-shuffles} ± l^i(first block) ⊙ (rest)."""
    k = len(word)
    if k == 0:
        raise ValueError("words must be nonempty")
    degrees = tuple(structure.generators.degree(key) for key in word.keys)
    out: dict[Word, Fraction] = {}
    for i in range(1, k + 1):
        for head in combinations(range(k), i):
            head_set = set(head)
            tail = tuple(p for p in range(k) if p not in head_set)
            sigma = head + tail
            sign = koszul_sign(sigma, degrees)
            head_word = Word(tuple(word.keys[p] for p in head))
            value = structure.level(i, head_word)
            if not value:
                continue
            tail_keys = tuple(word.keys[p] for p in tail)
            for out_word, coeff in value.terms():
                letters = (_single_letter(out_word),) + tail_keys
                target_word, sort_sign = canonical_word(structure.generators, letters)
                if target_word is None:
                    continue
                _accumulate(out, target_word, coeff * sign * sort_sign)
    return Combination(out)


def identity_morphism(generators: GeneratorSet) -> LinfMorphism:
    """phi^1 = id, phi^{>=2} = 0."""

    def rule(k: int, word: Word) -> Combination:
        if k == 1:
            return Combination.single(word)
        return Combination.zero()

    return LinfMorphism(generators, generators, rule)


def compose(outer: LinfMorphism, inner: LinfMorphism, bound: int) -> LinfMorphism:
    """Levelwise composition, defined for word lengths up to ``bound``.

    (outer ∘ inner)^k(w) = Σ_{u ∈ inner-hat(w)} coeff(u) · outer^{|u|}(u).
    """
    if not inner.target.compatible(outer.source):
        raise ValueError(
            f"cannot compose: inner target {inner.target.label!r} "
            f"does not match outer source {outer.source.label!r}"
        )

    def rule(k: int, word: Word) -> Combination:
        total = Combination.zero()
        for u, coeff in inner.extend(word).terms():
            total = total + coeff * outer.level(len(u), u)
        return total

    return LinfMorphism(inner.source, outer.target, rule, max_arity=bound)


def invert(
    morphism: LinfMorphism,
    bound: int,
    preimage: Callable[[Key], Key],
) -> LinfMorphism:
    """Levelwise inverse of a morphism with diagonal phi^1, up to word length ``bound``.

    ``preimage`` maps a target generator key to the source key whose phi^1
    image is proportional to it.  The inverse H satisfies (H ∘ F)^k = id^k;
    solving that relation for H^k gives

        H^1(q) = (1/c_q) v_q,
        H^k(u) = -(1/c) Σ_{blocks not all singletons} H^s(F-blocks applied to w),

    with w the letterwise preimage of u and c the coefficient of u in the
    all-singletons (length-k) part of F̂(w).
    """

    def rule(k: int, u_word: Word) -> Combination:
        if k == 1:
            source_key = preimage(u_word.keys[0])
            w = Word((source_key,))
            image = morphism.level(1, w)
            coeff = image[u_word]
            if coeff == 0 or len(image) != 1:
                raise ValueError(
                    f"phi^1 is not diagonal at {source_key}: phi^1 = {image}, expected a multiple of {u_word}"
                )
            return Combination.single(w, Fraction(1) / coeff)
        w, _ = canonical_word(morphism.source, [preimage(key) for key in u_word.keys])
        if w is None:
            raise ValueError(f"preimage of {u_word} vanishes (repeated odd letter)")
        expansion = morphism.extend(w)
        diagonal = expansion.restrict_length(k)
        coeff = diagonal[u_word]
        if coeff == 0 or len(diagonal) != 1:
            raise ValueError(f"phi^1 is not diagonal on the letters of {u_word}")
        total = Combination.zero()
        for u2, c2 in expansion.terms():
            if len(u2) == k:
                continue
            total = total + c2 * inverse.level(len(u2), u2)
        return (Fraction(-1) / coeff) * total

    inverse = LinfMorphism(morphism.target, morphism.source, rule, max_arity=bound)
    return inverse


def check_structure(structure: LinfStructure, words: Iterable[Word]) -> Report:
    """Verify the generalized Jacobi identities: l̂(l̂(w)) = 0 for each word."""
    failures: list[str] = []
    checked = 0
    for word in words:
        checked += 1
        first = extend_coderivation(structure, word)
        residual = Combination.zero()
        for u, coeff in first.terms():
            residual = residual + coeff * extend_coderivation(structure, u)
        if residual:
            failures.append(f"coderivation square nonzero on {word}: {residual}")
    return Report(not failures, checked, failures)


def morphisms_agree(
    left: LinfMorphism,
    right: LinfMorphism,
    words: Iterable[Word],
) -> Report:
    """Compare level maps of two morphisms on the given canonical words."""
    failures: list[str] = []
    checked = 0
    for word in words:
        checked += 1
        a = left.level(len(word), word)
        b = right.level(len(word), word)
        if a != b:
            failures.append(f"levels differ on {word}: {a} vs {b}")
    return Report(not failures, checked, failures)
