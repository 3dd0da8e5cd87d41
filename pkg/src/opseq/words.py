"""
Symmetrized operator words over two noncommuting generators.

Words live in the free monoid on ``G0`` (standing for ``L0``) and ``G1``
(standing for ``L1``); the empty word is the identity ``E``.  A
:class:`WordSum` is a finite integer combination of words, the empty sum
being the null operator.  The expansions of ``alpha_p`` and ``beta_p`` built
here are exponential in ``p`` and serve as the brute-force reference for the
linear-cost solver paths.

Example
-------
>>> print(symmetrized_words(1, 1))
L0.L1 + L1.L0
>>> len(beta_expansion(6))
8
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, ResourceLimitError

DEFAULT_MAX_TERMS = 10**6

_NAMES = ("L0", "L1")


class Word:
    """A word over ``{G0, G1}`` packed into an integer.

    Letter ``i`` (counted from the left) is bit ``length - 1 - i`` of
    ``bits``; a set bit means ``G1``.  With this layout words of equal length
    sort numerically in lexicographic order.
    """

    __slots__ = ("bits", "length")

    def __init__(self, bits: int = 0, length: int = 0):
        if length < 0 or bits < 0 or bits >> length:
            raise ValueError(f"bits {bits:#b} do not fit a word of length {length}")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "length", length)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        bits = 0
        n = 0
        for letter in letters:
            if letter not in (0, 1):
                raise ValueError(f"letter must be 0 (G0) or 1 (G1), got {letter!r}")
            bits = (bits << 1) | letter
            n += 1
        return cls(bits, n)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"L0.L1.L1"`` (or ``"E"`` for the empty word)."""
        text = text.strip()
        if text in ("", "E"):
            return cls()
        try:
            return cls.from_letters(_NAMES.index(tok.strip()) for tok in text.split("."))
        except ValueError:
            raise ValueError(f"cannot parse word {text!r}") from None

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple((self.bits >> (self.length - 1 - i)) & 1 for i in range(self.length))

    def count(self, letter: int) -> int:
        ones = bin(self.bits).count("1")
        return ones if letter == 1 else self.length - ones

    def __len__(self):
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other):
        if isinstance(other, Word):
            return Word((self.bits << other.length) | other.bits, self.length + other.length)
        if isinstance(other, WordSum):
            return WordSum({self * w: c for w, c in other.items()})
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Word) and self.length == other.length and self.bits == other.bits

    def __hash__(self):
        return hash((self.bits, self.length))

    def __lt__(self, other: "Word"):
        return self.letters < other.letters

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __str__(self):
        if not self.length:
            return "E"
        return ".".join(_NAMES[b] for b in self.letters)


EMPTY = Word()
G0 = Word(0, 1)
G1 = Word(1, 1)


class WordSum:
    """Integer combination of words, kept canonical (no zero coefficients)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, Word):
                raise TypeError(f"keys must be Word, got {type(w).__name__}")
            c = int(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("WordSum is immutable")

    @classmethod
    def of(cls, *words: Word) -> "WordSum":
        out: dict[Word, int] = {}
        for w in words:
            out[w] = out.get(w, 0) + 1
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> "WordSum":
        """Inverse of :meth:`__str__` for unit coefficients, e.g. ``"L0.L1 + L1.L0"``."""
        text = text.strip()
        if text == "0":
            return cls()
        return cls.of(*(Word.parse(tok) for tok in text.split("+")))

    def items(self) -> list[tuple[Word, int]]:
        """Terms in canonical (lexicographic, ``G0 < G1``) order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].letters)

    def words(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def coefficient(self, word: Word) -> int:
        return self._terms.get(word, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.words())

    def __contains__(self, word):
        return word in self._terms

    def __add__(self, other):
        if not isinstance(other, WordSum):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return WordSum(out)

    def __neg__(self):
        return WordSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WordSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        # concatenation on the right, or integer scaling
        if isinstance(other, Word):
            return WordSum({w * other: c for w, c in self._terms.items()})
        if isinstance(other, WordSum):
            out: dict[Word, int] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 * w2
                    out[w] = out.get(w, 0) + c1 * c2
            return WordSum(out)
        if isinstance(other, int):
            return WordSum({w: other * c for w, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, WordSum) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"WordSum({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            mag = abs(c)
            body = str(w) if mag == 1 else f"{mag}*{w}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


IDENTITY = WordSum({EMPTY: 1})
ZERO = WordSum()


def _check_cap(count: int, max_terms: int | None):
    cap = DEFAULT_MAX_TERMS if max_terms is None else max_terms
    if count > cap:
        raise ResourceLimitError(f"expansion would have {count} terms, cap is {cap}")


def symmetrized_words(u: int, v: int, max_terms: int | None = None) -> WordSum:
    """Sum of all distinct arrangements of ``u`` copies of G0 and ``v`` of G1."""
    if u < 0 or v < 0:
        raise ValueError("u and v must be nonnegative")
    n = u + v
    _check_cap(math.comb(n, min(u, v)), max_terms)
    full = (1 << n) - 1
    terms = {}
    for pos in combinations(range(n), u):
        zeros = 0
        for i in pos:
            zeros |= 1 << (n - 1 - i)
        terms[Word(full ^ zeros, n)] = 1
    return WordSum(terms)


def _expansion_size(p: int, shift: int) -> int:
    m = p - shift
    return sum(math.comb(m - t, t) for t in range(m // 2 + 1))


def beta_expansion(p: int, max_terms: int | None = None) -> WordSum:
    """Word expansion of ``beta_p``: ``sum_t {G0^(t) G1^(p-1-2t)}``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        return ZERO
    if p == 1:
        return IDENTITY
    _check_cap(_expansion_size(p, 1), max_terms)
    out = ZERO
    for t in range((p - 1) // 2 + 1):
        out = out + symmetrized_words(t, p - 1 - 2 * t, max_terms)
    return out


def alpha_expansion(p: int, max_terms: int | None = None) -> WordSum:
    """Word expansion of ``alpha_p``: ``sum_t {G0^(t) G1^(p-2-2t)} G0``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p == 0:
        return IDENTITY
    if p == 1:
        return ZERO
    _check_cap(_expansion_size(p, 2), max_terms)
    out = ZERO
    for t in range((p - 2) // 2 + 1):
        out = out + symmetrized_words(t, p - 2 - 2 * t, max_terms)
    return out * G0


def evaluate_word_sum(ws: WordSum, backend, x):
    """Apply a word sum to ``x`` with concrete operators.

    Parameters
    ----------
    ws : WordSum
    backend : mapping or pair
        Either ``{G0: op0, G1: op1}`` or a sequence ``(op0, op1)``.  Operators
        act on vectors through ``op @ x``.
    x : vector
        Any object supporting ``+``, scalar ``*`` and being acted on by the
        operators.

    Notes
    -----
    The rightmost letter of each word acts first.  Shared suffixes are
    evaluated once.
    """
    if isinstance(backend, Mapping):
        ops = (backend[G0], backend[G1])
    else:
        ops = tuple(backend)
    acc = 0 * x
    memo = {(0, 0): x}

    def apply(bits, length):
        key = (bits, length)
        if key not in memo:
            head = (bits >> (length - 1)) & 1
            rest = bits & ((1 << (length - 1)) - 1)
            try:
                memo[key] = ops[head] @ apply(rest, length - 1)
            except ValueError as exc:
                raise DimensionError(f"operator/vector mismatch: {exc}") from exc
        return memo[key]

    for w, c in ws.items():
        acc = acc + c * apply(w.bits, w.length)
    return acc
