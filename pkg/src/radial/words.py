"""Freely reduced words in the free group F_N.

A word is stored as ``bytes``: generator ``g_i`` is the byte ``2*(i-1)`` and
its inverse ``g_i^-1`` is ``2*(i-1) + 1``, so a letter's inverse is ``x ^ 1``
and plain byte ordering sorts by (index, sign) with positive letters first.
Text form uses ``a..z`` for generators and ``A..Z`` for their inverses, with
``e`` for the identity.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

MAX_GENERATORS = 26


class WordError(ValueError):
    """Invalid letters, mismatched groups or unparsable word text."""


@dataclass(frozen=True)
class GroupSpec:
    """The free group on ``N`` generators."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or isinstance(self.N, bool):
            raise WordError(f"N must be an integer, got {self.N!r}")
        if not 2 <= self.N <= MAX_GENERATORS:
            raise WordError(f"N must lie in 2..{MAX_GENERATORS}, got {self.N}")

    @property
    def degree(self) -> int:
        """Number of generators plus inverses, 2N."""
        return 2 * self.N

    def identity(self) -> "ReducedWord":
        return ReducedWord(self, b"")

    def generators(self) -> list["ReducedWord"]:
        return [ReducedWord(self, bytes((2 * i,))) for i in range(self.N)]


class Letter(NamedTuple):
    index: int  # 1..N
    sign: int  # +1 or -1


LetterLike = Union[Letter, int]


def _encode_letter(letter: LetterLike, N: int) -> int:
    if isinstance(letter, Letter):
        index, sign = letter
    else:
        index, sign = abs(letter), (1 if letter > 0 else -1)
    if sign not in (1, -1) or not 1 <= index <= N:
        raise WordError(f"letter {letter!r} out of range for N={N}")
    return 2 * (index - 1) + (0 if sign == 1 else 1)


def reduce_code(code: Iterable[int]) -> bytes:
    """Freely reduce a sequence of encoded letters."""
    out = bytearray()
    for x in code:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return bytes(out)


def concat_code(u: bytes, v: bytes) -> bytes:
    """Reduced product of two already reduced encoded words."""
    i, m = 0, min(len(u), len(v))
    lu = len(u)
    while i < m and u[lu - 1 - i] == v[i] ^ 1:
        i += 1
    if i == 0:
        return u + v
    return u[: lu - i] + v[i:]


def invert_code(u: bytes) -> bytes:
    return bytes(x ^ 1 for x in reversed(u))


@dataclass(frozen=True, order=False)
class ReducedWord:
    """A freely reduced word of ``spec``; the empty word is the identity."""

    spec: GroupSpec
    code: bytes

    def __len__(self) -> int:
        return len(self.code)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(x // 2 + 1, -1 if x & 1 else 1) for x in self.code)

    def is_identity(self) -> bool:
        return not self.code

    def sort_key(self) -> tuple[int, bytes]:
        return word_sort_key(self.code)

    def __lt__(self, other: "ReducedWord") -> bool:
        return self.sort_key() < other.sort_key()

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return concat(self, other)

    def __invert__(self) -> "ReducedWord":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"ReducedWord({format_word(self)!r}, N={self.spec.N})"


def word_sort_key(code: bytes) -> tuple[int, bytes]:
    """Shortlex order: length first, then (index, sign) lexicographically."""
    return (len(code), code)


def reduce(spec: GroupSpec, letters: Iterable[LetterLike]) -> ReducedWord:
    """Free reduction of a letter sequence.

    Letters are :class:`Letter` pairs or signed generator indices
    (``2`` is ``g_2``, ``-2`` is ``g_2^-1``).
    """
    return ReducedWord(spec, reduce_code(_encode_letter(x, spec.N) for x in letters))


def _check_same(w1: ReducedWord, w2: ReducedWord) -> None:
    if w1.spec != w2.spec:
        raise WordError(f"words over different groups: N={w1.spec.N} and N={w2.spec.N}")


def concat(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    _check_same(w1, w2)
    return ReducedWord(w1.spec, concat_code(w1.code, w2.code))


def invert(w: ReducedWord) -> ReducedWord:
    return ReducedWord(w.spec, invert_code(w.code))


_LOWER = string.ascii_lowercase
_UPPER = string.ascii_uppercase


def code_to_text(code: bytes) -> str:
    if not code:
        return "e"
    return "".join(_UPPER[x >> 1] if x & 1 else _LOWER[x >> 1] for x in code)


def text_to_code(text: str, N: int) -> bytes:
    """Parse word text to a reduced code; input need not be reduced."""
    stripped = "".join(text.split())
    if stripped == "e":
        return b""
    if not stripped:
        raise WordError("empty word text; use 'e' for the identity")
    code = []
    pos = 0
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch in _LOWER and _LOWER.index(ch) < N:
            code.append(2 * _LOWER.index(ch))
        elif ch in _UPPER and _UPPER.index(ch) < N:
            code.append(2 * _UPPER.index(ch) + 1)
        else:
            raise WordError(f"invalid letter {ch!r} at position {pos} for N={N}")
    return reduce_code(code)


def parse_word(text: str, spec: GroupSpec) -> ReducedWord:
    return ReducedWord(spec, text_to_code(text, spec.N))


def format_word(w: ReducedWord) -> str:
    return code_to_text(w.code)


def count_words_of_length(spec: GroupSpec, n: int) -> int:
    """Size of the sphere of radius ``n``: 1, then 2N(2N-1)^(n-1)."""
    if n < 0:
        raise WordError(f"length must be nonnegative, got {n}")
    if n == 0:
        return 1
    d = spec.degree
    return d * (d - 1) ** (n - 1)


def count_words_up_to(spec: GroupSpec, n: int, parity: int | None = None) -> int:
    """Number of reduced words of length <= n, optionally of a given parity."""
    return sum(
        count_words_of_length(spec, k)
        for k in range(n + 1)
        if parity is None or k % 2 == parity % 2
    )


def iter_codes_of_length(N: int, n: int) -> Iterator[bytes]:
    """All reduced codes of length ``n``, in shortlex order."""
    if n == 0:
        yield b""
        return
    alphabet = range(2 * N)
    for first in alphabet:
        yield from _extend(bytes((first,)), n - 1, alphabet)


def _extend(prefix: bytes, remaining: int, alphabet) -> Iterator[bytes]:
    if remaining == 0:
        yield prefix
        return
    forbidden = prefix[-1] ^ 1
    for x in alphabet:
        if x != forbidden:
            yield from _extend(prefix + bytes((x,)), remaining - 1, alphabet)


def words_of_length(spec: GroupSpec, n: int) -> Iterator[ReducedWord]:
    for code in iter_codes_of_length(spec.N, n):
        yield ReducedWord(spec, code)
