"""Sparse exact arithmetic in the group algebra Q[F_N].

Elements are finitely supported maps from reduced words to exact rationals.
Coefficients stay plain ``int`` until a ``Fraction`` enters, and any
``Fraction`` with denominator 1 is folded back to ``int``.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .words import (
    GroupSpec,
    ReducedWord,
    WordError,
    code_to_text,
    concat_code,
    count_words_of_length,
    count_words_up_to,
    invert_code,
    iter_codes_of_length,
    text_to_code,
    word_sort_key,
)

Coefficient = Union[int, Fraction]

DEFAULT_TERM_LIMIT = 20_000_000
TERM_LIMIT_ENV = "RADIAL_TERM_LIMIT"
ELEMENT_SCHEMA = "radial.element.v1"


class TermLimitError(MemoryError):
    """A brute-force computation would exceed the configured term budget."""

    def __init__(self, projected: int, limit: int, what: str = "result"):
        self.projected = projected
        self.limit = limit
        super().__init__(
            f"{what} needs up to {projected} terms, above the term limit {limit} "
            f"(raise it with --term-limit or {TERM_LIMIT_ENV})"
        )


def default_term_limit() -> int:
    raw = os.environ.get(TERM_LIMIT_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TERM_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{TERM_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{TERM_LIMIT_ENV} must be positive, got {value}")
    return value


def _resolve_limit(term_limit: int | None) -> int:
    return default_term_limit() if term_limit is None else term_limit


def normalize(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")
    return c


def parse_coefficient(text: str) -> Coefficient:
    return normalize(Fraction(text))


class AlgebraElement:
    """An element of Q[F_N], immutable once built.

    ``terms`` maps encoded words (see :mod:`radial.words`) to nonzero
    coefficients. Use the module functions or the arithmetic operators.
    """

    __slots__ = ("spec", "_terms")

    def __init__(self, spec: GroupSpec, terms: Mapping[bytes, Coefficient] | None = None):
        self.spec = spec
        cleaned = {}
        for code, c in (terms or {}).items():
            c = normalize(c)
            if c:
                cleaned[code] = c
        self._terms = cleaned

    @classmethod
    def _trusted(cls, spec: GroupSpec, terms: dict) -> "AlgebraElement":
        # caller guarantees reduced keys and nonzero normalized coefficients
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._terms = terms
        return obj

    @classmethod
    def from_words(cls, spec: GroupSpec, terms: Mapping[Union[str, ReducedWord], Coefficient]):
        """Build from word text or :class:`ReducedWord` keys; repeated words add up."""
        acc: dict[bytes, Coefficient] = {}
        for key, c in terms.items():
            if isinstance(key, ReducedWord):
                if key.spec != spec:
                    raise WordError("word belongs to a different group")
                code = key.code
            else:
                code = text_to_code(key, spec.N)
            acc[code] = acc.get(code, 0) + c
        return cls(spec, acc)

    @classmethod
    def word(cls, w: ReducedWord, c: Coefficient = 1) -> "AlgebraElement":
        return cls(w.spec, {w.code: c})

    @property
    def terms(self) -> dict[bytes, Coefficient]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, w: Union[str, ReducedWord, bytes]) -> Coefficient:
        if isinstance(w, ReducedWord):
            code = w.code
        elif isinstance(w, str):
            code = text_to_code(w, self.spec.N)
        else:
            code = w
        return self._terms.get(code, 0)

    def support(self) -> list[ReducedWord]:
        return [ReducedWord(self.spec, code) for code in sorted(self._terms, key=word_sort_key)]

    def max_length(self) -> int:
        return max((len(code) for code in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, frozenset(self._terms.items())))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def __pow__(self, n: int):
        return power(self, n)

    def __repr__(self) -> str:
        return f"AlgebraElement(N={self.spec.N}, {format_element(self)})"


def _check_same(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.spec != y.spec:
        raise WordError(f"elements over different groups: N={x.spec.N} and N={y.spec.N}")


def zero(spec: GroupSpec) -> AlgebraElement:
    return AlgebraElement._trusted(spec, {})


def unit(spec: GroupSpec) -> AlgebraElement:
    return AlgebraElement._trusted(spec, {b"": 1})


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _check_same(x, y)
    out = dict(x._terms)
    for code, c in y._terms.items():
        s = normalize(out.get(code, 0) + c)
        if s:
            out[code] = s
        else:
            out.pop(code, None)
    return AlgebraElement._trusted(x.spec, out)


def scale(c: Coefficient, x: AlgebraElement) -> AlgebraElement:
    c = normalize(c)
    if not c:
        return zero(x.spec)
    return AlgebraElement._trusted(x.spec, {w: normalize(c * v) for w, v in x._terms.items()})


def _accumulate(out: dict, left: dict, right: dict) -> None:
    for u, cu in left.items():
        for v, cv in right.items():
            w = concat_code(u, v)
            out[w] = out.get(w, 0) + cu * cv


def _finish(spec: GroupSpec, acc: dict) -> AlgebraElement:
    return AlgebraElement._trusted(spec, {w: normalize(c) for w, c in acc.items() if c})


def _length_parity(x: AlgebraElement) -> int | None:
    parities = {len(w) % 2 for w in x._terms}
    return parities.pop() if len(parities) == 1 else None


def projected_product_size(x: AlgebraElement, y: AlgebraElement) -> int:
    """Upper bound on the support of ``x*y``."""
    if not x or not y:
        return 0
    px, py = _length_parity(x), _length_parity(y)
    parity = None if px is None or py is None else (px + py) % 2
    ball = count_words_up_to(x.spec, x.max_length() + y.max_length(), parity)
    return min(len(x) * len(y), ball)


def multiply(x: AlgebraElement, y: AlgebraElement, term_limit: int | None = None) -> AlgebraElement:
    """Convolution product: sum of c_u c_v at the reduced word uv.

    The outer loop runs over the smaller operand; the result is the same
    either way since accumulation is exact.
    """
    _check_same(x, y)
    limit = _resolve_limit(term_limit)
    projected = projected_product_size(x, y)
    if projected > limit:
        raise TermLimitError(projected, limit, "product")
    acc: dict[bytes, Coefficient] = {}
    if len(x._terms) <= len(y._terms):
        _accumulate(acc, x._terms, y._terms)
    else:
        for v, cv in y._terms.items():
            for u, cu in x._terms.items():
                w = concat_code(u, v)
                acc[w] = acc.get(w, 0) + cu * cv
    return _finish(x.spec, acc)


def adjoint(x: AlgebraElement) -> AlgebraElement:
    """Map each term c*w to c*w^-1 (rational coefficients are self-conjugate)."""
    return AlgebraElement._trusted(x.spec, {invert_code(w): c for w, c in x._terms.items()})


def trace(x: AlgebraElement) -> Coefficient:
    """Canonical trace: the coefficient of the identity word."""
    return x._terms.get(b"", 0)


def _guard_sphere(spec: GroupSpec, n: int, limit: int) -> None:
    size = count_words_of_length(spec, n)
    if size > limit:
        raise TermLimitError(size, limit, f"sphere X_{n}")


def sphere(spec: GroupSpec, n: int, term_limit: int | None = None) -> AlgebraElement:
    """X_n, the sum of every reduced word of length ``n``."""
    if n < 0:
        raise ValueError(f"sphere radius must be nonnegative, got {n}")
    _guard_sphere(spec, n, _resolve_limit(term_limit))
    return AlgebraElement._trusted(spec, dict.fromkeys(iter_codes_of_length(spec.N, n), 1))


def generating_operator(spec: GroupSpec) -> AlgebraElement:
    """G = g_1 + ... + g_N + g_1^-1 + ... + g_N^-1, which is X_1."""
    return sphere(spec, 1)


def projected_power_size(x: AlgebraElement, n: int) -> int:
    """Upper bound on the support of ``x**n``.

    When every word of x has the same length parity, only one parity can
    occur in the power, which keeps the bound tight for powers of G.
    """
    if not x:
        return 0
    px = _length_parity(x)
    parity = None if px is None else (n * px) % 2
    return min(len(x) ** n, count_words_up_to(x.spec, n * x.max_length(), parity))


def power(x: AlgebraElement, n: int, term_limit: int | None = None) -> AlgebraElement:
    """``x**n`` by repeated left multiplication with ``x``.

    Left multiplication by a short element keeps each step linear in the
    current support, and peak memory at the size of the final result.
    """
    if n < 1:
        raise ValueError(f"power exponent must be positive, got {n}")
    limit = _resolve_limit(term_limit)
    projected = projected_power_size(x, n)
    if projected > limit:
        raise TermLimitError(projected, limit, f"power {n}")
    result = x
    for _ in range(n - 1):
        result = left_multiply(x, result, term_limit=limit)
    return result


def left_multiply(x: AlgebraElement, y: AlgebraElement, term_limit: int | None = None) -> AlgebraElement:
    """``x*y`` with the loop over ``x`` outermost (cheap when x is small)."""
    _check_same(x, y)
    limit = _resolve_limit(term_limit)
    projected = projected_product_size(x, y)
    if projected > limit:
        raise TermLimitError(projected, limit, "product")
    acc: dict[bytes, Coefficient] = {}
    _accumulate(acc, x._terms, y._terms)
    return _finish(x.spec, acc)


def linear_combination(spec: GroupSpec, parts: Iterable[tuple[Coefficient, AlgebraElement]]) -> AlgebraElement:
    acc: dict[bytes, Coefficient] = {}
    for c, x in parts:
        if x.spec != spec:
            raise WordError(f"element over N={x.spec.N} in a combination over N={spec.N}")
        for w, v in x._terms.items():
            acc[w] = acc.get(w, 0) + c * v
    return _finish(spec, acc)


# -- serialization -----------------------------------------------------------

def format_element(x: AlgebraElement) -> str:
    if not x:
        return "0"
    parts = []
    for code in sorted(x._terms, key=word_sort_key):
        c = x._terms[code]
        text = code_to_text(code)
        parts.append(text if c == 1 else f"{c}*{text}")
    return " + ".join(parts)


def element_to_dict(x: AlgebraElement) -> dict:
    return {
        "schema": ELEMENT_SCHEMA,
        "N": x.spec.N,
        "terms": {code_to_text(code): str(x._terms[code]) for code in sorted(x._terms, key=word_sort_key)},
    }


def element_from_dict(data: Mapping) -> AlgebraElement:
    if data.get("schema") != ELEMENT_SCHEMA:
        raise ValueError(f"expected schema {ELEMENT_SCHEMA!r}, got {data.get('schema')!r}")
    spec = GroupSpec(int(data["N"]))
    return AlgebraElement.from_words(spec, {w: parse_coefficient(c) for w, c in data["terms"].items()})


def element_to_json(x: AlgebraElement) -> str:
    return json.dumps(element_to_dict(x))


def element_from_json(text: str) -> AlgebraElement:
    return element_from_dict(json.loads(text))
