"""Conditional expectation onto the cyclic subgroup algebra L(K), K = <h>.

``h = g_1 g_2 ... g_N g_1^-1 g_2^-1 ... g_N^-1`` is cyclically reduced of
length 2N, so h^k is reduced of length 2N|k| and membership in K is a
block-pattern test. E keeps exactly the terms at powers of h.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import AlgebraElement, Coefficient, normalize
from .expansion import RadialVector, expand_power, generator_vector, radial_step
from .words import GroupSpec, ReducedWord, WordError, invert_code

OPVAL_SCHEMA = "radial.opval.v1"


@dataclass(frozen=True)
class CommutatorSpec:
    spec: GroupSpec

    @property
    def h(self) -> ReducedWord:
        return ReducedWord(self.spec, self.h_code)

    @property
    def h_code(self) -> bytes:
        N = self.spec.N
        return bytes(2 * i for i in range(N)) + bytes(2 * i + 1 for i in range(N))

    @property
    def period(self) -> int:
        return 2 * self.spec.N

    def h_power_code(self, k: int) -> bytes:
        block = self.h_code if k >= 0 else invert_code(self.h_code)
        return block * abs(k)


class LaurentInH:
    """A finite sum of alpha_k h^k, the image side of E. Immutable."""

    __slots__ = ("cspec", "_coeffs")

    def __init__(self, cspec: CommutatorSpec, coeffs: Mapping[int, Coefficient] | None = None):
        self.cspec = cspec
        self._coeffs = {int(k): normalize(c) for k, c in (coeffs or {}).items() if c}

    @property
    def coeffs(self) -> dict[int, Coefficient]:
        return dict(sorted(self._coeffs.items()))

    def __getitem__(self, k: int) -> Coefficient:
        return self._coeffs.get(k, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentInH):
            return NotImplemented
        return self.cspec == other.cspec and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.cspec, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"LaurentInH(N={self.cspec.spec.N}, {self.coeffs})"

    def shift(self, p: int) -> "LaurentInH":
        """Multiplication by h^p (K is abelian, so left and right agree)."""
        return LaurentInH(self.cspec, {k + p: c for k, c in self._coeffs.items()})

    def is_symmetric(self) -> bool:
        return all(self._coeffs.get(-k, 0) == c for k, c in self._coeffs.items())


def power_of_commutator(w: ReducedWord, cspec: CommutatorSpec) -> int | None:
    """k with w == h^k, or None if w is not in K."""
    if w.spec != cspec.spec:
        raise WordError("word and commutator over different groups")
    return _h_exponent(w.code, cspec)


def _h_exponent(code: bytes, cspec: CommutatorSpec) -> int | None:
    period = cspec.period
    if not code:
        return 0
    if len(code) % period:
        return None
    k = len(code) // period
    if code == cspec.h_code * k:
        return k
    if code == invert_code(cspec.h_code) * k:
        return -k
    return None


def expect(x: AlgebraElement, cspec: CommutatorSpec) -> LaurentInH:
    """E(sum a_g g) = sum over g in K of a_g g."""
    if x.spec != cspec.spec:
        raise WordError(f"element over N={x.spec.N}, expectation over N={cspec.spec.N}")
    period = cspec.period
    out = {}
    for code, c in x.items():
        if len(code) % period == 0:
            k = _h_exponent(code, cspec)
            if k is not None:
                out[k] = c
    return LaurentInH(cspec, out)


def embed(v: LaurentInH) -> AlgebraElement:
    """The inclusion L(K) -> Q[F_N]."""
    cs = v.cspec
    return AlgebraElement(cs.spec, {cs.h_power_code(k): c for k, c in v.coeffs.items()})


def laurent_involution(v: LaurentInH) -> LaurentInH:
    return LaurentInH(v.cspec, {-k: c for k, c in v.coeffs.items()})


def laurent_from_vector(cspec: CommutatorSpec, v: RadialVector) -> LaurentInH:
    """E(sum c_m X_m) = c_0 h^0 + sum_{p>=1} c_{2Np} (h^p + h^-p).

    X_m meets K only when 2N divides m, and then exactly in h^(m/2N) and
    its inverse.
    """
    if v.spec != cspec.spec:
        raise WordError("vector and commutator over different groups")
    period = cspec.period
    out = {0: v[0]}
    for p in range(1, v.n // period + 1):
        c = v[period * p]
        out[p] = c
        out[-p] = c
    return LaurentInH(cspec, out)


def opval_moment_closed(cspec: CommutatorSpec, n: int) -> LaurentInH:
    """E(G^n) from the radial coefficients of G^n; zero for odd n."""
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    if n % 2:
        return LaurentInH(cspec)
    return laurent_from_vector(cspec, expand_power(cspec.spec, n))


@dataclass(frozen=True)
class OpValMomentTable:
    cspec: CommutatorSpec
    rows: tuple[tuple[int, LaurentInH], ...]


def opval_moment_series(cspec: CommutatorSpec, n_max: int) -> OpValMomentTable:
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    v = generator_vector(cspec.spec)
    rows = []
    for n in range(1, n_max + 1):
        if n > 1:
            v = radial_step(v)
        rows.append((n, laurent_from_vector(cspec, v) if n % 2 == 0 else LaurentInH(cspec)))
    return OpValMomentTable(cspec, tuple(rows))


# -- serialization -----------------------------------------------------------

def opval_to_dict(v: LaurentInH, n: int) -> dict:
    return {
        "schema": OPVAL_SCHEMA,
        "N": v.cspec.spec.N,
        "n": n,
        "laurent": {str(k): str(c) for k, c in v.coeffs.items()},
    }


def opval_from_dict(data: Mapping) -> tuple[int, LaurentInH]:
    if data.get("schema") != OPVAL_SCHEMA:
        raise ValueError(f"expected schema {OPVAL_SCHEMA!r}, got {data.get('schema')!r}")
    cspec = CommutatorSpec(GroupSpec(int(data["N"])))
    coeffs = {int(k): normalize(Fraction(c)) for k, c in data["laurent"].items()}
    return int(data["n"]), LaurentInH(cspec, coeffs)


def format_laurent(v: LaurentInH) -> str:
    """``h^2 + 202·h^1 + 2092·h^0 + ...`` in descending exponent order; ``0`` if empty."""
    if not v:
        return "0"
    parts = []
    for k, c in sorted(v.coeffs.items(), reverse=True):
        basis = f"h^{k}"
        parts.append(basis if c == 1 else f"{c}·{basis}")
    return " + ".join(parts)


def opval_series_to_csv(table: OpValMomentTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "exponent", "coefficient"])
    for n, v in table.rows:
        for k, c in v.coeffs.items():
            writer.writerow([n, k, str(c)])
    return buf.getvalue()
