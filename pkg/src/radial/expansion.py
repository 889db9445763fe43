"""Powers of G in the sphere basis, driven by the radial recurrence.

With X_k the sum of reduced words of length k,

    X_1 X_1 = X_2 + 2N e
    X_1 X_k = X_{k+1} + (2N-1) X_{k-1}      (k >= 2)

so G^n = sum_k c_k X_k is tracked by its integer coefficient vector alone.
The even-index coefficients of even powers are the ``p`` numbers of the
recurrence diagram and the odd-index coefficients of odd powers the ``q``
numbers; ``c_0`` of G^n is the trace moment.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .algebra import AlgebraElement, TermLimitError, _resolve_limit, sphere
from .words import GroupSpec, count_words_of_length, count_words_up_to

EXPANSION_SCHEMA = "radial.expansion.v1"
MOMENTS_SCHEMA = "radial.moments.v1"


@dataclass(frozen=True)
class RadialVector:
    """Coefficients ``c[0..n]`` of G^n over X_0..X_n."""

    spec: GroupSpec
    n: int
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients, got {len(self.c)}")

    def __getitem__(self, k: int) -> int:
        return self.c[k] if 0 <= k <= self.n else 0

    def nonzero(self) -> dict[int, int]:
        return {k: v for k, v in enumerate(self.c) if v}

    def check(self) -> None:
        """Raise ``AssertionError`` unless monic, parity-clean and nonnegative."""
        assert self.c[self.n] == 1, "top coefficient must be 1"
        for k, v in enumerate(self.c):
            assert v >= 0, f"negative coefficient at X_{k}"
            assert (k - self.n) % 2 == 0 or v == 0, f"wrong-parity coefficient at X_{k}"


@dataclass(frozen=True)
class MomentTable:
    spec: GroupSpec
    rows: tuple[tuple[int, int], ...]

    def values(self) -> dict[int, int]:
        return dict(self.rows)

    def even_values(self) -> list[int]:
        return [v for n, v in self.rows if n % 2 == 0]


def _step(c: list[int], two_n: int) -> list[int]:
    # multiply sum c_k X_k on the left by X_1
    m = len(c)
    out = [0] * (m + 1)
    out[1:] = c
    if m > 1:
        out[0] = two_n * c[1]
    w = two_n - 1
    for k in range(2, m):
        ck = c[k]
        if ck:
            out[k - 1] += w * ck
    return out


def radial_step(v: RadialVector) -> RadialVector:
    """The vector of G^(n+1) from that of G^n."""
    return RadialVector(v.spec, v.n + 1, tuple(_step(list(v.c), v.spec.degree)))


def generator_vector(spec: GroupSpec) -> RadialVector:
    return RadialVector(spec, 1, (0, 1))


def expand_power(spec: GroupSpec, n: int) -> RadialVector:
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    c = [0, 1]
    two_n = spec.degree
    for _ in range(n - 1):
        c = _step(c, two_n)
    return RadialVector(spec, n, tuple(c))


def coefficient_p(spec: GroupSpec, n: int, j: int) -> int:
    """p_j^n: coefficient of X_j in G^n for even n and even j."""
    if n < 2 or n % 2 or j % 2 or not 0 <= j <= n:
        raise ValueError(f"p_j^n needs even n >= 2 and even 0 <= j <= n, got n={n}, j={j}")
    return expand_power(spec, n)[j]


def coefficient_q(spec: GroupSpec, n: int, i: int) -> int:
    """q_i^n: coefficient of X_i in G^n for odd n and odd i."""
    if n < 1 or n % 2 == 0 or i % 2 == 0 or not 1 <= i <= n:
        raise ValueError(f"q_i^n needs odd n and odd 1 <= i <= n, got n={n}, i={i}")
    return expand_power(spec, n)[i]


def moment(spec: GroupSpec, n: int) -> int:
    """tau(G^n): zero for odd n, otherwise the constant term of G^n."""
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    if n % 2:
        return 0
    return expand_power(spec, n)[0]


def moment_series(spec: GroupSpec, n_max: int) -> MomentTable:
    """Rows (n, tau(G^n)) for n = 1..n_max from one recurrence sweep.

    Coefficients of X_k with k above n_max - n can no longer reach X_0 by
    step n_max, so they are dropped as the sweep goes.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    two_n = spec.degree
    c = [0, 1]
    rows = [(1, 0)]
    for n in range(2, n_max + 1):
        c = _step(c, two_n)
        keep = n_max - n + 1
        if len(c) > keep:
            del c[keep:]
        rows.append((n, c[0] if n % 2 == 0 else 0))
    return MomentTable(spec, tuple(rows))


def realize(v: RadialVector, term_limit: int | None = None) -> AlgebraElement:
    """The group-algebra element sum_k c_k X_k, with every word written out."""
    limit = _resolve_limit(term_limit)
    support = count_words_up_to(v.spec, v.n, v.n % 2)
    if support > limit:
        raise TermLimitError(support, limit, f"realized G^{v.n}")
    terms: dict[bytes, int] = {}
    for k, ck in enumerate(v.c):
        if ck:
            for code in sphere(v.spec, k, term_limit=limit)._terms:
                terms[code] = ck
    return AlgebraElement._trusted(v.spec, terms)


def project_to_spheres(x: AlgebraElement) -> dict[int, int] | None:
    """Inverse of :func:`realize` for radial elements.

    Returns ``{k: c_k}`` if ``x`` is constant on every sphere it touches and
    covers those spheres fully; otherwise None.
    """
    by_len: dict[int, set] = {}
    counts: dict[int, int] = {}
    for code, c in x.items():
        by_len.setdefault(len(code), set()).add(c)
        counts[len(code)] = counts.get(len(code), 0) + 1
    out = {}
    for k in sorted(by_len):
        if len(by_len[k]) != 1 or counts[k] != count_words_of_length(x.spec, k):
            return None
        out[k] = by_len[k].pop()
    return out


# -- serialization -----------------------------------------------------------

def expansion_to_dict(v: RadialVector) -> dict:
    return {
        "schema": EXPANSION_SCHEMA,
        "N": v.spec.N,
        "n": v.n,
        "coefficients": {str(k): str(c) for k, c in enumerate(v.c) if c},
    }


def expansion_from_dict(data: dict) -> RadialVector:
    if data.get("schema") != EXPANSION_SCHEMA:
        raise ValueError(f"expected schema {EXPANSION_SCHEMA!r}, got {data.get('schema')!r}")
    n = int(data["n"])
    c = [0] * (n + 1)
    for k, value in data["coefficients"].items():
        c[int(k)] = int(value)
    return RadialVector(GroupSpec(int(data["N"])), n, tuple(c))


def format_expansion(v: RadialVector) -> str:
    """Sphere-basis notation, e.g. ``G^4 = X_4 + 10·X_2 + 28·e``."""
    parts = []
    for k in range(v.n, -1, -1):
        ck = v.c[k]
        if not ck:
            continue
        basis = "e" if k == 0 else f"X_{k}"
        parts.append(basis if ck == 1 else f"{ck}·{basis}")
    return f"G^{v.n} = " + " + ".join(parts)


def moments_to_dict(table: MomentTable) -> dict:
    return {
        "schema": MOMENTS_SCHEMA,
        "N": table.spec.N,
        "rows": [{"n": n, "moment": str(v)} for n, v in table.rows],
    }


def moments_to_csv(table: MomentTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "moment"])
    for n, v in table.rows:
        writer.writerow([n, str(v)])
    return buf.getvalue()


def moments_from_csv(text: str, spec: GroupSpec) -> MomentTable:
    reader = csv.DictReader(io.StringIO(text))
    return MomentTable(spec, tuple((int(r["n"]), int(r["moment"])) for r in reader))

