"""Timing the recurrence against brute-force convolution."""
from __future__ import annotations

import time

from .algebra import TermLimitError, generating_operator, left_multiply
from .expansion import _step
from .words import GroupSpec, count_words_up_to

BENCH_SCHEMA = "radial.bench.v1"


def _checkpoints(n_max: int) -> list[int]:
    points = {n_max}
    base = 1
    while base <= n_max:
        for m in (1, 2, 5):
            if m * base <= n_max:
                points.add(m * base)
        base *= 10
    return sorted(points)


def bench_recurrence(spec: GroupSpec, n_max: int) -> list[dict]:
    """Cumulative time of a single sweep G, G^2, ..., G^n_max, sampled at checkpoints."""
    wanted = set(_checkpoints(n_max))
    rows = []
    c = [0, 1]
    t0 = time.perf_counter()
    for n in range(1, n_max + 1):
        if n > 1:
            c = _step(c, spec.degree)
        if n in wanted:
            m = c[0] if n % 2 == 0 else 0
            rows.append({
                "method": "recurrence",
                "n": n,
                "ms": round((time.perf_counter() - t0) * 1000, 3),
                "terms": len(c),
                "predicted_terms": n + 1,
                "moment_digits": len(str(m)),
            })
    return rows


def bench_brute(spec: GroupSpec, n_max: int, term_limit: int | None = None) -> list[dict]:
    """Per-step time and support size of G^n by repeated left multiplication.

    Stops at the first step refused by the term limit and records it.
    """
    G = generating_operator(spec)
    x = None
    rows = []
    for n in range(1, n_max + 1):
        predicted = count_words_up_to(spec, n, n % 2)
        t0 = time.perf_counter()
        try:
            x = G if x is None else left_multiply(G, x, term_limit=term_limit)
        except TermLimitError as exc:
            rows.append({"method": "brute", "n": n, "ms": None, "terms": None,
                         "predicted_terms": predicted, "error": str(exc)})
            break
        rows.append({
            "method": "brute",
            "n": n,
            "ms": round((time.perf_counter() - t0) * 1000, 3),
            "terms": len(x),
            "predicted_terms": predicted,
        })
    return rows
