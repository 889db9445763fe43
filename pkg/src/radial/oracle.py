"""Independent checks of the radial recurrence.

Three routes to the same numbers:

* the sphere-basis recurrence (:mod:`radial.expansion`),
* brute-force convolution in the group algebra (:mod:`radial.algebra`),
* counting walks on the 2N-regular tree, which is the Cayley graph of F_N.

Reports are plain data; callers decide what a mismatch means.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .algebra import TermLimitError, generating_operator, left_multiply, trace
from .expansion import expand_power, project_to_spheres, realize
from .expectation import CommutatorSpec, expect, opval_moment_closed
from .words import GroupSpec

VERIFY_SCHEMA = "radial.verify.v1"

MATCH = "match"
MISMATCH = "mismatch"
SKIPPED = "skipped-resource"

# G^8 for N=2 as printed in the published worked example
PUBLISHED_G8 = {8: 1, 6: 22, 4: 202, 2: 744, 0: 1316}


def tree_walk_distribution(spec: GroupSpec, n: int) -> list[int]:
    """Number of n-step walks from the root ending at each distance.

    From the root there are 2N edges out; from any other vertex one edge
    leads back toward the root and 2N-1 lead away.
    """
    if n < 0:
        raise ValueError(f"walk length must be nonnegative, got {n}")
    d = spec.degree
    counts = [1]
    for _ in range(n):
        nxt = [0] * (len(counts) + 1)
        for dist, c in enumerate(counts):
            if not c:
                continue
            if dist == 0:
                nxt[1] += d * c
            else:
                nxt[dist - 1] += c
                nxt[dist + 1] += (d - 1) * c
        counts = nxt
    return counts


def tree_walk_moment(spec: GroupSpec, n: int) -> int:
    """Closed walks of length n at the root of the 2N-regular tree."""
    return tree_walk_distribution(spec, n)[0]


@dataclass
class VerificationReport:
    N: int
    method: str
    n_range: tuple[int, int]
    results: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["status"] != MISMATCH for r in self.results)

    def statuses(self) -> dict[int, str]:
        return {r["n"]: r["status"] for r in self.results}

    def to_dict(self) -> dict:
        return {
            "schema": VERIFY_SCHEMA,
            "N": self.N,
            "method": self.method,
            "range": list(self.n_range),
            "results": self.results,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _overall(checks: dict[str, str]) -> str:
    if MISMATCH in checks.values():
        return MISMATCH
    if SKIPPED in checks.values():
        return SKIPPED
    return MATCH


def published_example_note(spec: GroupSpec) -> str | None:
    """Compare the recurrence with the published G^8 expansion (N=2 only)."""
    if spec.N != 2:
        return None
    computed = expand_power(spec, 8)
    agree = [k for k in sorted(PUBLISHED_G8, reverse=True) if k < 8 and computed[k] == PUBLISHED_G8[k]]
    differ = [k for k in sorted(PUBLISHED_G8, reverse=True) if computed[k] != PUBLISHED_G8[k]]
    if not differ:
        return None
    printed = "/".join(str(PUBLISHED_G8[k]) for k in differ)
    got = "/".join(str(computed[k]) for k in differ)
    same = " and ".join(str(PUBLISHED_G8[k]) for k in agree)
    return (
        f"paper Example 1.3 prints {printed}; computed {got} "
        f"(coefficients of {', '.join('e' if k == 0 else f'X_{k}' for k in differ)} in G^8); "
        f"the printed {same} agree"
    )


def verify_expansion(
    spec: GroupSpec,
    n_max: int,
    max_brute: int | None = None,
    term_limit: int | None = None,
) -> VerificationReport:
    """Recurrence vs tree walks for every n, and vs brute force up to ``max_brute``.

    The brute-force side is built incrementally (G^n = G * G^(n-1)); once it
    hits the term limit all later n are marked skipped on that check.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    if max_brute is None:
        max_brute = n_max
    report = VerificationReport(spec.N, "recurrence/brute-force/tree-walk", (1, n_max))
    G = generating_operator(spec)
    brute = None
    brute_alive = True
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        v = expand_power(spec, n)
        recurrence_moment = v[0] if n % 2 == 0 else 0
        walk = tree_walk_moment(spec, n)
        checks = {"walk": MATCH if walk == recurrence_moment else MISMATCH}
        values = {"recurrence": str(recurrence_moment), "walk": str(walk)}
        if brute_alive and n <= max_brute:
            try:
                brute = G if brute is None else left_multiply(G, brute, term_limit=term_limit)
                realized = realize(v, term_limit=term_limit)
            except TermLimitError:
                brute_alive = False
        if brute_alive and n <= max_brute:
            checks["brute"] = MATCH if realized == brute else MISMATCH
            checks["trace"] = MATCH if trace(brute) == recurrence_moment else MISMATCH
            if checks["brute"] == MISMATCH:
                projected = project_to_spheres(brute)
                values["brute"] = (
                    {str(k): str(c) for k, c in projected.items()} if projected is not None else "non-radial"
                )
                values["expansion"] = {str(k): str(c) for k, c in v.nonzero().items()}
            values["trace"] = str(trace(brute))
        else:
            checks["brute"] = SKIPPED
        row = {"n": n, "status": _overall(checks), "checks": checks, "ms": round((time.perf_counter() - t0) * 1000, 3)}
        if row["status"] == MISMATCH:
            row["values"] = values
        report.results.append(row)
    if n_max >= 8:
        note = published_example_note(spec)
        if note:
            report.notes.append(note)
    return report


def verify_opval(
    cspec: CommutatorSpec,
    n_max: int,
    max_brute: int | None = None,
    term_limit: int | None = None,
) -> VerificationReport:
    """Closed-form E(G^n) vs E applied to the brute-force G^n."""
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    if max_brute is None:
        max_brute = n_max
    spec = cspec.spec
    report = VerificationReport(spec.N, "closed-form/expect-brute-force", (1, n_max))
    G = generating_operator(spec)
    brute = None
    brute_alive = True
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        closed = opval_moment_closed(cspec, n)
        row = {"n": n}
        if brute_alive and n <= max_brute:
            try:
                brute = G if brute is None else left_multiply(G, brute, term_limit=term_limit)
            except TermLimitError:
                brute_alive = False
        if brute_alive and n <= max_brute:
            direct = expect(brute, cspec)
            row["status"] = MATCH if direct == closed else MISMATCH
            if row["status"] == MISMATCH:
                row["values"] = {
                    "closed": {str(k): str(c) for k, c in closed.coeffs.items()},
                    "brute": {str(k): str(c) for k, c in direct.coeffs.items()},
                }
        else:
            row["status"] = SKIPPED
        row["ms"] = round((time.perf_counter() - t0) * 1000, 3)
        report.results.append(row)
    return report
