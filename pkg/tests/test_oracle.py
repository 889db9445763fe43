import json

import pytest

from radial import oracle
from radial.expansion import RadialVector, expand_power, moment
from radial.expectation import CommutatorSpec
from radial.oracle import (
    MATCH,
    MISMATCH,
    SKIPPED,
    published_example_note,
    tree_walk_distribution,
    tree_walk_moment,
    verify_expansion,
    verify_opval,
)
from radial.words import GroupSpec, count_words_of_length, count_words_up_to

from conftest import N2, N3


class TestTreeWalk:
    @pytest.mark.parametrize("n,expected", [(0, 1), (2, 4), (8, 2092), (12, 195352)])
    def test_values(self, n, expected):
        assert tree_walk_moment(N2, n) == expected

    @pytest.mark.parametrize("spec", [N2, N3, GroupSpec(5)])
    def test_odd_walks_vanish(self, spec):
        assert all(tree_walk_moment(spec, n) == 0 for n in range(1, 60, 2))

    @pytest.mark.parametrize("spec", [N2, N3])
    def test_row_sums(self, spec):
        for n in range(1, 40):
            dist = tree_walk_distribution(spec, n)
            assert sum(dist) == spec.degree ** n
            # walks that never step back are the reduced words of length n
            assert dist[n] == spec.degree * (spec.degree - 1) ** (n - 1) == count_words_of_length(spec, n)

    @pytest.mark.parametrize("spec", [N2, N3])
    def test_walk_endpoints_give_radial_coefficients(self, spec):
        # walks ending at distance k split evenly over the |X_k| words there
        for n in range(1, 30):
            dist = tree_walk_distribution(spec, n)
            v = expand_power(spec, n)
            for k, count in enumerate(dist):
                assert count == v[k] * count_words_of_length(spec, k)

    def test_agrees_with_moment_to_100(self):
        for n in range(1, 101):
            assert tree_walk_moment(N2, n) == moment(N2, n)


class TestVerifyExpansion:
    def test_n2_to_8(self):
        r = verify_expansion(N2, 8)
        assert r.ok
        assert set(r.statuses().values()) == {MATCH}
        assert [row["n"] for row in r.results] == list(range(1, 9))
        assert len(r.notes) == 1
        assert "744/1316" in r.notes[0] and "958/2092" in r.notes[0]
        assert "22 and 202 agree" in r.notes[0]

    def test_trivial(self):
        r = verify_expansion(N2, 1)
        assert r.ok and r.statuses() == {1: MATCH} and r.notes == []

    def test_n3(self):
        r = verify_expansion(N3, 6)
        assert r.ok and set(r.statuses().values()) == {MATCH}
        assert r.notes == []

    def test_skips_past_term_limit(self):
        limit = count_words_up_to(N2, 6, 0)
        r = verify_expansion(N2, 9, term_limit=limit)
        st = r.statuses()
        assert all(st[n] == MATCH for n in range(1, 7))
        assert all(st[n] == SKIPPED for n in range(7, 10))
        assert r.ok
        assert all(row["checks"]["walk"] == MATCH for row in r.results)

    def test_max_brute(self):
        r = verify_expansion(N2, 20, max_brute=4)
        st = r.statuses()
        assert [st[n] for n in range(1, 5)] == [MATCH] * 4
        assert all(st[n] == SKIPPED for n in range(5, 21))

    def test_injected_fault(self, monkeypatch):
        real = oracle.expand_power

        def broken(spec, n):
            v = real(spec, n)
            if n == 6:
                c = list(v.c)
                c[2] += 1
                return RadialVector(spec, n, tuple(c))
            return v

        monkeypatch.setattr(oracle, "expand_power", broken)
        r = verify_expansion(N2, 8)
        assert not r.ok
        bad = [row for row in r.results if row["status"] == MISMATCH]
        assert [row["n"] for row in bad] == [6]
        assert bad[0]["values"]["expansion"]["2"] == "98"
        assert bad[0]["values"]["brute"]["2"] == "97"

    def test_report_json(self):
        d = json.loads(verify_expansion(N2, 3).to_json())
        assert d["schema"] == "radial.verify.v1"
        assert d["N"] == 2 and d["range"] == [1, 3]
        assert all({"n", "status", "ms"} <= set(row) for row in d["results"])


class TestVerifyOpval:
    def test_n2(self):
        r = verify_opval(CommutatorSpec(N2), 8)
        assert r.ok and set(r.statuses().values()) == {MATCH}

    def test_n3(self):
        r = verify_opval(CommutatorSpec(N3), 8)
        assert r.ok and set(r.statuses().values()) == {MATCH}

    def test_injected_fault(self, monkeypatch):
        from radial.expectation import LaurentInH

        monkeypatch.setattr(oracle, "opval_moment_closed", lambda cspec, n: LaurentInH(cspec, {0: 1}))
        r = verify_opval(CommutatorSpec(N2), 3)
        assert not r.ok
        assert r.results[0]["values"] == {"closed": {"0": "1"}, "brute": {}}


def test_published_note_only_for_two_generators():
    assert published_example_note(N3) is None
    assert "Example 1.3" in published_example_note(N2)
