from fractions import Fraction

import pytest
from hypothesis import strategies as st

from radial.algebra import AlgebraElement
from radial.words import GroupSpec, reduce

N2 = GroupSpec(2)
N3 = GroupSpec(3)


def signed_letters(N, max_size=20):
    letter = st.integers(1, N).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letter, max_size=max_size)


def reduced_words(spec, max_size=20):
    return signed_letters(spec.N, max_size).map(lambda ls: reduce(spec, ls))


coefficients = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


def elements(spec, max_terms=4, max_len=4):
    pairs = st.lists(st.tuples(reduced_words(spec, max_len), coefficients), max_size=max_terms)
    return pairs.map(lambda ps: AlgebraElement.from_words(spec, _merge(ps)))


def _merge(pairs):
    acc = {}
    for w, c in pairs:
        acc[w] = acc.get(w, 0) + c
    return acc


def random_word(rng, spec, max_len):
    letters = [rng.choice([1, -1]) * rng.randint(1, spec.N) for _ in range(rng.randint(0, max_len))]
    return reduce(spec, letters)


def random_element(rng, spec, max_terms=4, max_len=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        w = random_word(rng, spec, max_len)
        c = rng.randint(-5, 5) if rng.random() < 0.7 else Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        terms[w] = terms.get(w, 0) + c
    return AlgebraElement.from_words(spec, terms)


@pytest.fixture
def n2():
    return N2


@pytest.fixture
def n3():
    return N3


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
