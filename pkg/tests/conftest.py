import pytest
from hypothesis import settings, strategies as st

from freecalc.words import Alphabet, free_reduce

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

A1, A2, A3, A4 = (Alphabet.standard(n) for n in (1, 2, 3, 4))


def words(alphabet, max_len=12, max_exp=3):
    n = alphabet.rank
    syl = st.tuples(st.integers(0, n - 1), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(syl, max_size=max_len).map(lambda raw: free_reduce(raw, alphabet))


@st.composite
def ranked_words(draw, count=1, max_rank=3, max_len=12):
    A = Alphabet.standard(draw(st.integers(1, max_rank)))
    ws = [draw(words(A, max_len)) for _ in range(count)]
    return (A, *ws)


# acceptance reporting ---------------------------------------------------------

_acceptance: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _acceptance[number] = (title, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, passed, duration = _acceptance[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {title} ({duration:.2f}s)")
