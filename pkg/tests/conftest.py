import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kleene_truth import CodecA, close, iterate, liar, truth_teller  # noqa: E402
from kleene_truth.syntax import ZERO, Eq, Or  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def codec():
    return CodecA()


@pytest.fixture(scope="session")
def the_liar(codec):
    return liar(codec)


@pytest.fixture(scope="session")
def the_truth_teller(codec):
    return truth_teller(codec)


@pytest.fixture(scope="session")
def liar_universe(codec, the_liar):
    """Liar, its unfolding, and (0 = 0 or liar), instantiated over 0..2."""
    seeds = [the_liar.psi, the_liar.phi_at_psi, Or(Eq(ZERO, ZERO), the_liar.psi)]
    return close(seeds, bound=2, codec=codec)


@pytest.fixture(scope="session")
def liar_models(liar_universe):
    return iterate(liar_universe, "SK"), iterate(liar_universe, "WK")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, TITLES
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {n:>2}  {RESULTS[n]}  {TITLES[n]}")
