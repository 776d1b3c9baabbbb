import pytest

from qdrt.lexicon import builtin_paper_fragment


@pytest.fixture(scope="session")
def lexicon():
    return builtin_paper_fragment()
