import pytest

from nilfibre.conformance import compositions_of


def all_compositions(max_n: int) -> list[tuple[int, ...]]:
    return [parts for n in range(1, max_n + 1) for parts in compositions_of(n)]


@pytest.fixture(scope="session")
def small_compositions() -> list[tuple[int, ...]]:
    return all_compositions(7)
