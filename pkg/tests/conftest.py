import pytest  # type: ignore
from pathlib import Path

from diffusion_game import Graph, from_edge_list

FIXTURE_DIR: Path = Path(__file__).parent / "data"

SAMPLE_EDGES: list[tuple[int, int]] = [
    (0, 1),
    (0, 2),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (3, 4),
]
SAMPLE_C0: list[int] = [6, 10, 5, 0, 4, 8]


@pytest.fixture
def sample() -> Graph:
    """Six-vertex graph whose trajectory from SAMPLE_C0 has pre-period 9"""
    return from_edge_list(6, SAMPLE_EDGES)
