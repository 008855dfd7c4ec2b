import random
from pathlib import Path

import pytest

from subtile import Graph, build, parse_graph

FIXTURES = Path(__file__).parent / "fixtures"

# Pattern corpus used across the suite (>= 10 patterns, mixed shapes).
CORPUS_EXPRS = {
    "K2": "K2",
    "K3": "K3",
    "K4": "K4",
    "K5": "K5",
    "K6": "K6",
    "K7": "K7",
    "C4": "C4",
    "C5": "C5",
    "P3": "P3",
    "P4": "P4",
    "K13": "K(1,3)",
    "K23": "K(2,3)",
    "K3uK2": "U(K3,K2)",
}


@pytest.fixture(scope="session")
def corpus() -> dict[str, Graph]:
    return {name: build(expr) for name, expr in CORPUS_EXPRS.items()}


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return parse_graph((FIXTURES / "petersen.el").read_text())


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph(n, tuple(edges))
