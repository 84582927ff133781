import random
from pathlib import Path

import pytest

from kgatlas.model import AbbrevTable, Triplet
from kgatlas.graph import build_graph
from kgatlas.preprocess import deduplicate

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_triples_bytes() -> bytes:
    return (FIXTURES / "golden_triples.csv").read_bytes()


@pytest.fixture
def triangle_graph():
    triples = [
        Triplet("a", "r1", "b"),
        Triplet("b", "r2", "c"),
        Triplet("c", "r3", "a"),
    ]
    return build_graph(triples)


@pytest.fixture
def star_graph():
    # 5-node star: center degree 4, leaves degree 1.
    triples = [Triplet("center", f"r{i}", f"leaf{i}") for i in range(4)]
    return build_graph(triples)


def random_triples(rng: random.Random, n: int, entities: int = 8, relations: int = 5):
    """Random triples over a small alphabet; duplicates likely."""
    return [
        Triplet(
            subject=f"e{rng.randrange(entities)}",
            predicate=f"r{rng.randrange(relations)}",
            object=f"e{rng.randrange(entities)}",
            multiplicity=rng.randrange(1, 4),
        )
        for _ in range(n)
    ]


def random_graph(rng: random.Random, max_nodes: int = 50):
    n_nodes = rng.randrange(1, max_nodes + 1)
    n_edges = rng.randrange(0, 3 * n_nodes)
    triples = []
    seen = set()
    for _ in range(n_edges):
        s = f"n{rng.randrange(n_nodes)}"
        o = f"n{rng.randrange(n_nodes)}"
        r = f"rel{rng.randrange(6)}"
        if (s, r, o) in seen:
            continue
        seen.add((s, r, o))
        triples.append(Triplet(s, r, o))
    # Guarantee at least one node even with zero edges.
    if not triples:
        triples = [Triplet("n0", "rel0", "n1")]
    return build_graph(deduplicate(triples), AbbrevTable())
