import pathlib
import random
import sys

import pytest

try:
    import gradedtensor  # noqa: F401
except ImportError:  # running from a source checkout without installation
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gradedtensor.brauer import BrauerDiagram, BrauerElement
from gradedtensor.combinatorics import DirectedPairing
from gradedtensor.model import StrandedGraph
from gradedtensor.polynomial import Poly
from fractions import Fraction


def rand_directed_pairing(rng: random.Random, n: int) -> DirectedPairing:
    pts = list(range(1, n + 1))
    rng.shuffle(pts)
    return DirectedPairing(n, tuple((pts[2 * i], pts[2 * i + 1]) for i in range(n // 2)))


def rand_diagram(rng: random.Random, D: int) -> BrauerDiagram:
    pts = list(range(1, 2 * D + 1))
    rng.shuffle(pts)
    return BrauerDiagram(D, tuple((pts[2 * i], pts[2 * i + 1]) for i in range(D)))


def rand_element(rng: random.Random, D: int, n_terms: int = 2, z_degree: int = 0) -> BrauerElement:
    terms = {}
    for _ in range(n_terms):
        d = rand_diagram(rng, D)
        coeff = Poly(
            [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(z_degree + 1)]
        )
        if not coeff:
            coeff = Poly.const(1)
        terms[d] = terms.get(d, Poly()) + coeff
    e = BrauerElement(D, terms)
    return e if e.terms else BrauerElement.one(D)


def rand_stranded_graph(rng: random.Random, D: int, vertices: int) -> StrandedGraph:
    pts = list(range(1, D * vertices + 1))
    rng.shuffle(pts)
    strands = tuple((pts[2 * i], pts[2 * i + 1]) for i in range(len(pts) // 2))
    return StrandedGraph(D, vertices, strands)


def rand_connected_graph(rng: random.Random, D: int, vertices: int) -> StrandedGraph:
    while True:
        g = rand_stranded_graph(rng, D, vertices)
        if g.is_connected():
            return g


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
