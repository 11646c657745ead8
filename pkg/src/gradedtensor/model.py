"""Stranded-graph invariants, Wick expansion and graph amplitudes.

An invariant of 2p order-D tensors is encoded by a stranded graph: 2p
vertices of D nodes each, with a perfect matching (the strands) on the
nodes.  Gaussian expectations expand into 2-colored stranded graphs by
pairing vertices with propagator edges; every face (alternating-color
cycle) contributes one factor of (-1)^b N, which is the entire
N-dependence and the source of the orthogonal/symplectic duality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .brauer import BrauerDiagram, BrauerElement
from .combinatorics import (
    DirectedPairing,
    all_pairings,
    canonical_orientation,
    face_decomposition,
    pairing_sign,
)
from .polynomial import Poly

Pair = Tuple[int, int]


# -- stranded graphs ----------------------------------------------------------


@dataclass(frozen=True)
class StrandedGraph:
    """A contraction pattern: `vertices` groups of D nodes and a perfect
    matching of the nodes.  Node ids are 1-based: vertex v, slot c maps
    to (v-1)*D + c.  An optional orientation fixes a direction per
    strand; the default is (smaller id, larger id)."""

    D: int
    vertices: int
    strands: Tuple[Pair, ...]
    orientation: Optional[Tuple[Pair, ...]] = None

    def __post_init__(self):
        canon = tuple(sorted((min(p), max(p)) for p in self.strands))
        object.__setattr__(self, "strands", canon)
        n = self.node_count
        flat = [x for p in canon for x in p]
        if sorted(flat) != list(range(1, n + 1)):
            raise ValueError("strands must form a perfect matching of the nodes")
        if self.orientation is not None:
            ori = tuple(self.orientation)
            if {frozenset(p) for p in ori} != {frozenset(p) for p in canon}:
                raise ValueError("orientation must orient exactly the strands")
            object.__setattr__(self, "orientation", ori)

    @property
    def node_count(self) -> int:
        return self.D * self.vertices

    def node(self, v: int, slot: int) -> int:
        return (v - 1) * self.D + slot

    def vertex_of(self, node: int) -> int:
        return (node - 1) // self.D + 1

    def slot_of(self, node: int) -> int:
        return (node - 1) % self.D + 1

    def oriented_strands(self) -> DirectedPairing:
        pairs = self.orientation if self.orientation is not None else self.strands
        return DirectedPairing(self.node_count, tuple(pairs))

    def with_orientation(self, pairs: Sequence[Pair]) -> "StrandedGraph":
        return StrandedGraph(self.D, self.vertices, self.strands, tuple(pairs))

    def is_connected(self) -> bool:
        """Connectivity of the vertex graph induced by the strands."""
        if self.vertices <= 1:
            return True
        parent = list(range(self.vertices + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.strands:
            ra, rb = find(self.vertex_of(a)), find(self.vertex_of(b))
            parent[ra] = rb
        roots = {find(v) for v in range(1, self.vertices + 1)}
        return len(roots) == 1

    def relabel_vertices(self, perm: Sequence[int]) -> "StrandedGraph":
        """Apply a permutation of vertices (0-based images) to the graph."""
        if sorted(perm) != list(range(self.vertices)):
            raise ValueError("not a vertex permutation")

        def move(node: int) -> int:
            v, c = self.vertex_of(node), self.slot_of(node)
            return perm[v - 1] * self.D + c

        strands = tuple((move(a), move(b)) for a, b in self.strands)
        return StrandedGraph(self.D, self.vertices, strands)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "vertices": self.vertices,
            "strands": [
                [[self.vertex_of(a), self.slot_of(a)], [self.vertex_of(b), self.slot_of(b)]]
                for a, b in self.strands
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StrandedGraph":
        D = int(data["D"])
        nv = int(data["vertices"])
        strands = []
        for (va, ia), (vb, ib) in data["strands"]:
            strands.append(((int(va) - 1) * D + int(ia), (int(vb) - 1) * D + int(ib)))
        return cls(D, nv, tuple(strands))


def disjoint_union_graphs(g1: StrandedGraph, g2: StrandedGraph) -> StrandedGraph:
    if g1.D != g2.D:
        raise ValueError("strand-count mismatch")
    off = g1.node_count
    strands = g1.strands + tuple((a + off, b + off) for a, b in g2.strands)
    return StrandedGraph(g1.D, g1.vertices + g2.vertices, strands)


# -- propagators --------------------------------------------------------------


@dataclass(frozen=True)
class PropagatorTerm:
    """One undirected pairing of the 2D propagator slots with its weight.

    Slots 1..D belong to the first tensor, D+1..2D to the second.  The
    weight is a polynomial in the loop variable z, evaluated at
    (-1)^b N per grading; a rational table is the degree-0 case.
    """

    pairing: Tuple[Pair, ...]
    weight: Poly

    def __post_init__(self):
        object.__setattr__(self, "pairing", tuple(sorted((min(p), max(p)) for p in self.pairing)))
        if not isinstance(self.weight, Poly):
            object.__setattr__(self, "weight", Poly.const(self.weight))

    def oriented(self) -> DirectedPairing:
        return BrauerDiagram(len(self.pairing), self.pairing).oriented()


@dataclass(frozen=True)
class Propagator:
    D: int
    terms: Tuple[PropagatorTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            if len(t.pairing) != self.D:
                raise ValueError("propagator term has wrong slot count")
        if not all(t.weight for t in self.terms):
            object.__setattr__(
                self, "terms", tuple(t for t in self.terms if t.weight)
            )

    @classmethod
    def identity(cls, D: int, weight=1) -> "Propagator":
        pairing = tuple((c, D + c) for c in range(1, D + 1))
        return cls(D, (PropagatorTerm(pairing, Poly.const(weight)),))

    @classmethod
    def from_brauer_element(cls, e: BrauerElement) -> "Propagator":
        terms = tuple(
            PropagatorTerm(d.pairs, coeff)
            for d, coeff in sorted(e.terms.items(), key=lambda t: t[0].pairs)
        )
        return cls(e.D, terms)

    def weights_at_grading(self, b: int) -> Tuple[Poly, ...]:
        """Term weights as polynomials in N: z evaluated at (-1)^b N."""
        return tuple(t.weight.reflected() if b else t.weight for t in self.terms)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "terms": [
                {"pairs": [list(p) for p in t.pairing], "gamma": t.weight.to_coeff_map()}
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Propagator":
        D = int(data["D"])
        terms = []
        for item in data["terms"]:
            gamma = item["gamma"]
            weight = (
                Poly.from_coeff_map(gamma)
                if isinstance(gamma, dict)
                else Poly.const(Fraction(str(gamma)))
            )
            terms.append(PropagatorTerm(tuple((int(a), int(b)) for a, b in item["pairs"]), weight))
        return cls(D, tuple(terms))


# -- two-colored graphs and amplitudes ----------------------------------------


@dataclass(frozen=True)
class TwoColoredGraph:
    """A stranded graph (color 1) completed by oriented propagator strands
    (color 0) and the weight polynomial collected from the edge terms."""

    graph: StrandedGraph
    vertex_pairing: Tuple[Pair, ...]
    color0: Tuple[Pair, ...]  # oriented strands over global node ids
    weight: Poly

    def color0_pairing(self) -> DirectedPairing:
        return DirectedPairing(self.graph.node_count, self.color0)

    def color1_pairing(self) -> DirectedPairing:
        return self.graph.oriented_strands()

    def reoriented_color0(self, flips: Iterable[int]) -> "TwoColoredGraph":
        flipped = self.color0_pairing().reorient(flips).pairs
        return TwoColoredGraph(self.graph, self.vertex_pairing, flipped, self.weight)


@dataclass(frozen=True)
class AmplitudePolynomial:
    """An exact polynomial in the formal dimension N with its grading."""

    poly: Poly
    b: int

    def format(self) -> str:
        return self.poly.format("N")

    def __eq__(self, other):
        if isinstance(other, AmplitudePolynomial):
            return self.poly == other.poly and self.b == other.b
        return self.poly == other


def _promote_vertex_pairing(m0: DirectedPairing, D: int) -> DirectedPairing:
    """Lift a pairing of vertices to the slot-respecting pairing of nodes."""
    pairs = []
    for (i, j) in m0.pairs:
        for c in range(1, D + 1):
            pairs.append(((i - 1) * D + c, (j - 1) * D + c))
    return DirectedPairing(2 * len(pairs), tuple(pairs))


@dataclass(frozen=True)
class InvariantNormalForm:
    """Sign-and-contractions form of an invariant for a reference pairing."""

    sign: int
    contractions: DirectedPairing
    promoted_reference: DirectedPairing


def invariant_sign_normal_form(S: StrandedGraph, ref: DirectedPairing) -> InvariantNormalForm:
    """Reduce an invariant to its grading sign and contraction list.

    `ref` pairs the 2p vertices (it encodes the order tensors are
    multiplied in); it is promoted slot-by-slot to a node pairing and
    compared against the oriented strands.  Evaluated invariants do not
    depend on the choice of `ref` or of the strand orientation, which is
    a tested property rather than a requirement on callers.
    """
    if ref.n != S.vertices:
        raise ValueError("reference pairing size does not match vertex count")
    promoted = _promote_vertex_pairing(ref, S.D)
    strands = S.oriented_strands()
    return InvariantNormalForm(
        sign=pairing_sign(promoted, strands),
        contractions=strands,
        promoted_reference=promoted,
    )


def wick_expand(S: StrandedGraph, C: Propagator, b: int) -> Tuple[TwoColoredGraph, ...]:
    """All 2-colored completions of S with their collected weights.

    One graph per choice of a vertex pairing and of a propagator term
    for each of its edges; the graph weight is the product of the chosen
    term weights, read at the loop weight of grading b.  For an oriented
    edge (i, j), slots 1..D of the term land on vertex i and D+1..2D on
    vertex j.
    """
    if C.D != S.D:
        raise ValueError("propagator strand count does not match the graph")
    if S.vertices % 2 != 0 or S.vertices == 0:
        return ()
    D = S.D
    weights = C.weights_at_grading(b)
    oriented_terms = [t.oriented().pairs for t in C.terms]

    out = []
    for matching in all_pairings(S.vertices):
        m0 = canonical_orientation(matching)
        for choice in itertools.product(range(len(C.terms)), repeat=len(m0.pairs)):
            color0: List[Pair] = []
            weight = Poly.const(1)
            for (i, j), term_idx in zip(m0.pairs, choice):
                weight = weight * weights[term_idx]

                def to_node(slot: int) -> int:
                    return (i - 1) * D + slot if slot <= D else (j - 1) * D + (slot - D)

                for (x, y) in oriented_terms[term_idx]:
                    color0.append((to_node(x), to_node(y)))
            if not weight:
                continue
            out.append(TwoColoredGraph(S, m0.pairs, tuple(color0), weight))
    return tuple(out)


def count_faces(G: TwoColoredGraph) -> Tuple[int, int, int]:
    """(total, even, odd) face counts of the alternating-color cycles.

    The total is orientation-independent; the even/odd split depends on
    the recorded orientations, but only the total enters the amplitude.
    """
    faces = face_decomposition(G.color0_pairing(), G.color1_pairing())
    return (faces.total, faces.even_count, faces.odd_count)


def graph_amplitude(G: TwoColoredGraph, b: int) -> AmplitudePolynomial:
    """weight * ((-1)^b N)^faces, assembled from the two parity factors.

    The grading sign of the color-0 against color-1 pairing contributes
    (-1)^(b * even faces) and the contraction values contribute
    (-1)^(b * odd faces) N^faces; their product depends only on the
    total face count.
    """
    total, even, odd = count_faces(G)
    sign = Fraction(-1 if (b * (even + odd)) % 2 else 1)
    return AmplitudePolynomial(G.weight * sign * Poly.monomial(total), b)


def _expectation_of_graphs(graphs: Sequence[TwoColoredGraph], b: int) -> Poly:
    total = Poly()
    for g in graphs:
        total = total + graph_amplitude(g, b).poly
    return total


def gaussian_expectation(
    S: StrandedGraph, C: Propagator, b: int, workers: int = 1
) -> AmplitudePolynomial:
    """Sum of graph amplitudes over the full Wick expansion of S.

    S may be disconnected (a product of invariants is one disconnected
    invariant).  The empty graph has expectation 1; an odd number of
    vertices gives 0.  `workers` > 1 splits the expansion across
    processes; the reduction is a commutative polynomial sum, so the
    result does not depend on the split.
    """
    if S.vertices == 0:
        return AmplitudePolynomial(Poly.const(1), b)
    graphs = wick_expand(S, C, b)
    if workers <= 1 or len(graphs) < 2 * workers:
        return AmplitudePolynomial(_expectation_of_graphs(graphs, b), b)

    from concurrent.futures import ProcessPoolExecutor

    chunks = [list(graphs[k::workers]) for k in range(workers)]
    total = Poly()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_expectation_chunk, [(c, b) for c in chunks]):
            total = total + part
    return AmplitudePolynomial(total, b)


def _expectation_chunk(args) -> Poly:
    graphs, b = args
    return _expectation_of_graphs(graphs, b)


@dataclass(frozen=True)
class DualityReport:
    equal: bool
    orthogonal: Poly      # expectation at b=0, polynomial in N
    symplectic: Poly      # expectation at b=1, polynomial in N


def duality_check(S: StrandedGraph, C: Propagator) -> DualityReport:
    """Exact check that the b=1 expectation is the b=0 one with N -> -N.

    Both sides use the same propagator table; any z-dependence in the
    weights is re-read at the loop weight of the respective grading.
    """
    e0 = gaussian_expectation(S, C, 0).poly
    e1 = gaussian_expectation(S, C, 1).poly
    return DualityReport(equal=(e1 == e0.reflected()), orthogonal=e0, symplectic=e1)


# -- models and perturbative expansion ----------------------------------------


@dataclass(frozen=True)
class Interaction:
    name: str
    graph: StrandedGraph

    def __post_init__(self):
        if not self.graph.is_connected():
            raise ValueError(f"interaction {self.name!r} must be connected")
        if self.graph.node_count <= 2:
            raise ValueError(f"interaction {self.name!r} must have more than 2 nodes")


@dataclass(frozen=True)
class ModelSpec:
    """A graded tensor model: grading, propagator and named interactions."""

    D: int
    b: int
    propagator: Propagator
    interactions: Tuple[Interaction, ...]

    def __post_init__(self):
        if self.propagator.D != self.D:
            raise ValueError("propagator strand count does not match the model")
        for it in self.interactions:
            if it.graph.D != self.D:
                raise ValueError(f"interaction {it.name!r} strand count mismatch")


@dataclass(frozen=True)
class ExpansionTerm:
    """One multiset of interaction insertions with its exact weight.

    `couplings` maps names to multiplicities p; `coefficient` is the
    product over insertions of (1/p!) (D/|nodes|)^p; the symbolic
    product of coupling constants carries the rest.
    """

    couplings: Tuple[Tuple[str, int], ...]
    coefficient: Fraction
    amplitude: AmplitudePolynomial

    @property
    def total_insertions(self) -> int:
        return sum(p for _, p in self.couplings)


def perturbative_expansion(
    model: ModelSpec, order: int, workers: int = 1
) -> Tuple[ExpansionTerm, ...]:
    """All terms with at most `order` interaction insertions.

    Each term is the Gaussian expectation of the disjoint union of its
    insertions, times the exact coefficient; coupling constants stay
    symbolic as the multiset of names.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    names = [it.name for it in model.interactions]
    out = []
    for total in range(order + 1):
        for split in _compositions(total, len(names)):
            union = StrandedGraph(model.D, 0, ())
            coeff = Fraction(1)
            couplings = []
            for it, p in zip(model.interactions, split):
                if p == 0:
                    continue
                couplings.append((it.name, p))
                per = Fraction(model.D, it.graph.node_count)
                coeff *= per**p / Fraction(_factorial(p))
                for _ in range(p):
                    union = disjoint_union_graphs(union, it.graph)
            amp = gaussian_expectation(union, model.propagator, model.b, workers=workers)
            out.append(ExpansionTerm(tuple(couplings), coeff, amp))
    return tuple(out)


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- enumeration of invariants -------------------------------------------------


def _canonical_key(
    strands: Tuple[Pair, ...], D: int, vertices: int, slot_symmetry: bool
) -> Tuple[Pair, ...]:
    """Minimal relabeling of a strand set under the chosen symmetries."""
    best = None
    slot_perms = list(itertools.permutations(range(D))) if slot_symmetry else [tuple(range(D))]
    for vperm in itertools.permutations(range(vertices)):
        for slot_choice in itertools.product(slot_perms, repeat=vertices):

            def move(node: int) -> int:
                v = (node - 1) // D
                c = (node - 1) % D
                return vperm[v] * D + slot_choice[v][c] + 1

            cand = tuple(sorted(tuple(sorted((move(a), move(b)))) for a, b in strands))
            if best is None or cand < best:
                best = cand
    return best


def enumerate_invariants(
    D: int, vertices: int, slot_symmetry: bool = False
) -> Tuple[StrandedGraph, ...]:
    """Connected stranded graphs on the given vertices, one per class.

    Classes are taken under vertex relabeling; with `slot_symmetry` the
    D node slots of every vertex may additionally be permuted
    independently (appropriate when the propagator is fully symmetric).
    Output is sorted by canonical form, so runs are reproducible.
    """
    if vertices < 1:
        raise ValueError("need at least one vertex")
    n = D * vertices
    if n % 2 != 0:
        return ()
    seen = {}
    for matching in all_pairings(n):
        g = StrandedGraph(D, vertices, matching)
        if not g.is_connected():
            continue
        key = _canonical_key(g.strands, D, vertices, slot_symmetry)
        if key not in seen:
            seen[key] = StrandedGraph(D, vertices, key)
    return tuple(seen[k] for k in sorted(seen))
