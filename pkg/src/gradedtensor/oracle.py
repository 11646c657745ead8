"""Brute-force verification of Gaussian expectations, no stranded graphs.

Bosonic moments are literal sums over index pairings of numeric
covariance entries; fermionic moments are computed by honest Berezin
integration in an exterior algebra, where every sign emerges from the
multiplication order of anticommuting generators rather than from the
pairing-sign machinery of the pipeline.  Agreement of the two routes is
the package's central correctness property.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .combinatorics import DirectedPairing, all_pairings, pairing_sign
from .errors import CapExceededError
from .model import Propagator, StrandedGraph, invariant_sign_normal_form
from .representation import GradedForm, decode_index, encode_index

GENERATOR_CAP = 16          # exterior algebra dimension 2**16
COVARIANCE_SIZE_CAP = 1024  # N**D cap for explicit covariance matrices


# -- explicit covariances ------------------------------------------------------


class ExplicitCovariance:
    """The propagator written out as a numeric matrix on components.

    Entry (X, Y) is the two-point function of components X (first
    tensor) and Y (second tensor), obtained by direct index substitution
    into the propagator's pairing terms; the matrix is symmetric when
    the component parity b*D is even and antisymmetric when odd.
    """

    __slots__ = ("N", "D", "b", "size", "matrix")

    def __init__(self, N: int, D: int, b: int, matrix: List[List[Fraction]]):
        self.N = N
        self.D = D
        self.b = b
        self.size = N**D
        if len(matrix) != self.size or any(len(row) != self.size for row in matrix):
            raise ValueError("covariance matrix has the wrong shape")
        sign = -1 if (b * D) % 2 else 1
        for x in range(self.size):
            for y in range(x, self.size):
                if matrix[y][x] != sign * matrix[x][y]:
                    raise ValueError(
                        "covariance does not match the component parity "
                        f"(expected {'anti' if sign < 0 else ''}symmetric)"
                    )
        self.matrix = matrix

    @property
    def parity(self) -> int:
        return (self.b * self.D) % 2

    def entry(self, x: int, y: int) -> Fraction:
        return self.matrix[x][y]

    @classmethod
    def from_propagator(
        cls, C: Propagator, form: GradedForm, size_cap: int = COVARIANCE_SIZE_CAP
    ) -> "ExplicitCovariance":
        N, D = form.N, C.D
        if N**D > size_cap:
            raise CapExceededError(f"covariance size N^D = {N**D} exceeds cap {size_cap}")
        ref = DirectedPairing(2 * D, tuple((c, D + c) for c in range(1, D + 1)))
        z0 = form.z_value
        size = N**D
        matrix = [[Fraction(0)] * size for _ in range(size)]
        for term in C.terms:
            gamma = term.weight(z0)
            if gamma == 0:
                continue
            oriented = term.oriented()
            sign = pairing_sign(oriented, ref) if form.b else 1
            base = gamma * sign
            for x in range(size):
                xv = decode_index(x, N, D)
                for y in range(size):
                    yv = decode_index(y, N, D)

                    def slot_value(s: int) -> int:
                        return xv[s - 1] if s <= D else yv[s - D - 1]

                    val = base
                    for (i, j) in oriented.pairs:
                        g = form.upper_entry(slot_value(i), slot_value(j))
                        if g == 0:
                            val = Fraction(0)
                            break
                        val *= g
                    if val:
                        matrix[x][y] += val
        return cls(N, D, form.b, matrix)


# -- bosonic moments -----------------------------------------------------------


def bosonic_moment(cov: ExplicitCovariance, indices: Sequence[int]) -> Fraction:
    """Sum over pairings of products of covariance entries, no signs.

    Valid exactly when the component parity is even (commuting
    components); odd-length products vanish identically.
    """
    if cov.parity != 0:
        raise ValueError("bosonic moments need even component parity")
    if len(indices) % 2 != 0:
        raise ValueError("odd-length moment")
    if not indices:
        return Fraction(1)
    total = Fraction(0)
    for matching in all_pairings(len(indices)):
        prod = Fraction(1)
        for (i, j) in matching:
            prod *= cov.entry(indices[i - 1], indices[j - 1])
            if prod == 0:
                break
        total += prod
    return total


# -- exterior algebra and Berezin integration ----------------------------------


class ExteriorElement:
    """An element of the exterior algebra on n anticommuting generators.

    Basis monomials are bitmasks over the generators; multiplication
    counts the transpositions needed to merge two ascending monomials,
    which is where every fermionic sign in this module comes from.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[int, Fraction]] = None):
        if n > GENERATOR_CAP:
            raise CapExceededError(f"{n} generators exceed the cap {GENERATOR_CAP}")
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def scalar(cls, n: int, c) -> "ExteriorElement":
        return cls(n, {0: Fraction(c)})

    @classmethod
    def generator(cls, n: int, k: int) -> "ExteriorElement":
        return cls(n, {1 << k: Fraction(1)})

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return ExteriorElement(self.n, terms)

    def scaled(self, c) -> "ExteriorElement":
        c = Fraction(c)
        return ExteriorElement(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other: "ExteriorElement") -> "ExteriorElement":
        terms: Dict[int, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                swaps = 0
                rest = mb
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    swaps += bin(ma >> (j + 1)).count("1")
                    rest &= rest - 1
                sign = -1 if swaps % 2 else 1
                key = ma | mb
                terms[key] = terms.get(key, Fraction(0)) + sign * ca * cb
        return ExteriorElement(self.n, terms)

    def coefficient(self, mask: int) -> Fraction:
        return self.terms.get(mask, Fraction(0))

    def top_coefficient(self) -> Fraction:
        """Berezin integral: the coefficient of the full ascending monomial."""
        return self.coefficient((1 << self.n) - 1)


def exterior_exp(quadratic: ExteriorElement) -> ExteriorElement:
    """exp of an even element; nilpotency truncates the series exactly."""
    result = ExteriorElement.scalar(quadratic.n, 1)
    power = ExteriorElement.scalar(quadratic.n, 1)
    k = 0
    max_order = quadratic.n // 2 + 1
    while True:
        k += 1
        if k > max_order:
            break
        power = power * quadratic
        if not power.terms:
            break
        result = result + power.scaled(Fraction(1, _factorial(k)))
    return result


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _row_reduce_pivot_columns(matrix: List[List[Fraction]]) -> List[int]:
    """Pivot column indices of a copy of the matrix (its independent columns)."""
    rows = [list(r) for r in matrix]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((k for k in range(r, n_rows) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        for k in range(n_rows):
            if k == r or rows[k][c] == 0:
                continue
            f = rows[k][c] / pv
            for cc in range(c, n_cols):
                rows[k][cc] -= f * rows[r][cc]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return pivots


def _invert(matrix: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise ValueError("singular quadratic form")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(n):
            if r == c or aug[r][c] == 0:
                continue
            f = aug[r][c]
            aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


class _BerezinState:
    """Restriction of a (possibly singular) antisymmetric covariance to an
    invertible principal block, plus the expanded Gaussian weight."""

    __slots__ = ("support", "inv_block", "weight", "normalization", "cov")

    def __init__(self, cov: ExplicitCovariance):
        if cov.parity != 1:
            raise ValueError("Berezin integration needs odd component parity")
        support = _row_reduce_pivot_columns(cov.matrix)
        r = len(support)
        if r % 2 != 0:
            raise ValueError("antisymmetric covariance must have even rank")
        if r > GENERATOR_CAP:
            raise CapExceededError(f"{r} generators exceed the cap {GENERATOR_CAP}")
        block = [[cov.matrix[i][j] for j in support] for i in support]
        inv_block = _invert(block)  # the quadratic form on the supported components
        quadratic = ExteriorElement(r)
        for m in range(r):
            for n_ in range(m + 1, r):
                a = inv_block[m][n_]
                if a != 0:
                    quadratic = quadratic + ExteriorElement(
                        r, {(1 << m) | (1 << n_): -a}
                    )
        self.cov = cov
        self.support = support
        self.inv_block = inv_block
        self.weight = exterior_exp(quadratic)
        self.normalization = self.weight.top_coefficient()
        if self.normalization == 0:
            raise ValueError("singular quadratic form")

    def component(self, x: int) -> ExteriorElement:
        """The component T_x as a linear combination of the generators."""
        r = len(self.support)
        coeffs = [Fraction(0)] * r
        row = [self.cov.matrix[x][j] for j in self.support]
        for m in range(r):
            coeffs[m] = sum(
                (row[k] * self.inv_block[k][m] for k in range(r)), Fraction(0)
            )
        return ExteriorElement(r, {1 << m: c for m, c in enumerate(coeffs) if c != 0})


_berezin_cache: Dict[int, _BerezinState] = {}


def _berezin_state(cov: ExplicitCovariance) -> _BerezinState:
    key = id(cov)
    state = _berezin_cache.get(key)
    if state is None or state.cov is not cov:
        state = _BerezinState(cov)
        _berezin_cache.clear()
        _berezin_cache[key] = state
    return state


def berezin_expectation(cov: ExplicitCovariance, monomial: Sequence[int]) -> Fraction:
    """Expectation of an ordered product of components, from first principles.

    The Gaussian weight exp(-T C^{-1} T / 2) is expanded exactly in the
    exterior algebra over the covariance's support, the monomial is
    multiplied in the given order, and the ratio of top-form
    coefficients is returned.  The empty monomial gives 1.
    """
    state = _berezin_state(cov)
    product = ExteriorElement.scalar(len(state.support), 1)
    for x in monomial:
        product = product * state.component(x)
        if not product.terms:
            return Fraction(0)
    product = product * state.weight
    return product.top_coefficient() / state.normalization


# -- invariant expectations -----------------------------------------------------


def numeric_invariant_expectation(
    S: StrandedGraph,
    C: Propagator,
    N: int,
    b: int,
    ref: Optional[DirectedPairing] = None,
    size_cap: int = COVARIANCE_SIZE_CAP,
) -> Fraction:
    """Evaluate a Gaussian invariant expectation by direct index summation.

    Builds the explicit covariance, runs over every index assignment
    supported on the strand contractions, and takes moments of the
    ordered tensor product with the bosonic or fermionic rule as the
    component parity demands.  Shares no face or orientation machinery
    with the stranded-graph pipeline.
    """
    if S.vertices == 0:
        return Fraction(1)
    if S.vertices % 2 != 0:
        return Fraction(0)
    form = GradedForm(N, b)
    cov = ExplicitCovariance.from_propagator(C, form, size_cap)
    if ref is None:
        ref = DirectedPairing(
            S.vertices, tuple((v, v + 1) for v in range(1, S.vertices, 2))
        )
    normal = invariant_sign_normal_form(S, ref)
    sign = Fraction(normal.sign if b else 1)
    order = ref.flatten()  # tensor multiplication order

    strands = normal.contractions.pairs
    lower_nz = sorted(form.lower.items())  # [((i, j), value)]

    fermionic = (b * S.D) % 2 == 1
    total = Fraction(0)
    for assignment in itertools.product(lower_nz, repeat=len(strands)):
        node_value: Dict[int, int] = {}
        weight = sign
        for ((i, j), g), (k, l) in zip(assignment, strands):
            node_value[k] = i
            node_value[l] = j
            weight *= g
        components = []
        for v in order:
            idx = tuple(node_value[(v - 1) * S.D + c] for c in range(1, S.D + 1))
            components.append(encode_index(idx, N))
        moment = (
            berezin_expectation(cov, components)
            if fermionic
            else bosonic_moment(cov, components)
        )
        total += weight * moment
    return total
