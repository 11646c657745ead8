"""Concrete action of Brauer elements on V^(tensor D), exactly.

Everything here is exact rational linear algebra: diagram matrices,
integer spectra of the arc-sum element, the universal traceless
projector, the explicit symmetric-traceless product formula and
irreducible-symmetry projectors.  The symplectic grading enters through
the form (delta or omega) and the diagram grading sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Set, Tuple

from .brauer import (
    BrauerDiagram,
    BrauerElement,
    casimir_ad,
    embed_group_algebra,
    eta_sign,
    multiply,
)
from .errors import CapExceededError
from .polynomial import Poly
from .young import YoungDiagram, symmetrizer_norm, young_symmetrizer, factorial

DEFAULT_SIZE_CAP = 20736  # N**D above this errors instead of thrashing


# -- graded bilinear forms ---------------------------------------------------


class GradedForm:
    """The bilinear form of the model: Kronecker delta (b=0) or the
    canonical symplectic form (b=1, N even), with its inverse.

    Entries are stored sparsely over 0-based indices; both the form and
    its inverse have exactly N nonzero entries.
    """

    __slots__ = ("N", "b", "lower", "upper")

    def __init__(self, N: int, b: int):
        if b not in (0, 1):
            raise ValueError("grading bit must be 0 or 1")
        if N < 1:
            raise ValueError("dimension must be positive")
        if b == 1 and N % 2 != 0:
            raise ValueError("symplectic form requires even N")
        self.N = N
        self.b = b
        lower: Dict[Tuple[int, int], Fraction] = {}
        upper: Dict[Tuple[int, int], Fraction] = {}
        if b == 0:
            for a in range(N):
                lower[(a, a)] = Fraction(1)
                upper[(a, a)] = Fraction(1)
        else:
            half = N // 2
            for a in range(half):
                lower[(a, a + half)] = Fraction(1)
                lower[(a + half, a)] = Fraction(-1)
                upper[(a, a + half)] = Fraction(-1)
                upper[(a + half, a)] = Fraction(1)
        self.lower = lower
        self.upper = upper

    @property
    def z_value(self) -> Fraction:
        """The loop weight carried by this form: (-1)^b N."""
        return Fraction(-self.N if self.b else self.N)

    def lower_entry(self, i: int, j: int) -> Fraction:
        return self.lower.get((i, j), Fraction(0))

    def upper_entry(self, i: int, j: int) -> Fraction:
        return self.upper.get((i, j), Fraction(0))

    def upper_nonzeros(self) -> List[Tuple[int, int, Fraction]]:
        return [(i, j, v) for (i, j), v in sorted(self.upper.items())]

    def __repr__(self):
        return f"GradedForm(N={self.N}, b={self.b})"


# -- sparse exact linear maps ------------------------------------------------


class TensorMap:
    """An exact-rational linear map on the N^D-dimensional tensor space.

    Stored column-sparse: cols[j] maps row index to a nonzero Fraction.
    """

    __slots__ = ("N", "D", "size", "cols")

    def __init__(self, N: int, D: int, cols: Dict[int, Dict[int, Fraction]]):
        self.N = N
        self.D = D
        self.size = N**D
        self.cols = {
            j: {i: v for i, v in col.items() if v != 0}
            for j, col in cols.items()
            if any(v != 0 for v in col.values())
        }

    @classmethod
    def zero(cls, N: int, D: int) -> "TensorMap":
        return cls(N, D, {})

    @classmethod
    def identity(cls, N: int, D: int) -> "TensorMap":
        return cls(N, D, {j: {j: Fraction(1)} for j in range(N**D)})

    def _check_compatible(self, other: "TensorMap"):
        if (self.N, self.D) != (other.N, other.D):
            raise ValueError("tensor map shape mismatch")

    def __add__(self, other: "TensorMap") -> "TensorMap":
        self._check_compatible(other)
        cols: Dict[int, Dict[int, Fraction]] = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            dst = cols.setdefault(j, {})
            for i, v in col.items():
                dst[i] = dst.get(i, Fraction(0)) + v
        return TensorMap(self.N, self.D, cols)

    def __sub__(self, other: "TensorMap") -> "TensorMap":
        return self + other.scaled(-1)

    def scaled(self, c) -> "TensorMap":
        c = Fraction(c)
        if c == 0:
            return TensorMap.zero(self.N, self.D)
        return TensorMap(
            self.N, self.D, {j: {i: v * c for i, v in col.items()} for j, col in self.cols.items()}
        )

    def compose(self, other: "TensorMap") -> "TensorMap":
        """self after other, i.e. the matrix product self @ other."""
        self._check_compatible(other)
        cols: Dict[int, Dict[int, Fraction]] = {}
        for j, col in other.cols.items():
            acc: Dict[int, Fraction] = {}
            for mid, v in col.items():
                left = self.cols.get(mid)
                if not left:
                    continue
                for i, w in left.items():
                    acc[i] = acc.get(i, Fraction(0)) + v * w
            if acc:
                cols[j] = acc
        return TensorMap(self.N, self.D, cols)

    def __matmul__(self, other: "TensorMap") -> "TensorMap":
        return self.compose(other)

    def __eq__(self, other):
        return (
            isinstance(other, TensorMap)
            and (self.N, self.D) == (other.N, other.D)
            and self.cols == other.cols
        )

    def is_zero(self) -> bool:
        return not self.cols

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols.get(j, {}).get(i, Fraction(0))

    def trace(self) -> Fraction:
        return sum((col[j] for j, col in self.cols.items() if j in col), Fraction(0))

    def dense_rows(self) -> List[List[Fraction]]:
        rows = [[Fraction(0)] * self.size for _ in range(self.size)]
        for j, col in self.cols.items():
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def rank(self) -> int:
        return _row_rank(self.dense_rows())

    def nullity(self) -> int:
        return self.size - self.rank()

    def is_idempotent(self) -> bool:
        return self.compose(self) == self


def _row_rank(rows: List[List[Fraction]]) -> int:
    """Rank by exact Gaussian elimination; mutates the given rows."""
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = None
        for r in range(rank, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        support = [c for c in range(col, n_cols) if prow[c] != 0]
        for r in range(rank + 1, n_rows):
            f = rows[r][col]
            if f == 0:
                continue
            f = f / pval
            row = rows[r]
            for c in support:
                row[c] -= f * prow[c]
        rank += 1
        if rank == n_rows:
            break
    return rank


# -- index coding ------------------------------------------------------------


def encode_index(idx: Tuple[int, ...], N: int) -> int:
    out = 0
    for a in idx:
        out = out * N + a
    return out


def decode_index(code: int, N: int, D: int) -> Tuple[int, ...]:
    out = [0] * D
    for k in range(D - 1, -1, -1):
        out[k] = code % N
        code //= N
    return tuple(out)


def _check_cap(N: int, D: int, size_cap: int):
    if N**D > size_cap:
        raise CapExceededError(f"N^D = {N**D} exceeds the size cap {size_cap}")


# -- diagram and element actions ---------------------------------------------


def diagram_to_map(
    d: BrauerDiagram, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> TensorMap:
    """Matrix of a single diagram's action on tensor components.

    Input indices sit on the top row, output indices on the bottom row.
    A through strand copies an index, a top arc contracts two input
    indices with the form, a bottom arc emits two output indices
    contracted with the inverse form, and the whole matrix carries the
    diagram's grading sign when b = 1.  Index orderings inside the form
    factors follow the same canonical orientation that defines the
    grading sign, which keeps the action multiplicative.
    """
    N, D = form.N, d.D
    _check_cap(N, D, size_cap)
    sign = Fraction(eta_sign(d)) if form.b else Fraction(1)

    through = [(t - 1, u - D - 1) for (t, u) in d.through_strands()]
    tarcs = [(m - 1, p - 1) for (m, p) in d.top_arcs()]
    barcs = [(k - D - 1, l - D - 1) for (k, l) in d.bottom_arcs()]
    upper_nz = form.upper_nonzeros()

    cols: Dict[int, Dict[int, Fraction]] = {}
    for col in range(N**D):
        b_idx = decode_index(col, N, D)
        factor = sign
        for (m, p) in tarcs:
            # canonical orientation (m, p) left-to-right contributes g_{b_p b_m}
            v = form.lower_entry(b_idx[p], b_idx[m])
            if v == 0:
                factor = Fraction(0)
                break
            factor *= v
        if factor == 0:
            continue
        base = [0] * D
        for (t, u) in through:
            base[u] = b_idx[t]

        def emit(arc_no: int, a_idx: List[int], weight: Fraction):
            if arc_no == len(barcs):
                row = encode_index(tuple(a_idx), N)
                dst = cols.setdefault(col, {})
                dst[row] = dst.get(row, Fraction(0)) + weight
                return
            k, l = barcs[arc_no]
            # canonical orientation (l, k) right-to-left contributes g^{a_l a_k}
            for (x, y, v) in upper_nz:
                a_idx[l] = x
                a_idx[k] = y
                emit(arc_no + 1, a_idx, weight * v)

        emit(0, base, factor)
    return TensorMap(N, D, cols)


def element_to_map(
    e: BrauerElement, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> TensorMap:
    """Linear extension of the diagram action, with z evaluated at (-1)^b N."""
    _check_cap(form.N, e.D, size_cap)
    out = TensorMap.zero(form.N, e.D)
    for d, coeff in e.terms.items():
        c = coeff(form.z_value)
        if c == 0:
            continue
        out = out + diagram_to_map(d, form, size_cap).scaled(c)
    return out


# -- spectra and projectors ---------------------------------------------------


def ad_matrix(D: int, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP) -> TensorMap:
    return element_to_map(casimir_ad(D), form, size_cap)


def _matvec(m: TensorMap, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for j, c in v.items():
        col = m.cols.get(j)
        if not col:
            continue
        for i, w in col.items():
            out[i] = out.get(i, Fraction(0)) + c * w
    return {i: c for i, c in out.items() if c != 0}


def _local_minimal_polynomial(m: TensorMap, start: Dict[int, Fraction]) -> Poly:
    """Monic annihilator of a single vector under m, by Krylov iteration.

    Maintains a reduced basis of the iterates together with their
    expansion over the original iterates; the first dependence gives the
    coefficients of the annihilating polynomial directly.
    """
    reduced: List[Tuple[int, Dict[int, Fraction], List[Fraction]]] = []
    current = dict(start)
    power = 0
    while True:
        vec = dict(current)
        rep = [Fraction(0)] * power + [Fraction(1)]
        for pivot, bvec, brep in reduced:
            c = vec.get(pivot)
            if not c:
                continue
            for i, w in bvec.items():
                val = vec.get(i, Fraction(0)) - c * w
                if val:
                    vec[i] = val
                else:
                    vec.pop(i, None)
            for k, w in enumerate(brep):
                if w:
                    if k >= len(rep):
                        rep.extend([Fraction(0)] * (k + 1 - len(rep)))
                    rep[k] -= c * w
        if not vec:
            return Poly(rep)  # monic by construction: rep[power] == 1
        pivot = min(vec)
        scale = vec[pivot]
        vec = {i: w / scale for i, w in vec.items()}
        rep = [w / scale for w in rep]
        reduced.append((pivot, vec, rep))
        current = _matvec(m, current)
        power += 1


def _poly_divmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quotient = [Fraction(0)] * max(a.degree - b.degree + 1, 0)
    rest = list(a.coeffs)
    lead = b.coeffs[-1]
    while len(rest) >= len(b.coeffs):
        f = rest[-1] / lead
        shift = len(rest) - len(b.coeffs)
        quotient[shift] = f
        for k, c in enumerate(b.coeffs):
            rest[shift + k] -= f * c
        while rest and rest[-1] == 0:
            rest.pop()
        if not rest:
            break
    return Poly(quotient), Poly(rest)


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        a = a * (1 / a.coeffs[-1])  # monic
    return a


def minimal_polynomial(m: TensorMap) -> Poly:
    """Exact monic minimal polynomial of a tensor map.

    lcm of the local annihilators of the standard basis vectors, with a
    fast membership check so most vectors are skipped.
    """
    p = Poly.const(1)
    for j in range(m.size):
        basis = {j: Fraction(1)}
        # does p already annihilate e_j?  Horner with matrix-vector products
        w: Dict[int, Fraction] = {}
        for c in reversed(p.coeffs):
            w = _matvec(m, w)
            if c:
                w[j] = w.get(j, Fraction(0)) + c
                if w[j] == 0:
                    del w[j]
        if not w:
            continue
        q = _local_minimal_polynomial(m, basis)
        gcd = _poly_gcd(p, q)
        p = _poly_divmod(p * q, gcd)[0]
        scale = p.coeffs[-1]
        if scale != 1:
            p = p * (1 / scale)
    return p


def ad_nonzero_eigenvalues(
    D: int, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> Set[int]:
    """Distinct nonzero eigenvalues of the arc-sum element, exactly.

    The map is diagonalizable with integer spectrum of sign (-1)^b and
    absolute value at most D(D-1)/2 * N, so the nonzero eigenvalues are
    the integer roots of the minimal polynomial inside that range.  The
    factorization must be exhausted by those roots, and the product of
    (1 - A/alpha) over them must annihilate A; either failure would mean
    a non-integer eigenvalue and raises.
    """
    m = ad_matrix(D, form, size_cap)
    p = minimal_polynomial(m)
    bound = (D * (D - 1) // 2) * form.N
    candidates = range(1, bound + 1) if form.b == 0 else range(-1, -bound - 1, -1)
    found: Set[int] = set()
    remainder = p
    while remainder.degree > 0 and remainder.coefficient(0) == 0:
        remainder = _poly_divmod(remainder, Poly.x())[0]  # strip the kernel root
    for alpha in candidates:
        if remainder(alpha) == 0:
            found.add(alpha)
            remainder = _poly_divmod(remainder, Poly((-alpha, 1)))[0]
    if remainder.degree > 0:
        raise ArithmeticError(
            "arc-sum spectrum not exhausted by integer candidates; "
            "this contradicts the integrality of the spectrum"
        )
    ident = TensorMap.identity(form.N, D)
    proj = ident
    for alpha in sorted(found):
        proj = proj.compose(ident - m.scaled(Fraction(1, alpha)))
    if not m.compose(proj).is_zero():
        raise ArithmeticError("traceless projector fails to annihilate the arc sum")
    return found


@dataclass(frozen=True)
class ProjectorReport:
    """A constructed projector with its exact invariants."""

    projector: TensorMap
    trace: Fraction
    rank: int
    idempotent: bool
    element: BrauerElement

    def __post_init__(self):
        if self.idempotent and self.trace != self.rank:
            raise ArithmeticError("idempotent map with trace != rank")


def _report(element: BrauerElement, form: GradedForm, size_cap: int) -> ProjectorReport:
    m = element_to_map(element, form, size_cap)
    return ProjectorReport(
        projector=m,
        trace=m.trace(),
        rank=m.rank(),
        idempotent=m.is_idempotent(),
        element=element,
    )


def traceless_element(
    D: int, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> BrauerElement:
    """The universal traceless projector as a Brauer element.

    The product over the nonzero eigenvalues alpha of (1 - A/alpha),
    with the eigenvalues extracted exactly for the given N and grading.
    """
    one = BrauerElement.one(D)
    if D < 2:
        return one
    a = casimir_ad(D)
    out = one
    for alpha in sorted(ad_nonzero_eigenvalues(D, form, size_cap)):
        out = multiply(out, one + a.scaled(Fraction(-1, alpha)))
    return out


def traceless_projector(
    D: int, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> ProjectorReport:
    """Projector onto tensors annihilated by every form contraction."""
    return _report(traceless_element(D, form, size_cap), form, size_cap)


def symmetric_traceless_element(
    D: int, form: GradedForm
) -> BrauerElement:
    """The explicit product formula removing trace modes after symmetrization.

    Factors (1 - A / (((-1)^b N + 2(D - f - 1)) f)) for f = 1 .. floor(D/2),
    read at the loop weight of the given grading.
    """
    one = BrauerElement.one(D)
    if D < 2:
        return one
    a = casimir_ad(D)
    z0 = form.z_value
    out = one
    for f in range(1, D // 2 + 1):
        denom = (z0 + 2 * (D - f - 1)) * f
        if denom == 0:
            raise ValueError(f"degenerate N: denominator vanishes at factor f={f}")
        out = multiply(out, one + a.scaled(-1 / denom))
    return out


def symmetric_traceless_projector(
    D: int, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> ProjectorReport:
    """The product formula composed with the normalized full symmetrizer.

    This is the propagator of the symmetric traceless model; at b = 1
    the same formula is read at loop weight -N and the symmetrizer acts
    in the signed representation.
    """
    _check_cap(form.N, D, size_cap)
    factors = symmetric_traceless_element(D, form)
    c_s = embed_group_algebra(young_symmetrizer(YoungDiagram((D,))), D)
    element = multiply(factors, c_s.scaled(Fraction(1, factorial(D))))
    return _report(element, form, size_cap)


def irreducible_projector(
    lam: YoungDiagram, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> ProjectorReport:
    """Projector for an irreducible symmetry type: c_lambda followed by
    the universal traceless projector, normalized to be idempotent."""
    D = lam.size
    _check_cap(form.N, D, size_cap)
    c = embed_group_algebra(young_symmetrizer(lam), D)
    n = symmetrizer_norm(lam)
    element = multiply(c.scaled(1 / n), traceless_element(D, form, size_cap))
    return _report(element, form, size_cap)


def decompose_projector_as_propagator(
    lam: YoungDiagram, form: GradedForm, size_cap: int = DEFAULT_SIZE_CAP
) -> BrauerElement:
    """The irreducible projector as a diagram-basis table with numeric weights.

    Coefficients are evaluated at the loop weight (-1)^b N, so each term
    is one undirected pairing of the 2D propagator slots with a rational
    weight; the result is directly usable as a model propagator.
    """
    if lam.size > 4:
        raise CapExceededError("propagator decomposition supported for |lambda| <= 4")
    report = irreducible_projector(lam, form, size_cap)
    terms = {
        d: Poly.const(c(form.z_value))
        for d, c in report.element.terms.items()
        if c(form.z_value) != 0
    }
    return BrauerElement(lam.size, terms)
