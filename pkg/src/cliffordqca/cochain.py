"""Coboundary and higher cup-product matrices on the hypercubic lattice.

Cells of a unit cube are labelled by D slots, each 0, 1 or FREE; a p-cell has
exactly p FREE slots. A lattice cell is a pair (orientation, position) where
the orientation is the sorted tuple of free directions and the position is the
corner with the smallest coordinates.

Cup-i products on a cube follow the hypercube rule: choose i shared
directions S; the remaining free directions split into A-only and B-only. A
fixes each B-only slot to 0 and B fixes each A-only slot to 1, with the roles
swapped for directions lying after an odd number of shared directions. The sign
is (-1)^(i(q+1)) times the parity of the concatenation (A-only, B-only).

Translation-invariant maps become polynomial matrices. The raw lattice matrix of
the pairing is

    C[a, b] = sum_r  (integral of  (a at r) cup_i (b at origin)) * x^r,

which is the matrix of c -> sum_sigma (int sigma cup_i c) sigma. Printed
conventions differ from this by a fixed relabelling per dimension (see
``PRESENTATIONS``); all identities are invariant under those relabellings.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from .ring import LaurentPoly
from .symplectic import PolyMatrix

FREE = None

CellLabel = tuple  # entries in {0, 1, FREE}
Orientation = tuple[int, ...]

# Modulus used for sign-faithful checks: coefficients stay far below it, so an
# identity holding mod CHECK_MODULUS holds over the integers.
CHECK_MODULUS = 1_000_003

# How the raw lattice matrices are presented in each dimension.
#   "dual":      the reference cell of orientation F sits at -1_F, so entries
#                pick up x^(1_F(row)) on the left and x^(-1_F(col)) on the right
#   "reflected": every entry is replaced by its antipode
PRESENTATIONS = {5: "reflected"}
DEFAULT_PRESENTATION = "dual"


class DegreeMismatchWarning(UserWarning):
    pass


def presentation(dim: int) -> str:
    return PRESENTATIONS.get(dim, DEFAULT_PRESENTATION)


@lru_cache(maxsize=None)
def orientations(dim: int, p: int) -> tuple[Orientation, ...]:
    """Ordered free-direction sets of the p-cells.

    Lexicographic on the set of free directions; in three dimensions the
    faces are listed by their normal direction (yz, xz, xy).
    """
    if not 0 <= p <= dim:
        raise ValueError(f"no {p}-cells in dimension {dim}")
    out = tuple(itertools.combinations(range(dim), p))
    if dim == 3 and p == 2:
        out = tuple(reversed(out))
    return out


def orientation_name(o: Orientation, dim: int) -> str:
    from .ring import variable_names

    names = variable_names(dim)
    if not o:
        return "v"
    return "".join(names[j] for j in o)


def cell_degree(cell: CellLabel) -> int:
    return sum(1 for s in cell if s is FREE)


def free_slots(cell: CellLabel) -> list[int]:
    return [k for k, s in enumerate(cell) if s is FREE]


def parse_cell(text: str) -> CellLabel:
    """'(•,0,1)' or '*01' style labels: bullet or * is FREE."""
    chars = [c for c in text if c in "01*•"]
    return tuple(FREE if c in "*•" else int(c) for c in chars)


def format_cell(cell: CellLabel) -> str:
    return "(" + ",".join("•" if s is FREE else str(s) for s in cell) + ")"


def _parity(seq: Sequence[int]) -> int:
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def boundary(cell: CellLabel) -> list[tuple[int, CellLabel]]:
    """Signed faces: slot l (1-based among free slots) set to a gives (-1)^(l+a)."""
    out = []
    for l, k in enumerate(free_slots(cell), start=1):
        for a in (0, 1):
            face = list(cell)
            face[k] = a
            out.append(((-1) ** (l + a), tuple(face)))
    return out


@lru_cache(maxsize=None)
def _local_terms(n: int, p: int, q: int, i: int) -> tuple[tuple[int, tuple, tuple], ...]:
    """Cup terms on the n-cube with all slots free, as (sign, A slots, B slots)."""
    if i < 0 or i > min(p, q) or p + q - i != n:
        return ()
    base = (-1) ** (i * (q + 1))
    terms = []
    for shared in itertools.combinations(range(n), i):
        rest = [t for t in range(n) if t not in shared]
        for a_only in itertools.combinations(rest, p - i):
            b_only = [t for t in rest if t not in a_only]
            sign = base * _parity(list(a_only) + b_only)
            a_cell: list = [FREE] * n
            b_cell: list = [FREE] * n
            for t in b_only:
                odd = sum(1 for s in shared if s < t) % 2
                a_cell[t] = 1 if odd else 0
            for t in a_only:
                odd = sum(1 for s in shared if s < t) % 2
                b_cell[t] = 0 if odd else 1
            terms.append((sign, tuple(a_cell), tuple(b_cell)))
    return tuple(terms)


def cup_terms(p: int, q: int, i: int, cell: CellLabel) -> list[tuple[int, CellLabel, CellLabel]]:
    """The signed (A-cell, B-cell) pairs whose products make up (A cup_i B)(cell)."""
    slots = free_slots(cell)
    out = []
    for sign, a_loc, b_loc in _local_terms(len(slots), p, q, i):
        a_cell, b_cell = list(cell), list(cell)
        for t, k in enumerate(slots):
            a_cell[k] = a_loc[t]
            b_cell[k] = b_loc[t]
        out.append((sign, tuple(a_cell), tuple(b_cell)))
    return out


def _cochain_degree(c: Mapping[CellLabel, object]) -> int | None:
    degrees = {cell_degree(k) for k in c}
    if len(degrees) > 1:
        raise ValueError(f"cochain mixes cells of degrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


def cup_eval(a: Mapping[CellLabel, object], b: Mapping[CellLabel, object], i: int,
             cell: CellLabel, degrees: tuple[int, int] | None = None):
    """Evaluate (a cup_i b) on one cell by direct summation over the cube terms.

    Cochains are mappings from cell labels to values (integers or any ring
    elements); missing cells count as zero. Degrees are read off the keys
    unless given. Incompatible degrees give 0 and a DegreeMismatchWarning.
    """
    p, q = degrees if degrees is not None else (_cochain_degree(a), _cochain_degree(b))
    n = cell_degree(cell)
    if p is None or q is None:
        return 0
    if i < 0 or i > min(p, q) or p + q - i != n:
        if i <= min(p, q):
            warnings.warn(f"cup_{i} of degrees {p} and {q} does not live on a {n}-cell",
                          DegreeMismatchWarning, stacklevel=2)
        return 0
    total = 0
    for sign, a_cell, b_cell in cup_terms(p, q, i, cell):
        av = a.get(a_cell)
        if av is None:
            continue
        bv = b.get(b_cell)
        if bv is None:
            continue
        total = total + sign * (av * bv)
    return total


def coboundary_eval(c: Mapping[CellLabel, object], cell: CellLabel):
    """(delta c)(cell) = c(boundary of cell)."""
    total = 0
    for sign, face in boundary(cell):
        v = c.get(face)
        if v is not None:
            total = total + sign * v
    return total


@dataclass(frozen=True)
class CupSpec:
    """The pairing matrix of cup_i between (D-p+i)-cells (rows) and p-cells (columns)."""

    dim: int
    p: int
    i: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if not (0 <= self.i <= self.p <= self.dim):
            raise ValueError(f"invalid cup spec: D={self.dim}, p={self.p}, i={self.i}")

    @property
    def row_degree(self) -> int:
        return self.dim - self.p + self.i


def _split(cell: CellLabel) -> tuple[Orientation, tuple[int, ...]]:
    o = tuple(k for k, s in enumerate(cell) if s is FREE)
    off = tuple(0 if s is FREE else s for s in cell)
    return o, off


def _ones(o: Orientation, dim: int) -> tuple[int, ...]:
    return tuple(1 if k in o else 0 for k in range(dim))


def present(raw: PolyMatrix, row_degree: int, col_degree: int) -> PolyMatrix:
    """Apply the dimension's presentation to a raw lattice matrix."""
    dim = raw.dim
    style = presentation(dim)
    if style == "reflected":
        return raw.antipode()
    rows = orientations(dim, row_degree)
    cols = orientations(dim, col_degree)
    out = PolyMatrix(raw.nrows, raw.ncols, raw.modulus, dim)
    for a, b, v in raw.nonzero():
        shift = tuple(u - w for u, w in zip(_ones(rows[a], dim), _ones(cols[b], dim)))
        out[a, b] = v.shift(shift)
    return out


def anchor_monomials(dim: int, degree: int) -> list[tuple[int, ...]]:
    """Position of the reference cell of each orientation, per the presentation.

    For the reflected presentation every reference cell sits at the origin and
    the exponents are negated instead.
    """
    if presentation(dim) == "reflected":
        return [(0,) * dim for _ in orientations(dim, degree)]
    return [tuple(-v for v in _ones(o, dim)) for o in orientations(dim, degree)]


@lru_cache(maxsize=None)
def _raw_coboundary(dim: int, p: int, modulus: int) -> PolyMatrix:
    rows, cols = orientations(dim, p + 1), orientations(dim, p)
    where = {o: k for k, o in enumerate(cols)}
    one = LaurentPoly.one(modulus, dim)
    m = PolyMatrix(len(rows), len(cols), modulus, dim)
    for a, o in enumerate(rows):
        for l, j in enumerate(o, start=1):
            face = tuple(k for k in o if k != j)
            back = LaurentPoly.variable(j, modulus, dim, -1)
            m[a, where[face]] = (one - back).scale((-1) ** l)
    return m


@lru_cache(maxsize=None)
def _presented_coboundary(dim: int, p: int, modulus: int) -> PolyMatrix:
    return present(_raw_coboundary(dim, p, modulus), p + 1, p)


def coboundary_matrix(dim: int, p: int, modulus: int = 2) -> PolyMatrix:
    """delta from p-cochains to (p+1)-cochains: rows (p+1)-cells, columns p-cells."""
    if not 0 <= p < dim:
        raise ValueError(f"coboundary degree {p} out of range for dimension {dim}")
    return _presented_coboundary(dim, p, modulus).copy()


def raw_cup_matrix(dim: int, p: int, i: int, modulus: int) -> PolyMatrix:
    """The unpresented lattice pairing matrix, from the closed-form cube terms."""
    return _raw_cup(dim, p, i, modulus).copy()


@lru_cache(maxsize=None)
def _raw_cup(dim: int, p: int, i: int, modulus: int) -> PolyMatrix:
    spec = CupSpec(dim, p, i)
    rows = orientations(dim, spec.row_degree)
    cols = orientations(dim, p)
    rwhere = {o: k for k, o in enumerate(rows)}
    cwhere = {o: k for k, o in enumerate(cols)}
    acc: dict[tuple[int, int], dict[tuple[int, ...], int]] = {}
    for sign, a_cell, b_cell in _local_terms(dim, spec.row_degree, p, i):
        oa, offa = _split(a_cell)
        ob, offb = _split(b_cell)
        key = (rwhere[oa], cwhere[ob])
        exp = tuple(u - w for u, w in zip(offa, offb))
        slot = acc.setdefault(key, {})
        slot[exp] = slot.get(exp, 0) + sign
    m = PolyMatrix(len(rows), len(cols), modulus, dim)
    for (a, b), terms in acc.items():
        m[a, b] = LaurentPoly(terms, modulus, dim)
    return m


@lru_cache(maxsize=None)
def _presented_cup(dim: int, p: int, i: int, modulus: int) -> PolyMatrix:
    spec = CupSpec(dim, p, i)
    return present(_raw_cup(dim, p, i, modulus), spec.row_degree, p)


def cup_matrix(spec: CupSpec | tuple[int, int, int], modulus: int = 2) -> PolyMatrix:
    """M for int sigma_{D-p+i} cup_i sigma_p: rows (D-p+i)-cells, columns p-cells."""
    if not isinstance(spec, CupSpec):
        spec = CupSpec(*spec)
    return _presented_cup(spec.dim, spec.p, spec.i, modulus).copy()


def cup(dim: int, row_degree: int, col_degree: int, i: int, modulus: int = 2) -> PolyMatrix:
    """Cup matrix addressed by the degrees of both factors; zero if they don't pair."""
    if row_degree + col_degree - i != dim or not 0 <= i <= min(row_degree, col_degree):
        raise ValueError(f"cup_{i} of degrees {row_degree}, {col_degree} does not "
                         f"integrate in dimension {dim}")
    return cup_matrix(CupSpec(dim, col_degree, i), modulus)


def oracle_cup_matrix(dim: int, p: int, i: int, modulus: int) -> PolyMatrix:
    """Raw pairing matrix rebuilt by brute force from cup_eval on lattice cubes.

    The row cochain is polynomial valued (cell (a, r) carries x^r), the column
    cochain is the indicator of the reference cell at the origin, and the
    integral runs over every unit cube containing that cell.
    """
    spec = CupSpec(dim, p, i)
    rows = orientations(dim, spec.row_degree)
    cols = orientations(dim, p)
    out = PolyMatrix(len(rows), len(cols), modulus, dim)
    top = (FREE,) * dim
    a_cells = [c for c in _all_cells(dim) if cell_degree(c) == spec.row_degree]
    b_cells = [c for c in _all_cells(dim) if cell_degree(c) == p]
    for ib, ob in enumerate(cols):
        # cubes at position c hold (ob, 0) iff c_j = 0 on ob and c_j in {-1, 0} elsewhere
        ranges = [(0,) if k in ob else (-1, 0) for k in range(dim)]
        for ia, oa in enumerate(rows):
            total = LaurentPoly.zero(modulus, dim)
            for c in itertools.product(*ranges):
                a_vals = {}
                for cell in a_cells:
                    o, off = _split(cell)
                    if o == oa:
                        pos = tuple(u + v for u, v in zip(c, off))
                        a_vals[cell] = LaurentPoly.monomial(pos, 1, modulus)
                b_vals = {}
                for cell in b_cells:
                    o, off = _split(cell)
                    if o == ob and all(u + v == 0 for u, v in zip(c, off)):
                        b_vals[cell] = 1
                val = cup_eval(a_vals, b_vals, i, top, degrees=(spec.row_degree, p))
                if val:
                    total = total + val
            out[ia, ib] = total
    return out


@lru_cache(maxsize=None)
def _all_cells(dim: int) -> tuple[CellLabel, ...]:
    return tuple(itertools.product((0, 1, FREE), repeat=dim))


def _maybe_cup(dim: int, row_degree: int, col_degree: int, i: int, modulus: int) -> PolyMatrix:
    nrows = comb(dim, row_degree) if 0 <= row_degree <= dim else 0
    ncols = comb(dim, col_degree) if 0 <= col_degree <= dim else 0
    if (0 <= row_degree <= dim and 0 <= col_degree <= dim and 0 <= i <= min(row_degree, col_degree)
            and row_degree + col_degree - i == dim):
        return cup(dim, row_degree, col_degree, i, modulus)
    return PolyMatrix(nrows, ncols, modulus, dim)


def _maybe_coboundary(dim: int, p: int, modulus: int) -> PolyMatrix:
    if 0 <= p < dim:
        return coboundary_matrix(dim, p, modulus)
    nrows = comb(dim, p + 1) if 0 <= p + 1 <= dim else 0
    ncols = comb(dim, p) if 0 <= p <= dim else 0
    return PolyMatrix(nrows, ncols, modulus, dim)


def leibniz_terms(dim: int, p: int, i: int, modulus: int = CHECK_MODULUS
                  ) -> list[tuple[int, str, PolyMatrix]]:
    """The four signed terms of the cup-i Leibniz identity, q = D - p + i - 1.

    M_{dq cup_i p} + (-1)^q M_{q cup_i dp} + (-1)^(p+q-i) M_{q cup_(i-1) p}
        + (-1)^(pq+p+q) M^dagger_{p cup_(i-1) q} = 0
    """
    q = dim - p + i - 1
    if not (0 <= p <= dim and 0 <= q <= dim and 0 <= i):
        raise ValueError(f"no Leibniz identity for D={dim}, p={p}, i={i}")
    t1 = _maybe_coboundary(dim, q, modulus).dagger() @ _maybe_cup(dim, q + 1, p, i, modulus)
    t2 = _maybe_cup(dim, q, p + 1, i, modulus) @ _maybe_coboundary(dim, p, modulus)
    terms = [(1, "M_{dq cup_i p}", t1), ((-1) ** q, "M_{q cup_i dp}", t2)]
    if i >= 1:
        t3 = _maybe_cup(dim, q, p, i - 1, modulus)
        t4 = _maybe_cup(dim, p, q, i - 1, modulus).dagger()
        terms.append(((-1) ** (p + q - i), "M_{q cup_(i-1) p}", t3))
        terms.append(((-1) ** (p * q + p + q), "M^dagger_{p cup_(i-1) q}", t4))
    return terms


def leibniz_residual(dim: int, p: int, i: int, modulus: int = CHECK_MODULUS) -> PolyMatrix:
    terms = leibniz_terms(dim, p, i, modulus)
    total = terms[0][2].scale(terms[0][0])
    for sign, _, m in terms[1:]:
        total = total + m.scale(sign)
    return total


def verify_cup_leibniz(dim: int, p: int, i: int, modulus: int = CHECK_MODULUS) -> bool:
    return leibniz_residual(dim, p, i, modulus).is_zero()


def leibniz_cases(dim: int) -> list[tuple[int, int]]:
    """All (p, i) for which the identity has at least one nonzero term."""
    cases = []
    for p in range(dim + 1):
        for i in range(0, dim + 1):
            q = dim - p + i - 1
            if 0 <= q <= dim and i <= min(p, q) + 1:
                cases.append((p, i))
    return cases


def verify_chain_complex(dim: int, p: int, modulus: int = CHECK_MODULUS) -> bool:
    """delta_{p+1} delta_p = 0."""
    return (coboundary_matrix(dim, p + 1, modulus) @ coboundary_matrix(dim, p, modulus)).is_zero()


def verify_coboundaries_pair_to_zero(dim: int, p: int, modulus: int = CHECK_MODULUS) -> bool:
    """int (delta a) cup (delta b) = 0 for a of degree p, b of degree D - p - 2."""
    q = dim - p - 2
    if p < 0 or q < 0:
        raise ValueError(f"no coboundary pairing for D={dim}, p={p}")
    m = coboundary_matrix(dim, p, modulus).dagger() @ cup(dim, p + 1, q + 1, 0, modulus) \
        @ coboundary_matrix(dim, q, modulus)
    return m.is_zero()
