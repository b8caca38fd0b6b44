"""Polynomial matrices, Pauli columns and symplectic maps over Z_d[x^±].

A Pauli operator family on q qudit species per unit cell is a column of 2q
polynomials: X exponents first, Z exponents second. A Clifford QCA is the
2q x 2q matrix whose j-th column is the image of the j-th basis Pauli.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .ring import IncompatibleRingError, LaurentPoly, variable_names


class ShapeError(ValueError):
    pass


class NotSymplecticError(ValueError):
    pass


class PolyMatrix:
    """Rectangular matrix of Laurent polynomials, stored sparsely by row."""

    __slots__ = ("nrows", "ncols", "modulus", "dim", "_rows")

    def __init__(self, nrows: int, ncols: int, modulus: int, dim: int,
                 entries: dict[tuple[int, int], LaurentPoly] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.modulus = modulus
        self.dim = dim
        self._rows: list[dict[int, LaurentPoly]] = [{} for _ in range(nrows)]
        for (i, j), v in (entries or {}).items():
            self[i, j] = v

    # construction helpers

    @classmethod
    def zeros(cls, nrows: int, ncols: int, modulus: int, dim: int) -> PolyMatrix:
        return cls(nrows, ncols, modulus, dim)

    @classmethod
    def identity(cls, n: int, modulus: int, dim: int) -> PolyMatrix:
        one = LaurentPoly.one(modulus, dim)
        m = cls(n, n, modulus, dim)
        for i in range(n):
            m._rows[i][i] = one
        return m

    @classmethod
    def diagonal(cls, diag: Sequence[LaurentPoly | int], modulus: int, dim: int) -> PolyMatrix:
        m = cls(len(diag), len(diag), modulus, dim)
        for i, v in enumerate(diag):
            m[i, i] = v
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly | int]], modulus: int,
                  dim: int) -> PolyMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols, modulus, dim)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    @classmethod
    def from_function(cls, nrows: int, ncols: int, modulus: int, dim: int,
                      fn: Callable[[int, int], LaurentPoly | int]) -> PolyMatrix:
        m = cls(nrows, ncols, modulus, dim)
        for i in range(nrows):
            for j in range(ncols):
                m[i, j] = fn(i, j)
        return m

    @classmethod
    def block(cls, blocks: Sequence[Sequence[PolyMatrix | None]]) -> PolyMatrix:
        """Assemble from a grid of blocks; None stands for a zero block."""
        heights = []
        for brow in blocks:
            hs = {b.nrows for b in brow if b is not None}
            if len(hs) != 1:
                raise ShapeError("cannot infer block row height")
            heights.append(hs.pop())
        widths = []
        for j in range(len(blocks[0])):
            ws = {brow[j].ncols for brow in blocks if brow[j] is not None}
            if len(ws) != 1:
                raise ShapeError("cannot infer block column width")
            widths.append(ws.pop())
        sample = next(b for brow in blocks for b in brow if b is not None)
        out = cls(sum(heights), sum(widths), sample.modulus, sample.dim)
        r0 = 0
        for bi, brow in enumerate(blocks):
            c0 = 0
            for bj, b in enumerate(brow):
                if b is not None:
                    sample._check_ring(b)
                    if b.nrows != heights[bi] or b.ncols != widths[bj]:
                        raise ShapeError("block size mismatch")
                    for i, row in enumerate(b._rows):
                        target = out._rows[r0 + i]
                        for j, v in row.items():
                            target[c0 + j] = v
                c0 += widths[bj]
            r0 += heights[bi]
        return out

    @classmethod
    def hstack(cls, mats: Sequence[PolyMatrix]) -> PolyMatrix:
        return cls.block([list(mats)])

    @classmethod
    def vstack(cls, mats: Sequence[PolyMatrix]) -> PolyMatrix:
        return cls.block([[m] for m in mats])

    @classmethod
    def block_diag(cls, mats: Sequence[PolyMatrix]) -> PolyMatrix:
        grid = []
        for i, m in enumerate(mats):
            row: list[PolyMatrix | None] = [None] * len(mats)
            row[i] = m
            grid.append(row)
        # zero blocks need explicit shapes when a whole column would be None
        for i, m in enumerate(mats):
            for j, other in enumerate(mats):
                if grid[i][j] is None:
                    grid[i][j] = PolyMatrix(m.nrows, other.ncols, m.modulus, m.dim)
        return cls.block(grid)

    # element access

    def _coerce(self, v: LaurentPoly | int) -> LaurentPoly:
        if isinstance(v, int):
            return LaurentPoly.constant(v, self.modulus, self.dim)
        if v.modulus != self.modulus or v.dim != self.dim:
            raise IncompatibleRingError("entry ring does not match matrix ring")
        return v

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {key} outside {self.nrows}x{self.ncols}")
        v = self._rows[i].get(j)
        return v if v is not None else LaurentPoly.zero(self.modulus, self.dim)

    def __setitem__(self, key: tuple[int, int], value: LaurentPoly | int) -> None:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {key} outside {self.nrows}x{self.ncols}")
        v = self._coerce(value)
        if v.is_zero():
            self._rows[i].pop(j, None)
        else:
            self._rows[i][j] = v

    def nonzero(self) -> Iterable[tuple[int, int, LaurentPoly]]:
        """Nonzero entries in row-major order."""
        for i, row in enumerate(self._rows):
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> list[LaurentPoly]:
        return [self[i, j] for j in range(self.ncols)]

    def column(self, j: int) -> PolyMatrix:
        return self.submatrix(range(self.nrows), [j])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> PolyMatrix:
        rows = list(rows)
        cols = list(cols)
        where = {c: k for k, c in enumerate(cols)}
        out = PolyMatrix(len(rows), len(cols), self.modulus, self.dim)
        for a, i in enumerate(rows):
            target = out._rows[a]
            for j, v in self._rows[i].items():
                k = where.get(j)
                if k is not None:
                    target[k] = v
        return out

    def blocks(self, split_row: int, split_col: int) -> tuple[PolyMatrix, PolyMatrix,
                                                             PolyMatrix, PolyMatrix]:
        """Top-left, top-right, bottom-left, bottom-right blocks."""
        r1, r2 = range(split_row), range(split_row, self.nrows)
        c1, c2 = range(split_col), range(split_col, self.ncols)
        return (self.submatrix(r1, c1), self.submatrix(r1, c2),
                self.submatrix(r2, c1), self.submatrix(r2, c2))

    # algebra

    def _check_ring(self, other: PolyMatrix) -> None:
        if self.modulus != other.modulus or self.dim != other.dim:
            raise IncompatibleRingError(
                f"matrix ring mismatch: Z_{self.modulus}/{self.dim} vs "
                f"Z_{other.modulus}/{other.dim}")

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        out = self.copy()
        for i, row in enumerate(other._rows):
            target = out._rows[i]
            for j, v in row.items():
                w = target.get(j)
                s = v if w is None else w + v
                if s.is_zero():
                    target.pop(j, None)
                else:
                    target[j] = s
        return out

    def __neg__(self) -> PolyMatrix:
        out = PolyMatrix(self.nrows, self.ncols, self.modulus, self.dim)
        out._rows = [{j: -v for j, v in row.items()} for row in self._rows]
        return out

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> PolyMatrix:
        c = self._coerce(c)
        out = PolyMatrix(self.nrows, self.ncols, self.modulus, self.dim)
        for i, row in enumerate(self._rows):
            target = out._rows[i]
            for j, v in row.items():
                w = c * v
                if not w.is_zero():
                    target[j] = w
        return out

    def __rmul__(self, c) -> PolyMatrix:
        if isinstance(c, (int, LaurentPoly)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = PolyMatrix(self.nrows, other.ncols, self.modulus, self.dim)
        orows = other._rows
        for i, row in enumerate(self._rows):
            acc: dict[int, LaurentPoly] = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    prod = a * b
                    prev = acc.get(j)
                    acc[j] = prod if prev is None else prev + prod
            out._rows[i] = {j: v for j, v in acc.items() if not v.is_zero()}
        return out

    def transpose(self) -> PolyMatrix:
        out = PolyMatrix(self.ncols, self.nrows, self.modulus, self.dim)
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                out._rows[j][i] = v
        return out

    @property
    def T(self) -> PolyMatrix:
        return self.transpose()

    def antipode(self) -> PolyMatrix:
        out = PolyMatrix(self.nrows, self.ncols, self.modulus, self.dim)
        out._rows = [{j: v.antipode() for j, v in row.items()} for row in self._rows]
        return out

    def dagger(self) -> PolyMatrix:
        """Transpose followed by the antipode."""
        out = PolyMatrix(self.ncols, self.nrows, self.modulus, self.dim)
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                out._rows[j][i] = v.antipode()
        return out

    def map_entries(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> PolyMatrix:
        out = PolyMatrix(self.nrows, self.ncols, self.modulus, self.dim)
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                w = fn(v)
                if not w.is_zero():
                    out._rows[i][j] = w
        return out

    def copy(self) -> PolyMatrix:
        out = PolyMatrix(self.nrows, self.ncols, self.modulus, self.dim)
        out._rows = [dict(r) for r in self._rows]
        return out

    def is_zero(self) -> bool:
        return not any(self._rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all(len(r) == 1 and i in r and r[i].is_one() for i, r in enumerate(self._rows))

    def first_difference(self, other: PolyMatrix) -> tuple[int, int, LaurentPoly, LaurentPoly] | None:
        """First (row, col, mine, theirs) where the matrices differ, row-major."""
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        for i in range(self.nrows):
            a, b = self._rows[i], other._rows[i]
            if a != b:
                for j in sorted(set(a) | set(b)):
                    if a.get(j) != b.get(j):
                        return i, j, self[i, j], other[i, j]
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.modulus == other.modulus
                and self.dim == other.dim and self._rows == other._rows)

    __hash__ = None

    # rendering and serialization

    def render(self, names: Sequence[str] | None = None) -> str:
        names = names or variable_names(self.dim)
        cells = [[self[i, j].render(names) for j in range(self.ncols)] for i in range(self.nrows)]
        width = max((_width(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(" " * (width - _width(c)) + c for c in row) + " ]"
                         for row in cells)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols}, d={self.modulus}, D={self.dim}, nnz={self.nnz()})"

    def to_json(self, q: int | None = None) -> dict:
        data = {"modulus": self.modulus, "dimension": self.dim}
        if q is not None:
            data["q"] = q
        data.update({
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [{"row": i, "col": j, "terms": v.to_json()} for i, j, v in self.nonzero()],
        })
        return data

    @classmethod
    def from_json(cls, data: dict) -> PolyMatrix:
        d, dim = data["modulus"], data["dimension"]
        m = cls(data["rows"], data["cols"], d, dim)
        for ent in data["entries"]:
            m[ent["row"], ent["col"]] = LaurentPoly.from_json(ent["terms"], d, dim)
        return m


def _width(text: str) -> int:
    # combining marks (the bar over inverted variables) take no column
    return sum(not unicodedata.combining(ch) for ch in text)


def dagger(m: PolyMatrix) -> PolyMatrix:
    return m.dagger()


def standard_form(q: int, modulus: int, dim: int) -> PolyMatrix:
    """The block form [[0, I], [-I, 0]] on 2q rows."""
    eye = PolyMatrix.identity(q, modulus, dim)
    return PolyMatrix.block([[PolyMatrix.zeros(q, q, modulus, dim), eye],
                             [-eye, PolyMatrix.zeros(q, q, modulus, dim)]])


def pairing_matrix(v: PolyMatrix, w: PolyMatrix) -> PolyMatrix:
    """All symplectic pairings v_i^† Λ w_j between columns of v and w."""
    if v.nrows != w.nrows or v.nrows % 2:
        raise ShapeError(f"columns of length {v.nrows} and {w.nrows} cannot be paired")
    q = v.nrows // 2
    vx, vz = v.submatrix(range(q), range(v.ncols)), v.submatrix(range(q, 2 * q), range(v.ncols))
    wx, wz = w.submatrix(range(q), range(w.ncols)), w.submatrix(range(q, 2 * q), range(w.ncols))
    return vx.dagger() @ wz - vz.dagger() @ wx


@dataclass(frozen=True)
class PauliColumn:
    """A translation-invariant Pauli family: 2q polynomials, X blocks then Z blocks."""

    entries: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.entries) % 2 or not self.entries:
            raise ShapeError("a Pauli column needs an even, nonzero number of entries")
        rings = {(e.modulus, e.dim) for e in self.entries}
        if len(rings) != 1:
            raise IncompatibleRingError("entries live in different rings")

    @property
    def q(self) -> int:
        return len(self.entries) // 2

    @property
    def modulus(self) -> int:
        return self.entries[0].modulus

    @property
    def dim(self) -> int:
        return self.entries[0].dim

    @property
    def x_part(self) -> tuple[LaurentPoly, ...]:
        return self.entries[: self.q]

    @property
    def z_part(self) -> tuple[LaurentPoly, ...]:
        return self.entries[self.q:]

    @classmethod
    def from_matrix(cls, m: PolyMatrix, col: int = 0) -> PauliColumn:
        return cls(tuple(m[i, col] for i in range(m.nrows)))

    @classmethod
    def basis(cls, kind: str, index: int, q: int, modulus: int, dim: int) -> PauliColumn:
        """Bare X or Z on species ``index``."""
        zero = LaurentPoly.zero(modulus, dim)
        entries = [zero] * (2 * q)
        entries[index + (q if kind.upper() == "Z" else 0)] = LaurentPoly.one(modulus, dim)
        return cls(tuple(entries))

    def as_matrix(self) -> PolyMatrix:
        return PolyMatrix.from_rows([[e] for e in self.entries], self.modulus, self.dim)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __add__(self, other: PauliColumn) -> PauliColumn:
        if len(other.entries) != len(self.entries):
            raise ShapeError("column length mismatch")
        return PauliColumn(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: LaurentPoly | int) -> PauliColumn:
        return PauliColumn(tuple(e * c if isinstance(c, int) else c * e for e in self.entries))


def symplectic_pair(v: PauliColumn | PolyMatrix, w: PauliColumn | PolyMatrix) -> LaurentPoly:
    """The pairing v^† Λ w; zero iff the two families commute at every offset."""
    vm = v.as_matrix() if isinstance(v, PauliColumn) else v
    wm = w.as_matrix() if isinstance(w, PauliColumn) else w
    if vm.ncols != 1 or wm.ncols != 1:
        raise ShapeError("symplectic_pair expects single columns")
    vm._check_ring(wm)
    return pairing_matrix(vm, wm)[0, 0]


class SymplecticMap:
    """A 2q x 2q polynomial matrix acting on Pauli columns."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: PolyMatrix):
        if matrix.nrows != matrix.ncols or matrix.nrows % 2:
            raise ShapeError(f"symplectic maps are 2q x 2q, got {matrix.shape}")
        self.matrix = matrix

    @property
    def q(self) -> int:
        return self.matrix.nrows // 2

    @property
    def modulus(self) -> int:
        return self.matrix.modulus

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @classmethod
    def identity(cls, q: int, modulus: int, dim: int) -> SymplecticMap:
        return cls(PolyMatrix.identity(2 * q, modulus, dim))

    @classmethod
    def from_blocks(cls, xx: PolyMatrix, xz: PolyMatrix, zx: PolyMatrix,
                    zz: PolyMatrix) -> SymplecticMap:
        """Blocks named Θ^{out,in}: xz maps Z inputs to X outputs."""
        return cls(PolyMatrix.block([[xx, xz], [zx, zz]]))

    def blocks(self) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix]:
        """(Θ^XX, Θ^XZ, Θ^ZX, Θ^ZZ)."""
        return self.matrix.blocks(self.q, self.q)

    def column(self, j: int) -> PauliColumn:
        return PauliColumn.from_matrix(self.matrix, j)

    def apply(self, v: PauliColumn | PolyMatrix) -> PolyMatrix:
        vm = v.as_matrix() if isinstance(v, PauliColumn) else v
        return self.matrix @ vm

    def __matmul__(self, other: SymplecticMap) -> SymplecticMap:
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticMap):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        return f"SymplecticMap(q={self.q}, d={self.modulus}, D={self.dim})"

    def to_json(self) -> dict:
        return self.matrix.to_json(q=self.q)

    @classmethod
    def from_json(cls, data: dict) -> SymplecticMap:
        return cls(PolyMatrix.from_json(data))


def is_symplectic(theta: SymplecticMap | PolyMatrix) -> bool:
    m = theta.matrix if isinstance(theta, SymplecticMap) else theta
    if m.nrows != m.ncols or m.nrows % 2:
        return False
    lam = standard_form(m.nrows // 2, m.modulus, m.dim)
    return m.dagger() @ lam @ m == lam


def compose(theta1: SymplecticMap, theta2: SymplecticMap) -> SymplecticMap:
    """theta1 after theta2."""
    if theta1.matrix.shape != theta2.matrix.shape:
        raise ShapeError(f"cannot compose {theta1.matrix.shape} with {theta2.matrix.shape}")
    return SymplecticMap(theta1.matrix @ theta2.matrix)


def inverse(theta: SymplecticMap) -> SymplecticMap:
    """-Λ θ^† Λ, valid exactly when θ is symplectic."""
    if not is_symplectic(theta):
        raise NotSymplecticError("inverse formula requires a symplectic map")
    lam = standard_form(theta.q, theta.modulus, theta.dim)
    return SymplecticMap(-(lam @ theta.matrix.dagger() @ lam))


def direct_sum(maps: Sequence[SymplecticMap]) -> SymplecticMap:
    """Stack independent copies, keeping all X blocks before all Z blocks."""
    xx, xz, zx, zz = zip(*(m.blocks() for m in maps))
    return SymplecticMap.from_blocks(PolyMatrix.block_diag(xx), PolyMatrix.block_diag(xz),
                                     PolyMatrix.block_diag(zx), PolyMatrix.block_diag(zz))


class NotInvertibleMatrixError(ValueError):
    pass


def monomial_inverse(m: PolyMatrix) -> PolyMatrix:
    """Inverse of a generalized permutation matrix with unit-monomial entries."""
    if m.nrows != m.ncols:
        raise ShapeError(f"cannot invert a {m.shape} matrix")
    out = PolyMatrix(m.ncols, m.nrows, m.modulus, m.dim)
    seen = set()
    for i in range(m.nrows):
        row = list(m._rows[i].items())
        if len(row) != 1 or not row[0][1].is_monomial():
            raise NotInvertibleMatrixError(f"row {i} is not a single monomial")
        j, v = row[0]
        if j in seen:
            raise NotInvertibleMatrixError(f"column {j} is hit twice")
        seen.add(j)
        out[j, i] = v ** -1
    return out


def determinant(m: PolyMatrix):
    """Cofactor expansion along sparse rows; intended for small matrices."""
    if m.nrows != m.ncols:
        raise ShapeError(f"no determinant for a {m.shape} matrix")
    rows = [dict(r) for r in m._rows]
    zero = LaurentPoly.zero(m.modulus, m.dim)

    def det(k: int, cols: frozenset) -> LaurentPoly:
        if k == len(rows):
            return LaurentPoly.one(m.modulus, m.dim)
        total = zero
        order = sorted(cols)
        for j, v in rows[k].items():
            if j not in cols:
                continue
            sign = -1 if order.index(j) % 2 else 1
            sub = det(k + 1, cols - {j})
            if sub:
                total = total + (v * sub).scale(sign)
        return total

    return det(0, frozenset(range(m.ncols)))


def unit_inverse(m: PolyMatrix) -> PolyMatrix:
    """Adjugate inverse when the determinant is a unit monomial."""
    d = determinant(m)
    if not d.is_monomial():
        raise NotInvertibleMatrixError(f"determinant {d} is not a unit")
    dinv = d ** -1
    n = m.nrows
    out = PolyMatrix(n, n, m.modulus, m.dim)
    for i in range(n):
        for j in range(n):
            minor = m.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            c = determinant(minor) if n > 1 else LaurentPoly.one(m.modulus, m.dim)
            out[i, j] = (c * dinv).scale(-1 if (i + j) % 2 else 1)
    return out
