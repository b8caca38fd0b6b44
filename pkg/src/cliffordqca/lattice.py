"""Expansion of polynomial matrices into explicit matrices on a periodic torus.

Site s of an L_1 x ... x L_D torus is indexed in row-major order, and the
explicit index of component i at site s is i * N + s (component-major). A
term c x^e in entry (i, j) sends component j at site s to component i at
site s + e, so the polynomial dagger becomes the ordinary transpose.
"""

from __future__ import annotations

import json
import math
import warnings
from itertools import product
from typing import Iterable, Sequence

from .ring import IncompatibleRingError
from .symplectic import PolyMatrix, ShapeError, SymplecticMap, standard_form


class WrapWarning(UserWarning):
    """The torus is too small for the map's range; neighbours wrap onto each other."""


class ExplicitMap:
    """Sparse square-or-rectangular matrix over Z_d, stored as dict rows."""

    def __init__(self, nrows: int, ncols: int, modulus: int, lengths: Sequence[int] = (),
                 block: int | None = None):
        self.nrows, self.ncols, self.modulus = nrows, ncols, modulus
        self.lengths = tuple(lengths)
        self.block = block
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def sites(self) -> int:
        return math.prod(self.lengths)

    def add(self, i: int, j: int, value: int) -> None:
        row = self.rows.setdefault(i, {})
        v = (row.get(j, 0) + value) % self.modulus
        if v:
            row[j] = v
        else:
            row.pop(j, None)
            if not row:
                del self.rows[i]

    def get(self, i: int, j: int) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(i, j, v) for i in sorted(self.rows) for j, v in sorted(self.rows[i].items())]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def _like(self, nrows: int, ncols: int) -> ExplicitMap:
        return ExplicitMap(nrows, ncols, self.modulus, self.lengths, self.block)

    def transpose(self) -> ExplicitMap:
        out = self._like(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v
        return out

    def __matmul__(self, other: ExplicitMap) -> ExplicitMap:
        if self.ncols != other.nrows or self.modulus != other.modulus:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        d = self.modulus
        out = self._like(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                for j, b in other.rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v % d for j, v in acc.items() if v % d}
            if acc:
                out.rows[i] = acc
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExplicitMap:
        rpos = {r: n for n, r in enumerate(rows)}
        cpos = {c: n for n, c in enumerate(cols)}
        out = self._like(len(rows), len(cols))
        for i, row in self.rows.items():
            if i in rpos:
                picked = {cpos[j]: v for j, v in row.items() if j in cpos}
                if picked:
                    out.rows[rpos[i]] = picked
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_zero(self) -> bool:
        return not self.rows

    def is_identity(self) -> bool:
        return (self.nrows == self.ncols and len(self.rows) == self.nrows
                and all(row == {i: 1} for i, row in self.rows.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExplicitMap):
            return NotImplemented
        return (self.shape == other.shape and self.modulus == other.modulus
                and self.rows == other.rows)

    __hash__ = None

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.triplets():
            out[i][j] = v
        return out

    def header(self) -> dict:
        return {"d": self.modulus, "L": list(self.lengths), "q": self.block,
                "rows": self.nrows, "cols": self.ncols, "nnz": self.nnz()}

    def export_coo(self) -> str:
        """JSON header line, then one "row col value" line per nonzero entry."""
        lines = [json.dumps(self.header(), sort_keys=True)]
        lines += [f"{i} {j} {v}" for i, j, v in self.triplets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coo(cls, text: str) -> ExplicitMap:
        head, *body = text.strip().splitlines()
        h = json.loads(head)
        out = cls(h["rows"], h["cols"], h["d"], h["L"], h["q"])
        for line in body:
            i, j, v = map(int, line.split())
            out.add(i, j, v)
        return out


def _site_index(coords: Iterable[int], lengths: Sequence[int]) -> int:
    s = 0
    for c, n in zip(coords, lengths):
        s = s * n + c
    return s


def locality_radius(theta: SymplecticMap | PolyMatrix) -> int:
    """Largest L-infinity exponent norm over all entries."""
    m = theta.matrix if isinstance(theta, SymplecticMap) else theta
    return max((p.exponent_norm() for _, _, p in m.nonzero()), default=0)


def instantiate(theta: SymplecticMap | PolyMatrix, lengths: Sequence[int]) -> ExplicitMap:
    """Block-circulant expansion of a polynomial matrix on the given torus."""
    m = theta.matrix if isinstance(theta, SymplecticMap) else theta
    lengths = tuple(lengths)
    if len(lengths) != m.dim:
        raise IncompatibleRingError(f"torus has {len(lengths)} lengths, matrix has {m.dim} variables")
    if any(n < 1 for n in lengths):
        raise ValueError(f"torus lengths must be positive: {lengths}")
    r = locality_radius(m)
    if any(n < 2 * r + 1 for n in lengths):
        warnings.warn(f"torus {lengths} is smaller than 2*{r}+1; terms wrap around",
                      WrapWarning, stacklevel=2)
    n_sites = math.prod(lengths)
    sites = list(product(*(range(n) for n in lengths)))
    block = m.nrows // 2 if m.nrows == m.ncols and m.nrows % 2 == 0 else None
    out = ExplicitMap(m.nrows * n_sites, m.ncols * n_sites, m.modulus, lengths, block)
    for i, j, poly in m.nonzero():
        for e, c in poly.reduce_torus(lengths).terms:
            for s, coords in enumerate(sites):
                target = tuple((a + b) % n for a, b, n in zip(coords, e, lengths))
                out.add(i * n_sites + _site_index(target, lengths), j * n_sites + s, c)
    return out


def _lambda(q: int, modulus: int, lengths: Sequence[int]) -> ExplicitMap:
    return instantiate(standard_form(q, modulus, len(lengths)), lengths)


def is_symplectic_explicit(e: ExplicitMap) -> bool:
    """E^T Λ E = Λ with Λ the site-wise standard form."""
    if e.block is None:
        return False
    lam = _lambda(e.block, e.modulus, e.lengths)
    return e.transpose() @ lam @ e == lam


def stabilizer_commutation(theta: SymplecticMap, lengths: Sequence[int]) -> bool:
    """Do the instantiated images of all Z basis columns pairwise commute?"""
    e = instantiate(theta, lengths)
    n = e.sites
    z_cols = list(range(theta.q * n, 2 * theta.q * n))
    images = e.submatrix(list(range(e.nrows)), z_cols)
    lam = _lambda(theta.q, theta.modulus, lengths)
    return (images.transpose() @ lam @ images).is_zero()
