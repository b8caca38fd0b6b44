"""Clifford QCA constructors: the 3-fermion family over Z_2 and the Z_p^(k) family.

Every map is assembled from four ingredients: a coboundary matrix delta (rows
qudit cells, columns the cells one degree lower), the two cup-0 pairings
between those degrees and the cup-1 self-pairing of the qudit cells. Columns of
the result are the images of X then Z basis Paulis (separators and flippers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import cochain
from .ring import InvalidModulusError, is_prime, mod_inverse, parse_poly
from .symplectic import PolyMatrix, SymplecticMap

FAMILIES = ("3f", "zp-alpha", "zp-beta")

# Matrices on the cubic lattice as tabulated in print (faces yz, xz, xy).
_TABLES_3D = {
    "delta_e_dv": [["1-x"], ["1-y"], ["1-z"]],
    "delta_f_de": [["0", "z-1", "1-y"],
                   ["z-1", "0", "1-x"],
                   ["y-1", "1-x", "0"]],
    "delta_c_df": [["1-x", "y-1", "1-z"]],
    "M_e_cup_f": [["~y~z", "0", "0"],
                  ["0", "-~x~z", "0"],
                  ["0", "0", "~x~y"]],
    "M_f_cup_e": [["~x", "0", "0"],
                  ["0", "-~y", "0"],
                  ["0", "0", "~z"]],
    "M_f_cup1_f": [["0", "~x", "~xz"],
                   ["-~y", "0", "z"],
                   ["-1", "-y", "0"]],
    "M_e_cup1_c": [["1"], ["~x"], ["~x~y"]],
    "M_f_cup2_c": [["~x"], ["1"], ["~z"]],
    "M_c_cup2_f": [["1", "y", "1"]],
}


class InvalidSpecError(ValueError):
    pass


def _parse_table(rows, modulus: int, dim: int, names=None) -> PolyMatrix:
    return PolyMatrix.from_rows([[parse_poly(s, modulus, dim, names) for s in r] for r in rows],
                                modulus, dim)


def table_3d(name: str, modulus: int = 2) -> PolyMatrix:
    """One of the tabulated cubic-lattice matrices, reduced mod ``modulus``."""
    return _parse_table(_TABLES_3D[name], modulus, 3)


@lru_cache(maxsize=None)
def _raw_5d() -> dict:
    text = resources.files("cliffordqca").joinpath("data/tables_5d.json").read_text()
    return json.loads(text)


def table_5d(name: str) -> PolyMatrix:
    """One of the tabulated five-dimensional matrices over Z_2 (variables a..e)."""
    data = _raw_5d()
    return _parse_table(data["matrices"][name], 2, 5, data["variables"])


@dataclass(frozen=True)
class QcaSpec:
    family: str
    dim: int
    modulus: int
    k: int | None = None
    l: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "3f":
            if self.modulus != 2:
                raise InvalidSpecError("the 3-fermion family lives over Z_2")
            l = self.l if self.l is not None else (self.dim + 1) // 2
            if l < 2 or self.dim != 2 * l - 1:
                raise InvalidSpecError(f"3-fermion QCAs need D = 2l - 1 with l >= 2, got D={self.dim}")
            object.__setattr__(self, "l", l)
        else:
            _check_zp(self.modulus, self.k)
            l = self.l if self.l is not None else (self.dim + 1) // 4
            if l < 1 or self.dim != 4 * l - 1:
                raise InvalidSpecError(f"Z_p QCAs need D = 4l - 1 with l >= 1, got D={self.dim}")
            if self.family == "zp-beta" and l != 1:
                raise InvalidSpecError("beta is only constructed on the cubic lattice")
            object.__setattr__(self, "l", l)


def _check_zp(p: int, k: int | None) -> None:
    if p == 2 or not is_prime(p):
        raise InvalidModulusError(f"Z_p families need an odd prime, got {p}")
    if k is None or k % p == 0:
        raise InvalidSpecError(f"level k={k} must be nonzero mod {p}")


def assemble_z2(delta: PolyMatrix, m_low_high: PolyMatrix, m_high_low: PolyMatrix,
                m_high_cup1: PolyMatrix) -> SymplecticMap:
    """Two-species 3-fermion-type QCA from its cochain ingredients.

    delta: coboundary into the qudit cells (rows qudit cells).
    m_low_high: cup-0 pairing with the lower-degree cell first.
    m_high_low: cup-0 pairing with the qudit cell first.
    m_high_cup1: cup-1 pairing of qudit cells.
    """
    n = delta.nrows
    eye = PolyMatrix.identity(n, delta.modulus, delta.dim)
    zero = PolyMatrix.zeros(n, n, delta.modulus, delta.dim)
    gauge_z = m_high_cup1.dagger() @ delta
    sep_a, sep_b = m_high_low.dagger(), m_low_high
    flip_a, flip_b = sep_a @ m_high_cup1, sep_b @ m_high_cup1
    grid = [
        [eye, delta @ flip_b, zero, delta @ sep_b],
        [delta @ flip_a, eye, delta @ sep_a, zero],
        [zero, gauge_z @ flip_b, eye, gauge_z @ sep_b],
        [gauge_z @ flip_a, zero, gauge_z @ sep_a, eye],
    ]
    return SymplecticMap(PolyMatrix.block(grid))


def assemble_zp_alpha(delta: PolyMatrix, m_low_high: PolyMatrix, m_high_cup1: PolyMatrix,
                      k: int) -> SymplecticMap:
    """alpha^(k): separators Z + (1/2k) G^(k) M_{e cup f}, flippers U^(k) - k Zbar M_{f cup_1 f}."""
    p = delta.modulus
    half, inv2k = mod_inverse(2, p), mod_inverse(2 * k, p)
    eye = PolyMatrix.identity(delta.nrows, p, delta.dim)
    gauge_z = m_high_cup1.dagger() @ delta
    dm = delta @ m_low_high
    gm = gauge_z @ m_low_high
    xx = eye - (dm @ m_high_cup1).scale(half)
    xz = dm.scale(inv2k)
    zx = (gm @ m_high_cup1).scale(-k * half)
    zz = eye + gm.scale(half)
    return SymplecticMap.from_blocks(xx, xz, zx, zz)


def assemble_zp_beta(delta: PolyMatrix, m_high_low: PolyMatrix, m_high_cup1: PolyMatrix,
                     k: int) -> SymplecticMap:
    """beta^(k): separators Z + (1/2k) G^(-k) M^dagger_{f cup e}.

    Flippers follow from U^(-k) decorated by separators: X + (1/2) G^(-k) M^dagger_{f cup e} M_{f cup_1 f}.
    """
    p = delta.modulus
    half, inv2k = mod_inverse(2, p), mod_inverse(2 * k, p)
    eye = PolyMatrix.identity(delta.nrows, p, delta.dim)
    gauge_z = m_high_cup1.dagger() @ delta
    sep = m_high_low.dagger()
    dm = delta @ sep
    gm = gauge_z @ sep
    xx = eye + (dm @ m_high_cup1).scale(half)
    xz = dm.scale(inv2k)
    zx = (gm @ m_high_cup1).scale(-k * half)
    zz = eye - gm.scale(half)
    return SymplecticMap.from_blocks(xx, xz, zx, zz)


def build_3f_3d() -> SymplecticMap:
    """The 3+1D 3-fermion QCA on the cubic lattice, 12 x 12 over Z_2[x, y, z]."""
    return assemble_z2(table_3d("delta_f_de"), table_3d("M_e_cup_f"), table_3d("M_f_cup_e"),
                       table_3d("M_f_cup1_f"))


def build_3f_5d() -> SymplecticMap:
    """The 5+1D 3-fermion QCA, 40 x 40 over Z_2 in variables a..e."""
    return assemble_z2(table_5d("delta_c_df"), table_5d("M_f_cup_c"), table_5d("M_c_cup_f"),
                       table_5d("M_c_cup1_c"))


def z2_ingredients(l: int) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix]:
    if l < 2:
        raise InvalidSpecError(f"l must be at least 2, got {l}")
    dim = 2 * l - 1
    return (cochain.coboundary_matrix(dim, l - 1, 2),
            cochain.cup(dim, l - 1, l, 0, 2),
            cochain.cup(dim, l, l - 1, 0, 2),
            cochain.cup(dim, l, l, 1, 2))


def build_z2_general(l: int) -> SymplecticMap:
    """Qubits on l-cells of the (2l-1)-dimensional hypercubic lattice."""
    return assemble_z2(*z2_ingredients(l))


def zp_ingredients(l: int, p: int) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix]:
    """(delta, M_{e cup f}, M_{f cup e}, M_{f cup_1 f}) with f the 2l-cells in D = 4l - 1."""
    if l < 1:
        raise InvalidSpecError(f"l must be at least 1, got {l}")
    dim, deg = 4 * l - 1, 2 * l
    return (cochain.coboundary_matrix(dim, deg - 1, p),
            cochain.cup(dim, deg - 1, deg, 0, p),
            cochain.cup(dim, deg, deg - 1, 0, p),
            cochain.cup(dim, deg, deg, 1, p))


def build_zp_alpha(p: int, k: int) -> SymplecticMap:
    """alpha_p^(k) on the cubic lattice, 6 x 6 over Z_p[x, y, z]."""
    return build_zp_general(1, p, k)


def build_zp_beta(p: int, k: int) -> SymplecticMap:
    _check_zp(p, k)
    delta, _, m_fe, m_ff = zp_ingredients(1, p)
    return assemble_zp_beta(delta, m_fe, m_ff, k % p)


def build_zp_general(l: int, p: int, k: int) -> SymplecticMap:
    """alpha^(k) with qudits on 2l-cells of the (4l-1)-dimensional hypercubic lattice."""
    _check_zp(p, k)
    delta, m_ef, _, m_ff = zp_ingredients(l, p)
    return assemble_zp_alpha(delta, m_ef, m_ff, k % p)


def hopping_column(p: int, k: int, l: int = 1) -> PolyMatrix:
    """U^(k) = X + k Z M_{f' cup_1 f}, one column per qudit orientation."""
    _, _, _, m_ff = zp_ingredients(l, p)
    eye = PolyMatrix.identity(m_ff.nrows, p, m_ff.dim)
    return PolyMatrix.vstack([eye, m_ff.scale(k)])


def flux_column(p: int, l: int = 1) -> PolyMatrix:
    """Z on the boundary of each (2l+1)-cell: columns (0; delta^dagger)."""
    dim, deg = 4 * l - 1, 2 * l
    d_up = cochain.coboundary_matrix(dim, deg, p)
    return PolyMatrix.vstack([PolyMatrix.zeros(d_up.ncols, d_up.nrows, p, dim), d_up.dagger()])


def gauge_column(modulus: int, dim: int, degree: int, k: int = 1) -> PolyMatrix:
    """G^(k) = (delta; k M^dagger_{delta e cup_1 f}) on cells of the given degree."""
    delta = cochain.coboundary_matrix(dim, degree - 1, modulus)
    m_ff = cochain.cup(dim, degree, degree, 1, modulus)
    return PolyMatrix.vstack([delta, (m_ff.dagger() @ delta).scale(k)])


def build(spec: QcaSpec) -> SymplecticMap:
    if spec.family == "3f":
        if spec.l == 2:
            return build_3f_3d()
        if spec.l == 3:
            return build_3f_5d()
        return build_z2_general(spec.l)
    if spec.family == "zp-alpha":
        return build_zp_general(spec.l, spec.modulus, spec.k)
    return build_zp_beta(spec.modulus, spec.k)
