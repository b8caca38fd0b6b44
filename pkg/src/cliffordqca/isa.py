"""Invertible subalgebras on hypercubic lattices and the QCAs they induce.

Generators are stored as A = (I; M): identity X part and a Z part M built
from cup products. The conjugate family is Abar = (I; Mbar); invertibility is
witnessed by H = (A | Abar) together with an explicit inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cochain
from .equivalence import square_root_of_minus_one, sum_of_two_squares_minus_one
from .qca import InvalidSpecError, _check_zp
from .ring import LaurentPoly, mod_inverse
from .symplectic import (PolyMatrix, SymplecticMap, monomial_inverse, pairing_matrix,
                         unit_inverse)


@dataclass
class IsaPair:
    kind: str
    dim: int
    modulus: int
    m: PolyMatrix
    m_bar: PolyMatrix
    m_inv: PolyMatrix | None = None
    k: int | None = None

    @property
    def q(self) -> int:
        return self.m.nrows

    def _stack(self, z: PolyMatrix) -> PolyMatrix:
        return PolyMatrix.vstack([PolyMatrix.identity(self.q, self.modulus, self.dim), z])

    @property
    def a(self) -> PolyMatrix:
        return self._stack(self.m)

    @property
    def a_bar(self) -> PolyMatrix:
        return self._stack(self.m_bar)

    @property
    def h(self) -> PolyMatrix:
        return PolyMatrix.hstack([self.a, self.a_bar])

    def h_inverse(self) -> PolyMatrix | None:
        """Closed form when Mbar = -M and M^-1 is known, else the adjugate of Mbar - M."""
        p = self.modulus
        eye = PolyMatrix.identity(self.q, p, self.dim)
        if self.m_inv is not None and self.m_bar == -self.m:
            half = mod_inverse(2, p)
            return PolyMatrix.block([[eye, self.m_inv], [eye, -self.m_inv]]).scale(half)
        gap = self.m_bar - self.m
        gap_inv = _structured_inverse(gap)
        if gap_inv is None:
            try:
                gap_inv = unit_inverse(gap)
            except ValueError:
                return None
        # H = [[I, I], [M, Mbar]] with Mbar - M invertible
        return PolyMatrix.block([[eye + gap_inv @ self.m, -gap_inv],
                                 [-(gap_inv @ self.m), gap_inv]])

    def commutation(self) -> PolyMatrix:
        """All pairings between A and Abar columns; zero for a valid pair."""
        return pairing_matrix(self.a, self.a_bar)


def _structured_inverse(gap: PolyMatrix) -> PolyMatrix | None:
    """Inverse of [[D, B], [A, D]] with A, B monomial and D B^-1 D = D A^-1 D = 0.

    This is the shape of Mbar - M for the Z2 pairs; the candidate
    [[-A^-1 D B^-1, A^-1], [B^-1, -B^-1 D A^-1]] is checked before use.
    """
    if gap.nrows != gap.ncols or gap.nrows % 2:
        return None
    n = gap.nrows // 2
    lo, hi = range(n), range(n, 2 * n)
    d, b, a = gap.submatrix(lo, lo), gap.submatrix(lo, hi), gap.submatrix(hi, lo)
    if gap.submatrix(hi, hi) != d:
        return None
    try:
        a_inv, b_inv = monomial_inverse(a), monomial_inverse(b)
    except ValueError:
        return None
    cand = PolyMatrix.block([[-(a_inv @ d @ b_inv), a_inv], [b_inv, -(b_inv @ d @ a_inv)]])
    return cand if (gap @ cand).is_identity() else None


def _z2_parts(dim: int, deg: int, modulus: int):
    m_ee = cochain.cup(dim, deg, deg, 0, modulus)
    m_fe1 = cochain.cup(dim, deg + 1, deg, 1, modulus)
    m_ef1 = cochain.cup(dim, deg, deg + 1, 1, modulus)
    delta = cochain.coboundary_matrix(dim, deg, modulus)
    return m_ee, m_fe1, m_ef1, delta


def _z2_isa(l: int) -> IsaPair:
    dim, deg = 2 * l, l
    m_ee, m_fe1, m_ef1, delta = _z2_parts(dim, deg, 2)
    hop = m_ee.dagger()
    dt = delta.dagger()
    zero = PolyMatrix.zeros(hop.nrows, hop.ncols, 2, dim)
    m = PolyMatrix.block([[hop + dt @ m_fe1, hop],
                          [zero, hop + dt @ m_ef1.dagger()]])
    m_bar = PolyMatrix.block([[hop + dt @ m_ef1.dagger(), zero],
                              [m_ee, hop + dt @ m_fe1]])
    return IsaPair("Z2", dim, 2, m, m_bar)


def build_z2_isa_2d() -> IsaPair:
    """Two qubits per edge of the square lattice."""
    return _z2_isa(1)


def z2_flux_witness(pair: IsaPair | None = None) -> tuple[PolyMatrix, PolyMatrix]:
    """(A^A + Abar^A) delta_{e,v} M_{f cup v} next to the B-species flux column.

    The two agree on the square lattice, so the B flux is generated by the pair.
    """
    pair = pair or build_z2_isa_2d()
    q = pair.q
    half = q // 2
    cols = range(half)
    summed = pair.a.submatrix(range(2 * q), cols) + pair.a_bar.submatrix(range(2 * q), cols)
    d_low = cochain.coboundary_matrix(pair.dim, 0, 2)
    m_fv = cochain.cup(pair.dim, pair.dim, 0, 0, 2)
    d_up = cochain.coboundary_matrix(pair.dim, 1, 2)
    flux = PolyMatrix.vstack([PolyMatrix.zeros(q + half, d_up.nrows, 2, pair.dim), d_up.dagger()])
    return summed @ d_low @ m_fv, flux


def zp_isa_matrix(dim: int, deg: int, p: int, k: int) -> PolyMatrix:
    """M = k M_{e0 cup e} + (k/2)(M^dagger_{e cup_1 delta e0} - M_{delta e0 cup_1 e})."""
    m_ee, m_fe1, m_ef1, delta = _z2_parts(dim, deg, p)
    half = mod_inverse(2, p)
    dt = delta.dagger()
    corr = dt @ m_ef1.dagger() - dt @ m_fe1
    return m_ee.scale(k) + corr.scale(k * half % p)


def zp_isa_inverse(dim: int, deg: int, p: int, k: int) -> PolyMatrix:
    """(1/k) [I - (1/2) delta_{e,v} (M^dagger_{v cup f})^-1 N] (M_{e0 cup e})^-1.

    N = M^dagger_{e cup_1 f} - M_{f cup_1 e}; v and f are the cells one degree
    below and above the qudit cells, paired by a monomial cup-0 matrix.
    """
    m_ee, m_fe1, m_ef1, _ = _z2_parts(dim, deg, p)
    half = mod_inverse(2, p)
    d_low = cochain.coboundary_matrix(dim, deg - 1, p)
    m_vf = cochain.cup(dim, deg - 1, deg + 1, 0, p)
    n = m_ef1.dagger() - m_fe1
    eye = PolyMatrix.identity(m_ee.nrows, p, dim)
    inner = eye - (d_low @ monomial_inverse(m_vf.dagger()) @ n).scale(half)
    return (inner @ monomial_inverse(m_ee)).scale(mod_inverse(k, p))


def _zp_isa(l: int, p: int, k: int) -> IsaPair:
    _check_zp(p, k)
    dim, deg = 4 * l - 2, 2 * l - 1
    k %= p
    m = zp_isa_matrix(dim, deg, p, k)
    return IsaPair("Zp", dim, p, m, zp_isa_matrix(dim, deg, p, -k % p),
                   zp_isa_inverse(dim, deg, p, k), k)


def build_zp_isa_2d(p: int, k: int) -> IsaPair:
    """One Z_p qudit per edge of the square lattice."""
    return _zp_isa(1, p, k)


def build_isa_higher(kind: str, l: int, p: int | None = None, k: int | None = None) -> IsaPair:
    """Z2 in 2l dimensions (qubits on l-cells), Zp in 4l-2 dimensions (qudits on (2l-1)-cells)."""
    if l < 1:
        raise InvalidSpecError(f"l must be at least 1, got {l}")
    kind = kind.upper()
    if kind == "Z2":
        return _z2_isa(l)
    if kind == "ZP":
        return _zp_isa(l, p, k)
    raise InvalidSpecError(f"unknown ISA kind {kind!r}")


def charge_conjugation_witness(pair: IsaPair) -> SymplecticMap:
    """diag(a I, -a I) with a^2 = -1, mapping A to Abar up to right multiplication."""
    a = square_root_of_minus_one(pair.modulus)
    if a is None:
        raise InvalidSpecError(f"-1 is not a square mod {pair.modulus}")
    q = pair.q
    return SymplecticMap(PolyMatrix.diagonal([a] * q + [-a] * q, pair.modulus, pair.dim))


def induced_qca(p: int, k: int, m: LaurentPoly, l: int = 1) -> SymplecticMap:
    """H diag(m, 1) H^-1 followed by the charge-conjugation square root.

    For p = 1 mod 4 this acts on one copy; otherwise on two copies mixed by
    (a, b) with a^2 + b^2 = -1, laid out as (X1, X2, Z1, Z2).
    """
    if not m.is_monomial():
        raise ValueError(f"{m} is not a monomial")
    pair = _zp_isa(l, p, k)
    q, dim = pair.q, pair.dim
    if m.dim != dim or m.modulus != p:
        raise ValueError(f"monomial must live in Z_{p} with {dim} variables")
    h, h_inv = pair.h, pair.h_inverse()
    eye = PolyMatrix.identity(q, p, dim)
    zero = PolyMatrix.zeros(q, q, p, dim)
    mid = PolyMatrix.block([[eye.scale(m), zero], [zero, eye]])
    core = h @ mid @ h_inv
    a = square_root_of_minus_one(p)
    if a is not None:
        c = PolyMatrix.diagonal([-a] * q + [a] * q, p, dim)
        return SymplecticMap(core @ c)
    a, b = sum_of_two_squares_minus_one(p)
    # per-copy layout (X1, Z1, X2, Z2)
    two = PolyMatrix.block([[core, PolyMatrix.zeros(2 * q, 2 * q, p, dim)],
                            [PolyMatrix.zeros(2 * q, 2 * q, p, dim), core]])
    c = PolyMatrix.block([[eye.scale(a), zero, eye.scale(b), zero],
                          [zero, eye.scale(-a), zero, eye.scale(-b)],
                          [eye.scale(b), zero, eye.scale(-a), zero],
                          [zero, eye.scale(-b), zero, eye.scale(a)]])
    perm = _copy_to_xz_order(q, p, dim)
    return SymplecticMap(perm @ two @ c @ perm.transpose())


def _copy_to_xz_order(q: int, p: int, dim: int) -> PolyMatrix:
    """Permutation from (X1, Z1, X2, Z2) to (X1, X2, Z1, Z2)."""
    out = PolyMatrix(4 * q, 4 * q, p, dim)
    target = {0: 0, 1: 2, 2: 1, 3: 3}
    for blk in range(4):
        for i in range(q):
            out[target[blk] * q + i, blk * q + i] = 1
    return out
