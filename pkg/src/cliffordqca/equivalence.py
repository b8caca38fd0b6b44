"""Order certificates and the separated-form reduction.

Nothing here decides whether a QCA is trivial. A certificate is a list of
explicit factors (an on-site conjugator, circuit stages, a shift) whose
re-multiplication against powers of the target is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cochain
from .qca import QcaSpec, build_zp_alpha, _check_zp
from .ring import LaurentPoly, parse_poly
from .symplectic import (PolyMatrix, SymplecticMap, compose, direct_sum, is_symplectic,
                         standard_form)


class NotReducibleError(ValueError):
    pass


class CertificateError(RuntimeError):
    pass


# The cubic-lattice circuit relating alpha^(-k) alpha^(k) to a shift, and its
# four CNOT layers. The last row of the first layer is not tabulated in print;
# it is the identity row forced by the layer being unitriangular.
_U_TABLE = [
    ["1", "y-1", "1-z", "0", "0", "0"],
    ["~x-1", "y~x-~x-y", "~x-z~x", "0", "0", "0"],
    ["~x~y-~y", "~x-~x~y", "-z~x~y+~x~y+z", "0", "0", "0"],
    ["0", "0", "0", "-x~y~z+x+~y~z", "x~z-~z", "1-x"],
    ["0", "0", "0", "~y~z-~z", "y~z-y-~z", "1-y"],
    ["0", "0", "0", "~y~z-~y", "1-~z", "1"],
]

_U_STAGES = [
    [["1", "0", "0", "0", "0", "0"],
     ["0", "1", "0", "0", "0", "0"],
     ["~x-1", "1-~y", "1", "0", "0", "0"],
     ["0", "0", "0", "1", "0", "1-x"],
     ["0", "0", "0", "0", "1", "y-1"],
     ["0", "0", "0", "0", "0", "1"]],
    [["1", "0", "0", "0", "0", "0"],
     ["1-~x", "1", "0", "0", "0", "0"],
     ["0", "0", "1", "0", "0", "0"],
     ["0", "0", "0", "1", "x-1", "0"],
     ["0", "0", "0", "0", "1", "0"],
     ["0", "0", "0", "0", "0", "1"]],
    [["1", "0", "1-z", "0", "0", "0"],
     ["0", "1", "z-1", "0", "0", "0"],
     ["0", "0", "1", "0", "0", "0"],
     ["0", "0", "0", "1", "0", "0"],
     ["0", "0", "0", "0", "1", "0"],
     ["0", "0", "0", "~z-1", "1-~z", "1"]],
    [["1", "y-1", "0", "0", "0", "0"],
     ["0", "1", "0", "0", "0", "0"],
     ["0", "0", "1", "0", "0", "0"],
     ["0", "0", "0", "1", "0", "0"],
     ["0", "0", "0", "1-~y", "1", "0"],
     ["0", "0", "0", "0", "0", "1"]],
]

_U_SIGNS = (1, -1, 1, 1, -1, 1)


def _table(rows, p: int) -> PolyMatrix:
    return PolyMatrix.from_rows([[parse_poly(s, p, 3) for s in r] for r in rows], p, 3)


def circuit_u(p: int) -> SymplecticMap:
    return SymplecticMap(_table(_U_TABLE, p))


def circuit_stages(p: int) -> list[SymplecticMap]:
    """diag(1,-1,1,1,-1,1) followed by the four CNOT layers, leftmost first."""
    sign = SymplecticMap(PolyMatrix.diagonal(list(_U_SIGNS), p, 3))
    return [sign] + [SymplecticMap(_table(t, p)) for t in _U_STAGES]


def power(theta: SymplecticMap, n: int) -> SymplecticMap:
    if n < 0:
        raise ValueError(f"power needs n >= 0, got {n}")
    result = SymplecticMap.identity(theta.q, theta.modulus, theta.dim)
    base = theta
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def is_monomial_shift(theta: SymplecticMap | PolyMatrix) -> list[tuple[tuple[int, ...], int]] | None:
    """Per-row (exponent, signed coefficient) if theta is diagonal with unit monomials."""
    m = theta.matrix if isinstance(theta, SymplecticMap) else theta
    if m.nrows != m.ncols:
        return None
    out = []
    for i in range(m.nrows):
        row = m._rows[i]
        if set(row) != {i}:
            return None
        v = row[i]
        if not v.is_unit_monomial():
            return None
        (exp, c), = v.signed_terms()
        out.append((exp, c))
    return out


def is_elementary(stage: SymplecticMap, copies: int = 1) -> bool:
    """Unit diagonal, no X-Z mixing, and off-diagonal X couplings confined to one row or column.

    With several copies the stage must be block diagonal over copies and each
    copy must pass on its own.
    """
    xx, xz, zx, zz = stage.blocks()
    if not (xz.is_zero() and zx.is_zero()) or xx.nrows % copies:
        return False
    for i in range(xx.nrows):
        if not xx[i, i].is_one() or not zz[i, i].is_one():
            return False
    size = xx.nrows // copies
    off = [(i, j) for i, j, _ in xx.nonzero() if i != j]
    if any(i // size != j // size for i, j in off):
        return False
    for c in range(copies):
        mine = [(i, j) for i, j in off if i // size == c]
        if not mine:
            return False
        if len({i for i, _ in mine}) != 1 and len({j for _, j in mine}) != 1:
            return False
    return is_symplectic(stage)


def is_sign_stage(stage: SymplecticMap) -> bool:
    shift = is_monomial_shift(stage)
    if shift is None:
        return False
    return all(not any(e) for e, _ in shift) and is_symplectic(stage)


def square_root_of_minus_one(p: int) -> int | None:
    """Smallest a in 1..p-1 with a^2 = -1 mod p."""
    for a in range(1, p):
        if (a * a + 1) % p == 0:
            return a
    return None


def sum_of_two_squares_minus_one(p: int) -> tuple[int, int]:
    """Lexicographically smallest (a, b) with a^2 + b^2 = -1 mod p."""
    for a in range(p):
        for b in range(p):
            if (a * a + b * b + 1) % p == 0:
                return a, b
    raise CertificateError(f"no solution of a^2 + b^2 = -1 mod {p}")


def onsite_conjugator(p: int, q: int, dim: int = 3) -> tuple[SymplecticMap, tuple[int, ...]]:
    """The charge-conjugation square root c with c alpha^(k) c^-1 = alpha^(-k).

    One copy with diag(-a I, a I) when -1 is a square, otherwise two copies
    mixed by (a, b) with a^2 + b^2 = -1.
    """
    a = square_root_of_minus_one(p)
    if a is not None:
        diag = [-a] * q + [a] * q
        return SymplecticMap(PolyMatrix.diagonal(diag, p, dim)), (a,)
    a, b = sum_of_two_squares_minus_one(p)
    r = PolyMatrix.from_rows([[a, b], [b, -a]], p, dim)
    eye = PolyMatrix.identity(q, p, dim)
    mix = _kron(r, eye)
    zero = PolyMatrix.zeros(2 * q, 2 * q, p, dim)
    return SymplecticMap(PolyMatrix.block([[mix, zero], [zero, -mix]])), (a, b)


def _kron(small: PolyMatrix, big: PolyMatrix) -> PolyMatrix:
    out = PolyMatrix(small.nrows * big.nrows, small.ncols * big.ncols, big.modulus, big.dim)
    for i, j, v in small.nonzero():
        for a, b, w in big.nonzero():
            out[i * big.nrows + a, j * big.ncols + b] = v * w
    return out


@dataclass
class OrderCertificate:
    spec: QcaSpec
    conjugator: SymplecticMap | None
    stages: list[tuple[str, SymplecticMap]]
    shift: SymplecticMap
    order: int
    copies: int = 1
    parameters: dict = field(default_factory=dict)

    def circuit(self) -> SymplecticMap:
        out = SymplecticMap.identity(self.shift.q, self.shift.modulus, self.shift.dim)
        for _, s in self.stages:
            out = compose(out, s)
        return out

    def to_json(self, verified: bool | None = None) -> dict:
        shift = is_monomial_shift(self.shift)
        return {
            "family": self.spec.family,
            "p": self.spec.modulus,
            "k": self.spec.k,
            "copies": self.copies,
            "order": self.order,
            "parameters": self.parameters,
            "conjugator": self.conjugator.to_json() if self.conjugator else None,
            "stages": [{"kind": kind, "matrix": s.to_json()} for kind, s in self.stages],
            "shift": [{"exp": list(e), "coeff": c} for e, c in shift] if shift else None,
            "verified": verified,
        }


def special_pairing_holds(p: int) -> bool:
    """M^dagger_{e cup f0} M_{e cup f} = identity on the cubic lattice."""
    m = cochain.cup(3, 1, 2, 0, p)
    return (m.dagger() @ m).is_identity()


def zp_order_certificate(p: int, k: int) -> OrderCertificate:
    """Factor alpha^(-k) alpha^(k) (one or two copies) into circuit stages and a shift."""
    _check_zp(p, k)
    if not special_pairing_holds(p):
        raise CertificateError("edge-face cup pairing is not unitary; the tabulated circuit does not apply")
    q = 3
    conj, params = onsite_conjugator(p, q)
    copies = 1 if len(params) == 1 else 2
    stages = circuit_stages(p)
    kinds = ["sign"] + ["elementary"] * (len(stages) - 1)
    shift_m = cochain.cup(3, 1, 2, 0, p)
    shift = SymplecticMap.from_blocks(shift_m, PolyMatrix.zeros(q, q, p, 3),
                                      PolyMatrix.zeros(q, q, p, 3), shift_m)
    if copies == 2:
        stages = [direct_sum([s, s]) for s in stages]
        shift = direct_sum([shift, shift])
    named = {1: "a", 2: "b"}
    return OrderCertificate(
        spec=QcaSpec("zp-alpha", 3, p, k=k % p),
        conjugator=conj,
        stages=list(zip(kinds, stages)),
        shift=shift,
        order=2 * copies,
        copies=copies,
        parameters={named[i + 1]: v for i, v in enumerate(params)},
    )


def certificate_failures(cert: OrderCertificate) -> list[str]:
    """Every violated condition, empty when the certificate holds."""
    problems = []
    p, k = cert.spec.modulus, cert.spec.k
    alpha_k = build_zp_alpha(p, k)
    alpha_mk = build_zp_alpha(p, -k)
    if cert.copies == 2:
        alpha_k = direct_sum([alpha_k, alpha_k])
        alpha_mk = direct_sum([alpha_mk, alpha_mk])
    for n, (kind, stage) in enumerate(cert.stages):
        ok = is_elementary(stage, cert.copies) if kind == "elementary" else is_sign_stage(stage)
        if not ok:
            problems.append(f"stage {n} fails the {kind} shape predicate")
    if cert.conjugator is not None:
        conj = cert.conjugator
        if not is_symplectic(conj):
            problems.append("conjugator is not symplectic")
        elif compose(compose(conj, alpha_k), _onsite_inverse(conj)) != alpha_mk:
            problems.append("conjugator does not send alpha^(k) to alpha^(-k)")
    if is_monomial_shift(cert.shift) is None:
        problems.append("claimed shift is not a monomial shift")
    product = compose(compose(cert.circuit(), alpha_mk), alpha_k)
    diff = product.matrix.first_difference(cert.shift.matrix)
    if diff is not None:
        i, j, want, got = diff
        problems.append(f"U alpha^(-k) alpha^(k) differs from the shift at ({i}, {j}): "
                        f"expected {want}, got {got}")
    if cert.order != 2 * cert.copies:
        problems.append(f"claimed order {cert.order} does not match {cert.copies} copies")
    return problems


def _onsite_inverse(conj: SymplecticMap) -> SymplecticMap:
    lam = standard_form(conj.q, conj.modulus, conj.dim)
    return SymplecticMap(-(lam @ conj.matrix.dagger() @ lam))


def verify_certificate(cert: OrderCertificate) -> bool:
    return not certificate_failures(cert)


def separated_reduce(theta: SymplecticMap) -> tuple[SymplecticMap, SymplecticMap]:
    """Split a map with vanishing X-to-Z coupling as (diag(XX, ZZ), E).

    E = [[I, 0], [S, I]] with S = XX^dagger ZX, and S^dagger = S for symplectic
    input. The product of the two factors is theta.
    """
    xx, xz, zx, zz = theta.blocks()
    if not xz.is_zero():
        i, j, v = next(iter(xz.nonzero()))
        raise NotReducibleError(f"Theta^XZ is nonzero at ({i}, {j}): {v}")
    q, p, dim = theta.q, theta.modulus, theta.dim
    zero = PolyMatrix.zeros(q, q, p, dim)
    eye = PolyMatrix.identity(q, p, dim)
    separated = SymplecticMap.from_blocks(xx, zero, zero, zz)
    coupling = xx.dagger() @ zx
    elementary = SymplecticMap.from_blocks(eye, zero, coupling, eye)
    return separated, elementary


def is_separated(theta: SymplecticMap) -> bool:
    _, xz, zx, _ = theta.blocks()
    return xz.is_zero() and zx.is_zero()


def elementary_lower(coupling: PolyMatrix) -> SymplecticMap:
    """[[I, 0], [S, I]]; symplectic iff S^dagger = S."""
    q = coupling.nrows
    eye = PolyMatrix.identity(q, coupling.modulus, coupling.dim)
    zero = PolyMatrix.zeros(q, q, coupling.modulus, coupling.dim)
    return SymplecticMap.from_blocks(eye, zero, coupling, eye)


def shift_map(monomials: list[LaurentPoly]) -> SymplecticMap:
    """diag(m_i) on X blocks and diag(m_i) on Z blocks."""
    p, dim = monomials[0].modulus, monomials[0].dim
    return SymplecticMap(PolyMatrix.diagonal(list(monomials) * 2, p, dim))
