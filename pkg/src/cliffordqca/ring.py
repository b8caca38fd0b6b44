"""Sparse Laurent polynomials over Z_d in D commuting variables.

A polynomial is a mapping from exponent tuples to nonzero residues 0..d-1.
Values are immutable; all operations return new objects.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_BAR = "̄"


class IncompatibleRingError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class InvalidModulusError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def mod_inverse(c: int, p: int) -> int:
    """Inverse of c modulo the prime p, in 1..p-1."""
    if not is_prime(p):
        raise InvalidModulusError(f"modulus {p} is not prime")
    if c % p == 0:
        raise NotInvertibleError(f"{c} is not invertible mod {p}")
    return pow(c, -1, p)


@lru_cache(maxsize=None)
def variable_names(dim: int) -> tuple[str, ...]:
    if dim == 1:
        return ("x",)
    if dim == 2:
        return ("x", "y")
    if dim == 3:
        return ("x", "y", "z")
    if dim == 5:
        return ("a", "b", "c", "d", "e")
    return tuple(f"x{i + 1}" for i in range(dim))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(u + v for u, v in zip(a, b))


class LaurentPoly:
    """Element of Z_d[x_1^±, ..., x_D^±]."""

    __slots__ = ("modulus", "dim", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]],
                 modulus: int, dim: int):
        if modulus < 2:
            raise InvalidModulusError(f"modulus must be >= 2, got {modulus}")
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise IncompatibleRingError(f"exponent {exp} does not have length {dim}")
            acc[exp] = (acc.get(exp, 0) + c) % modulus
        self.modulus = modulus
        self.dim = dim
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], modulus: int, dim: int) -> LaurentPoly:
        # terms must already be reduced and free of zeros
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, modulus: int, dim: int) -> LaurentPoly:
        return cls._raw({}, modulus, dim)

    @classmethod
    def one(cls, modulus: int, dim: int) -> LaurentPoly:
        return cls.monomial((0,) * dim, 1, modulus)

    @classmethod
    def constant(cls, c: int, modulus: int, dim: int) -> LaurentPoly:
        return cls({(0,) * dim: c}, modulus, dim)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int, modulus: int) -> LaurentPoly:
        return cls({tuple(exp): coeff}, modulus, len(exp))

    @classmethod
    def variable(cls, index: int, modulus: int, dim: int, power: int = 1) -> LaurentPoly:
        exp = [0] * dim
        exp[index] = power
        return cls.monomial(exp, 1, modulus)

    # accessors

    @property
    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical (lexicographic exponent) order."""
        return sorted(self._terms.items())

    def coeff(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit_monomial(self) -> bool:
        """Single term whose coefficient is +1 or -1."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c == 1 or c == self.modulus - 1

    def is_one(self) -> bool:
        return self._terms == {(0,) * self.dim: 1}

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.dim, 0)

    # arithmetic

    def _check(self, other: LaurentPoly) -> None:
        if self.modulus != other.modulus or self.dim != other.dim:
            raise IncompatibleRingError(
                f"ring mismatch: Z_{self.modulus} in {self.dim} vars vs "
                f"Z_{other.modulus} in {other.dim} vars")

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.modulus, self.dim)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.modulus
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = (out.get(e, 0) + c) % d
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, d, self.dim)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        d = self.modulus
        return LaurentPoly._raw({e: d - c for e, c in self._terms.items()}, d, self.dim)

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def scale(self, c: int) -> LaurentPoly:
        d = self.modulus
        c %= d
        if c == 0:
            return LaurentPoly._raw({}, d, self.dim)
        out = {}
        for e, v in self._terms.items():
            w = (v * c) % d
            if w:
                out[e] = w
        return LaurentPoly._raw(out, d, self.dim)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        d = self.modulus
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({}, d, self.dim)
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(u + v for u, v in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c % d for e, c in out.items() if c % d}, d, self.dim)

    def __rmul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        return LaurentPoly._raw({_add_exp(e, exp): c for e, c in self._terms.items()},
                                self.modulus, self.dim)

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise NotInvertibleError("only monomials have negative powers")
            (e, c), = self._terms.items()
            cinv = pow(c, -1, self.modulus)
            base = LaurentPoly({tuple(-v for v in e): cinv}, self.modulus, self.dim)
            return base ** (-n)
        result = LaurentPoly.one(self.modulus, self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def antipode(self) -> LaurentPoly:
        """x^e -> x^-e on every term."""
        return LaurentPoly._raw({tuple(-v for v in e): c for e, c in self._terms.items()},
                                self.modulus, self.dim)

    def reduce_torus(self, lengths: Sequence[int]) -> LaurentPoly:
        """Quotient by x_i^{L_i} = 1; exponents land in 0..L_i-1."""
        if len(lengths) != self.dim:
            raise IncompatibleRingError(
                f"torus has {len(lengths)} lengths, polynomial has {self.dim} variables")
        if any(n < 1 for n in lengths):
            raise ValueError(f"torus lengths must be positive: {tuple(lengths)}")
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            r = tuple(v % n for v, n in zip(e, lengths))
            out[r] = out.get(r, 0) + c
        d = self.modulus
        return LaurentPoly._raw({e: c % d for e, c in out.items() if c % d}, d, self.dim)

    def map_coefficients(self, modulus: int) -> LaurentPoly:
        """Reinterpret the canonical residues in another modulus."""
        return LaurentPoly(self._terms, modulus, self.dim)

    def exponent_norm(self) -> int:
        """Largest L-infinity norm among the exponents (0 for the zero polynomial)."""
        return max((max(map(abs, e), default=0) for e in self._terms), default=0)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.constant(other, self.modulus, self.dim)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.modulus == other.modulus and self.dim == other.dim
                and self._terms == other._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.modulus, self.dim, frozenset(self._terms.items())))
        return self._hash

    # rendering and serialization

    def signed_terms(self) -> list[tuple[Exponent, int]]:
        """Terms with coefficients lifted to the symmetric range around zero."""
        d = self.modulus
        return [(e, c - d if c > d // 2 else c) for e, c in self.terms]

    def render(self, names: Sequence[str] | None = None, signed: bool = True) -> str:
        names = names or variable_names(self.dim)
        if not self._terms:
            return "0"
        pieces = []
        items = self.signed_terms() if signed else self.terms
        for k, (e, c) in enumerate(items):
            mono = _render_monomial(e, names)
            mag = abs(c)
            body = mono if mono and mag == 1 else f"{mag}{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r}, d={self.modulus}, D={self.dim})"

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coeff": c} for e, c in self.terms]

    @classmethod
    def from_json(cls, data: list[dict], modulus: int, dim: int) -> LaurentPoly:
        return cls({tuple(t["exp"]): t["coeff"] for t in data}, modulus, dim)


def _render_monomial(exp: Exponent, names: Sequence[str]) -> str:
    out = []
    for name, v in zip(names, exp):
        if v == 0:
            continue
        sym = name if v > 0 else name + _BAR
        if abs(v) != 1:
            sym += str(abs(v)).translate(_SUPERSCRIPT)
        out.append(sym)
    return "".join(out)


def parse_poly(text: str, modulus: int, dim: int, names: Sequence[str] | None = None) -> LaurentPoly:
    """Parse a compact polynomial string such as ``"1 - xbar*z + 2y^-1"``.

    Terms are separated by + or -; factors inside a term by ``*`` or juxtaposition
    of single-letter variables. ``v^n`` raises to a (possibly negative) power and
    ``vbar`` or ``~v`` denotes the inverse of v.
    """
    import re

    names = tuple(names or variable_names(dim))
    index = {n: i for i, n in enumerate(names)}
    src = text.replace(" ", "").replace("−", "-")
    if not src:
        raise ValueError("empty polynomial")
    if src[0] not in "+-":
        src = "+" + src
    chunks = re.findall(r"[+-][^+-]*(?:\^-\d+[^+-]*)*", src)
    if "".join(chunks) != src:
        raise ValueError(f"cannot parse polynomial {text!r}")
    total = LaurentPoly.zero(modulus, dim)
    token = re.compile(r"(\d+)|(~?)([A-Za-z]\d*)(bar)?(?:\^(-?\d+))?|\*")
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:]
        coeff = 1
        exp = [0] * dim
        pos = 0
        while pos < len(body):
            m = token.match(body, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
            pos = m.end()
            if m.group(1):
                coeff *= int(m.group(1))
            elif m.group(3):
                name = m.group(3)
                if name not in index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                power = int(m.group(5)) if m.group(5) else 1
                if m.group(2) or m.group(4):
                    power = -power
                exp[index[name]] += power
        total = total + LaurentPoly({tuple(exp): sign * coeff}, modulus, dim)
    return total
