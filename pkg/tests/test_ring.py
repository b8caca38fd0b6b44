import pytest
from hypothesis import given, settings, strategies as st

from cliffordqca.ring import (IncompatibleRingError, InvalidModulusError, LaurentPoly,
                              NotInvertibleError, is_prime, mod_inverse, parse_poly)

MODULI = [2, 3, 5, 7]


def polys(modulus, dim=2, max_terms=4, span=3):
    exps = st.tuples(*[st.integers(-span, span)] * dim)
    return st.dictionaries(exps, st.integers(0, modulus - 1), max_size=max_terms).map(
        lambda t: LaurentPoly(t, modulus, dim))


def ring_triples(dim=2):
    return st.sampled_from(MODULI).flatmap(
        lambda d: st.tuples(polys(d, dim), polys(d, dim), polys(d, dim)))


def naive_product(a, b):
    out = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % a.modulus
    return LaurentPoly(out, a.modulus, a.dim)


def test_inverse_monomials():
    x = LaurentPoly.variable(0, 5, 2)
    assert (x * parse_poly("~x", 5, 2)).is_one()


def test_mod2_sign_collapse():
    assert parse_poly("1-x", 2, 1) * parse_poly("1+x", 2, 1) == parse_poly("1+x^2", 2, 1)


def test_expansion_matches_convolution():
    a, b = parse_poly("1-x", 5, 2), parse_poly("1-y", 5, 2)
    assert a * b == parse_poly("1-x-y+xy", 5, 2)
    assert a * b == naive_product(a, b)


def test_antipode_examples():
    assert parse_poly("x^2y^3", 7, 2).antipode() == parse_poly("~x^2~y^3", 7, 2)
    assert LaurentPoly.one(3, 2).antipode().is_one()


@pytest.mark.parametrize("c,p,want", [(2, 5, 3), (2, 7, 4), (3, 7, 5)])
def test_mod_inverse(c, p, want):
    assert mod_inverse(c, p) == want


def test_mod_inverse_of_zero():
    with pytest.raises(NotInvertibleError):
        mod_inverse(0, 5)


def test_reduce_torus_examples():
    x5 = parse_poly("x^5", 2, 1)
    assert x5.reduce_torus([4]) == parse_poly("x", 2, 1)
    assert parse_poly("~x", 2, 1).reduce_torus([4]) == parse_poly("x^3", 2, 1)
    assert parse_poly("x+x^3+x^5", 2, 1).reduce_torus([2]) == parse_poly("x", 2, 1)


def test_mismatched_rings():
    with pytest.raises(IncompatibleRingError):
        parse_poly("x", 3, 2) + parse_poly("x", 5, 2)
    with pytest.raises(IncompatibleRingError):
        parse_poly("x", 3, 2) * parse_poly("x", 3, 3)


def test_bad_modulus():
    with pytest.raises(InvalidModulusError):
        LaurentPoly({(0, 0): 1}, 1, 2)


def test_primality():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_render_and_parse_roundtrip():
    p = parse_poly("3~x~z + 2~x - y^2", 5, 3)
    assert parse_poly(p.render().replace("x̄", "~x").replace("ȳ", "~y").replace("z̄", "~z")
                      .replace("²", "^2"), 5, 3) == p


def test_json_roundtrip():
    p = parse_poly("1 - x~y + 4y^3", 7, 2)
    assert LaurentPoly.from_json(p.to_json(), 7, 2) == p


def test_monomial_powers():
    m = parse_poly("x~y", 5, 2)
    assert m ** -2 == parse_poly("~x^2y^2", 5, 2)
    with pytest.raises(NotInvertibleError):
        parse_poly("1+x", 5, 2) ** -1


@settings(max_examples=60, deadline=None)
@given(ring_triples())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(a.modulus, a.dim)
    assert a * b == naive_product(a, b)


@settings(max_examples=60, deadline=None)
@given(ring_triples())
def test_antipode_is_ring_involution(t):
    a, b, _ = t
    assert a.antipode().antipode() == a
    assert (a * b).antipode() == a.antipode() * b.antipode()
    assert (a + b).antipode() == a.antipode() + b.antipode()


@settings(max_examples=60, deadline=None)
@given(ring_triples(), st.tuples(st.integers(1, 5), st.integers(1, 5)))
def test_reduce_torus_is_homomorphism(t, lengths):
    a, b, _ = t
    assert (a * b).reduce_torus(lengths) == (
        a.reduce_torus(lengths) * b.reduce_torus(lengths)).reduce_torus(lengths)
    assert (a + b).reduce_torus(lengths) == a.reduce_torus(lengths) + b.reduce_torus(lengths)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(MODULI).flatmap(lambda d: polys(d)))
def test_canonical_coefficients(a):
    assert all(0 < c < a.modulus for _, c in a.terms)
