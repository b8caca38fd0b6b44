import pytest

from cliffordqca import isa
from cliffordqca.qca import InvalidSpecError
from cliffordqca.ring import LaurentPoly, parse_poly
from cliffordqca.symplectic import PolyMatrix, compose, is_symplectic


def test_z2_conjugate_is_dagger():
    pair = isa.build_z2_isa_2d()
    assert pair.q == 4
    assert pair.m.dagger() == pair.m_bar


def test_z2_pairings_vanish():
    pair = isa.build_z2_isa_2d()
    comm = pair.commutation()
    assert comm.shape == (4, 4)
    assert comm.is_zero()


def test_z2_h_invertible():
    pair = isa.build_z2_isa_2d()
    h_inv = pair.h_inverse()
    assert (pair.h @ h_inv).is_identity()
    assert (h_inv @ pair.h).is_identity()


def test_z2_flux_generated():
    lhs, flux = isa.z2_flux_witness()
    assert lhs == flux
    assert not flux.is_zero()


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (5, 2), (7, 3)])
def test_zp_pair(p, k):
    pair = isa.build_zp_isa_2d(p, k)
    assert pair.commutation().is_zero()
    assert (pair.m @ pair.m_inv).is_identity()
    assert (pair.m_inv @ pair.m).is_identity()
    h_inv = pair.h_inverse()
    assert (pair.h @ h_inv).is_identity()
    assert (h_inv @ pair.h).is_identity()


def test_zp_conjugate_is_negative_level():
    pair = isa.build_zp_isa_2d(7, 2)
    assert pair.m_bar == isa.zp_isa_matrix(2, 1, 7, -2)
    assert pair.m_bar == -pair.m


def test_zp_inverse_matches_adjugate():
    m = isa.zp_isa_matrix(2, 1, 5, 1)
    from cliffordqca.symplectic import unit_inverse
    assert isa.zp_isa_inverse(2, 1, 5, 1) == unit_inverse(m)


@pytest.mark.parametrize("m", ["x", "y", "x^2y", "1"])
def test_induced_qca_one_copy(m):
    p = 5
    mono = parse_poly(m, p, 2)
    theta = isa.induced_qca(p, 1, mono)
    assert is_symplectic(theta)
    sq = compose(theta, theta)
    assert sq.matrix == PolyMatrix.identity(4, p, 2).scale(-mono)


def test_induced_qca_trivial_monomial():
    p, a = 5, 2
    theta = isa.induced_qca(p, 1, LaurentPoly.one(p, 2))
    assert theta.matrix == PolyMatrix.diagonal([-a] * 2 + [a] * 2, p, 2)


@pytest.mark.parametrize("p", [3, 7])
@pytest.mark.parametrize("m", ["x", "y"])
def test_induced_qca_two_copies(p, m):
    mono = parse_poly(m, p, 2)
    theta = isa.induced_qca(p, 1, mono)
    assert theta.q == 4
    assert is_symplectic(theta)
    assert compose(theta, theta).matrix == PolyMatrix.identity(8, p, 2).scale(-mono)


def test_charge_conjugation_witness():
    pair = isa.build_zp_isa_2d(5, 1)
    c = isa.charge_conjugation_witness(pair)
    assert is_symplectic(c)
    # c A = Abar a with a the square root of -1
    assert c.matrix @ pair.a == pair.a_bar.scale(2)
    with pytest.raises(InvalidSpecError):
        isa.charge_conjugation_witness(isa.build_zp_isa_2d(7, 1))


def test_higher_z2():
    pair = isa.build_isa_higher("z2", 2)
    assert pair.dim == 4
    assert pair.m.dagger() == pair.m_bar
    assert pair.commutation().is_zero()
    assert (pair.h @ pair.h_inverse()).is_identity()


def test_higher_zp():
    pair = isa.build_isa_higher("zp", 2, 3, 1)
    assert pair.dim == 6
    assert pair.commutation().is_zero()
    assert (pair.m @ pair.m_inv).is_identity()
    assert (pair.h_inverse() @ pair.h).is_identity()


def test_higher_specialises():
    assert isa.build_isa_higher("Z2", 1).m == isa.build_z2_isa_2d().m
    assert isa.build_isa_higher("Zp", 1, 5, 2).m == isa.build_zp_isa_2d(5, 2).m


def test_errors():
    with pytest.raises(ValueError):
        isa.induced_qca(5, 1, parse_poly("1+x", 5, 2))
    with pytest.raises(ValueError):
        isa.induced_qca(5, 1, parse_poly("x", 5, 3))
    with pytest.raises(InvalidSpecError):
        isa.build_isa_higher("z3", 1)
    with pytest.raises(InvalidSpecError):
        isa.build_isa_higher("z2", 0)
    with pytest.raises(InvalidSpecError):
        isa.build_zp_isa_2d(5, 0)
