"""Exact Clifford QCA constructions over Laurent polynomial rings."""

from .ring import LaurentPoly, parse_poly
from .symplectic import PauliColumn, PolyMatrix, SymplecticMap, compose, is_symplectic
from .qca import QcaSpec, build, build_3f_3d, build_3f_5d, build_z2_general, build_zp_alpha, \
    build_zp_beta, build_zp_general
from .isa import IsaPair, build_isa_higher, build_z2_isa_2d, build_zp_isa_2d, induced_qca
from .equivalence import OrderCertificate, power, separated_reduce, verify_certificate, \
    zp_order_certificate
from .lattice import ExplicitMap, instantiate, locality_radius, stabilizer_commutation

__version__ = "0.1.0"
