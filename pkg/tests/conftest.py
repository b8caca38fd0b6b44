import json
import re
from pathlib import Path

import pytest

from cliffordqca.ring import LaurentPoly, mod_inverse, parse_poly
from cliffordqca.symplectic import PolyMatrix

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name):
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def matrix(rows, modulus, dim=3, names=None):
    return PolyMatrix.from_rows([[parse_poly(s, modulus, dim, names) for s in r] for r in rows],
                                modulus, dim)


_TERM = re.compile(r"([+-]?)\s*([KHJ]?)([^+-]*)")


def symbolic_entry(text, p, k, dim=3):
    """Entries with coefficient tokens K = 1/(2k), H = 1/2, J = k/2."""
    values = {"K": mod_inverse(2 * k, p), "H": mod_inverse(2, p), "J": k * mod_inverse(2, p) % p, "": 1}
    total = LaurentPoly.zero(p, dim)
    for sign, token, mono in _TERM.findall(text.replace(" ", "")):
        if not (token or mono):
            continue
        term = parse_poly(mono or "1", p, dim).scale(values[token])
        total = total - term if sign == "-" else total + term
    return total


def symbolic_matrix(rows, p, k):
    return PolyMatrix.from_rows([[symbolic_entry(s, p, k) for s in r] for r in rows], p, 3)


@pytest.fixture(scope="session")
def printed_3d():
    return load_fixture("printed_3d.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
