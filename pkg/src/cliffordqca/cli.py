"""Command-line front end: construct, verify, certify and export.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors. Output is deterministic for a fixed command line.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import cochain, equivalence, isa, lattice, qca
from .ring import IncompatibleRingError, InvalidModulusError, LaurentPoly, parse_poly
from .symplectic import PolyMatrix, SymplecticMap, standard_form

FAMILY_CHOICES = ("3f", "zp", "zp-alpha", "zp-beta")


class UsageError(Exception):
    pass


class Report:
    """Collects named checks; the first failure carries its counterexample."""

    def __init__(self, subject: str):
        self.subject = subject
        self.checks: list[dict] = []

    def check(self, name: str, got: PolyMatrix, want: PolyMatrix) -> bool:
        diff = got.first_difference(want)
        entry = {"check": name, "ok": diff is None}
        if diff is not None:
            i, j, g, w = diff
            entry["first_failure"] = {"row": i, "col": j, "expected": w.render(), "got": g.render()}
        self.checks.append(entry)
        return diff is None

    def flag(self, name: str, ok: bool, detail: str | None = None) -> bool:
        entry = {"check": name, "ok": bool(ok)}
        if detail and not ok:
            entry["detail"] = detail
        self.checks.append(entry)
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": self.checks}

    def to_text(self) -> str:
        lines = [f"{self.subject}:"]
        for c in self.checks:
            line = f"  {'ok  ' if c['ok'] else 'FAIL'} {c['check']}"
            if "first_failure" in c:
                f = c["first_failure"]
                line += f" at ({f['row']}, {f['col']}): expected {f['expected']}, got {f['got']}"
            elif "detail" in c:
                line += f": {c['detail']}"
            lines.append(line)
        lines.append("verified" if self.ok else "verification FAILED")
        return "\n".join(lines)


def _family(name: str) -> str:
    return "zp-alpha" if name == "zp" else name


def spec_from_args(args) -> qca.QcaSpec:
    family = _family(args.family)
    if family == "3f":
        dim = args.dim if args.dim is not None else (2 * args.l - 1 if args.l else 3)
        return qca.QcaSpec("3f", dim, 2, l=args.l)
    if args.p is None:
        raise UsageError(f"--p is required for family {args.family}")
    k = 1 if args.k is None else args.k
    dim = args.dim if args.dim is not None else (4 * args.l - 1 if args.l else 3)
    return qca.QcaSpec(family, dim, args.p, k=k, l=args.l)


def _lengths(text: str | None, dim: int) -> tuple[int, ...]:
    if text is None:
        raise UsageError("--L is required, e.g. --L 4,4,4")
    try:
        lengths = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--L expects comma-separated integers, got {text!r}") from None
    if len(lengths) == 1 and dim > 1:
        lengths = lengths * dim
    if len(lengths) != dim:
        raise UsageError(f"--L has {len(lengths)} lengths for a {dim}-dimensional lattice")
    return lengths


def _emit_matrix(args, m: PolyMatrix, title: str, q: int | None = None) -> str:
    if args.format == "json":
        data = m.to_json(q=q)
        data["name"] = title
        return json.dumps(data, sort_keys=True)
    return f"{title} ({m.nrows}x{m.ncols}, d={m.modulus})\n{m.render()}"


def cmd_construct(args) -> tuple[str, int]:
    spec = spec_from_args(args)
    theta = qca.build(spec)
    title = f"{spec.family} D={spec.dim} p={spec.modulus}" + (f" k={spec.k}" if spec.k else "")
    return _emit_matrix(args, theta.matrix, title, q=theta.q), 0


def verify_qca(spec: qca.QcaSpec, theta: SymplecticMap | None = None) -> Report:
    theta = theta or qca.build(spec)
    m = theta.matrix
    rep = Report(f"{spec.family} D={spec.dim} p={spec.modulus}" + (f" k={spec.k}" if spec.k else ""))
    lam = standard_form(theta.q, theta.modulus, theta.dim)
    rep.check("symplectic", m.dagger() @ lam @ m, lam)
    if spec.family == "3f":
        rep.check("squares to identity", m @ m, PolyMatrix.identity(m.nrows, 2, m.dim))
    elif spec.family == "zp-alpha":
        u = qca.hopping_column(spec.modulus, spec.k, spec.l)
        rep.check("hopping operator fixed", m @ u, u)
        flux = qca.flux_column(spec.modulus, spec.l)
        rep.check("flux operator fixed", m @ flux, flux)
    else:
        u = qca.hopping_column(spec.modulus, -spec.k, spec.l)
        rep.check("hopping operator U^(-k) fixed", m @ u, u)
    return rep


def _cochain_report(max_dim: int) -> Report:
    rep = Report(f"cup calculus D <= {max_dim}")
    for dim in range(1, max_dim + 1):
        for p, i in cochain.leibniz_cases(dim):
            rep.flag(f"Leibniz D={dim} p={p} i={i}", cochain.verify_cup_leibniz(dim, p, i))
        for p in range(dim - 1):
            rep.flag(f"delta^2 = 0 D={dim} p={p}", cochain.verify_chain_complex(dim, p))
    return rep


def cmd_verify(args) -> tuple[str, int]:
    if args.all:
        specs = [qca.QcaSpec("3f", 3, 2), qca.QcaSpec("3f", 5, 2)]
        specs += [qca.QcaSpec(f, 3, p, k=1) for f in ("zp-alpha", "zp-beta") for p in (3, 5, 7)]
        reports = [verify_qca(s) for s in specs] + [_cochain_report(4)]
    else:
        if args.family is None:
            raise UsageError("verify needs --family or --all")
        reports = [verify_qca(spec_from_args(args))]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        out = json.dumps({"ok": ok, "reports": [r.to_json() for r in reports]}, sort_keys=True)
    else:
        out = "\n".join(r.to_text() for r in reports)
    return out, 0 if ok else 1


def _shift_text(shift) -> str:
    cells = []
    for exp, c in shift:
        mono = LaurentPoly.monomial(exp, 1, 2).render() if any(exp) else "1"
        cells.append(("−" if c < 0 else "") + mono)
    return "diag(" + ", ".join(cells) + ")"


def cmd_order(args) -> tuple[str, int]:
    family = _family(args.family or "")
    if family == "3f":
        spec = spec_from_args(args)
        theta = qca.build(spec)
        rep = Report(f"3f D={spec.dim}")
        rep.check("theta^2 = identity", equivalence.power(theta, 2).matrix,
                  PolyMatrix.identity(theta.matrix.nrows, 2, spec.dim))
        if args.format == "json":
            return json.dumps({"order": 2, **rep.to_json()}, sort_keys=True), 0 if rep.ok else 1
        return (f"order 2; shift none; certificate {'verified' if rep.ok else 'FAILED'}"
                + ("" if rep.ok else "\n" + rep.to_text())), 0 if rep.ok else 1
    if family != "zp-alpha":
        raise UsageError("order supports --family 3f or zp")
    if args.p is None:
        raise UsageError("--p is required for family zp")
    cert = equivalence.zp_order_certificate(args.p, 1 if args.k is None else args.k)
    problems = equivalence.certificate_failures(cert)
    ok = not problems
    if args.format == "json":
        data = cert.to_json(verified=ok)
        data["failures"] = problems
        return json.dumps(data, sort_keys=True), 0 if ok else 1
    shift = equivalence.is_monomial_shift(cert.shift)
    lines = [f"order {cert.order}; shift {_shift_text(shift) if shift else 'none'}; "
             f"certificate {'verified' if ok else 'FAILED'}"]
    if cert.parameters:
        lines.append("copies " + str(cert.copies) + "; "
                     + ", ".join(f"{k}={v}" for k, v in sorted(cert.parameters.items())))
    lines += [f"  {msg}" for msg in problems]
    return "\n".join(lines), 0 if ok else 1


def cmd_cup(args) -> tuple[str, int]:
    if args.dim is None or args.p is None:
        raise UsageError("cup needs --dim and --p (the column degree)")
    i = args.i or 0
    modulus = args.modulus or cochain.CHECK_MODULUS
    try:
        spec = cochain.CupSpec(args.dim, args.p, i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    m = cochain.cup_matrix(spec, modulus)
    title = f"M cup_{i}: degree {spec.row_degree} x degree {args.p} in D={args.dim}"
    return _emit_matrix(args, m, title), 0


def _isa_pair(args) -> isa.IsaPair:
    kind = (args.kind or "").upper()
    l = args.l or 1
    if kind == "Z2":
        return isa.build_isa_higher("Z2", l)
    if kind == "ZP":
        if args.p is None:
            raise UsageError("--p is required for --kind zp")
        return isa.build_isa_higher("Zp", l, args.p, 1 if args.k is None else args.k)
    raise UsageError("isa needs --kind z2 or --kind zp")


def cmd_isa(args) -> tuple[str, int]:
    pair = _isa_pair(args)
    rep = Report(f"{pair.kind} ISA D={pair.dim} p={pair.modulus}" + (f" k={pair.k}" if pair.k else ""))
    rep.flag("generators commute with conjugates", pair.commutation().is_zero())
    if pair.kind == "Z2":
        rep.check("M^dagger = Mbar", pair.m.dagger(), pair.m_bar)
    h_inv = pair.h_inverse()
    eye = PolyMatrix.identity(2 * pair.q, pair.modulus, pair.dim)
    if h_inv is None:
        rep.flag("H invertible", False, "no inverse witness")
    else:
        rep.check("H H^-1 = I", pair.h @ h_inv, eye)
        rep.check("H^-1 H = I", h_inv @ pair.h, eye)
    if args.m is not None:
        if pair.kind != "Zp":
            raise UsageError("--m applies to --kind zp")
        m = parse_poly(args.m, pair.modulus, pair.dim)
        if not m.is_monomial():
            raise UsageError(f"--m must be a monomial, got {args.m!r}")
        theta = isa.induced_qca(pair.modulus, pair.k, m, args.l or 1)
        lam = standard_form(theta.q, theta.modulus, theta.dim)
        rep.check("induced QCA symplectic", theta.matrix.dagger() @ lam @ theta.matrix, lam)
        n = theta.matrix.nrows
        rep.check("induced QCA squares to -m", (theta @ theta).matrix,
                  PolyMatrix.identity(n, pair.modulus, pair.dim).scale(-m))
    if args.format == "json":
        data = rep.to_json()
        data["M"] = pair.m.to_json()
        return json.dumps(data, sort_keys=True), 0 if rep.ok else 1
    return f"{rep.to_text()}\nM =\n{pair.m.render()}", 0 if rep.ok else 1


def _instantiated(args):
    spec = spec_from_args(args)
    theta = qca.build(spec)
    lengths = _lengths(args.L, spec.dim)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", lattice.WrapWarning)
        e = lattice.instantiate(theta, lengths)
    wrapped = any(issubclass(w.category, lattice.WrapWarning) for w in caught)
    return spec, theta, lengths, e, wrapped


def cmd_instantiate(args) -> tuple[str, int]:
    spec, theta, lengths, e, wrapped = _instantiated(args)
    rep = Report(f"{spec.family} on torus {'x'.join(map(str, lengths))} over Z_{spec.modulus}")
    rep.flag("symplectic", lattice.is_symplectic_explicit(e))
    if spec.family == "3f":
        rep.flag("squares to identity", (e @ e).is_identity())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", lattice.WrapWarning)
        rep.flag("separators commute", lattice.stabilizer_commutation(theta, lengths))
    radius = lattice.locality_radius(theta)
    if args.format == "json":
        data = rep.to_json()
        data.update({"shape": list(e.shape), "nnz": e.nnz(), "radius": radius, "wrapped": wrapped})
        return json.dumps(data, sort_keys=True), 0 if rep.ok else 1
    head = f"{e.shape[0]}x{e.shape[1]}, {e.nnz()} nonzeros, radius {radius}"
    if wrapped:
        head += " (torus smaller than 2r+1: wrapped)"
    return f"{head}\n{rep.to_text()}", 0 if rep.ok else 1


def cmd_export(args) -> tuple[str, int]:
    _, _, _, e, _ = _instantiated(args)
    return e.export_coo().rstrip("\n"), 0


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "order": cmd_order,
    "cup": cmd_cup,
    "isa": cmd_isa,
    "instantiate": cmd_instantiate,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffordqca",
                                     description="Exact Clifford QCA constructions and checks.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", choices=FAMILY_CHOICES)
            p.add_argument("--k", type=int)
            p.add_argument("--l", type=int)
        p.add_argument("--dim", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output")

    common(sub.add_parser("construct", help="print a QCA matrix"))
    v = sub.add_parser("verify", help="check a QCA's identities")
    common(v)
    v.add_argument("--all", action="store_true")
    common(sub.add_parser("order", help="order certificate"))
    c = sub.add_parser("cup", help="print a cup-product matrix")
    common(c, family=False)
    c.add_argument("--i", type=int, default=0)
    c.add_argument("--modulus", type=int)
    s = sub.add_parser("isa", help="invertible subalgebra checks")
    common(s, family=False)
    s.add_argument("--kind", choices=("z2", "zp", "Z2", "Zp"))
    s.add_argument("--k", type=int)
    s.add_argument("--l", type=int)
    s.add_argument("--m", help="shift monomial for the induced QCA, e.g. x or x^2y")
    for verb in ("instantiate", "export"):
        t = sub.add_parser(verb, help="finite-torus " + ("checks" if verb == "instantiate" else "coordinate list"))
        common(t)
        t.add_argument("--L", help="torus lengths, e.g. 4,4,4")
    return parser


def run(args: argparse.Namespace) -> tuple[str, int]:
    if getattr(args, "family", None) is None and args.verb in ("construct", "instantiate", "export"):
        raise UsageError(f"{args.verb} needs --family")
    return COMMANDS[args.verb](args)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = run(args)
    except (UsageError, qca.InvalidSpecError, InvalidModulusError, IncompatibleRingError,
            ValueError) as exc:
        print(f"cliffordqca: error: {exc}", file=sys.stderr)
        return 2
    except equivalence.CertificateError as exc:
        print(f"cliffordqca: certificate failed: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
