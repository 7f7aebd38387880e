"""Command-line front end.

Subcommands:

* ``verify-h3`` runs the whole derivation (degeneracy class, pushforward,
  kappa elimination, excess corrections, division by 8) and checks the
  result against the known class of the hyperelliptic locus.
* ``chern`` evaluates an expression of the Chern language against a setup
  config (built-in ``genus3`` and ``free32``, or a file).
* ``mult`` computes the multiplicity of a germ-matrix degeneracy ideal,
  from a built-in fixture or a matrix file.
* ``weierstrass`` reports jet ranks on a hyperelliptic curve.

Exit codes: 0 success/PASS, 1 FAIL or engine failure, 2 usage/parse error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import config, exprlang, family_model, jet_evaluator, local_multiplicity
from .fields import QQ, FieldCharTwo, PrimeField, QuadraticExtension


def _parse_field(text):
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        return PrimeField(int(text[3:]))
    if text.startswith("quadext:"):
        return QuadraticExtension(QQ, Fraction(text[8:]))
    raise argparse.ArgumentTypeError(
        "field must be q, fp:<prime> or quadext:<d>")


def _parse_override(text):
    label, _, value = text.partition("=")
    if not _ or label not in local_multiplicity.CASE_LABELS:
        raise argparse.ArgumentTypeError(
            "expected LABEL=MULT with LABEL one of %s"
            % ", ".join(local_multiplicity.CASE_LABELS))
    return label, int(value)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyperloc",
        description="exact intersection-theory toolkit for the genus-3 "
                    "hyperelliptic locus")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-h3", help="derive and check the locus class")
    p.add_argument("--smooth", action="store_true",
                   help="family without singular fibers")
    p.add_argument("--json", action="store_true")
    p.add_argument("--ledger-override", action="append", default=[],
                   type=_parse_override, metavar="LABEL=MULT",
                   help="force a ledger multiplicity (skips its germ check)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("chern", help="evaluate a Chern-language expression")
    p.add_argument("--config", default="genus3",
                   help="setup file path or built-in name (default genus3)")
    p.add_argument("--expr", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_chern)

    p = sub.add_parser("mult", help="multiplicity of a degeneracy germ")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", choices=local_multiplicity.CASE_LABELS)
    src.add_argument("--matrix", help="file with a 2x3 matrix of polynomials")
    p.add_argument("--cutoff", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=_parse_field, default=QQ)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_mult)

    p = sub.add_parser("weierstrass", help="jet ranks on y^2 = f(x)")
    p.add_argument("--f", required=True, metavar="POLY",
                   help="degree-8 polynomial in x, e.g. 'x^8 - 1'")
    p.add_argument("--field", type=_parse_field, default=QQ)
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--points", help="file of 'x y' or bare 'x' lines")
    where.add_argument("--scan-all", action="store_true",
                       help="every affine point (finite fields only)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_weierstrass)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (config.ConfigError, exprlang.ExprSyntaxError,
            exprlang.ExprTypeError, FieldCharTwo) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except (exprlang.ExprEvalError, local_multiplicity.UnstableAtCutoff,
            family_model.MultiplicityMismatch,
            jet_evaluator.PointNotOnCurve, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


# ---------------------------------------------------------------------------
# verify-h3


def _cmd_verify(args):
    smooth = args.smooth
    overrides = dict(args.ledger_override)
    report = {"mode": "smooth" if smooth else "stable"}
    lines = []
    ok = True

    d_det = family_model.degeneracy_class(smooth, route="porteous")
    d_quot = family_model.degeneracy_class(smooth, route="quotient")
    routes_agree = d_det == d_quot
    ok &= routes_agree
    report["degeneracy_class"] = str(d_det)
    report["routes_agree"] = routes_agree
    lines.append("degeneracy class      %s" % d_det)
    lines.append("  determinant / series-quotient routes agree: %s"
                 % ("yes" if routes_agree else "NO"))

    raw = family_model.proposition_4_raw(smooth)
    after = family_model.proposition_4(smooth)
    report["pushforward"] = str(raw)
    report["after_kappa"] = str(after)
    lines.append("pushforward           %s" % raw.pretty())
    lines.append("kappa substitution    %s" % after.pretty())

    if smooth:
        corrected = after
        expected = family_model.THEOREM_SMOOTH
    else:
        try:
            ledger = family_model.excess_ledger(overrides=overrides)
        except family_model.MultiplicityMismatch as e:
            print("\n".join(lines))
            print("excess ledger         FAILED: %s" % e)
            print("FAIL")
            return 1
        entry_bits = ["%s: %d x %d on %s" % (e.label, e.count, e.multiplicity,
                                             e.fiber)
                      for e in ledger.entries]
        report["ledger"] = [{"label": e.label, "fiber": e.fiber,
                             "count": e.count, "multiplicity": e.multiplicity}
                            for e in ledger.entries]
        report["ledger_totals"] = {"delta0": ledger.total("delta0"),
                                   "delta1": ledger.total("delta1")}
        lines.append("excess ledger         " + "; ".join(entry_bits))
        lines.append("  totals: delta0 -> %d, delta1 -> %d"
                     % (ledger.total("delta0"), ledger.total("delta1")))
        corrected = after - ledger.correction()
        expected = family_model.THEOREM_STABLE
    report["corrected"] = str(corrected)
    lines.append("corrected             %s" % corrected.pretty())

    try:
        result = corrected / 8
        if not result.is_integral():
            raise family_model.NonIntegralResult(
                "corrected class %s is not divisible by 8" % corrected, result)
    except family_model.NonIntegralResult as e:
        report["result"] = str(e.result)
        report["pass"] = False
        lines.append("divide by 8           %s  (NOT integral)"
                     % e.result.pretty())
        lines.append("FAIL")
        _emit(args, report, lines)
        return 1

    ok &= result == expected
    report["result"] = str(result)
    report["expected"] = str(expected)
    report["pass"] = bool(ok)
    lines.append("divide by 8           %s" % result.pretty())
    lines.append("expected              %s" % expected.pretty())
    if smooth:
        lines.append("[H] = %s" % result.pretty())
    else:
        lines.append("[H-bar] = %s" % result.pretty())
    lines.append("PASS" if ok else "FAIL")
    _emit(args, report, lines)
    return 0 if ok else 1


def _emit(args, report, lines):
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# chern


def _cmd_chern(args):
    setup = config.load_setup(args.config)
    ast = exprlang.parse(args.expr)
    value, vtype = exprlang.evaluate(ast, setup.env())
    if vtype == "rational":
        text = "%s*[C]" % value
    else:
        text = str(value)
    if args.json:
        out = {"expr": exprlang.render(ast), "type": vtype, "text": text}
        if vtype == "class":
            out["terms"] = {str(m): str(c) for m, c in value.terms.items()}
        if vtype == "baseclass":
            out["terms"] = {n: str(value.coefficient(n))
                            for n in family_model.BASE_NAMES
                            if value.coefficient(n)}
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(text)
    return 0


# ---------------------------------------------------------------------------
# mult


def _read_matrix_file(path, cutoff, field):
    variables = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if variables is None:
                if not line.startswith("vars:"):
                    raise config.ConfigError(
                        "%s:%d: expected 'vars: <x> <y>'" % (path, lineno))
                variables = line[5:].split()
                if len(variables) != 2:
                    raise config.ConfigError(
                        "%s:%d: exactly two variables" % (path, lineno))
                continue
            entries = [e.strip() for e in line.split("|")]
            if len(entries) != 3:
                raise config.ConfigError(
                    "%s:%d: expected three '|'-separated entries"
                    % (path, lineno))
            row = []
            for text in entries:
                poly = exprlang.eval_poly(exprlang.parse(text), variables)
                row.append(local_multiplicity.TruncSeries(
                    variables, field, cutoff, poly))
            rows.append(row)
    if variables is None or len(rows) != 2:
        raise config.ConfigError("%s: expected a vars line and two rows" % path)
    return local_multiplicity.GermMatrix(rows)


def _format_monomial(exps, variables):
    i, j = exps
    bits = []
    if i:
        bits.append(variables[0] if i == 1 else "%s^%d" % (variables[0], i))
    if j:
        bits.append(variables[1] if j == 1 else "%s^%d" % (variables[1], j))
    return "*".join(bits) if bits else "1"


def _cmd_mult(args):
    if args.field.char == 2:
        raise FieldCharTwo("characteristic 2 is not supported")
    if args.fixture:
        family = local_multiplicity.case_fixture(args.fixture)
        matrix = local_multiplicity.instantiate(
            family, args.seed, args.cutoff + 2, args.field)
        source = {"fixture": args.fixture, "seed": args.seed}
    else:
        matrix = _read_matrix_file(args.matrix, args.cutoff + 2, args.field)
        source = {"matrix": args.matrix}
    gens = local_multiplicity.minors(matrix)
    value = local_multiplicity.colength(gens, args.cutoff)
    basis = local_multiplicity.quotient_basis(gens, args.cutoff)
    basis_text = [_format_monomial(e, matrix.vars) for e in basis]
    if args.json:
        out = dict(source)
        out.update({"multiplicity": value, "cutoff": args.cutoff,
                    "field": repr(args.field), "quotient_basis": basis_text})
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print("multiplicity: %d" % value)
        print("quotient basis: %s" % ", ".join(basis_text))
    return 0


# ---------------------------------------------------------------------------
# weierstrass


def _curve_from_args(args):
    poly = exprlang.eval_poly(exprlang.parse(args.f), ["x"])
    degree = max((e[0] for e in poly), default=0)
    if degree != 8:
        raise config.ConfigError("f must have degree exactly 8, got %d" % degree)
    coeffs = [poly.get((i,), Fraction(0)) for i in range(9)]
    return jet_evaluator.HyperellipticCurve(coeffs, args.field)


def _read_points(path, curve):
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 1:
                points.append(curve.point_from_x(Fraction(parts[0])))
            elif len(parts) == 2:
                points.append(curve.point(Fraction(parts[0]),
                                          Fraction(parts[1])))
            else:
                raise config.ConfigError(
                    "%s:%d: expected 'x' or 'x y'" % (path, lineno))
    return points


def _cmd_weierstrass(args):
    curve = _curve_from_args(args)
    if args.scan_all:
        points = curve.all_affine_points()
    else:
        points = _read_points(args.points, curve)
    results = jet_evaluator.weierstrass_scan(curve, points)
    degenerate = sum(1 for _, r in results if r <= 1)
    if args.json:
        out = {"points": [{"x": str(p.x), "y": str(p.y), "rank": r}
                          for p, r in results],
               "degenerate": degenerate}
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for p, r in results:
            print("(%s, %s): rank %d" % (p.x, p.y, r))
        print("degenerate points (rank <= 1): %d" % degenerate)
    return 0


if __name__ == "__main__":
    sys.exit(main())
