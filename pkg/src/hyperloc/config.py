"""Declarative setup files for the Chern expression language.

A setup declares a graded ring (generators in precedence order, rewrite
rules, truncation), bundles with their total Chern classes, pushforward
rules for degree-2 monomials, and an optional kappa substitution.  The
line-oriented text format:

    truncation 2
    [generators]
    N 2
    K 1
    [rules]
    K*X -> N
    pl*pl -> 0
    [bundles]
    E 3 = 1 + pl - pd1
    [pushforward]
    K*K -> kappa
    X*pd1 -> 0
    [subst]
    kappa -> 12*lambda - delta0 - delta1

A JSON mirror with keys truncation/generators/rules/bundles/pushforward/
subst is accepted as well.  Rule confluence is checked when the ring is
built; conflicting rules are a configuration error.
"""

import json
from importlib import resources

from . import exprlang
from .chern_calculus import ChernSeries
from .family_model import BASE_NAMES, DivisorClassOnS, PushforwardMap
from .graded_algebra import (Generator, Monomial, RewriteRule, check_confluence,
                             ring_new)


class ConfigError(ValueError):
    pass


BUILTIN_CONFIGS = ("genus3", "free32")


class SetupConfig:
    """Parsed setup; exposes the built ring, bundles and rules."""

    def __init__(self, truncation, generators, rules, bundles, pushforward,
                 subst):
        self.truncation = truncation
        self.generators = generators
        self.ring = ring_new([Generator(n, d) for n, d in generators],
                             rules, truncation)
        conflicts = check_confluence(self.ring)
        if conflicts:
            a, b = conflicts[0][0], conflicts[0][1]
            raise ConfigError("rewrite rules are not confluent: the overlap "
                              "of %s and %s reduces two ways" % (a, b))
        self.bundles = {}
        for name, (rank, raw) in bundles.items():
            total = self.ring.cls(raw)
            self.bundles[name] = ChernSeries.from_class(self.ring, rank, total)
        self.pushforward = PushforwardMap(pushforward) if pushforward else None
        self.subst = subst

    def env(self):
        return exprlang.Env(self.ring, self.bundles, self.pushforward,
                            self.subst)


def _poly_to_monomial_terms(poly, names):
    terms = {}
    for exps, coeff in poly.items():
        factors = []
        for name, e in zip(names, exps):
            factors.extend([name] * e)
        terms[Monomial(factors)] = coeff
    return terms


def _parse_poly(text, names, where):
    try:
        ast = exprlang.parse(text)
        poly = exprlang.eval_poly(ast, names)
    except (exprlang.ExprSyntaxError, exprlang.ExprTypeError) as e:
        raise ConfigError("%s: %s" % (where, e)) from e
    return _poly_to_monomial_terms(poly, names)


def _single_monomial(terms, where):
    if len(terms) != 1:
        raise ConfigError("%s: expected a single monomial" % where)
    (mono, coeff), = terms.items()
    if coeff != 1:
        raise ConfigError("%s: monomial must have coefficient 1" % where)
    return mono


def _base_class(text, where):
    try:
        ast = exprlang.parse(text)
        poly = exprlang.eval_poly(ast, list(BASE_NAMES))
    except (exprlang.ExprSyntaxError, exprlang.ExprTypeError) as e:
        raise ConfigError("%s: %s" % (where, e)) from e
    coeffs = {}
    for exps, coeff in poly.items():
        if sum(exps) == 0:
            raise ConfigError("%s: constant term not allowed" % where)
        if sum(exps) != 1:
            raise ConfigError("%s: base-class expressions are linear" % where)
        name = BASE_NAMES[exps.index(1)]
        coeffs[name] = coeff
    return DivisorClassOnS(coeffs)


def parse_setup_text(text, source="<config>"):
    if text.lstrip().startswith("{"):
        return _from_json(json.loads(text))
    truncation = None
    generators = []
    rules_src = []
    bundles_src = {}
    push_src = []
    subst_src = None
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = "%s:%d" % (source, lineno)
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("generators", "rules", "bundles",
                               "pushforward", "subst"):
                raise ConfigError("%s: unknown section %r" % (where, section))
            continue
        if section is None:
            parts = line.split()
            if len(parts) == 2 and parts[0] == "truncation":
                truncation = int(parts[1])
                continue
            raise ConfigError("%s: expected 'truncation N' or a [section]"
                              % where)
        if section == "generators":
            parts = line.split()
            if len(parts) != 2:
                raise ConfigError("%s: expected 'name degree'" % where)
            generators.append((_alias(parts[0]), int(parts[1])))
        elif section == "rules":
            lhs, _, rhs = line.partition("->")
            if not _:
                raise ConfigError("%s: expected 'lhs -> rhs'" % where)
            rules_src.append((lhs.strip(), rhs.strip(), where))
        elif section == "bundles":
            head, _, expr = line.partition("=")
            if not _:
                raise ConfigError("%s: expected 'NAME RANK = expression'" % where)
            parts = head.split()
            if len(parts) != 2:
                raise ConfigError("%s: expected 'NAME RANK = expression'" % where)
            bundles_src[parts[0]] = (int(parts[1]), expr.strip(), where)
        elif section == "pushforward":
            lhs, _, rhs = line.partition("->")
            if not _:
                raise ConfigError("%s: expected 'monomial -> base class'" % where)
            push_src.append((lhs.strip(), rhs.strip(), where))
        elif section == "subst":
            lhs, _, rhs = line.partition("->")
            if not _ or _alias(lhs.strip()) != "kappa":
                raise ConfigError("%s: only 'kappa -> ...' is supported" % where)
            subst_src = (rhs.strip(), where)
    if truncation is None:
        raise ConfigError("%s: missing 'truncation N'" % source)
    return _build(truncation, generators, rules_src, bundles_src, push_src,
                  subst_src)


def _alias(name):
    table = {"λ": "lambda", "δ0": "delta0", "δ1": "delta1", "κ": "kappa"}
    return table.get(name, name)


def _build(truncation, generators, rules_src, bundles_src, push_src, subst_src):
    names = [n for n, _ in generators]
    rules = []
    for lhs_text, rhs_text, where in rules_src:
        lhs = _single_monomial(_parse_poly(lhs_text, names, where), where)
        rhs = _parse_poly(rhs_text, names, where)
        rules.append(RewriteRule(lhs, rhs))
    bundles = {}
    for bname, (rank, expr, where) in bundles_src.items():
        bundles[bname] = (rank, _parse_poly(expr, names, where))
    push = {}
    for lhs_text, rhs_text, where in push_src:
        mono = _single_monomial(_parse_poly(lhs_text, names, where), where)
        push[mono] = _base_class(rhs_text, where) if rhs_text.strip() != "0" \
            else DivisorClassOnS()
    subst = None
    if subst_src is not None:
        subst = _base_class(subst_src[0], subst_src[1])
    return SetupConfig(truncation, generators, rules, bundles, push, subst)


def _from_json(data):
    rules_src = [(lhs, rhs, "rules") for lhs, rhs in data.get("rules", [])]
    bundles_src = {name: (rank, expr, "bundles")
                   for name, (rank, expr) in data.get("bundles", {}).items()}
    push_src = [(lhs, rhs, "pushforward")
                for lhs, rhs in data.get("pushforward", [])]
    subst_src = None
    if data.get("subst"):
        subst_src = (data["subst"]["kappa"], "subst")
    generators = [(_alias(n), int(d)) for n, d in data["generators"]]
    return _build(int(data["truncation"]), generators, rules_src, bundles_src,
                  push_src, subst_src)


def load_setup(path_or_name):
    """Load a setup from a file path or a built-in name (genus3, free32)."""
    if path_or_name in BUILTIN_CONFIGS:
        text = resources.files("hyperloc.data").joinpath(
            path_or_name + ".cfg").read_text()
        return parse_setup_text(text, source=path_or_name)
    with open(path_or_name, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_setup_text(text, source=str(path_or_name))
