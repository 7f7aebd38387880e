"""Graded commutative algebra over the rationals on named generators, with a
terminating rewrite system standing in for the ring's relations.

A ring is declared by its generators (name, positive degree), a list of
rewrite rules, and a truncation bound: every monomial of degree above the
bound is identically zero.  Rules rewrite a monomial to a linear combination
of strictly smaller monomials, "smaller" meaning the well-order that compares
total degree first and then compares factor tuples lexicographically by
generator *precedence* (the order in which generators were declared).  Since
the order is compatible with multiplication, exhaustive rewriting terminates,
and classes are kept in normal form at all times.

Values (rings, monomials, classes) are immutable once built; all operations
are pure functions and safe to share between threads.
"""

from fractions import Fraction
from types import MappingProxyType


class DuplicateGenerator(ValueError):
    pass


class UnknownGenerator(ValueError):
    pass


class DuplicateRule(ValueError):
    pass


class NonDecreasingRule(ValueError):
    """A rule's right-hand side is not strictly smaller than its left."""


class InhomogeneousRule(ValueError):
    """A rule's right-hand side mixes degrees different from the left's."""


class RingMismatch(ValueError):
    pass


class DegreeOutOfRange(ValueError):
    pass


class Generator:
    __slots__ = ("name", "degree")

    def __init__(self, name, degree):
        if degree < 1:
            raise ValueError("generator degree must be >= 1")
        self.name = name
        self.degree = int(degree)

    def __eq__(self, other):
        return (isinstance(other, Generator)
                and other.name == self.name and other.degree == self.degree)

    def __hash__(self):
        return hash((self.name, self.degree))

    def __repr__(self):
        return "Generator(%r, %d)" % (self.name, self.degree)


class Monomial:
    """Commutative word in generator names; factors kept sorted by name."""

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        self.factors = tuple(sorted(factors))

    @classmethod
    def parse(cls, text):
        """Parse ``"K*X*pd1"`` (or ``"1"`` / ``""`` for the unit)."""
        text = text.strip()
        if text in ("", "1"):
            return cls(())
        return cls(part.strip() for part in text.split("*"))

    @property
    def is_unit(self):
        return not self.factors

    def __mul__(self, other):
        return Monomial(self.factors + other.factors)

    def divides(self, other):
        rest = list(other.factors)
        for name in self.factors:
            try:
                rest.remove(name)
            except ValueError:
                return False
        return True

    def __truediv__(self, other):
        """Remove ``other``'s factors (which must divide self)."""
        rest = list(self.factors)
        for name in other.factors:
            rest.remove(name)
        return Monomial(rest)

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "Monomial(%s)" % (str(self),)

    def __str__(self):
        return "*".join(self.factors) if self.factors else "1"


UNIT = Monomial(())


class RewriteRule:
    """lhs -> rhs, rhs a raw (unnormalized) map Monomial -> Fraction."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        cleaned = {}
        for mono, coeff in dict(rhs).items():
            coeff = Fraction(coeff)
            if coeff:
                cleaned[mono] = coeff
        self.rhs = MappingProxyType(cleaned)

    def __repr__(self):
        return "RewriteRule(%s -> %s)" % (self.lhs, _render_raw(self.rhs))


def rule(lhs, rhs):
    """Shorthand: ``rule("X*X", {"X*pd1": 1, "N": -1})``."""
    return RewriteRule(Monomial.parse(lhs),
                       {Monomial.parse(m): c for m, c in rhs.items()})


class Ring:
    """Handle for a truncated graded ring; build through ``ring_new``."""

    def __init__(self, generators, rules, truncation):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        gens = tuple(generators)
        names = [g.name for g in gens]
        seen = set()
        for n in names:
            if n in seen:
                raise DuplicateGenerator(n)
            seen.add(n)
        self.generators = gens
        self.truncation = int(truncation)
        self._degree = {g.name: g.degree for g in gens}
        # precedence = declaration index; drives the degree-then-lex well-order
        self._prec = {g.name: i for i, g in enumerate(gens)}
        by_lhs = {}
        for r in rules:
            self._validate_rule(r)
            if r.lhs in by_lhs:
                raise DuplicateRule(str(r.lhs))
            by_lhs[r.lhs] = r
        # fixed application order makes normalization deterministic
        self.rules = tuple(sorted(by_lhs.values(), key=lambda r: self.key(r.lhs)))
        self._nf_cache = {}

    def _validate_rule(self, r):
        for name in r.lhs.factors:
            if name not in self._degree:
                raise UnknownGenerator(name)
        lhs_deg = self.degree(r.lhs)
        lhs_key = self.key(r.lhs)
        for mono in r.rhs:
            for name in mono.factors:
                if name not in self._degree:
                    raise UnknownGenerator(name)
            if self.degree(mono) != lhs_deg:
                raise InhomogeneousRule("%s -> %s" % (r.lhs, mono))
            if not self.key(mono) < lhs_key:
                raise NonDecreasingRule("%s -> %s" % (r.lhs, mono))

    def degree(self, mono):
        try:
            return sum(self._degree[n] for n in mono.factors)
        except KeyError as e:
            raise UnknownGenerator(*e.args) from None

    def key(self, mono):
        """Well-order key: (degree, factor precedences ascending)."""
        return (self.degree(mono), tuple(sorted(self._prec[n] for n in mono.factors)))

    # display order differs from the well-order: sort by degree, then names
    def _display_key(self, mono):
        return (self.degree(mono), mono.factors)

    def _normal_form(self, mono):
        """Fully reduced form of a single monomial, as a raw term map."""
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        if self.degree(mono) > self.truncation:
            nf = {}
        else:
            nf = None
            for r in self.rules:
                if r.lhs.divides(mono):
                    rest = mono / r.lhs
                    acc = {}
                    for rmono, rcoeff in r.rhs.items():
                        for m2, c2 in self._normal_form(rmono * rest).items():
                            c = acc.get(m2, _ZERO) + rcoeff * c2
                            if c:
                                acc[m2] = c
                            elif m2 in acc:
                                del acc[m2]
                    nf = acc
                    break
            if nf is None:
                nf = {mono: _ONE}
        self._nf_cache[mono] = nf
        return nf

    def normalize_terms(self, terms):
        """Normal form of a raw term map, as a new term map."""
        acc = {}
        for mono, coeff in terms.items():
            coeff = Fraction(coeff)
            if not coeff:
                continue
            for m2, c2 in self._normal_form(mono).items():
                c = acc.get(m2, _ZERO) + coeff * c2
                if c:
                    acc[m2] = c
                elif m2 in acc:
                    del acc[m2]
        return acc

    def cls(self, data=()):
        """Build a ChowClass from {monomial-or-string: coefficient}."""
        if isinstance(data, ChowClass):
            if data.ring != self:
                raise RingMismatch("class from a different ring")
            return data
        terms = {}
        for mono, coeff in dict(data).items():
            if isinstance(mono, str):
                mono = Monomial.parse(mono)
            terms[mono] = terms.get(mono, _ZERO) + Fraction(coeff)
        return ChowClass(self, terms)

    def gen(self, name):
        if name not in self._degree:
            raise UnknownGenerator(name)
        return self.cls({Monomial((name,)): 1})

    def one(self):
        return self.cls({UNIT: 1})

    def zero(self):
        return self.cls({})

    def monomials_of_degree(self, d):
        """All normal-form monomials of degree d (basis of the graded piece)."""
        out = set()

        def extend(mono, deg, start):
            if deg == d:
                if self._normal_form(mono) == {mono: _ONE}:
                    out.add(mono)
                return
            for g in self.generators[start:]:
                if deg + g.degree <= d:
                    extend(mono * Monomial((g.name,)), deg + g.degree,
                           self._prec[g.name])

        extend(UNIT, 0, 0)
        return sorted(out, key=self._display_key)

    def _signature(self):
        return (tuple((g.name, g.degree) for g in self.generators),
                tuple((r.lhs, tuple(sorted(r.rhs.items(), key=lambda t: t[0].factors)))
                      for r in self.rules),
                self.truncation)

    def __eq__(self, other):
        return isinstance(other, Ring) and other._signature() == self._signature()

    def __hash__(self):
        return hash(self._signature())

    def __repr__(self):
        return "Ring(%s; %d rules; truncation %d)" % (
            ", ".join("%s:%d" % (g.name, g.degree) for g in self.generators),
            len(self.rules), self.truncation)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class ChowClass:
    """Finite rational combination of monomials, held in normal form."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = ring.normalize_terms(terms)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    def coefficient(self, mono):
        if isinstance(mono, str):
            mono = Monomial.parse(mono)
        return self._terms.get(mono, _ZERO)

    def degrees(self):
        return sorted({self.ring.degree(m) for m in self._terms})

    def is_homogeneous(self, d=None):
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs[0] == d

    def graded_part(self, d):
        if d < 0 or d > self.ring.truncation:
            raise DegreeOutOfRange(d)
        return ChowClass(self.ring, {m: c for m, c in self._terms.items()
                                     if self.ring.degree(m) == d})

    def _binop(self, other, sign):
        if isinstance(other, ChowClass):
            if other.ring != self.ring:
                raise RingMismatch("classes from different rings")
            terms = dict(self._terms)
            for m, c in other._terms.items():
                terms[m] = terms.get(m, _ZERO) + sign * c
            return ChowClass(self.ring, terms)
        if isinstance(other, (int, Fraction)):
            terms = dict(self._terms)
            terms[UNIT] = terms.get(UNIT, _ZERO) + sign * Fraction(other)
            return ChowClass(self.ring, terms)
        return NotImplemented

    def __add__(self, other):
        return self._binop(other, _ONE)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -_ONE)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return ChowClass(self.ring, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, ChowClass):
            if other.ring != self.ring:
                raise RingMismatch("classes from different rings")
            trunc = self.ring.truncation
            terms = {}
            for m1, c1 in self._terms.items():
                d1 = self.ring.degree(m1)
                for m2, c2 in other._terms.items():
                    if d1 + self.ring.degree(m2) > trunc:
                        continue
                    m = m1 * m2
                    terms[m] = terms.get(m, _ZERO) + c1 * c2
            return ChowClass(self.ring, terms)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return ChowClass(self.ring, {m: c * q for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a class")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.cls({UNIT: other})
        if not isinstance(other, ChowClass):
            return NotImplemented
        return other.ring == self.ring and other._terms == self._terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self._terms.items(),
                                             key=lambda t: t[0].factors))))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return _render_raw(self._terms, self.ring._display_key)

    def __repr__(self):
        return "ChowClass(%s)" % (str(self),)


def _render_raw(terms, sort_key=None):
    """Canonical text form: sorted monomials, coefficients as p/q."""
    if not terms:
        return "0"
    if sort_key is None:
        sort_key = lambda m: (len(m.factors), m.factors)
    parts = []
    for mono in sorted(terms, key=sort_key):
        coeff = terms[mono]
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        if mono.is_unit:
            body = str(mag)
        elif mag == 1:
            body = str(mono)
        else:
            body = "%s*%s" % (mag, mono)
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += " %s %s" % (sign, body)
    return text


def ring_new(generators, rules, truncation):
    """Declare a ring; validates generators and the rewrite system."""
    return Ring(generators, rules, truncation)


def normalize(c):
    """Re-run exhaustive rewriting on a class (a fixed point of itself)."""
    return ChowClass(c.ring, dict(c.terms))


def mul(a, b):
    return a * b


def graded_part(c, d):
    return c.graded_part(d)


def check_confluence(ring):
    """Critical-pair check of the rule set, modulo the ring's truncation.

    For every pair of distinct rules, the least common multiple of their
    left-hand sides is rewritten once by each rule and then fully
    normalized; a non-empty return lists the pairs whose normal forms
    disagree.  Empty means the rewrite system is confluent up to the
    truncation bound.
    """
    conflicts = []
    rules = ring.rules
    for i in range(len(rules)):
        for j in range(i + 1, len(rules)):
            ri, rj = rules[i], rules[j]
            lcm = _monomial_lcm(ri.lhs, rj.lhs)
            if ring.degree(lcm) > ring.truncation:
                continue
            nf_i = _reduce_once_then_normalize(ring, lcm, ri)
            nf_j = _reduce_once_then_normalize(ring, lcm, rj)
            if nf_i != nf_j:
                conflicts.append((ri.lhs, rj.lhs, lcm, nf_i, nf_j))
    return conflicts


def _monomial_lcm(a, b):
    counts = {}
    for name in a.factors:
        counts[name] = counts.get(name, 0) + 1
    extra = {}
    for name in b.factors:
        extra[name] = extra.get(name, 0) + 1
    factors = []
    for name in set(counts) | set(extra):
        factors.extend([name] * max(counts.get(name, 0), extra.get(name, 0)))
    return Monomial(factors)


def _reduce_once_then_normalize(ring, mono, r):
    rest = mono / r.lhs
    raw = {}
    for m, c in r.rhs.items():
        prod = m * rest
        raw[prod] = raw.get(prod, _ZERO) + c
    return ring.normalize_terms(raw)


def ring_to_text(ring):
    """Canonical serialization of a ring declaration."""
    lines = ["truncation %d" % ring.truncation]
    for g in ring.generators:
        lines.append("gen %s %d" % (g.name, g.degree))
    for r in ring.rules:
        lines.append("rule %s -> %s" % (r.lhs, _render_raw(r.rhs)))
    return "\n".join(lines) + "\n"
