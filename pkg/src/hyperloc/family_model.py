"""The one-parameter family of stable genus-3 curves over a smooth curve
base, encoded as data for the generic engines.

The total space carries the divisor classes K (first Chern class of the
relative dualizing sheaf), the two components X (elliptic) and Y (genus 2)
of the reducible singular fiber, the point class N of their node, and the
pullbacks pl, pd0, pd1 of the Hodge class and the two boundary classes on
the base.  The rewrite rules are the intersection relations of that
geometry; pushing forward to the base lands in the span of lambda, delta0,
delta1 and kappa, with kappa eliminated at the very end.

``degeneracy_class`` runs the generic Chern/Porteous machinery on the
bundles E (restrictions of global sections of the twisted dualizing sheaf)
and F (its locally free first-order jet substitute); ``assemble_theorem``
subtracts the excess contributions of the singular fibers and divides by
the 8 Weierstrass points per hyperelliptic fiber.  ``smooth=True`` runs the
same pipeline for a family without singular fibers.
"""

from fractions import Fraction
from functools import lru_cache

from . import local_multiplicity
from .chern_calculus import ChernSeries, chern_of_extension, dual, porteous, quotient
from .fields import QQ
from .graded_algebra import Generator, Monomial, check_confluence, ring_new, rule


class UnreducedMonomial(ValueError):
    pass


class MultiplicityMismatch(ValueError):
    pass


class NonIntegralResult(ValueError):
    """Raised when the final division by 8 leaves fractional coefficients.

    The offending (fractional) class is attached as ``.result``.
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


BASE_NAMES = ("lambda", "delta0", "delta1", "kappa")
_UNICODE = {"lambda": "λ", "delta0": "δ0", "delta1": "δ1", "kappa": "κ"}


class DivisorClassOnS:
    """Rational combination of lambda, delta0, delta1 and kappa on the base."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cleaned = {}
        for name, c in dict(coeffs).items():
            if name not in BASE_NAMES:
                raise ValueError("unknown base class %r" % (name,))
            c = Fraction(c)
            if c:
                cleaned[name] = c
        self._coeffs = cleaned

    def coefficient(self, name):
        if name not in BASE_NAMES:
            raise ValueError("unknown base class %r" % (name,))
        return self._coeffs.get(name, Fraction(0))

    @property
    def is_zero(self):
        return not self._coeffs

    def __add__(self, other):
        if not isinstance(other, DivisorClassOnS):
            return NotImplemented
        coeffs = dict(self._coeffs)
        for name, c in other._coeffs.items():
            coeffs[name] = coeffs.get(name, Fraction(0)) + c
        return DivisorClassOnS(coeffs)

    def __sub__(self, other):
        if not isinstance(other, DivisorClassOnS):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DivisorClassOnS({n: -c for n, c in self._coeffs.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        q = Fraction(scalar)
        return DivisorClassOnS({n: c * q for n, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / Fraction(scalar))

    def __eq__(self, other):
        return isinstance(other, DivisorClassOnS) and other._coeffs == self._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def substitute_kappa(self, relation=None):
        """Eliminate kappa; by default kappa = 12*lambda - delta0 - delta1."""
        if relation is None:
            relation = KAPPA_RELATION
        k = self.coefficient("kappa")
        if not k:
            return self
        rest = DivisorClassOnS({n: c for n, c in self._coeffs.items()
                                if n != "kappa"})
        return rest + k * relation

    def is_integral(self):
        return all(c.denominator == 1 for c in self._coeffs.values())

    def _render(self, names):
        if not self._coeffs:
            return "0"
        parts = []
        for name in BASE_NAMES:
            c = self._coeffs.get(name)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = names[name] if mag == 1 else "%s*%s" % (mag, names[name])
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __str__(self):
        return self._render({n: n for n in BASE_NAMES})

    def pretty(self):
        """Unicode rendering: 9λ - δ0 - 3δ1 (fractions keep a dot: 7/8·δ0)."""
        text = self._render(_UNICODE)
        out = []
        for word in text.split(" "):
            if "*" in word:
                coeff, name = word.split("*", 1)
                word = coeff + ("·" if "/" in coeff else "") + name
            out.append(word)
        return " ".join(out)

    def __repr__(self):
        return "DivisorClassOnS(%s)" % (str(self),)


LAMBDA = DivisorClassOnS({"lambda": 1})
DELTA0 = DivisorClassOnS({"delta0": 1})
DELTA1 = DivisorClassOnS({"delta1": 1})
KAPPA = DivisorClassOnS({"kappa": 1})
KAPPA_RELATION = 12 * LAMBDA - DELTA0 - DELTA1

THEOREM_STABLE = 9 * LAMBDA - DELTA0 - 3 * DELTA1
THEOREM_SMOOTH = 9 * LAMBDA


@lru_cache(maxsize=None)
def family_ring(smooth=False):
    """The working ring of the family; rule confluence is checked here.

    Generators are declared in the precedence order that makes every rule
    decreasing for the degree-then-lex well-order.
    """
    if smooth:
        gens = [Generator("K", 1), Generator("pl", 1)]
        rules = [rule("pl*pl", {})]
    else:
        gens = [Generator("N", 2), Generator("K", 1), Generator("pl", 1),
                Generator("pd0", 1), Generator("pd1", 1), Generator("X", 1),
                Generator("Y", 1)]
        rules = [
            rule("Y", {"pd1": 1, "X": -1}),       # X + Y is the whole fiber
            rule("X*X", {"X*pd1": 1, "N": -1}),   # self-intersection via X*Y = N
            rule("K*X", {"N": 1}),                # dualizing sheaf on X has degree 1 at N
            # products of pullbacks vanish: the base is a curve
            rule("pl*pl", {}), rule("pl*pd0", {}), rule("pl*pd1", {}),
            rule("pd0*pd0", {}), rule("pd0*pd1", {}), rule("pd1*pd1", {}),
            # X lies in the fiber over the delta1 point
            rule("X*pl", {}), rule("X*pd0", {}),
        ]
    r = ring_new(gens, rules, truncation=2)
    conflicts = check_confluence(r)
    if conflicts:
        raise RuntimeError("family rules are not confluent: %r" % (conflicts,))
    return r


def pullback(d):
    """Pullback of a base divisor class to the total space (kappa has none)."""
    if d.coefficient("kappa"):
        raise ValueError("kappa does not pull back")
    ring = family_ring()
    return (d.coefficient("lambda") * ring.gen("pl")
            + d.coefficient("delta0") * ring.gen("pd0")
            + d.coefficient("delta1") * ring.gen("pd1"))


class PushforwardMap:
    """Linear extension of monomial -> base-class rules for degree-2 classes."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = {Monomial.parse(m) if isinstance(m, str) else m: v
                       for m, v in dict(images).items()}

    def apply(self, c):
        out = DivisorClassOnS()
        for mono, coeff in c.terms.items():
            img = self.images.get(mono)
            if img is None:
                raise UnreducedMonomial(str(mono))
            out = out + coeff * img
        return out


@lru_cache(maxsize=None)
def _pushforward_map(smooth=False):
    zero = DivisorClassOnS()
    if smooth:
        images = {"K*K": KAPPA, "K*pl": 4 * LAMBDA}
    else:
        images = {"K*K": KAPPA, "N": DELTA1, "K*pl": 4 * LAMBDA,
                  "K*pd0": 4 * DELTA0, "K*pd1": 4 * DELTA1, "X*pd1": zero}
    return PushforwardMap(images)


def pushforward(c):
    """Pushforward to the base of a normalized degree-2 class."""
    smooth = c.ring == family_ring(smooth=True)
    if not smooth and c.ring != family_ring():
        raise ValueError("class does not live in a family ring")
    for mono in c.terms:
        if c.ring.degree(mono) != 2:
            raise UnreducedMonomial("%s has degree %d, expected 2"
                                    % (mono, c.ring.degree(mono)))
    return _pushforward_map(smooth).apply(c)


_DEGREE1_IMAGES = {"K": Fraction(4), "X": Fraction(0), "Y": Fraction(0),
                   "pl": Fraction(0), "pd0": Fraction(0), "pd1": Fraction(0)}


def pushforward_degree1(c):
    """Pushforward of a degree-1 class, as a multiple of the base's class."""
    out = Fraction(0)
    for mono, coeff in c.terms.items():
        if c.ring.degree(mono) != 1:
            raise UnreducedMonomial("%s has degree %d, expected 1"
                                    % (mono, c.ring.degree(mono)))
        out += coeff * _DEGREE1_IMAGES[mono.factors[0]]
    return out


def chern_data(smooth=False):
    """Total Chern classes of the rank-3 sections bundle E and the rank-2
    jet bundle F, the latter via its two-step line-bundle filtration."""
    ring = family_ring(smooth)
    K = ring.gen("K")
    pl = ring.gen("pl")
    if smooth:
        c1_sections = pl
        twist = ring.zero()
    else:
        c1_sections = pl - ring.gen("pd1")
        twist = ring.gen("X")
    cE = ChernSeries(ring, 3, [ring.one(), c1_sections, ring.zero()])
    cF = chern_of_extension(ChernSeries.line(2 * K - twist),
                            ChernSeries.line(K - twist))
    return cE, cF


def degeneracy_class(smooth=False, route="porteous"):
    """Class of the locus where the jet evaluation drops rank, computed by
    the generic engine (either the determinant form or the series
    quotient; the two agree identically)."""
    cE, cF = chern_data(smooth)
    if route == "porteous":
        return porteous(cE, cF, 3, 2, 1)
    if route == "quotient":
        return quotient(dual(cE), dual(cF)).part(2)
    raise ValueError("route must be 'porteous' or 'quotient'")


def proposition_4_raw(smooth=False):
    """Pushforward of the degeneracy class, kappa not yet eliminated."""
    return pushforward(degeneracy_class(smooth))


def proposition_4(smooth=False):
    """Pushforward of the degeneracy class in lambda/delta coordinates."""
    raw = proposition_4_raw(smooth)
    if smooth:
        # no boundary classes on the base of a smooth family
        return raw.substitute_kappa(relation=12 * LAMBDA)
    return raw.substitute_kappa()


class LedgerEntry:
    __slots__ = ("label", "fiber", "count", "multiplicity")

    def __init__(self, label, fiber, count, multiplicity):
        if fiber not in ("delta0", "delta1"):
            raise ValueError("fiber must be delta0 or delta1")
        if count < 0 or multiplicity < 0:
            raise ValueError("count and multiplicity must be non-negative")
        self.label = label
        self.fiber = fiber
        self.count = int(count)
        self.multiplicity = int(multiplicity)

    def __repr__(self):
        return "LedgerEntry(%s: %d point(s) x mult %d on %s)" % (
            self.label, self.count, self.multiplicity, self.fiber)


class ExcessLedger:
    """Bookkeeping of degeneracy points on singular fibers."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    def total(self, fiber):
        return sum(e.count * e.multiplicity for e in self.entries
                   if e.fiber == fiber)

    def correction(self):
        """Excess part of the pushforward, per singular fiber of each type."""
        return (self.total("delta0") * DELTA0 + self.total("delta1") * DELTA1)

    def point_count(self, n0=1, n1=1):
        """Excess length for a family with n0 + n1 singular fibers; linear."""
        return n0 * self.total("delta0") + n1 * self.total("delta1")

    def __repr__(self):
        return "ExcessLedger(%s)" % (", ".join(repr(e) for e in self.entries),)


# (label, fiber class, number of points per fiber, expected multiplicity)
LEDGER_SPEC = (
    ("Z_node", "delta0", 1, 1),
    ("XY_node", "delta1", 1, 2),
    ("torsion_A", "delta1", 3, 1),
    ("weierstrass_Y", "delta1", 6, 2),
)


def excess_ledger(verify=True, seeds=(0, 1), cutoff=4, field=QQ, overrides=None):
    """Build the excess ledger for the two singular fibers.

    With ``verify`` the multiplicity of every entry is recomputed from the
    corresponding germ family (once per seed) and must match the expected
    value; a disagreement raises MultiplicityMismatch.  ``overrides`` maps
    labels to multiplicities taken at face value (no verification), which
    deliberately unbalances the bookkeeping.
    """
    overrides = dict(overrides or {})
    entries = []
    for label, fiber, count, expected in LEDGER_SPEC:
        if label in overrides:
            entries.append(LedgerEntry(label, fiber, count, overrides[label]))
            continue
        if verify:
            for seed in seeds:
                got = local_multiplicity.multiplicity_of_case(
                    label, seed=seed, cutoff=cutoff, field=field)
                if got != expected:
                    raise MultiplicityMismatch(
                        "%s: germ computation gives %d, ledger expects %d"
                        % (label, got, expected))
        entries.append(LedgerEntry(label, fiber, count, expected))
    return ExcessLedger(entries)


def assemble_theorem(smooth=False, ledger=None):
    """Divisor class of the hyperelliptic locus on the base.

    Subtracts the ledger corrections from the pushforward of the
    degeneracy class and divides by 8, one unit per Weierstrass point of a
    genus-3 hyperelliptic curve; a non-integral division raises
    NonIntegralResult (with the fractional class attached).
    """
    if smooth:
        corrected = proposition_4(smooth=True)
    else:
        if ledger is None:
            ledger = excess_ledger()
        corrected = proposition_4() - ledger.correction()
    result = corrected * Fraction(1, 8)
    if not result.is_integral():
        raise NonIntegralResult(
            "corrected class %s is not divisible by 8 (got %s)"
            % (corrected, result), result)
    return result
