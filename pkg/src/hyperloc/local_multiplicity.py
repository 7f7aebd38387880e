"""Multiplicity (colength) at the origin of the scheme cut out by the 2x2
minors of a 2x3 matrix of bivariate power-series germs.

Series are truncated at a total-degree cutoff T (terms of degree >= T are
dropped).  The colength of an ideal I is the dimension over the ground field
of k[x,y]/(I + m^T), obtained by exact row reduction of the multiples of the
generators against the monomial basis of degree < T; the value is accepted
when two consecutive cutoffs agree, otherwise the computation refuses to
guess (UnstableAtCutoff).

Four built-in germ families describe the degeneracy behaviour at the special
points of a one-parameter family of stable genus-3 curves: the node of the
irreducible nodal fiber, the node joining the elliptic and genus-2
components, the points of the elliptic component whose double is linearly
equivalent to twice the node, and the six Weierstrass points of the genus-2
component.  Each family fixes the leading terms of the matrix and leaves
higher-order slots free; instantiating with different seeds fills the slots
with random coefficients, seed 0 giving the all-zero (most degenerate)
member.
"""

import random
from fractions import Fraction

from .fields import QQ, FieldCharTwo


class UnstableAtCutoff(ValueError):
    """Dimensions at consecutive cutoffs disagree; colength may be infinite."""


class UnknownLabel(KeyError):
    pass


class TruncSeries:
    """Bivariate series modulo total degree ``cutoff``."""

    __slots__ = ("vars", "field", "cutoff", "terms")

    def __init__(self, vars, field, cutoff, terms=()):
        if len(vars) != 2:
            raise ValueError("exactly two variables required")
        self.vars = tuple(vars)
        self.field = field
        self.cutoff = int(cutoff)
        cleaned = {}
        for (i, j), c in dict(terms).items():
            if i + j >= self.cutoff:
                continue
            c = field.of(c) if isinstance(c, (int, Fraction)) else c
            if c:
                cleaned[(i, j)] = c
        self.terms = cleaned

    def _check(self, other):
        if self.vars != other.vars or self.field != other.field:
            raise ValueError("series in different rings")

    @property
    def order(self):
        """Minimal total degree of a nonzero term (cutoff if zero)."""
        return min((i + j for i, j in self.terms), default=self.cutoff)

    def __add__(self, other):
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.field.zero) + c
        return TruncSeries(self.vars, self.field, cutoff, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TruncSeries(self.vars, self.field, self.cutoff,
                           {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = self.field.of(other)
            return TruncSeries(self.vars, self.field, self.cutoff,
                               {e: v * c for e, v in self.terms.items()})
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                if i1 + i2 + j1 + j2 >= cutoff:
                    continue
                e = (i1 + i2, j1 + j2)
                terms[e] = terms.get(e, self.field.zero) + c1 * c2
        return TruncSeries(self.vars, self.field, cutoff, terms)

    __rmul__ = __mul__

    def truncated(self, cutoff):
        return TruncSeries(self.vars, self.field, min(cutoff, self.cutoff),
                           self.terms)

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and other.vars == self.vars
                and other.field == self.field and other.cutoff == self.cutoff
                and other.terms == self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "TruncSeries(%s + O(deg %d))" % (self, self.cutoff)

    def __str__(self):
        if not self.terms:
            return "0"
        def fmt(e, c):
            x, y = self.vars
            i, j = e
            factors = []
            if i:
                factors.append(x if i == 1 else "%s^%d" % (x, i))
            if j:
                factors.append(y if j == 1 else "%s^%d" % (y, j))
            body = "*".join(factors) if factors else "1"
            if not factors:
                return str(c)
            if c == self.field.one:
                return body
            if c == -self.field.one:
                return "-%s" % body
            return "%s*%s" % (c, body)
        exps = sorted(self.terms, key=lambda e: (e[0] + e[1], e))
        return " + ".join(fmt(e, self.terms[e]) for e in exps)


class GermMatrix:
    """2x3 matrix of series sharing variables, field and cutoff."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 2x3 matrix")
        first = rows[0][0]
        for row in rows:
            for s in row:
                if s.vars != first.vars or s.field != first.field \
                        or s.cutoff != first.cutoff:
                    raise ValueError("matrix entries must share variables, "
                                     "field and cutoff")
        self.entries = rows

    @property
    def vars(self):
        return self.entries[0][0].vars

    @property
    def field(self):
        return self.entries[0][0].field

    @property
    def cutoff(self):
        return self.entries[0][0].cutoff


def minors(m):
    """The three 2x2 minors, taken on column pairs (0,1), (0,2), (1,2)."""
    (a, b, c), (d, e, f) = m.entries
    return [a * e - b * d, a * f - c * d, b * f - c * e]


class GermFamily:
    """Matrix template: exact leading terms plus ideal-membership slots.

    ``entries[r][c]`` is a pair (leading, slots): ``leading`` maps exponent
    pairs to rational coefficients and ``slots`` lists the monomial
    generators of the ideal the entry may additionally contain.
    """

    __slots__ = ("label", "vars", "entries", "metadata")

    def __init__(self, label, vars, entries, metadata=None):
        self.label = label
        self.vars = tuple(vars)
        self.entries = tuple(tuple((dict(lead), tuple(slots))
                                   for lead, slots in row) for row in entries)
        self.metadata = dict(metadata or {})


# coefficients used to fill slots; nonzero in every supported field
COEFF_POOL = tuple(Fraction(x) for x in (1, -1, 2, -2)) + \
             (Fraction(1, 2), Fraction(-1, 2), Fraction(7), Fraction(-7))


def instantiate(family, seed, cutoff, field=QQ):
    """Draw a member of the germ family.

    Seed 0 keeps every slot zero (the most degenerate member); any other
    seed fills each slot with a dense series whose coefficients come from
    ``COEFF_POOL``, deterministically derived from (label, seed).
    """
    rng = random.Random("%s:%d" % (family.label, seed)) if seed else None
    rows = []
    for row in family.entries:
        out = []
        for lead, slots in row:
            s = TruncSeries(family.vars, field, cutoff, lead)
            # a slot (gi, gj) may contribute any series in the ideal
            # (x^gi y^gj), i.e. that monomial times an arbitrary series
            for gi, gj in slots:
                if rng is None:
                    continue
                filler = {}
                for i in range(cutoff):
                    for j in range(cutoff - i):
                        if gi + i + gj + j < cutoff:
                            filler[(gi + i, gj + j)] = rng.choice(COEFF_POOL)
                s = s + TruncSeries(family.vars, field, cutoff, filler)
            out.append(s)
        rows.append(out)
    return GermMatrix(rows)


def _case_families():
    sq = ((2, 0), (1, 1), (0, 2))  # the ideal (x,y)^2
    one = {(0, 0): 1}
    zero = {}
    return {
        "Z_node": GermFamily(
            "Z_node", ("x", "y"),
            [[(one, ()), ({(1, 0): 1}, sq), ({(0, 1): 1}, sq)],
             [(zero, ()), ({(1, 0): 1}, sq), ({(0, 1): -1}, sq)]],
            metadata={"base_parameter": "t = x*y up to (x,y)^3"}),
        "XY_node": GermFamily(
            "XY_node", ("x", "y"),
            [[(one, ()), ({(2, 0): 1}, ((1, 1), (3, 0))),
              ({(0, 1): 1}, ((1, 1), (0, 2)))],
             [(zero, ()), ({(2, 0): 2}, ((1, 1), (3, 0))),
              ({(0, 1): -1}, ((1, 1), (0, 2)))]],
            metadata={"base_parameter": "t = x*y"}),
        "torsion_A": GermFamily(
            "torsion_A", ("t", "u"),
            [[(one, ()), ({(0, 2): 1}, ((1, 0), (0, 3))),
              ({(1, 1): 1}, ((2, 0), (1, 2)))],
             [(zero, ()), ({(0, 1): 2}, ((1, 0), (0, 2))),
              ({(1, 0): 1}, ((2, 0), (1, 1)))]]),
        "weierstrass_Y": GermFamily(
            "weierstrass_Y", ("t", "u"),
            [[(one, ()), ({(0, 2): 1}, ((1, 0), (0, 3))),
              ({(2, 1): 1}, ((3, 0), (2, 2)))],
             [(zero, ()), ({(0, 1): 2}, ((1, 0), (0, 2))),
              ({(2, 0): 1}, ((3, 0), (2, 1)))]]),
    }


CASE_LABELS = ("Z_node", "XY_node", "torsion_A", "weierstrass_Y")


def case_fixture(label):
    families = _case_families()
    try:
        return families[label]
    except KeyError:
        raise UnknownLabel(label) from None


def _monomials_below(T):
    out = [(i, j) for i in range(T) for j in range(T - i)]
    out.sort(key=lambda e: (e[0] + e[1], e))
    return out


def _reduce(gens, T):
    """Row-reduce all multiples of the generators modulo m^T.

    Returns (pivot column set, column list); columns are the monomials of
    degree < T in local order (degree ascending).
    """
    cols = _monomials_below(T)
    index = {e: n for n, e in enumerate(cols)}
    pivots = {}  # col index -> normalized row dict
    for g in gens:
        if not g.terms:
            continue
        ordg = g.order
        for mi, mj in _monomials_below(max(T - ordg, 1)):
            row = {}
            for (i, j), c in g.terms.items():
                if i + mi + j + mj < T:
                    row[index[(i + mi, j + mj)]] = c
            _eliminate(row, pivots)
    return set(pivots), cols


def _eliminate(row, pivots):
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            lc = row[lead]
            pivots[lead] = {c: v / lc for c, v in row.items()}
            return
        factor = row[lead]
        for c, v in piv.items():
            new = row.get(c)
            if new is None:
                row[c] = -factor * v
            else:
                new = new - factor * v
                if new:
                    row[c] = new
                else:
                    del row[c]


def quotient_dimension(gens, cutoff):
    """dim of k[x,y]/(I + m^cutoff) at the given cutoff, no stabilization."""
    if not gens:
        raise ValueError("at least one generator required")
    pivots, cols = _reduce(gens, cutoff)
    return len(cols) - len(pivots)


def quotient_basis(gens, cutoff):
    """Monomials of degree < cutoff spanning the quotient (the non-pivots)."""
    pivots, cols = _reduce(gens, cutoff)
    return [e for n, e in enumerate(cols) if n not in pivots]


def colength(gens, cutoff=6):
    """Multiplicity of the ideal generated by ``gens`` at the origin.

    Computes the quotient dimension at ``cutoff`` and ``cutoff + 1`` and
    returns the common value; disagreement raises UnstableAtCutoff (the
    colength is infinite, or the cutoff is too small to see it stabilize).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    if not gens:
        raise ValueError("at least one generator required")
    field = gens[0].field
    if field.char == 2:
        raise FieldCharTwo("colength requires characteristic != 2")
    for g in gens:
        if g.cutoff < cutoff + 1:
            raise ValueError("generator precision %d too small for cutoff %d"
                             % (g.cutoff, cutoff))
    d0 = quotient_dimension(gens, cutoff)
    d1 = quotient_dimension(gens, cutoff + 1)
    if d0 != d1:
        raise UnstableAtCutoff("dimension %d at cutoff %d vs %d at %d"
                               % (d0, cutoff, d1, cutoff + 1))
    return d0


def multiplicity_of_case(label, seed=0, cutoff=4, field=QQ):
    """Colength of the minor ideal for one of the built-in germ families."""
    if cutoff < 4:
        raise ValueError("cutoff must be >= 4")
    family = case_fixture(label)
    matrix = instantiate(family, seed, cutoff + 2, field)
    return colength(minors(matrix), cutoff)
