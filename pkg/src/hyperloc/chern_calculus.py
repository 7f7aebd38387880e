"""Total Chern classes as truncated series over a graded ring.

A ChernSeries stores one homogeneous class per degree up to the ring's
truncation, plus a rank used purely as bookkeeping (virtual differences may
carry negative rank; arithmetic never consults it).  Provides duals, Whitney
products, series inversion and quotients, extension classes, and the
determinantal degeneracy-locus class of a bundle map.
"""

from .graded_algebra import ChowClass, RingMismatch


class NonUnitLeadingTerm(ValueError):
    pass


class BadRanks(ValueError):
    pass


class TruncationTooSmall(ValueError):
    pass


class ChernSeries:
    """c_0 + c_1 + ... + c_T with c_i homogeneous of degree i."""

    __slots__ = ("ring", "rank", "parts")

    def __init__(self, ring, rank, parts):
        T = ring.truncation
        parts = list(parts)
        if len(parts) > T + 1:
            raise ValueError("more parts than the truncation allows")
        parts += [ring.zero()] * (T + 1 - len(parts))
        for i, p in enumerate(parts):
            if p.ring != ring:
                raise RingMismatch("series part from a different ring")
            if not p.is_homogeneous(i):
                raise ValueError("part %d is not homogeneous of degree %d" % (i, i))
        self.ring = ring
        self.rank = int(rank)
        self.parts = tuple(parts)

    @classmethod
    def from_class(cls, ring, rank, total):
        """Split an inhomogeneous class into its graded parts."""
        total = ring.cls(total)
        return cls(ring, rank, [total.graded_part(i)
                                for i in range(ring.truncation + 1)])

    @classmethod
    def line(cls, c1):
        """Total Chern class 1 + c1 of a line bundle."""
        return cls(c1.ring, 1, [c1.ring.one(), c1])

    @classmethod
    def trivial(cls, ring, rank=0):
        return cls(ring, rank, [ring.one()])

    def part(self, i):
        """c_i, with c_i = 0 outside 0..T."""
        if 0 <= i < len(self.parts):
            return self.parts[i]
        return self.ring.zero()

    def total(self):
        out = self.ring.zero()
        for p in self.parts:
            out = out + p
        return out

    def __eq__(self, other):
        return (isinstance(other, ChernSeries) and other.ring == self.ring
                and other.rank == self.rank and other.parts == self.parts)

    def __repr__(self):
        return "ChernSeries(rank %d: %s)" % (self.rank, self)

    def __str__(self):
        return " + ".join("(%s)" % p if i else str(p)
                          for i, p in enumerate(self.parts) if p or i == 0)


def dual(s):
    """c_i -> (-1)^i c_i; an involution."""
    return ChernSeries(s.ring, s.rank,
                       [p if i % 2 == 0 else -p for i, p in enumerate(s.parts)])


def whitney(a, b):
    """Cauchy product of total Chern classes; ranks add."""
    if a.ring != b.ring:
        raise RingMismatch("series over different rings")
    T = a.ring.truncation
    parts = []
    for d in range(T + 1):
        acc = a.ring.zero()
        for i in range(d + 1):
            acc = acc + a.part(i) * b.part(d - i)
        parts.append(acc)
    return ChernSeries(a.ring, a.rank + b.rank, parts)


def inverse(s):
    """Series inverse: whitney(s, inverse(s)) = 1 up to truncation."""
    if s.part(0) != s.ring.one():
        raise NonUnitLeadingTerm("series must start with 1")
    T = s.ring.truncation
    parts = [s.ring.one()]
    for d in range(1, T + 1):
        acc = s.ring.zero()
        for i in range(1, d + 1):
            acc = acc + s.part(i) * parts[d - i]
        parts.append(-acc)
    return ChernSeries(s.ring, -s.rank, parts)


def quotient(a, b):
    """c(a - b) of the virtual difference, as whitney(a, inverse(b))."""
    out = whitney(a, inverse(b))
    return ChernSeries(a.ring, a.rank - b.rank, out.parts)


def chern_of_extension(sub, quot):
    """Total Chern class of the middle of 0 -> sub -> ? -> quot -> 0."""
    return whitney(sub, quot)


def porteous(cE, cF, e, f, k):
    """Class of the locus where a map E -> F drops to rank <= k.

    Computed as the (e-k) x (e-k) determinant with (i, j) entry
    c_{(f-k)+j-i} of the difference series c(F - E); the result is
    homogeneous of the expected codimension (e-k)(f-k).
    """
    if not (0 <= k < min(e, f)):
        raise BadRanks("need 0 <= k < min(e, f), got e=%d f=%d k=%d" % (e, f, k))
    p, q = e - k, f - k
    expected = p * q
    ring = cE.ring
    if ring.truncation < expected:
        raise TruncationTooSmall("expected codimension %d exceeds truncation %d"
                                 % (expected, ring.truncation))
    diff = quotient(cF, cE)
    rows = [[diff.part(q + j - i) for j in range(p)] for i in range(p)]
    return _det(rows, ring)


def _det(rows, ring):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = ring.zero()
    sign = 1
    for j in range(n):
        minor = [[rows[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        out = out + sign * rows[0][j] * _det(minor, ring)
        sign = -sign
    return out
