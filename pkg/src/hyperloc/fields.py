"""Exact coefficient fields: the rationals, odd prime fields, and quadratic
extensions of either.

Field objects convert rationals into their elements (``field.of``), test for
square roots (``field.sqrt`` returns an element or None), and report their
characteristic.  Elements are immutable and support the usual arithmetic
operators; rationals are plain ``fractions.Fraction`` values.
"""

from fractions import Fraction
from math import isqrt


class FieldCharTwo(ValueError):
    """A computation that requires characteristic != 2 was given char 2."""


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field of rational numbers; elements are ``Fraction``."""

    char = 0

    def of(self, x):
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def sqrt(self, a):
        """Exact rational square root of ``a``, or None."""
        a = Fraction(a)
        if a < 0:
            return None
        rn, rd = isqrt(a.numerator), isqrt(a.denominator)
        if rn * rn == a.numerator and rd * rd == a.denominator:
            return Fraction(rn, rd)
        return None

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Fp:
    """Element of a prime field, reduced to 0..p-1."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("elements of different prime fields")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._lift(other)
            return self.v == o.v
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


class PrimeField:
    """F_p for an odd prime p (p = 2 is representable but most engines
    reject it; see FieldCharTwo)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("%r is not prime" % (p,))
        self.p = p
        self.char = p

    def of(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("element of wrong prime field")
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError("denominator divisible by %d" % self.p)
        return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def sqrt(self, a):
        """A square root of ``a`` in F_p via Tonelli-Shanks, or None."""
        a = self.of(a)
        p = self.p
        if a.v == 0:
            return Fp(0, p)
        if p == 2:
            return Fp(a.v, p)
        if pow(a.v, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return Fp(pow(a.v, (p + 1) // 4, p), p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a.v, q, p), pow(a.v, (q + 1) // 2, p)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return Fp(r, p)

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


class QuadElem:
    """Element a + b*s of a quadratic extension, where s*s = d in the base."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field):
        self.a = a
        self.b = b
        self.field = field

    def _lift(self, other):
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise ValueError("elements of different quadratic extensions")
            return other
        try:
            return self.field.of(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.d
        return QuadElem(self.a * o.a + self.b * o.b * d,
                        self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        # (a + b s)^-1 = (a - b s)/(a^2 - b^2 d); nonzero since d is a non-square
        n = o.a * o.a - o.b * o.b * self.field.d
        if not n:
            raise ZeroDivisionError("division by zero in quadratic extension")
        return QuadElem((self.a * o.a - self.b * o.b * self.field.d) / n,
                        (self.b * o.a - self.a * o.b) / n, self.field)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else o / self

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if not self.b:
            return str(self.a)
        s = "s" if self.b == 1 else "%s*s" % self.b
        return s if not self.a else "(%s + %s)" % (self.a, s)


class QuadraticExtension:
    """base(s) with s*s = d, for d a non-square in the base field."""

    def __init__(self, base, d):
        d = base.of(d)
        if base.sqrt(d) is not None:
            raise ValueError("%r is a square in %r; use the base field" % (d, base))
        self.base = base
        self.d = d
        self.char = base.char

    @property
    def root(self):
        """The adjoined square root s of d."""
        return QuadElem(self.base.zero, self.base.one, self)

    def of(self, x):
        if isinstance(x, QuadElem):
            if x.field != self:
                raise ValueError("element of a different extension")
            return x
        return QuadElem(self.base.of(x), self.base.zero, self)

    @property
    def zero(self):
        return QuadElem(self.base.zero, self.base.zero, self)

    @property
    def one(self):
        return QuadElem(self.base.one, self.base.zero, self)

    def sqrt(self, a):
        a = self.of(a)
        if a.b:
            return None  # not needed; only base-field values are queried
        r = self.base.sqrt(a.a)
        if r is not None:
            return self.of(r)
        r = self.base.sqrt(a.a / self.d)
        if r is not None:
            return QuadElem(self.base.zero, r, self)
        return None

    def __eq__(self, other):
        return (isinstance(other, QuadraticExtension)
                and other.base == self.base and other.d == self.d)

    def __hash__(self):
        return hash(("quadext", self.base, self.d))

    def __repr__(self):
        return "%r(sqrt(%r))" % (self.base, self.d)


def require_char_not_two(field):
    if field.char == 2:
        raise FieldCharTwo("ground field must have characteristic != 2")
