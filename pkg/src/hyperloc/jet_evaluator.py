"""First-order jets of the canonical basis on a hyperelliptic genus-3 curve.

The curve is y^2 = f(x) with f squarefree of degree exactly 8 over an exact
field of characteristic != 2 (so both points above x = infinity are
ordinary, and the branch points are exactly the affine points with y = 0).
At a point P, expanding the three differentials dx/y, x dx/y, x^2 dx/y in a
local parameter t as g(t) dt and keeping (g(0), g'(0)) gives a 2x3 matrix;
its rank drops below 2 precisely at the branch points, which are the
Weierstrass points of the curve.

At a branch point (a, 0) the local parameter is t with x = a + t^2 and
y = t h(t), where h is the square root of f(a + t^2)/t^2 lifted from
h(0)^2 = f'(a) by Newton (quadratic Hensel) iteration; when f'(a) is not a
square the computation moves to the quadratic extension by its square root,
which does not change the rank.
"""

from fractions import Fraction

from .fields import QQ, FieldCharTwo, PrimeField, QuadraticExtension


class CharTwo(FieldCharTwo):
    pass


class PointNotOnCurve(ValueError):
    pass


# ---------------------------------------------------------------------------
# truncated univariate series, as coefficient lists of fixed length


def ser_trunc(a, n, field):
    a = list(a[:n])
    return a + [field.zero] * (n - len(a))


def ser_add(a, b, field):
    n = max(len(a), len(b))
    a, b = ser_trunc(a, n, field), ser_trunc(b, n, field)
    return [x + y for x, y in zip(a, b)]


def ser_mul(a, b, n, field):
    out = [field.zero] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[:n - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def ser_inv(a, n, field):
    """Multiplicative inverse of a series with unit constant term."""
    if not a[0]:
        raise ZeroDivisionError("series has no constant term")
    g = [field.one / a[0]]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ag = ser_mul(ser_trunc(a, prec, field), ser_trunc(g, prec, field),
                     prec, field)
        two_minus = [2 * field.one - ag[0]] + [-c for c in ag[1:]]
        g = ser_mul(ser_trunc(g, prec, field), two_minus, prec, field)
    return ser_trunc(g, n, field)


def hensel_sqrt(a, n, field, sqrt0):
    """Square root of a series by quadratic Hensel lifting.

    ``sqrt0`` must satisfy sqrt0^2 = a[0] and be nonzero; each Newton step
    h -> (h + a/h)/2 doubles the precision.  Characteristic 2 is refused.
    """
    if field.char == 2:
        raise CharTwo("Hensel square root needs characteristic != 2")
    if not sqrt0 or sqrt0 * sqrt0 != a[0]:
        raise ValueError("sqrt0 must be a nonzero square root of the constant term")
    half = field.of(Fraction(1, 2))
    h = [sqrt0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ah = ser_mul(ser_trunc(a, prec, field),
                     ser_inv(ser_trunc(h, prec, field), prec, field), prec, field)
        h = [(x + y) * half for x, y in zip(ser_trunc(h, prec, field), ah)]
    return ser_trunc(h, n, field)


def ser_compose(a, t, n, field):
    """a(t(s)) truncated at order n; t must have no constant term."""
    if t[0]:
        raise ValueError("inner series must vanish at 0")
    out = [field.zero] * n
    for coeff in reversed(ser_trunc(a, n, field)):
        out = ser_mul(out, ser_trunc(t, n, field), n, field)
        out[0] = out[0] + coeff
    return out


# ---------------------------------------------------------------------------
# dense univariate polynomials (coefficient lists, ascending)


def poly_eval(coeffs, x, field):
    acc = field.zero
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs, field):
    return [i * field.one * c for i, c in enumerate(coeffs)][1:] or [field.zero]


def _poly_strip(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    return coeffs


def _poly_rem(a, b, field):
    a = list(a)
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a = _poly_strip(a)
        if not a:
            break
    return a


def poly_gcd_degree(a, b, field):
    """Degree of gcd(a, b); -1 for the gcd of two zero polynomials."""
    a, b = _poly_strip(list(a)), _poly_strip(list(b))
    while b:
        a = _poly_rem(a, b, field)
        a, b = b, a
    return len(a) - 1


def poly_taylor(coeffs, a, n, field):
    """Series of f(a + t) to order n."""
    shift = [a, field.one]  # a + t
    out = [field.zero] * n
    for c in reversed(coeffs):
        out = ser_mul(out, ser_trunc(shift, n, field), n, field)
        out[0] = out[0] + c
    return out


# ---------------------------------------------------------------------------


class HyperellipticCurve:
    """y^2 = f(x), f squarefree of degree 8 over a field of char != 2."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field=QQ):
        if field.char == 2:
            raise CharTwo("hyperelliptic model needs characteristic != 2")
        coeffs = [field.of(c) if isinstance(c, (int, Fraction)) else c
                  for c in coeffs]
        if len(coeffs) != 9 or not coeffs[8]:
            raise ValueError("f must have degree exactly 8")
        self.field = field
        self.coeffs = tuple(coeffs)
        fp = poly_derivative(list(coeffs), field)
        if poly_gcd_degree(list(coeffs), fp, field) != 0:
            raise ValueError("f must be squarefree")

    @classmethod
    def from_roots(cls, roots, field=QQ, lead=1):
        """lead * (x - r_1) * ... * (x - r_8)."""
        if len(roots) != 8:
            raise ValueError("need 8 roots")
        coeffs = [field.of(lead)]
        for r in roots:
            r = field.of(r) if isinstance(r, (int, Fraction)) else r
            nxt = [field.zero] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - r * c
            coeffs = nxt
        return cls(coeffs, field)

    def f_at(self, x):
        field = _field_of(self, x)
        return poly_eval([field.of(c) for c in self.coeffs], x, field)

    def fprime_at(self, x):
        field = _field_of(self, x)
        coeffs = [field.of(c) for c in self.coeffs]
        return poly_eval(poly_derivative(coeffs, field), x, field)

    def point(self, x, y, field=None):
        field = field or self.field
        x = field.of(x) if isinstance(x, (int, Fraction)) else x
        y = field.of(y) if isinstance(y, (int, Fraction)) else y
        p = CurvePoint(x, y, field)
        fx = self.f_at(x)
        if y * y != fx:
            raise PointNotOnCurve("y^2 = %r but f(x) = %r" % (y * y, fx))
        return p

    def point_from_x(self, x):
        """Point above x, extending the field by sqrt(f(x)) if needed."""
        x = self.field.of(x) if isinstance(x, (int, Fraction)) else x
        fx = self.f_at(x)
        y = self.field.sqrt(fx)
        if y is not None:
            return self.point(x, y)
        ext = QuadraticExtension(self.field, fx)
        return self.point(ext.of(x), ext.root, field=ext)

    def is_branch_x(self, x):
        return not self.f_at(x)

    def all_affine_points(self):
        """Every (x, y) with y^2 = f(x); finite base fields only."""
        if not isinstance(self.field, PrimeField):
            raise ValueError("full enumeration needs a finite field")
        points = []
        for x in self.field.elements():
            fx = self.f_at(x)
            if not fx:
                points.append(self.point(x, self.field.zero))
                continue
            y = self.field.sqrt(fx)
            if y is not None:
                points.append(self.point(x, y))
                points.append(self.point(x, -y))
        return points

    def __repr__(self):
        return "HyperellipticCurve(y^2 = f(x), deg 8 over %r)" % (self.field,)


def _field_of(curve, x):
    """Field an x-coordinate lives in (possibly an extension of the curve's)."""
    if isinstance(x, (int, Fraction)):
        return curve.field
    f = getattr(x, "field", None)
    if isinstance(f, QuadraticExtension):
        return f
    if hasattr(x, "p"):  # prime-field element
        return PrimeField(x.p)
    return curve.field


class CurvePoint:
    __slots__ = ("x", "y", "field")

    def __init__(self, x, y, field):
        self.x = x
        self.y = y
        self.field = field

    @property
    def is_branch(self):
        return not self.y

    def involution(self):
        return CurvePoint(self.x, -self.y, self.field)

    def __eq__(self, other):
        return (isinstance(other, CurvePoint) and other.x == self.x
                and other.y == self.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "(%s, %s)" % (self.x, self.y)


class JetMatrix:
    """Values and first derivatives of the canonical basis at a point."""

    __slots__ = ("rows", "field")

    def __init__(self, rows, field):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 2x3 matrix")
        self.rows = rows
        self.field = field

    def rank(self):
        (a, b, c), (d, e, f) = self.rows
        if any((a * e - b * d, a * f - c * d, b * f - c * e)):
            return 2
        if any((a, b, c, d, e, f)):
            return 1
        return 0

    def __repr__(self):
        return "JetMatrix(%r)" % (self.rows,)


def _expansions(curve, point, n):
    """Series (x(t), g_1, g_2, g_3) at the point, to order n.

    g_i dt is the expansion of x^(i-1) dx / y in the local parameter t,
    which is x - x0 at an ordinary point and the square root of x - a at a
    branch point.  Returns (field, gs); the field may be a quadratic
    extension of the point's when the branch expansion requires one.
    """
    field = point.field
    coeffs = [field.of(c) for c in curve.coeffs]
    if point.is_branch:
        a = point.x
        d = curve.fprime_at(a)
        s0 = field.sqrt(d)
        if s0 is None:
            field = QuadraticExtension(field, d)
            coeffs = [field.of(c) for c in coeffs]
            a = field.of(a)
            s0 = field.root
        # x = a + t^2, y = t h(t) with h^2 = f(a + t^2)/t^2
        f_shift = poly_taylor(coeffs, a, n + 1, field)  # f(a + s)
        assert not f_shift[0], "branch point has f(a) = 0"
        # substitute s = t^2 and divide by t^2: even series in t
        F = ser_trunc([f_shift[1 + i // 2] if i % 2 == 0 else field.zero
                       for i in range(n)], n, field)
        h = hensel_sqrt(F, n, field, s0)
        x_ser = ser_trunc([a, field.zero, field.one], n, field)
        # x^(i-1) * x'(t) / y(t) = x^(i-1) * 2t / (t h) = 2 x^(i-1) / h
        base = [2 * c for c in ser_inv(h, n, field)]
    else:
        x0, y0 = point.x, point.y
        f_shift = poly_taylor(coeffs, x0, n, field)
        y_ser = hensel_sqrt(f_shift, n, field, y0)
        x_ser = ser_trunc([x0, field.one], n, field)
        base = ser_inv(y_ser, n, field)
    gs = []
    g = base
    for _ in range(3):
        gs.append(g)
        g = ser_mul(g, x_ser, n, field)
    return field, gs


def jet_matrix(curve, point, reparam=None):
    """2x3 matrix of (value, derivative) of the canonical basis at a point.

    ``reparam=(c, d)`` recomputes the jets in the local parameter
    t = c s + d s^2 (c a unit), which changes the matrix but not its rank.
    """
    _check_point(curve, point)
    n = 4
    field, gs = _expansions(curve, point, n)
    if reparam is not None:
        c, d = reparam
        c, d = field.of(c), field.of(d)
        if not c:
            raise ValueError("reparametrization must be a unit")
        inner = ser_trunc([field.zero, c, d], n, field)
        dinner = ser_trunc([c, 2 * d], n, field)
        gs = [ser_mul(ser_compose(g, inner, n, field), dinner, n, field)
              for g in gs]
    return JetMatrix([[g[0] for g in gs], [g[1] for g in gs]], field)


def _check_point(curve, point):
    fx = curve.f_at(point.x)
    if point.y * point.y != fx:
        raise PointNotOnCurve("y^2 = %r but f(x) = %r" % (point.y * point.y, fx))


def degeneracy_rank(curve, point):
    """Rank of the jet matrix: 2 away from branch points, 1 at them."""
    return jet_matrix(curve, point).rank()


def weierstrass_scan(curve, candidates):
    """Ranks for a list of candidate points, in order."""
    return [(p, degeneracy_rank(curve, p)) for p in candidates]
