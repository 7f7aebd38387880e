"""Small expression language for Chern-class computations.

Grammar (LL, standard precedence: ^ over * / over + -, unary minus):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := atom (('^' | '**') factor)?
    atom    := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Two evaluators share the syntax: ``eval_poly`` reads an expression as a
commutative polynomial over declared variables (used for config files,
matrix entries and curve equations), while ``evaluate`` interprets the
Chern-class language (``c``, ``c1``/``c2``/..., ``dual``, ``inv``,
``part``, ``porteous``, ``push``, ``subst``) against a Setup environment,
after a type-checking pass distinguishing rationals, ring classes, Chern
series and base divisor classes.

The unicode aliases λ, δ0, δ1, κ lex as the names lambda, delta0, delta1,
kappa.
"""

from fractions import Fraction

from . import chern_calculus
from .family_model import BASE_NAMES, DivisorClassOnS


class ExprSyntaxError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


class ExprTypeError(TypeError):
    def __init__(self, message, pos=None):
        loc = " (line %d, column %d)" % pos if pos else ""
        super().__init__(message + loc)
        self.pos = pos


class ExprEvalError(ValueError):
    def __init__(self, message, pos, cause=None):
        loc = " (line %d, column %d)" % pos if pos else ""
        super().__init__(message + loc)
        self.pos = pos
        self.cause = cause


# ---------------------------------------------------------------------------
# lexer

_PUNCT = ("**", "->", "+", "-", "*", "/", "^", "(", ")", ",", "=")
_UNICODE_NAMES = {"λ": "lambda", "κ": "kappa"}


class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    @property
    def pos(self):
        return (self.line, self.col)

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.value)


def tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start = (line, col)
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("number", Fraction(text[i:j]), *start))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], *start))
            col += j - i
            i = j
            continue
        if ch in _UNICODE_NAMES:
            tokens.append(Token("name", _UNICODE_NAMES[ch], *start))
            i += 1
            col += 1
            continue
        if ch == "δ":
            if i + 1 < n and text[i + 1] in "01":
                tokens.append(Token("name", "delta" + text[i + 1], *start))
                i += 2
                col += 2
                continue
            raise ExprSyntaxError("expected 0 or 1 after δ", line, col)
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token(p, p, *start))
                i += len(p)
                col += len(p)
                break
        else:
            raise ExprSyntaxError("unexpected character %r" % ch, line, col)
    tokens.append(Token("end", None, line, col))
    return tokens


# ---------------------------------------------------------------------------
# AST


class Node:
    __slots__ = ("pos",)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return all(getattr(self, f) == getattr(other, f)
                   for f in self._fields)

    def __hash__(self):
        return hash((type(self).__name__,
                     tuple(getattr(self, f) for f in self._fields)))

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__,
                           ", ".join(repr(getattr(self, f)) for f in self._fields))


class Num(Node):
    __slots__ = ("value",)
    _fields = ("value",)

    def __init__(self, value, pos=None):
        self.value = Fraction(value)
        self.pos = pos


class Name(Node):
    __slots__ = ("id",)
    _fields = ("id",)

    def __init__(self, id, pos=None):
        self.id = id
        self.pos = pos


class Call(Node):
    __slots__ = ("fn", "args")
    _fields = ("fn", "args")

    def __init__(self, fn, args, pos=None):
        self.fn = fn
        self.args = tuple(args)
        self.pos = pos


class Bin(Node):
    __slots__ = ("op", "left", "right")
    _fields = ("op", "left", "right")

    def __init__(self, op, left, right, pos=None):
        self.op = op
        self.left = left
        self.right = right
        self.pos = pos


class Neg(Node):
    __slots__ = ("operand",)
    _fields = ("operand",)

    def __init__(self, operand, pos=None):
        self.operand = operand
        self.pos = pos


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.cur
        self.i += 1
        return tok

    def expect(self, kind):
        if self.cur.kind != kind:
            raise ExprSyntaxError("expected %r, found %s" % (kind, self._show()),
                                  self.cur.line, self.cur.col)
        return self.advance()

    def _show(self):
        tok = self.cur
        return "end of input" if tok.kind == "end" else repr(str(tok.value))

    def parse_expr(self):
        node = self.parse_term()
        while self.cur.kind in ("+", "-"):
            op = self.advance()
            right = self.parse_term()
            node = Bin(op.kind, node, right, op.pos)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.cur.kind in ("*", "/"):
            op = self.advance()
            right = self.parse_factor()
            node = Bin(op.kind, node, right, op.pos)
        return node

    def parse_factor(self):
        if self.cur.kind == "-":
            op = self.advance()
            return Neg(self.parse_factor(), op.pos)
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        if self.cur.kind in ("^", "**"):
            op = self.advance()
            right = self.parse_factor()
            node = Bin("^", node, right, op.pos)
        return node

    def parse_atom(self):
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return Num(tok.value, tok.pos)
        if tok.kind == "name":
            self.advance()
            if self.cur.kind == "(":
                self.advance()
                args = [self.parse_argument()]
                while self.cur.kind == ",":
                    self.advance()
                    args.append(self.parse_argument())
                self.expect(")")
                return Call(tok.value, args, tok.pos)
            return Name(tok.value, tok.pos)
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise ExprSyntaxError("expected expression, found %s" % self._show(),
                              tok.line, tok.col)

    def parse_argument(self):
        if self.cur.kind in (")", ","):
            raise ExprSyntaxError("expected expression, found %s" % self._show(),
                                  self.cur.line, self.cur.col)
        return self.parse_expr()


def parse(text):
    """Parse source text to an AST (or raise ExprSyntaxError with location)."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    if parser.cur.kind != "end":
        raise ExprSyntaxError("unexpected %s after expression" % parser._show(),
                              parser.cur.line, parser.cur.col)
    return node


# ---------------------------------------------------------------------------
# rendering (canonical, reparses to an equal AST)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 2, "^": 3}


def render(node):
    return _render(node, 0)


def _render(node, parent_prec):
    if isinstance(node, Num):
        text = str(node.value)
        return "(%s)" % text if node.value < 0 and parent_prec > 1 else text
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Call):
        return "%s(%s)" % (node.fn, ", ".join(_render(a, 0) for a in node.args))
    if isinstance(node, Neg):
        text = "-" + _render(node.operand, _PREC["neg"])
        return "(%s)" % text if parent_prec >= _PREC["neg"] else text
    if isinstance(node, Bin):
        prec = _PREC[node.op]
        left = _render(node.left, prec)
        # - and / do not associate on the right
        right = _render(node.right, prec + (0 if node.op in ("+", "*") else 1))
        text = "%s %s %s" % (left, node.op, right) if node.op in ("+", "-") \
            else "%s%s%s" % (left, node.op, right)
        return "(%s)" % text if prec < parent_prec else text
    raise TypeError("not an AST node: %r" % (node,))


# ---------------------------------------------------------------------------
# polynomial evaluation (shared by config files, germ matrices, curves)


def eval_poly(node, variables):
    """Evaluate an AST as a polynomial over the ordered variable list.

    Returns {exponent tuple: Fraction}.  Function calls are rejected;
    division only by constants; exponents must be non-negative integers.
    """
    index = {v: i for i, v in enumerate(variables)}
    nvars = len(variables)
    unit = (0,) * nvars

    def ev(n):
        if isinstance(n, Num):
            return {unit: n.value} if n.value else {}
        if isinstance(n, Name):
            if n.id not in index:
                raise ExprTypeError("unknown variable %r" % n.id, n.pos)
            e = list(unit)
            e[index[n.id]] = 1
            return {tuple(e): Fraction(1)}
        if isinstance(n, Neg):
            return {e: -c for e, c in ev(n.operand).items()}
        if isinstance(n, Call):
            raise ExprTypeError("function %r not allowed in a polynomial" % n.fn,
                                n.pos)
        if isinstance(n, Bin):
            if n.op in ("+", "-"):
                left, right = ev(n.left), ev(n.right)
                out = dict(left)
                for e, c in right.items():
                    c = out.get(e, Fraction(0)) + (c if n.op == "+" else -c)
                    if c:
                        out[e] = c
                    elif e in out:
                        del out[e]
                return out
            if n.op == "*":
                left, right = ev(n.left), ev(n.right)
                out = {}
                for e1, c1 in left.items():
                    for e2, c2 in right.items():
                        e = tuple(a + b for a, b in zip(e1, e2))
                        c = out.get(e, Fraction(0)) + c1 * c2
                        if c:
                            out[e] = c
                        elif e in out:
                            del out[e]
                return out
            if n.op == "/":
                left, right = ev(n.left), ev(n.right)
                if set(right) - {unit}:
                    raise ExprTypeError("can only divide by a constant", n.pos)
                d = right.get(unit, Fraction(0))
                if not d:
                    raise ExprTypeError("division by zero", n.pos)
                return {e: c / d for e, c in left.items()}
            if n.op == "^":
                left = ev(n.left)
                exp = n.right
                if isinstance(exp, Num) and exp.value.denominator == 1 \
                        and exp.value >= 0:
                    out = {unit: Fraction(1)}
                    for _ in range(int(exp.value)):
                        out = _poly_mul(out, left)
                    return out
                raise ExprTypeError("exponent must be a non-negative integer",
                                    n.pos)
        raise ExprTypeError("unsupported expression", getattr(n, "pos", None))

    def _poly_mul(a, b):
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = out.get(e, Fraction(0)) + c1 * c2
                if c:
                    out[e] = c
                elif e in out:
                    del out[e]
        return out

    return ev(node)


# ---------------------------------------------------------------------------
# typed Chern-language evaluation

RATIONAL, CLASS, SERIES, BASECLASS = "rational", "class", "series", "baseclass"

_SERIES_FNS = {"dual", "inv"}


class Env:
    """Evaluation environment: a ring, its bundles, and base-class rules."""

    def __init__(self, ring, bundles=(), pushforward=None, subst=None):
        self.ring = ring
        self.bundles = dict(bundles)
        self.pushforward = pushforward
        self.subst = subst  # DivisorClassOnS replacing kappa
        self.generators = {g.name for g in ring.generators}


def _int_literal(node, what):
    if isinstance(node, Num) and node.value.denominator == 1:
        return int(node.value)
    raise ExprTypeError("%s must be an integer literal" % what,
                        getattr(node, "pos", None))


def typecheck(node, env):
    """Type of the expression, or ExprTypeError with a location."""
    if isinstance(node, Num):
        return RATIONAL
    if isinstance(node, Name):
        if node.id in env.generators:
            return CLASS
        if node.id in BASE_NAMES:
            return BASECLASS
        if node.id in env.bundles:
            raise ExprTypeError("bundle %r used outside c()/ci()/porteous()"
                                % node.id, node.pos)
        raise ExprTypeError("unknown name %r" % node.id, node.pos)
    if isinstance(node, Neg):
        return typecheck(node.operand, env)
    if isinstance(node, Call):
        return _typecheck_call(node, env)
    if isinstance(node, Bin):
        if node.op == "^":
            base = typecheck(node.left, env)
            _int_literal(node.right, "exponent")
            if base in (CLASS, RATIONAL):
                return base
            raise ExprTypeError("cannot raise a %s to a power" % base, node.pos)
        lt, rt = typecheck(node.left, env), typecheck(node.right, env)
        if node.op in ("+", "-"):
            if lt == rt and lt in (RATIONAL, CLASS, BASECLASS):
                return lt
            if {lt, rt} == {RATIONAL, CLASS}:
                return CLASS
            raise ExprTypeError("cannot combine %s and %s with %r"
                                % (lt, rt, node.op), node.pos)
        if node.op == "*":
            if lt == RATIONAL:
                return rt if rt != SERIES else _reject_series_scale(node)
            if rt == RATIONAL:
                return lt if lt != SERIES else _reject_series_scale(node)
            if lt == rt == CLASS:
                return CLASS
            if lt == rt == SERIES:
                return SERIES
            raise ExprTypeError("cannot multiply %s and %s" % (lt, rt), node.pos)
        if node.op == "/":
            if rt != RATIONAL:
                raise ExprTypeError("can only divide by a rational", node.pos)
            if lt in (RATIONAL, CLASS, BASECLASS):
                return lt
            raise ExprTypeError("cannot divide a %s" % lt, node.pos)
    raise ExprTypeError("unsupported expression", getattr(node, "pos", None))


def _reject_series_scale(node):
    raise ExprTypeError("a Chern series cannot be scaled; scale a part instead",
                        node.pos)


def _bundle_arg(node, env, fn):
    if not isinstance(node, Name) or node.id not in env.bundles:
        raise ExprTypeError("%s expects a declared bundle name" % fn,
                            getattr(node, "pos", None))
    return node.id


def _typecheck_call(node, env):
    fn, args = node.fn, node.args
    if fn == "c":
        if len(args) != 1:
            raise ExprTypeError("c() takes one bundle", node.pos)
        _bundle_arg(args[0], env, "c")
        return SERIES
    if len(fn) > 1 and fn[0] == "c" and fn[1:].isdigit():
        if len(args) != 1:
            raise ExprTypeError("%s() takes one bundle" % fn, node.pos)
        _bundle_arg(args[0], env, fn)
        return CLASS
    if fn in _SERIES_FNS:
        if len(args) != 1 or typecheck(args[0], env) != SERIES:
            raise ExprTypeError("%s() takes one Chern series" % fn, node.pos)
        return SERIES
    if fn == "part":
        if len(args) != 2:
            raise ExprTypeError("part() takes a series or class and a degree",
                                node.pos)
        t = typecheck(args[0], env)
        if t not in (SERIES, CLASS):
            raise ExprTypeError("part() applies to a series or class", node.pos)
        _int_literal(args[1], "degree")
        return CLASS
    if fn == "porteous":
        if len(args) != 3:
            raise ExprTypeError("porteous() takes two bundles and a rank",
                                node.pos)
        _bundle_arg(args[0], env, "porteous")
        _bundle_arg(args[1], env, "porteous")
        _int_literal(args[2], "rank bound")
        return CLASS
    if fn == "push":
        if env.pushforward is None:
            raise ExprTypeError("no pushforward rules configured", node.pos)
        if len(args) != 1 or typecheck(args[0], env) != CLASS:
            raise ExprTypeError("push() takes one class", node.pos)
        return BASECLASS
    if fn == "subst":
        if env.subst is None:
            raise ExprTypeError("no substitution configured", node.pos)
        if len(args) != 1 or typecheck(args[0], env) != BASECLASS:
            raise ExprTypeError("subst() takes one base class", node.pos)
        return BASECLASS
    raise ExprTypeError("unknown function %r" % fn, node.pos)


def evaluate(node, env):
    """Evaluate a type-checked expression; returns (value, type)."""
    t = typecheck(node, env)
    return _eval(node, env), t


def _guard(node, fn):
    try:
        return fn()
    except (ExprEvalError, ExprTypeError):
        raise
    except (ValueError, ArithmeticError) as e:
        raise ExprEvalError(str(e), getattr(node, "pos", None), e) from e


def _eval(node, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        if node.id in env.generators:
            return env.ring.gen(node.id)
        return DivisorClassOnS({node.id: 1})
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        return _eval_call(node, env)
    if isinstance(node, Bin):
        if node.op == "^":
            base = _eval(node.left, env)
            exp = _int_literal(node.right, "exponent")
            return _guard(node, lambda: base ** exp)
        left, right = _eval(node.left, env), _eval(node.right, env)
        if node.op == "+":
            return _guard(node, lambda: left + right)
        if node.op == "-":
            return _guard(node, lambda: left - right)
        if node.op == "*":
            if isinstance(left, chern_calculus.ChernSeries):
                return _guard(node, lambda: chern_calculus.whitney(left, right))
            return _guard(node, lambda: left * right)
        if node.op == "/":
            return _guard(node, lambda: left / right)
    raise ExprTypeError("unsupported expression", getattr(node, "pos", None))


def _eval_call(node, env):
    fn, args = node.fn, node.args
    if fn == "c":
        return env.bundles[args[0].id]
    if len(fn) > 1 and fn[0] == "c" and fn[1:].isdigit():
        series = env.bundles[args[0].id]
        return _guard(node, lambda: series.part(int(fn[1:])))
    if fn == "dual":
        return _guard(node, lambda: chern_calculus.dual(_eval(args[0], env)))
    if fn == "inv":
        return _guard(node, lambda: chern_calculus.inverse(_eval(args[0], env)))
    if fn == "part":
        value = _eval(args[0], env)
        d = _int_literal(args[1], "degree")
        if isinstance(value, chern_calculus.ChernSeries):
            if d < 0 or d > value.ring.truncation:
                raise ExprEvalError("degree %d out of range" % d, node.pos)
            return value.part(d)
        return _guard(node, lambda: value.graded_part(d))
    if fn == "porteous":
        cE = env.bundles[args[0].id]
        cF = env.bundles[args[1].id]
        k = _int_literal(args[2], "rank bound")
        return _guard(node, lambda: chern_calculus.porteous(
            cE, cF, cE.rank, cF.rank, k))
    if fn == "push":
        value = _eval(args[0], env)
        return _guard(node, lambda: env.pushforward.apply(value))
    if fn == "subst":
        value = _eval(args[0], env)
        return _guard(node, lambda: value.substitute_kappa(env.subst))
    raise ExprTypeError("unknown function %r" % fn, node.pos)
