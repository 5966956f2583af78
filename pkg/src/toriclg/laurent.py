"""Sparse Laurent polynomials over exact rationals with formal parameters.

Coefficients are polynomials in named parameters (never Laurent in the
parameters: exponents stay nonnegative, which is the algebraic shadow of
the limits this toolkit takes). Monomial exponents are integer vectors.
Parameter name lists are kept sorted for canonical serialization.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInput, InvalidMatrix, ParseError, UnknownParam
from .geometry import HullDescription, hull_vertices
from .linalg import det


class ParamPoly:
    """A polynomial in the formal parameters, exact rational coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        self.params = tuple(params)
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.params):
                raise ValueError("parameter exponent length mismatch")
            if any(e < 0 for e in exp):
                raise ValueError("parameters only appear polynomially (exponents >= 0)")
            q = Fraction(coeff)
            if q != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + q
        self.terms = {e: q for e, q in clean.items() if q != 0}

    @classmethod
    def const(cls, params, value):
        value = Fraction(value)
        zero = (0,) * len(tuple(params))
        return cls(params, {zero: value} if value else {})

    @classmethod
    def variable(cls, params, name):
        params = tuple(params)
        exp = tuple(int(p == name) for p in params)
        if sum(exp) != 1:
            raise UnknownParam(f"parameter {name!r} not among {params}")
        return cls(params, {exp: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def as_fraction(self):
        """The constant value; raises when parameters genuinely appear."""
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.params)
        if set(self.terms) == {zero}:
            return self.terms[zero]
        raise ValueError(f"coefficient {self} still carries parameters")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(self.params, other)
        assert self.params == other.params
        out = dict(self.terms)
        for e, q in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + q
        return ParamPoly(self.params, out)

    def __neg__(self):
        return ParamPoly(self.params, {e: -q for e, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return ParamPoly(self.params, {e: c * q for e, c in self.terms.items()})
        assert self.params == other.params
        out = {}
        for e1, q1 in self.terms.items():
            for e2, q2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + q1 * q2
        return ParamPoly(self.params, out)

    __rmul__ = __mul__

    def substitute(self, assignments, new_params):
        """Evaluate some parameters at rationals, keeping the rest formal."""
        new_params = tuple(new_params)
        pos = {p: i for i, p in enumerate(new_params)}
        out = {}
        for exp, q in self.terms.items():
            val = q
            new_exp = [0] * len(new_params)
            ok = True
            for p, e in zip(self.params, exp):
                if p in assignments:
                    a = Fraction(assignments[p])
                    if e > 0:
                        if a == 0:
                            ok = False
                            break
                        val *= a**e
                else:
                    new_exp[pos[p]] = e
            if ok and val != 0:
                key = tuple(new_exp)
                out[key] = out.get(key, Fraction(0)) + val
        return ParamPoly(new_params, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(self.params, other)
        return isinstance(other, ParamPoly) and self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms):
            q = self.terms[exp]
            factors = []
            for p, e in zip(self.params, exp):
                if e == 1:
                    factors.append(p)
                elif e > 1:
                    factors.append(f"{p}^{e}")
            if not factors:
                parts.append(str(q))
            elif q == 1:
                parts.append("*".join(factors))
            elif q == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(q)] + factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


VAR_ALIASES = ("x", "y", "z", "w")


def _var_name(i, dim):
    if dim <= 4:
        return VAR_ALIASES[i]
    return f"x{i + 1}"


class LaurentPoly:
    """Sparse Laurent polynomial: integer exponent vectors to ParamPoly."""

    __slots__ = ("dim", "params", "terms")

    def __init__(self, dim, params, terms):
        self.dim = int(dim)
        if self.dim < 1:
            raise DegenerateInput("Laurent polynomials need dimension >= 1")
        self.params = tuple(params)
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.dim:
                raise DegenerateInput("exponent length does not match dimension")
            if isinstance(coeff, (int, Fraction)):
                coeff = ParamPoly.const(self.params, coeff)
            if coeff.params != self.params:
                raise ValueError("coefficient parameter list mismatch")
            if not coeff.is_zero():
                prev = clean.get(exp)
                clean[exp] = coeff if prev is None else prev + coeff
        self.terms = {e: c for e, c in clean.items() if not c.is_zero()}

    @classmethod
    def zero(cls, dim, params=()):
        return cls(dim, params, {})

    @classmethod
    def monomial(cls, dim, exp, coeff=1, params=()):
        return cls(dim, params, {tuple(exp): coeff})

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def with_params(self, params):
        """Re-embed over a larger (sorted) parameter list."""
        params = tuple(params)
        if params == self.params:
            return self
        if not set(self.params) <= set(params):
            raise UnknownParam("cannot drop parameters by re-embedding")
        out = {}
        for exp, c in self.terms.items():
            mapped = {}
            pos = {p: i for i, p in enumerate(params)}
            for pexp, q in c.terms.items():
                new = [0] * len(params)
                for p, e in zip(self.params, pexp):
                    new[pos[p]] = e
                mapped[tuple(new)] = q
            out[exp] = ParamPoly(params, mapped)
        return LaurentPoly(self.dim, params, out)

    def _aligned(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(self.dim, self.params, {(0,) * self.dim: other})
        params = tuple(sorted(set(self.params) | set(other.params)))
        return self.with_params(params), other.with_params(params)

    def __add__(self, other):
        a, b = self._aligned(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(a.dim, a.params, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.dim, self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._aligned(other)
        return a + (-b)

    def __mul__(self, other):
        a, b = self._aligned(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return LaurentPoly(a.dim, a.params, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers of general Laurent polynomials")
        result = LaurentPoly(self.dim, self.params, {(0,) * self.dim: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    def constant_term(self):
        zero = (0,) * self.dim
        return self.terms.get(zero, ParamPoly.const(self.params, 0))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.dim == b.dim and a.terms == b.terms

    def __hash__(self):
        return hash((self.dim, self.params, frozenset(self.terms)))

    def __str__(self):
        return serialize(self)

    __repr__ = __str__


def newton_polytope(f):
    """Vertices of the convex hull of the exponent vectors, lex sorted."""
    if f.is_zero():
        raise DegenerateInput("the zero polynomial has no Newton polytope")
    verts, _ = hull_vertices(f.support())
    return verts


def substitute_params(f, assignments):
    for p in assignments:
        if p not in f.params:
            raise UnknownParam(f"polynomial has no parameter {p!r}")
    remaining = tuple(p for p in f.params if p not in assignments)
    out = {}
    for exp, c in f.terms.items():
        nc = c.substitute(assignments, remaining)
        if not nc.is_zero():
            out[exp] = nc
    return LaurentPoly(f.dim, remaining, out)


def limit_drop(f, param):
    """Set one parameter to zero: the Laurent-level infinite-scaling limit.

    Identical to substitute_params({param: 0}); legal for every parameter
    because parameter exponents are nonnegative by construction.
    """
    if param not in f.params:
        raise UnknownParam(f"polynomial has no parameter {param!r}")
    return substitute_params(f, {param: 0})


def unimodular_substitution(f, m):
    """Monomial change of variables by a GL(dim, Z) matrix (row convention).

    Exponent vectors map as e -> e @ m.
    """
    rows = [list(r) for r in m]
    if len(rows) != f.dim or any(len(r) != f.dim for r in rows):
        raise InvalidMatrix("substitution matrix must be dim x dim")
    if abs(det(rows)) != 1:
        raise InvalidMatrix("substitution matrix must have determinant +-1")
    out = {}
    for exp, c in f.terms.items():
        new = tuple(sum(exp[i] * rows[i][j] for i in range(f.dim)) for j in range(f.dim))
        out[new] = c
    return LaurentPoly(f.dim, f.params, out)


@dataclass(frozen=True)
class PeriodSeries:
    """Constant terms of powers: coefficients[k] is the constant term of f^k.

    Under the period condition this sequence is the regularized quantum
    period, hence the marker.
    """

    coefficients: tuple
    regularized: bool = True

    def order(self):
        return len(self.coefficients) - 1

    def values(self):
        """Plain rational values; raises if parameters remain."""
        return [c.as_fraction() for c in self.coefficients]

    def substitute(self, assignments):
        remaining = tuple(
            p for p in (self.coefficients[0].params if self.coefficients else ()) if p not in assignments
        )
        return PeriodSeries(
            tuple(c.substitute(assignments, remaining) for c in self.coefficients),
            regularized=self.regularized,
        )

    def __str__(self):
        return "\n".join(f"{k}: {c}" for k, c in enumerate(self.coefficients))


def period_coefficients(f, n):
    """Exact constant terms of f^0 .. f^n by pruned sparse convolution.

    An exponent survives step k only if it can still reach the origin: it
    must lie in (n - k) times the reflected Newton polytope. That bound
    is a necessary condition, so pruning never changes the answer.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    one = ParamPoly.const(f.params, 1)
    if f.is_zero():
        return PeriodSeries((one,) + (ParamPoly.const(f.params, 0),) * n)
    hull = HullDescription(f.support())
    coeffs = [one]
    zero = (0,) * f.dim
    acc = {zero: one}
    for k in range(1, n + 1):
        remaining = n - k
        out = {}
        keep_cache = {}
        for e1, c1 in acc.items():
            for e2, c2 in f.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                keep = keep_cache.get(e)
                if keep is None:
                    keep = hull.contains_dilated([-x for x in e], remaining)
                    keep_cache[e] = keep
                if not keep:
                    continue
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        acc = {e: c for e, c in out.items() if not c.is_zero()}
        coeffs.append(acc.get(zero, ParamPoly.const(f.params, 0)))
    return PeriodSeries(tuple(coeffs))


# --- text form ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\*\*|[()+\-*/^])|(\d+)|([A-Za-z_][A-Za-z_0-9]*))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError(f"unexpected input at {rest[:12]!r}")
        op, num, ident = m.groups()
        if op == "**":
            out.append(("op", "^"))
        elif op:
            out.append(("op", op))
        elif num:
            out.append(("int", int(num)))
        else:
            out.append(("ident", ident))
        pos = m.end()
    return out


def _variable_index(name):
    if name in VAR_ALIASES:
        return VAR_ALIASES.index(name)
    m = re.fullmatch(r"x(\d+)", name)
    if m:
        return int(m.group(1)) - 1
    return None


class _Parser:
    def __init__(self, tokens, dim, params):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim
        self.params = params

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if kind and tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def parse_expr(self):
        sign = 1
        while self.peek() == ("op", "-") or self.peek() == ("op", "+"):
            if self.take()[1] == "-":
                sign = -sign
        result = self.parse_term() * sign
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.parse_term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def parse_term(self):
        result = self.parse_factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.parse_factor()
            if op == "*":
                result = result * rhs
            else:
                result = self._divide(result, rhs)
        return result

    def _divide(self, num, den):
        if len(den.terms) != 1:
            raise ParseError("division is only defined for monomial denominators")
        (exp, coeff), = den.terms.items()
        try:
            q = coeff.as_fraction()
        except ValueError:
            raise ParseError("denominator coefficients must be parameter-free") from None
        inv_exp = tuple(-e for e in exp)
        inverse = LaurentPoly(self.dim, self.params, {inv_exp: 1 / q})
        return num * inverse

    def parse_factor(self):
        base = self.parse_base()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            k = sign * self.take("int")[1]
            if k >= 0:
                return base**k
            one = LaurentPoly(self.dim, self.params, {(0,) * self.dim: 1})
            return self._divide(one, base) ** (-k)
        return base

    def parse_base(self):
        kind, value = self.peek()
        if kind == "op" and value == "(":
            self.take()
            inner = self.parse_expr()
            self.take("op", ")")
            return inner
        if kind == "op" and value == "-":
            self.take()
            return -self.parse_base()
        if kind == "int":
            self.take()
            return LaurentPoly(self.dim, self.params, {(0,) * self.dim: value})
        if kind == "ident":
            self.take()
            idx = _variable_index(value)
            if idx is not None:
                if idx >= self.dim:
                    raise ParseError(f"variable {value!r} exceeds dimension {self.dim}")
                exp = tuple(int(i == idx) for i in range(self.dim))
                return LaurentPoly(self.dim, self.params, {exp: 1})
            coeff = ParamPoly.variable(self.params, value)
            return LaurentPoly(self.dim, self.params, {(0,) * self.dim: coeff})
        raise ParseError(f"unexpected token {value!r}")


def parse(text, dim=None, params=None):
    """Parse a Laurent polynomial from text.

    Variables are x, y, z, w (or x1, x2, ...); every other identifier is
    a formal parameter. Dimension and parameter list are inferred when
    not supplied. Denominators must be parameter-free monomials.
    """
    tokens = _tokenize(text)
    max_var = 0
    names = set()
    for kind, value in tokens:
        if kind == "ident":
            idx = _variable_index(value)
            if idx is not None:
                max_var = max(max_var, idx + 1)
            else:
                names.add(value)
    if dim is None:
        dim = max_var if max_var else 1
    if params is None:
        params = tuple(sorted(names))
    else:
        params = tuple(params)
        if not names <= set(params):
            raise ParseError(f"parameters {sorted(names - set(params))} not declared")
    parser = _Parser(tokens, dim, params)
    if not tokens:
        raise ParseError("empty input")
    result = parser.parse_expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input from token {parser.pos}")
    return result


def serialize(f):
    """Canonical text form: terms in lex exponent order."""
    if f.is_zero():
        return "0"
    parts = []
    for exp in sorted(f.terms):
        c = f.terms[exp]
        mono = []
        for i, e in enumerate(exp):
            if e == 0:
                continue
            name = _var_name(i, f.dim)
            mono.append(name if e == 1 else f"{name}^{e}")
        mono_text = "*".join(mono)
        if not mono_text:
            parts.append(f"({c})" if len(c.terms) > 1 else str(c))
            continue
        if c == ParamPoly.const(f.params, 1):
            parts.append(mono_text)
        elif c == ParamPoly.const(f.params, -1):
            parts.append(f"-{mono_text}")
        elif len(c.terms) == 1:
            parts.append(f"{c}*{mono_text}")
        else:
            parts.append(f"({c})*{mono_text}")
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def to_json(f):
    return json.dumps(
        {
            "dim": f.dim,
            "params": list(f.params),
            "terms": [
                {
                    "exp": list(exp),
                    "coeff": [
                        {"pexp": list(pexp), "q": str(q)} for pexp, q in sorted(c.terms.items())
                    ],
                }
                for exp, c in sorted(f.terms.items())
            ],
        },
        indent=2,
    )


def from_json(text):
    data = json.loads(text)
    try:
        dim = data["dim"]
        params = tuple(data["params"])
        terms = {}
        for entry in data["terms"]:
            coeff = ParamPoly(
                params,
                {tuple(t["pexp"]): Fraction(t["q"]) for t in entry["coeff"]},
            )
            terms[tuple(entry["exp"])] = coeff
    except KeyError as exc:
        raise ParseError(f"Laurent JSON missing field {exc}") from exc
    order = tuple(sorted(params))
    return LaurentPoly(dim, params, terms).with_params(order)
