"""Exact multivariate polynomials over the rationals.

Polynomials are sparse maps from exponent tuples to :class:`fractions.Fraction`
coefficients.  Terms are ordered graded-lexicographically with
``x0 > x1 > ... > x_{n-1}``; that order is used for lead terms, printing and
division everywhere in the package.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]


def grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, object] | None = None, nvars: int = 1):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not match nvars={nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = Fraction(c)
                if c:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
                    if not clean[exps]:
                        del clean[exps]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponents, Fraction], nvars: int) -> Poly:
        # trusted constructor: no zero coefficients, exponents already tuples
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> Poly:
        c = Fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw({tuple(exps): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> Poly:
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> Poly:
        """Univariate polynomial from ascending coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, 1)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def lead_monomial(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no lead term")
        return max(self.terms, key=grlex_key)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_monomial()]

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def coeffs(self) -> list[Fraction]:
        """Ascending coefficient list of a univariate polynomial."""
        if self.nvars != 1:
            raise ValueError("coeffs() needs a univariate polynomial")
        deg = self.degree()
        return [self.terms.get((i,), Fraction(0)) for i in range(deg + 1)]

    def valuation(self) -> int:
        """Lowest exponent present in a univariate polynomial."""
        if self.nvars != 1 or not self.terms:
            raise ValueError("valuation() needs a nonzero univariate polynomial")
        return min(e[0] for e in self.terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def scale(self, c) -> Poly:
        return self * Fraction(c)

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self * (1 / self.lead_coeff())

    def mul_monomial(self, exps: Exponents, c: Fraction) -> Poly:
        return Poly._raw(
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
            self.nvars,
        )

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact for int/Fraction inputs."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for exps, c in self.terms.items():
            t = c
            for x, e in zip(point, exps):
                if e:
                    t = t * x**e
            total = total + t
        return total

    # -- printing ---------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_rat(mag)}*{mono}"
            else:
                body = _fmt_rat(mag)
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Poly({self.to_string()!r}, nvars={self.nvars})"


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def default_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["z"]
    return [f"x{i}" for i in range(nvars)]


# -- parsing --------------------------------------------------------------

class PolySyntaxError(ValueError):
    """Raised for malformed polynomial text; carries the character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+\s*/\s*\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: j for j, name in enumerate(variables)}
        self.nvars = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.peek()
            if exp_tok[0] == "op" and exp_tok[1] == "-":
                self.error("negative exponent", exp_tok)
            if exp_tok[0] != "int":
                self.error("exponent must be a non-negative integer", exp_tok)
            self.take()
            return base ** int(exp_tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return Poly.const(int(val), self.nvars)
        if kind == "rat":
            num, den = (int(s) for s in val.split("/"))
            if den == 0:
                self.error("zero denominator", tok)
            return Poly.const(Fraction(num, den), self.nvars)
        if kind == "name":
            if val not in self.index:
                self.error(f"unknown variable {val!r}", tok)
            return Poly.var(self.index[val], self.nvars)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected token {val!r}" if val else "unexpected end of input", tok)


def parse(text: str, variables: Sequence[str]) -> Poly:
    """Parse an arithmetic expression into an expanded :class:`Poly`.

    >>> parse("(x0+x1)^2", ["x0", "x1"]).to_string(["x0", "x1"])
    'x0^2 + 2*x0*x1 + x1^2'
    """
    return _Parser(text, list(variables)).parse()


def arith(a: Poly, b: Poly, op: str) -> Poly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(Q: Poly, f: Sequence[Poly]) -> Poly:
    """Compose ``Q(f_0, ..., f_n)``; all ``f_j`` share one ring."""
    if len(f) != Q.nvars:
        raise ValueError(f"arity mismatch: Q has {Q.nvars} variables, got {len(f)} components")
    if not f:
        raise ValueError("empty substitution")
    m = f[0].nvars
    for fj in f:
        if fj.nvars != m:
            raise ValueError("components live in different rings")
    powers: dict[tuple[int, int], Poly] = {}

    def pw(j: int, e: int) -> Poly:
        key = (j, e)
        if key not in powers:
            powers[key] = f[j] ** e
        return powers[key]

    out = Poly.zero(m)
    for exps, c in Q.terms.items():
        t = Poly.const(c, m)
        for j, e in enumerate(exps):
            if e:
                t = t * pw(j, e)
        out = out + t
    return out


def diff(p: Poly, alpha: Sequence[int]) -> Poly:
    """Iterated partial derivative ``D^alpha p``."""
    if len(alpha) != p.nvars:
        raise ValueError("derivative index length must equal nvars")
    out: dict[Exponents, Fraction] = {}
    for exps, c in p.terms.items():
        if any(e < a for e, a in zip(exps, alpha)):
            continue
        factor = 1
        for e, a in zip(exps, alpha):
            for t in range(a):
                factor *= e - t
        new = tuple(e - a for e, a in zip(exps, alpha))
        out[new] = out.get(new, 0) + c * factor
    return Poly({e: c for e, c in out.items()}, p.nvars)


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division by a single polynomial in graded-lex order.

    Returns ``(quot, rem)`` with ``a = quot*b + rem`` and no term of ``rem``
    divisible by the lead monomial of ``b``.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lm, lc = b.lead_monomial(), b.lead_coeff()
    quot: dict[Exponents, Fraction] = {}
    rem: dict[Exponents, Fraction] = {}
    p = a
    while p.terms:
        m = p.lead_monomial()
        c = p.terms[m]
        if all(x >= y for x, y in zip(m, lm)):
            shift = tuple(x - y for x, y in zip(m, lm))
            q = c / lc
            quot[shift] = quot.get(shift, 0) + q
            p = p - b.mul_monomial(shift, q)
        else:
            rem[m] = c
            p = Poly._raw({e: v for e, v in p.terms.items() if e != m}, p.nvars)
    return Poly(quot, a.nvars), Poly(rem, a.nvars)


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod_poly(a, b)
    if not r.is_zero():
        raise ArithmeticError("division is not exact")
    return q


def divides(b: Poly, a: Poly) -> bool:
    return divmod_poly(a, b)[1].is_zero()


def _require_univariate(*ps: Poly) -> None:
    for p in ps:
        if p.nvars != 1:
            raise ValueError("univariate polynomial required")


def gcd_univariate(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two univariate polynomials (Euclid)."""
    _require_univariate(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, divmod_poly(a, b)[1]
    return a.monic()


def gcd_many(polys: Iterable[Poly]) -> Poly:
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else gcd_univariate(g, p)
    if g is None:
        raise ValueError("gcd of zero polynomials is undefined")
    return g


def derivative(p: Poly) -> Poly:
    _require_univariate(p)
    return diff(p, (1,))


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with
    strictly increasing multiplicities; ``p = lc(p) * prod(f_i^{m_i})``."""
    _require_univariate(p)
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if p.degree() == 0:
        return []
    dp = derivative(p)
    a = gcd_univariate(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = c - derivative(b)
    out = []
    i = 1
    while b.degree() > 0:
        a = gcd_univariate(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = c - derivative(b)
        if a.degree() > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    out = Poly.const(1, 1)
    for f, _ in squarefree_decompose(p):
        out = out * f
    return out


def det_poly_matrix(M: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free Bareiss determinant over the polynomial ring."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    nv = M[0][0].nvars
    A = [list(row) for row in M]
    sign = 1
    prev = Poly.const(1, nv)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(nv)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_div(piv * A[i][j] - A[i][k] * A[k][j], prev)
        prev = piv
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


def det_cofactor(M: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the first row; used as an independent check."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Poly.zero(M[0][0].nvars)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def monomials_of_degree(nvars: int, d: int) -> list[Exponents]:
    """All exponent tuples of total degree ``d`` in descending graded-lex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def coprime_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Monic, squarefree, pairwise coprime polynomials refining every input.

    Each input is, up to a constant, a product of powers of basis elements, so
    its multiplicity is constant along the roots of any one basis element.
    """
    basis: list[Poly] = []
    for p in polys:
        if p.is_zero():
            continue
        work = [f for f, _ in squarefree_decompose(p)]
        while work:
            a = work.pop()
            if a.degree() <= 0:
                continue
            for i, b in enumerate(basis):
                g = gcd_univariate(a, b)
                if g.degree() > 0:
                    basis.pop(i)
                    rest = exact_div(b, g)
                    basis.append(g)
                    if rest.degree() > 0:
                        basis.append(rest.monic())
                    work.append(exact_div(a, g))
                    break
            else:
                basis.append(a.monic())
    return sorted(basis, key=lambda b: (b.degree(), b.to_string()))


def multiplicity(b: Poly, p: Poly) -> int:
    """Largest ``e`` with ``b^e | p`` (``b`` nonconstant, ``p`` nonzero)."""
    if b.degree() <= 0:
        raise ValueError("multiplicity needs a nonconstant factor")
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial is infinite")
    e = 0
    while True:
        q, r = divmod_poly(p, b)
        if not r.is_zero():
            return e
        p = q
        e += 1
