"""Exact rational scalars and small polynomial kernels.

Scalars are :class:`fractions.Fraction` throughout. Two polynomial types are
provided:

* :class:`SparsePoly2` -- bivariate polynomials stored as ``{(i, j): coeff}``
  meaning ``coeff * x**i * y**j``.
* :class:`UniPoly` -- dense univariate polynomials, coefficients listed from
  the constant term up.

The univariate helpers (:func:`squarefree_split`, :func:`rational_roots`)
exist for the residual polynomials that appear on exceptional lines during
blow-ups, so degrees are small and the algorithms are the textbook ones.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import FactorDegreeExceeded, PolynomialSyntaxError

ExactRational = Fraction
INFINITY = math.inf

DEFAULT_MAX_FACTOR_DEGREE = 16


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use int, Fraction or 'p/q'")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Render as ``p`` or ``p/q`` in lowest terms."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class SparsePoly2:
    """Polynomial in ``x`` and ``y`` with exact rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Tuple[int, int], object] | None = None):
        clean: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent {(i, j)}")
            c = as_fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "SparsePoly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "SparsePoly2":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "SparsePoly2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "SparsePoly2":
        return cls({(0, 1): 1})

    # -- basic protocol -----------------------------------------------------
    @property
    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly2):
            try:
                other = SparsePoly2.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly2({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j) in sorted(self._terms, key=lambda e: (e[0] + e[1], -e[0])):
            c = self._terms[(i, j)]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag.numerator}*{mono}"
            else:
                body = f"({format_rational(mag)})*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "SparsePoly2":
        if isinstance(other, SparsePoly2):
            return other
        return SparsePoly2.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly2({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- queries ------------------------------------------------------------
    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def evaluate(self, x, y) -> Fraction:
        x, y = as_fraction(x), as_fraction(y)
        return sum((c * x**i * y**j for (i, j), c in self._terms.items()), Fraction(0))

    def leading_form(self) -> "SparsePoly2":
        """Homogeneous part of lowest total degree."""
        o = order_at_origin(self)
        if o == INFINITY:
            return self
        return SparsePoly2({e: c for e, c in self._terms.items() if e[0] + e[1] == o})

    def x_order(self) -> float:
        """Largest power of ``x`` dividing the polynomial."""
        return min((i for i, _ in self._terms), default=INFINITY)

    def y_order(self) -> float:
        return min((j for _, j in self._terms), default=INFINITY)

    def divide_x_power(self, n: int) -> "SparsePoly2":
        if n and self.x_order() < n:
            raise ValueError(f"polynomial not divisible by x^{n}")
        return SparsePoly2({(i - n, j): c for (i, j), c in self._terms.items()})

    def restrict_x0(self) -> "UniPoly":
        """Univariate polynomial in ``y`` obtained by setting ``x = 0``."""
        deg = max((j for i, j in self._terms if i == 0), default=-1)
        coeffs = [Fraction(0)] * (deg + 1)
        for (i, j), c in self._terms.items():
            if i == 0:
                coeffs[j] = c
        return UniPoly(coeffs)

    def swap(self) -> "SparsePoly2":
        return SparsePoly2({(j, i): c for (i, j), c in self._terms.items()})


def order_at_origin(p: SparsePoly2) -> float:
    """Smallest total degree of a term; ``math.inf`` for the zero polynomial."""
    return min((i + j for i, j in p._terms), default=INFINITY)


def substitute(p: SparsePoly2, for_x: SparsePoly2, for_y: SparsePoly2) -> SparsePoly2:
    """Compose ``p(for_x, for_y)`` exactly."""
    for_x = SparsePoly2._coerce(for_x)
    for_y = SparsePoly2._coerce(for_y)
    xs: Dict[int, SparsePoly2] = {0: SparsePoly2.constant(1)}
    ys: Dict[int, SparsePoly2] = {0: SparsePoly2.constant(1)}

    def power(cache, base, n):
        if n not in cache:
            k = max(cache)
            while k < n:
                cache[k + 1] = cache[k] * base
                k += 1
        return cache[n]

    out = SparsePoly2()
    for (i, j), c in sorted(p.items()):
        out = out + power(xs, for_x, i) * power(ys, for_y, j) * c
    return out


# ---------------------------------------------------------------------------
# polynomial text grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*/^()]))")


def parse_poly(text: str) -> SparsePoly2:
    """Parse ``x^2 + y^3``, ``(1/2)*x*y^4 - y^7`` and the like.

    Grammar: sums of products of integers, ``x``, ``y`` and parenthesised
    expressions, with ``^`` (or ``**``) taking a nonnegative integer exponent.
    Division is only allowed between constants, so ``1/2`` is a rational.
    """
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = "num" if m.group(1) else "var" if m.group(2) else "op"
        start = m.start(m.lastindex)
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    parser = _Parser(tokens)
    result = parser.expr()
    if parser.peek()[0] != "end":
        kind, val, at = parser.peek()
        raise PolynomialSyntaxError(f"unexpected {val!r}", at)
    return result


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        kind, got, at = self.take()
        if got != val:
            raise PolynomialSyntaxError(f"expected {val!r}, got {got or 'end of input'!r}", at)

    def expr(self) -> SparsePoly2:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> SparsePoly2:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, at = self.take()
            rhs = self.factor()
            if op == "*":
                result = result * rhs
            else:
                if rhs.total_degree() > 0 or rhs.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants", at)
                result = result * SparsePoly2.constant(1 / rhs.coeff(0, 0))
        return result

    def factor(self) -> SparsePoly2:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            kind, val, at = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", at)
            return base ** int(val)
        return base

    def atom(self) -> SparsePoly2:
        kind, val, at = self.take()
        if kind == "num":
            return SparsePoly2.constant(int(val))
        if kind == "var":
            return SparsePoly2.x() if val == "x" else SparsePoly2.y()
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {val or 'end of input'!r}", at)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``v**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        return reduce(lambda a, r: a * cls([-as_fraction(r), 1]), roots, cls([1]))

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return str(SparsePoly2({(0, j): c for j, c in enumerate(self.coeffs)})).replace("y", "v")

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, v) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(c * as_fraction(other) for c in self.coeffs)
        if not self or not other:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        return reduce(lambda a, _: a * self, range(n), UniPoly([1]))

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        while len(rem) >= len(other.coeffs) and any(rem):
            shift = len(rem) - len(other.coeffs)
            factor = rem[-1] / other.lc
            q[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        return self * (1 / self.lc) if self else self

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def discriminant_sign(self) -> int:
        """Sign of the discriminant for degree 2 (the only case callers use)."""
        if self.degree != 2:
            raise ValueError("discriminant_sign implemented for quadratics only")
        c, b, a = self.coeffs
        disc = b * b - 4 * a * c
        return (disc > 0) - (disc < 0)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd via the Euclidean algorithm over the rationals."""
    while b:
        a, b = b, a % b
    return a.monic()


def _check_nonzero(q: UniPoly):
    if not q:
        raise ValueError("zero polynomial")


def _yun(q: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Yun's squarefree decomposition; returns monic, pairwise coprime parts."""
    q = q.monic()
    if q.degree <= 0:
        return []
    dq = q.derivative()
    a = poly_gcd(q, dq)
    b = q // a
    c = dq // a
    parts = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            parts.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return parts


def rational_roots(q: UniPoly) -> Dict[Fraction, int]:
    """All rational roots of ``q`` mapped to their multiplicities.

    Candidates come from the rational root theorem applied to the
    integer-normalised squarefree part, so the search is exact and finite.
    """
    _check_nonzero(q)
    roots: Dict[Fraction, int] = {}
    for part, mult in _yun(q):
        for r in _rational_roots_squarefree(part):
            roots[r] = mult
    return dict(sorted(roots.items()))


def _integer_coeffs(q: UniPoly) -> List[int]:
    den = reduce(math.lcm, (c.denominator for c in q.coeffs), 1)
    ints = [int(c * den) for c in q.coeffs]
    g = reduce(math.gcd, ints, 0) or 1
    return [c // g for c in ints]


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_roots_squarefree(q: UniPoly) -> List[Fraction]:
    ints = _integer_coeffs(q)
    found = []
    if ints[0] == 0:
        found.append(Fraction(0))
        k = next(i for i, c in enumerate(ints) if c)
        ints = ints[k:]
    if len(ints) == 1:
        return found
    for p, s in product(_divisors(ints[0]), _divisors(ints[-1])):
        for cand in (Fraction(p, s), Fraction(-p, s)):
            if cand not in found and q(cand) == 0:
                found.append(cand)
    return sorted(found)


def irreducible_factors(q: UniPoly, max_degree: int = DEFAULT_MAX_FACTOR_DEGREE) -> List[UniPoly]:
    """Monic irreducible factors over the rationals of a squarefree ``q``."""
    _check_nonzero(q)
    if q.degree > max_degree:
        raise FactorDegreeExceeded(q.degree, max_degree)
    if q.degree <= 0:
        return []
    linear = [UniPoly([-r, 1]) for r in _rational_roots_squarefree(q.monic())]
    rest = q.monic()
    for lin in linear:
        rest = rest // lin
    factors = list(linear)
    if rest.degree == 1:
        factors.append(rest)
    elif rest.degree >= 2:
        factors.extend(_factor_no_linear(rest))
    return sorted(factors, key=lambda f: (f.degree, f.coeffs))


def _factor_no_linear(q: UniPoly) -> List[UniPoly]:
    # quadratics and cubics without rational roots are irreducible
    if q.degree <= 3:
        return [q]
    import sympy

    v = sympy.Symbol("v")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * v**i for i, c in enumerate(q.coeffs))
    _, parts = sympy.factor_list(expr, v, domain="QQ")
    out = []
    for fac, mult in parts:
        coeffs = sympy.Poly(fac, v).all_coeffs()[::-1]
        uni = UniPoly(Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs).monic()
        out.extend([uni] * mult)
    return out


def squarefree_split(
    q: UniPoly, max_degree: int = DEFAULT_MAX_FACTOR_DEGREE
) -> List[Tuple[UniPoly, int, List[int]]]:
    """Split ``q`` into ``(factor, multiplicity, irreducible_degrees)`` triples.

    The factors are monic, squarefree and pairwise coprime, and the product of
    ``factor**multiplicity`` equals ``q`` up to its leading coefficient.
    ``irreducible_degrees`` lists the degrees of the irreducible pieces of each
    factor over the rationals.
    """
    _check_nonzero(q)
    if q.degree > max_degree:
        raise FactorDegreeExceeded(q.degree, max_degree)
    out = []
    for part, mult in _yun(q):
        degs = [f.degree for f in irreducible_factors(part, max_degree)]
        out.append((part, mult, degs))
    return out


def to_sympy(p: SparsePoly2):
    import sympy

    x, y = sympy.symbols("x y")
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in p.items()),
        sympy.Integer(0),
    )


def from_sympy(expr) -> SparsePoly2:
    import sympy

    x, y = sympy.symbols("x y")
    poly = sympy.Poly(expr, x, y, domain="QQ")
    return SparsePoly2(
        {(i, j): Fraction(int(c.numerator), int(c.denominator)) for (i, j), c in poly.terms()}
    )


def squarefree_parts(p: SparsePoly2) -> List[Tuple[SparsePoly2, int]]:
    """Bivariate squarefree decomposition ``p = c * prod(q_a ** a)``.

    Returns the nonconstant ``(q_a, a)`` pairs; the ``q_a`` are squarefree and
    pairwise coprime over the rationals.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.total_degree() == 0:
        return []
    import sympy

    x, y = sympy.symbols("x y")
    _, parts = sympy.sqf_list(to_sympy(p), x, y)
    return [(from_sympy(q), int(a)) for q, a in parts]
