"""Scalars: exact cyclotomic numbers and arbitrary-precision complex numbers.

A :class:`CycloNumber` is an element of some cyclotomic field Q(zeta_n),
stored in the power basis 1, zeta_n, ..., zeta_n^(phi(n)-1) and always
rewritten over the smallest conductor that contains it, so that two numbers
are equal exactly when their ``(conductor, coeffs)`` pairs are equal.

A :class:`BigComplex` wraps an ``mpmath.mpc`` together with a working
precision in bits.  Mixing the two kinds in arithmetic yields a BigComplex.
"""
from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .errors import DivisionByZero, NotReal, ParseError, ZeroArgument

DEFAULT_PRECISION = 256
#: extra bits used when evaluating exact numbers numerically; the embedding of
#: a CycloNumber is accurate to 2**(-precision + EMBEDDING_SLACK)
EMBEDDING_SLACK = 8


def default_precision() -> int:
    value = os.environ.get("FUSIONKIT_PRECISION")
    if not value:
        return DEFAULT_PRECISION
    try:
        bits = int(value)
    except ValueError:
        raise ParseError(f"FUSIONKIT_PRECISION must be an integer, got {value!r}") from None
    if bits < 53:
        raise ParseError("FUSIONKIT_PRECISION must be at least 53 bits")
    return bits


# ---------------------------------------------------------------------------
# cyclotomic bookkeeping

def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def units(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if math.gcd(k, n) == 1] if n > 1 else [1]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """zeta_n^e reduced mod Phi_n for e in [0, n), as sparse (index, coeff) pairs."""
    phi = totient(n)
    cyc = cyclotomic_polynomial(n)
    vec = [0] * phi
    vec[0] = 1
    out = []
    for _ in range(n):
        out.append(tuple((i, c) for i, c in enumerate(vec) if c))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, cyc[:phi])]
    return tuple(out)


def _lift(coeffs: Sequence[Fraction], n: int, target: int) -> list[Fraction]:
    """Rewrite an element of Q(zeta_n) in the power basis of Q(zeta_target)."""
    if n == target:
        return list(coeffs)
    step = target // n
    powers = _powers(target)
    out = [Fraction(0)] * totient(target)
    for k, c in enumerate(coeffs):
        if c:
            for i, p in powers[(k * step) % target]:
                out[i] += c * p
    return out


@lru_cache(maxsize=None)
def _descent(n: int, m: int):
    """Data to rewrite elements of Q(zeta_n) over the subfield Q(zeta_m)."""
    from .linalg import inverse, rref

    phi_n, phi_m = totient(n), totient(m)
    step = n // m
    powers = _powers(n)
    emb = [[Fraction(0)] * phi_m for _ in range(phi_n)]
    for k in range(phi_m):
        for i, p in powers[(k * step) % n]:
            emb[i][k] = Fraction(p)
    # choose phi_m rows of emb forming an invertible block
    _, pivots = rref([list(r) for r in zip(*emb)], phi_n)
    rows = pivots
    inv = inverse([emb[r] for r in rows])
    return tuple(rows), inv, emb


def _try_descend(coeffs: Sequence[Fraction], n: int, m: int) -> list[Fraction] | None:
    rows, inv, emb = _descent(n, m)
    sub = [coeffs[r] for r in rows]
    y = [sum((a * b for a, b in zip(row, sub)), Fraction(0)) for row in inv]
    for i, row in enumerate(emb):
        if sum((a * b for a, b in zip(row, y)), Fraction(0)) != coeffs[i]:
            return None
    return y


def _canonical(n: int, coeffs: Sequence[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    if n == 1 or not any(coeffs[1:]):
        return 1, (Fraction(coeffs[0]) if coeffs else Fraction(0),)
    for m in divisors(n)[1:-1]:
        if m % 4 == 2:
            continue
        y = _try_descend(coeffs, n, m)
        if y is not None:
            return m, tuple(y)
    if n % 4 == 2:  # Q(zeta_n) = Q(zeta_{n/2}); only reached if n/2 == 1
        return _canonical(n // 2, _try_descend(coeffs, n, n // 2))
    return n, tuple(coeffs)


# ---------------------------------------------------------------------------
# exact numbers

class CycloNumber:
    """An exact element of the cyclotomic closure of Q."""

    __slots__ = ("conductor", "coeffs", "_hash")
    is_numeric = False

    def __init__(self, conductor: int, coeffs: Iterable, _canonical_form: bool = False):
        coeffs = [Fraction(c) for c in coeffs]
        if conductor < 1:
            raise ValueError("conductor must be positive")
        phi = totient(conductor)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for conductor {conductor}")
        if not _canonical_form:
            conductor, coeffs = _canonical(conductor, coeffs)
        self.conductor = conductor
        self.coeffs = tuple(coeffs)
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "CycloNumber":
        return cls(1, [Fraction(q)], True)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "CycloNumber":
        if n < 1:
            raise ValueError("E(n) needs n >= 1")
        vec = [Fraction(0)] * totient(n)
        for i, p in _powers(n)[k % n]:
            vec[i] = Fraction(p)
        return cls(n, vec)

    @classmethod
    def from_exponents(cls, n: int, terms: dict[int, Fraction]) -> "CycloNumber":
        vec = [Fraction(0)] * totient(n)
        powers = _powers(n)
        for k, c in terms.items():
            for i, p in powers[k % n]:
                vec[i] += Fraction(c) * p
        return cls(n, vec)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def is_real(self) -> bool:
        return self == self.conjugate()

    def as_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.conductor == 1 and self.coeffs[0].denominator == 1

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(other)
        return None

    def _common(self, other: "CycloNumber"):
        n = math.lcm(self.conductor, other.conductor)
        return n, _lift(self.coeffs, self.conductor, n), _lift(other.coeffs, other.conductor, n)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1 and not o.coeffs[0]:
            return self
        if self.conductor == 1 and not self.coeffs[0]:
            return o
        if self.conductor == 1 and o.conductor == 1:
            return CycloNumber(1, [self.coeffs[0] + o.coeffs[0]], True)
        n, a, b = self._common(o)
        return CycloNumber(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-c for c in self.coeffs], True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == 1:
            c = o.coeffs[0]
            if c == 1:
                return self
            return CycloNumber(self.conductor, [x * c for x in self.coeffs], c != 0)
        if self.conductor == 1:
            return o * self
        n, a, b = self._common(o)
        powers = _powers(n)
        out = [Fraction(0)] * totient(n)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for t, p in powers[(i + j) % n]:
                    out[t] += xy * p
        return CycloNumber(n, out)

    __rmul__ = __mul__

    def _multiplication_matrix(self):
        n = self.conductor
        phi = totient(n)
        cols = []
        for j in range(phi):
            col = (self * CycloNumber.root_of_unity(n, j))
            cols.append(_lift(col.coeffs, col.conductor, n))
        return [list(r) for r in zip(*cols)]

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise DivisionByZero("division by zero")
        if self.conductor == 1:
            return CycloNumber(1, [1 / self.coeffs[0]], True)
        from .linalg import solve

        m = self._multiplication_matrix()
        rhs = [Fraction(int(i == 0)) for i in range(len(m))]
        return CycloNumber(self.conductor, solve(m, rhs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # Galois action ------------------------------------------------------
    def galois(self, k: int) -> "CycloNumber":
        """Image under zeta_n -> zeta_n^k, for k coprime to the conductor."""
        n = self.conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if n == 1:
            return self
        return CycloNumber.from_exponents(n, {(i * k) % n: c for i, c in enumerate(self.coeffs) if c})

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def galois_orbit(self) -> list["CycloNumber"]:
        return [self.galois(k) for k in units(self.conductor)]

    def norm(self) -> Fraction:
        prod = CycloNumber.rational(1)
        for x in self.galois_orbit():
            prod = prod * x
        return prod.as_fraction()

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, BigComplex):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.conductor == o.conductor and self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.conductor == 1 else hash((self.conductor, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # numerics -----------------------------------------------------------
    def to_complex(self, precision: int | None = None) -> "BigComplex":
        prec = precision or default_precision()
        n = self.conductor
        with mpmath.workprec(prec + EMBEDDING_SLACK):
            total = mpmath.mpc(0)
            for k, c in enumerate(self.coeffs):
                if c:
                    term = mpmath.mpf(c.numerator) / c.denominator
                    total += term * (mpmath.expjpi(mpmath.mpf(2 * k) / n) if k else 1)
        return BigComplex(total, prec)

    def __complex__(self):
        v = self.to_complex(64).value
        return complex(float(v.real), float(v.imag))

    def __abs__(self):
        return abs(self.to_complex().value)

    # text ---------------------------------------------------------------
    def __str__(self):
        return format_gap(self)

    def __repr__(self):
        return f"CycloNumber({format_gap(self)!r})"


def E(n: int) -> CycloNumber:
    """The primitive root of unity exp(2 pi i / n), GAP style."""
    return CycloNumber.root_of_unity(n, 1)


# ---------------------------------------------------------------------------
# numeric numbers

class BigComplex:
    """A complex number at a fixed binary precision with tolerant equality."""

    __slots__ = ("value", "precision")
    is_numeric = True

    def __init__(self, value, precision: int | None = None):
        self.precision = precision or default_precision()
        with mpmath.workprec(self.precision):
            if isinstance(value, Fraction):
                value = mpmath.mpf(value.numerator) / value.denominator
            self.value = mpmath.mpc(value)

    @property
    def tolerance(self):
        return mpmath.ldexp(1, -(self.precision // 2))

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            return other.value, max(self.precision, other.precision)
        if isinstance(other, CycloNumber):
            return other.to_complex(self.precision).value, self.precision
        if isinstance(other, (int, Fraction)):
            with mpmath.workprec(self.precision):
                return mpmath.mpf(other.numerator) / other.denominator if isinstance(other, Fraction) \
                    else mpmath.mpf(other), self.precision
        if isinstance(other, (float, complex)) or isinstance(other, (mpmath.mpf, mpmath.mpc)):
            return mpmath.mpc(other), self.precision
        return None

    def _op(self, other, fn):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        value, prec = c
        with mpmath.workprec(prec):
            return BigComplex(fn(self.value, value), prec)

    def __add__(self, other):
        return self._op(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._op(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._op(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._op(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if c[0] == 0:
            raise DivisionByZero("division by zero")
        return self._op(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise DivisionByZero("division by zero")
        return self._op(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.value, self.precision)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0 and self.value == 0:
            raise DivisionByZero("division by zero")
        with mpmath.workprec(self.precision):
            return BigComplex(self.value ** k, self.precision)

    def conjugate(self) -> "BigComplex":
        return BigComplex(mpmath.conj(self.value), self.precision)

    def is_zero(self) -> bool:
        return abs(self.value) <= self.tolerance

    def is_real(self) -> bool:
        return abs(self.value.imag) <= self.tolerance

    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        with mpmath.workprec(c[1]):
            return abs(self.value - c[0]) <= self.tolerance

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __abs__(self):
        return abs(self.value)

    def __complex__(self):
        return complex(float(self.value.real), float(self.value.imag))

    def to_complex(self, precision: int | None = None) -> "BigComplex":
        return self if precision in (None, self.precision) else BigComplex(self.value, precision)

    def __str__(self):
        return format_numeric(self)

    def __repr__(self):
        return f"BigComplex({format_numeric(self)!r})"


Scalar = Union[CycloNumber, BigComplex]


def as_scalar(x) -> Scalar:
    if isinstance(x, (CycloNumber, BigComplex)):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNumber.rational(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def to_big(x, precision: int | None = None) -> BigComplex:
    x = as_scalar(x)
    return x.to_complex(precision)


def conjugate(x) -> Scalar:
    return as_scalar(x).conjugate()


def is_exact(x) -> bool:
    return not getattr(x, "is_numeric", False)


def scalar_key(x, digits: int = 12) -> tuple[float, float]:
    """Sort key from a fixed numeric embedding, rounded so noise cannot reorder."""
    z = complex(as_scalar(x))
    re_, im_ = round(z.real, digits), round(z.imag, digits)
    return (re_ + 0.0, im_ + 0.0)


# ---------------------------------------------------------------------------
# text syntax

def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gap(x: CycloNumber) -> str:
    n = x.conductor
    if n == 1:
        return _format_fraction(x.coeffs[0])
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else (f"E({n})" if k == 1 else f"E({n})^{k}")
        if not mono:
            body = _format_fraction(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_format_fraction(abs(c))}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


NUMERIC_DIGITS = 30


def format_numeric(x: BigComplex) -> str:
    with mpmath.workprec(x.precision):
        re_ = mpmath.nstr(x.value.real, NUMERIC_DIGITS, min_fixed=-mpmath.inf,
                          max_fixed=mpmath.inf)
        im_ = x.value.imag
        im_s = mpmath.nstr(abs(im_), NUMERIC_DIGITS, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    sign = "-" if im_ < 0 else "+"
    return f"{re_}{sign}{im_s}i@p{x.precision}"


def format_scalar(x) -> str:
    x = as_scalar(x)
    return format_numeric(x) if x.is_numeric else format_gap(x)


_TOKEN = re.compile(r"\s*(?:(\d+)|(E)|(.))")


def parse_scalar(text: str) -> CycloNumber:
    """Parse GAP-style cyclotomic syntax such as ``"1/2*E(8)-3*E(8)^3"``."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {text!r}")
    tokens = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("E", None))
        elif m.group(3).strip():
            tokens.append(("op", m.group(3)))
        pos = m.end()
    if not tokens:
        raise ParseError(f"empty scalar {text!r}")
    parser = _Parser(tokens, text)
    value = parser.expression()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input in scalar {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"unexpected token in scalar {self.text!r}")
        self.i += 1
        return tok[1]

    def expression(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take("op") == "-" else 1
        value = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take("op")
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take("op")
            rhs = self.power()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero in scalar {self.text!r}")
                value = value / rhs
        return value

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take("op", "^")
            neg = False
            if self.peek() == ("op", "-"):
                self.take("op")
                neg = True
            k = self.take("int")
            base = base ** (-k if neg else k)
        return base

    def atom(self):
        kind, value = self.peek()
        if kind == "int":
            self.i += 1
            return CycloNumber.rational(value)
        if kind == "E":
            self.i += 1
            self.take("op", "(")
            n = self.take("int")
            self.take("op", ")")
            if n < 1:
                raise ParseError(f"E(n) needs n >= 1 in {self.text!r}")
            return E(n)
        if (kind, value) == ("op", "("):
            self.i += 1
            inner = self.expression()
            self.take("op", ")")
            return inner
        if (kind, value) == ("op", "-"):
            self.i += 1
            return -self.atom()
        raise ParseError(f"cannot parse scalar {self.text!r}")


# ---------------------------------------------------------------------------
# positivity, polynomial roots, gauge roots

def is_totally_positive(a, precision: int = 128) -> bool:
    """True iff every Galois conjugate of the real cyclotomic number ``a`` is positive."""
    a = as_scalar(a)
    if a.is_numeric:
        raise TypeError("total positivity needs an exact cyclotomic number")
    if not a.is_real():
        raise NotReal(f"{a} is not real")
    prec = max(precision, 128)
    for k in units(a.conductor):
        z = a.galois(k).to_complex(prec)
        if not z.value.real > z.tolerance:
            return False
    return True


def _sympy_field(n: int):
    import sympy

    return sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / n))


@lru_cache(maxsize=None)
def roots_in_cyclotomic_field(poly: tuple[Fraction, ...], n: int) -> tuple[CycloNumber, ...]:
    """All roots in Q(zeta_n) of a rational polynomial (coefficients low -> high)."""
    import sympy

    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)]
    p = sympy.Poly(coeffs, x, domain=sympy.QQ)
    if p.degree() < 1:
        return ()
    if n == 1:
        factors = p.factor_list()[1]
        to_num = lambda a: CycloNumber.rational(Fraction(int(a.numerator), int(a.denominator)))
    else:
        field = _sympy_field(n)
        factors = p.set_domain(field).factor_list()[1]

        def to_num(a):
            rep = a.to_list()[::-1]
            vec = [Fraction(int(c.numerator), int(c.denominator)) for c in rep]
            vec += [Fraction(0)] * (totient(n) - len(vec))
            return CycloNumber(n, vec)

    roots = []
    for f, _mult in factors:
        if f.degree() != 1:
            continue
        lead, const = f.rep.to_list()
        roots.append(-to_num(const) / to_num(lead))
    return tuple(roots)


def candidate_conductors(bound: int, degree: int = 1) -> list[int]:
    return [n for n in divisors(bound) if n % 4 != 2 and totient(n) % degree == 0]


def rational_factors(poly: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Irreducible factors over Q (coefficients low -> high) of a rational polynomial."""
    import sympy

    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(poly)]
    p = sympy.Poly(coeffs, x, domain=sympy.QQ)
    out = []
    for f, _mult in p.factor_list()[1]:
        out.append(tuple(Fraction(int(c.numerator), int(c.denominator))
                         for c in reversed(f.monic().all_coeffs())))
    return out


def exact_roots(poly: Sequence[Fraction], bound: int = 120) -> tuple[list[CycloNumber], list[tuple]]:
    """Roots of a rational polynomial found in Q(zeta_n) for n dividing ``bound``.

    Each irreducible factor is tried over successively larger cyclotomic
    fields.  Returns the recognized roots and the factors that did not split.
    """
    found: list[CycloNumber] = []
    failed = []
    for f in rational_factors(poly):
        d = len(f) - 1
        if d == 1:
            found.append(CycloNumber.rational(-f[0] / f[1]))
            continue
        for n in candidate_conductors(bound, d):
            if n == 1:
                continue
            roots = roots_in_cyclotomic_field(tuple(f), n)
            if len(roots) == d:
                found.extend(roots)
                break
        else:
            failed.append(f)
    return found, failed


def poly_eval(poly: Sequence, x):
    acc = CycloNumber.rational(0) if is_exact(x) else BigComplex(0, x.precision)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _radical(q: Fraction) -> int:
    m = abs(q.numerator) * q.denominator
    rad, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            rad *= p
            while m % p == 0:
                m //= p
        p += 1
    return rad * (m if m > 1 else 1)


def _norm_polynomial(lam: CycloNumber, N: int) -> list[Fraction]:
    """prod over Galois conjugates s of (x^N - s(lam)); rational coefficients."""
    poly: list = [CycloNumber.rational(1)]
    for s in lam.galois_orbit():
        factor = [-s] + [CycloNumber.rational(0)] * (N - 1) + [CycloNumber.rational(1)]
        out = [CycloNumber.rational(0)] * (len(poly) + N)
        for i, a in enumerate(poly):
            for j, b in enumerate(factor):
                if b:
                    out[i + j] = out[i + j] + a * b
        poly = out
    return [c.as_fraction() for c in poly]


def gauge_conductor_bound(lam: CycloNumber, N: int) -> int:
    c = lam.conductor
    return math.lcm(c, 4 * N * c) * _radical(lam.norm())


def nth_root_gauge(lam, N: int, precision: int | None = None) -> Scalar:
    """Principal N-th root of ``lam`` (argument in (-pi/N, pi/N]).

    Exact inputs are recognized back as cyclotomic numbers when possible; the
    numeric principal root is returned otherwise.
    """
    lam = as_scalar(lam)
    if N < 1:
        raise ValueError("N must be positive")
    if lam.is_zero():
        raise ZeroArgument("N-th root of zero")
    prec = precision or (lam.precision if lam.is_numeric else default_precision())
    z = lam.to_complex(prec)
    with mpmath.workprec(prec + EMBEDDING_SLACK):
        principal = BigComplex(mpmath.exp(mpmath.log(z.value) / N), prec)
    if lam.is_numeric:
        return principal
    if N == 1:
        return lam
    poly = _norm_polynomial(lam, N)
    bound = gauge_conductor_bound(lam, N)
    for f in rational_factors(poly):
        if not poly_eval(f, principal).is_zero():
            continue
        d = len(f) - 1
        if d == 1:
            cands = [CycloNumber.rational(-f[0] / f[1])]
        else:
            cands = []
            # a root generates a field containing lam, so its conductor is a multiple
            for n in candidate_conductors(bound, d):
                if n > 1 and n % lam.conductor == 0:
                    cands = list(roots_in_cyclotomic_field(tuple(f), n))
                    if cands:
                        break
        for r in cands:
            if r == principal and r ** N == lam:
                return r
    return principal


def exact_sqrt(x) -> Scalar:
    """Positive square root of a totally real positive scalar (principal branch)."""
    return nth_root_gauge(x, 2)


def is_squarefree(poly: Sequence[Fraction]) -> bool:
    import sympy

    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(poly)]
    p = sympy.Poly(coeffs, x, domain=sympy.QQ)
    return sympy.degree(sympy.gcd(p, p.diff(x))) == 0


def numeric_roots(poly: Sequence[Fraction], precision: int | None = None) -> list[BigComplex]:
    prec = precision or default_precision()
    with mpmath.workprec(prec + 32):
        coeffs = [mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(poly)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=prec)
    return [BigComplex(r, prec) for r in roots]
