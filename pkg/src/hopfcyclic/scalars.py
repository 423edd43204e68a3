"""Exact coefficients: the field Q(q) of rational functions in one variable.

Elements are stored as a fraction of integer Laurent polynomials in a
canonical form, so that equality and hashing are structural.

A Laurent polynomial is a pair ``(low, coeffs)`` meaning
``sum(c * q**(low + i) for i, c in enumerate(coeffs))`` with nonzero end
coefficients; the zero polynomial is ``(0, ())``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

Poly = tuple  # (low: int, coeffs: tuple[int, ...])

ZERO_POLY: Poly = (0, ())
ONE_POLY: Poly = (0, (1,))


def _trim(low: int, coeffs) -> Poly:
    coeffs = list(coeffs)
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    j = len(coeffs)
    while j > i and coeffs[j - 1] == 0:
        j -= 1
    if i == j:
        return ZERO_POLY
    return (low + i, tuple(coeffs[i:j]))


def padd(a: Poly, b: Poly) -> Poly:
    if not a[1]:
        return b
    if not b[1]:
        return a
    low = min(a[0], b[0])
    high = max(a[0] + len(a[1]), b[0] + len(b[1]))
    out = [0] * (high - low)
    for k, c in enumerate(a[1]):
        out[a[0] - low + k] += c
    for k, c in enumerate(b[1]):
        out[b[0] - low + k] += c
    return _trim(low, out)


def pneg(a: Poly) -> Poly:
    return (a[0], tuple(-c for c in a[1]))


def pscale(a: Poly, c) -> Poly:
    if c == 0 or not a[1]:
        return ZERO_POLY
    return (a[0], tuple(c * x for x in a[1]))


def pshift(a: Poly, k: int) -> Poly:
    if not a[1]:
        return a
    return (a[0] + k, a[1])


def pmul(a: Poly, b: Poly) -> Poly:
    if not a[1] or not b[1]:
        return ZERO_POLY
    if len(a[1]) == 1:
        return (a[0] + b[0], tuple(a[1][0] * c for c in b[1]))
    if len(b[1]) == 1:
        return (a[0] + b[0], tuple(b[1][0] * c for c in a[1]))
    out = [0] * (len(a[1]) + len(b[1]) - 1)
    for i, x in enumerate(a[1]):
        if x:
            for j, y in enumerate(b[1]):
                out[i + j] += x * y
    return (a[0] + b[0], tuple(out))


def _content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    return g


def _divmod_q(num: list, den: list) -> tuple[list, list]:
    """Polynomial long division over Q; coefficient lists are low-to-high."""
    num = [Fraction(c) for c in num]
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = Fraction(den[-1])
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        f = num[-1] / lead
        quot[shift] = f
        for k, c in enumerate(den):
            num[shift + k] -= f * c
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return quot, num


def _primitive(coeffs: list) -> list[int]:
    """Scale a rational coefficient list to a primitive integer list, positive lead."""
    fr = [Fraction(c) for c in coeffs]
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fr]
    g = _content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _poly_gcd(a: tuple, b: tuple) -> list[int]:
    """gcd over Q of two ordinary polynomials (coefficient tuples, nonzero)."""
    x, y = list(a), list(b)
    if len(x) < len(y):
        x, y = y, x
    while y and any(y):
        _, r = _divmod_q(x, y)
        x, y = y, r
    return _primitive(x)


def _exact_div(a: tuple, g: list[int]) -> tuple[int, ...]:
    if len(g) == 1 and g[0] == 1:
        return tuple(a)
    quot, rem = _divmod_q(list(a), g)
    assert not any(rem), "inexact polynomial division"
    return tuple(int(c) for c in quot)


class QScalar:
    """Exact element of Q(q), immutable.

    Canonical form: denominator has lowest exponent 0 and positive leading
    coefficient, numerator and denominator are coprime over Q and the
    integer contents of the pair are coprime.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly = ZERO_POLY, den: Poly = ONE_POLY, _canonical: bool = False):
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "QScalar":
        return _int_scalar(n)

    @classmethod
    def from_fraction(cls, f) -> "QScalar":
        f = Fraction(f)
        if f.denominator == 1:
            return _int_scalar(f.numerator)
        return cls((0, (f.numerator,)), (0, (f.denominator,)))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QScalar":
        if c == 0:
            return ZERO
        return cls((k, (c,)), ONE_POLY, _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict) -> "QScalar":
        """Build from ``{exponent: integer coefficient}``."""
        if not coeffs:
            return ZERO
        low = min(coeffs)
        high = max(coeffs)
        out = [0] * (high - low + 1)
        for k, c in coeffs.items():
            out[k - low] += c
        return cls(_trim(low, out), ONE_POLY, _canonical=True)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num[1]

    def is_laurent(self) -> bool:
        return self.den == ONE_POLY

    def __bool__(self) -> bool:
        return bool(self.num[1])

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "QScalar":
        if other.__class__ is not QScalar:
            other = as_scalar(other)
        a, b = self.num, other.num
        if self.den is ONE_POLY and other.den is ONE_POLY and len(a[1]) == 1 and len(b[1]) == 1 and a[0] == b[0]:
            c = a[1][0] + b[1][0]
            return _make((a[0], (c,)) if c else ZERO_POLY)
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return QScalar(padd(self.num, other.num), ONE_POLY, _canonical=True)
        if self.den == other.den:
            return QScalar(padd(self.num, other.num), self.den)
        return QScalar(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar(pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other) -> "QScalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> "QScalar":
        return as_scalar(other) + (-self)

    def __mul__(self, other) -> "QScalar":
        if other.__class__ is not QScalar:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = as_scalar(other)
        a, b = self.num, other.num
        if not a[1] or not b[1]:
            return ZERO
        if self.den is ONE_POLY and other.den is ONE_POLY and len(a[1]) == 1 and len(b[1]) == 1:
            return _make((a[0] + b[0], (a[1][0] * b[1][0],)))
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return QScalar(pmul(self.num, other.num), ONE_POLY, _canonical=True)
        return QScalar(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if not self.num[1]:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar(self.den, self.num)

    def __truediv__(self, other) -> "QScalar":
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other) -> "QScalar":
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = as_scalar(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"QScalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def constant_value(self):
        """The value as a Fraction when self is q-free, else None."""
        if not self.num[1]:
            return Fraction(0)
        if len(self.num[1]) == 1 and self.num[0] == 0 and self.den[0] == 0 and len(self.den[1]) == 1:
            return Fraction(self.num[1][0], self.den[1][0])
        return None

    def specialize(self, q0) -> Fraction:
        return specialize(self, q0)


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den[1]:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num[1]:
        return ZERO_POLY, ONE_POLY
    # move the q-power of the denominator into the numerator
    low = num[0] - den[0]
    n, d = num[1], den[1]
    if len(d) > 1 and len(n) > 0:
        g = _poly_gcd(n, d)
        if len(g) > 1:
            n = _exact_div(n, g)
            d = _exact_div(d, g)
    cn, cd = _content(n), _content(d)
    c = math.gcd(cn, cd)
    if c > 1:
        n = tuple(x // c for x in n)
        d = tuple(x // c for x in d)
    if d[-1] < 0:
        n = tuple(-x for x in n)
        d = tuple(-x for x in d)
    return (low, n), (ONE_POLY if d == (1,) else (0, d))


def _make(num: Poly) -> QScalar:
    """Laurent polynomial already in canonical form, denominator 1."""
    out = object.__new__(QScalar)
    out.num = num
    out.den = ONE_POLY
    out._hash = None
    return out


@lru_cache(maxsize=256)
def _int_scalar(n: int) -> QScalar:
    if n == 0:
        return QScalar(ZERO_POLY, ONE_POLY, _canonical=True)
    return QScalar((0, (n,)), ONE_POLY, _canonical=True)


ZERO = QScalar(ZERO_POLY, ONE_POLY, _canonical=True)
ONE = QScalar(ONE_POLY, ONE_POLY, _canonical=True)
Q = QScalar.monomial(1)

ScalarLike = Union[QScalar, int, Fraction]


def as_scalar(x) -> QScalar:
    if isinstance(x, QScalar):
        return x
    if isinstance(x, int):
        return _int_scalar(x)
    if isinstance(x, Fraction):
        return QScalar.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")


def qpow(k: int) -> QScalar:
    return QScalar.monomial(k)


# --- evaluation ---------------------------------------------------------

def _peval(p: Poly, q0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p[1]):
        acc = acc * q0 + c
    return acc * q0 ** p[0]


def specialize(s: QScalar, q0) -> Fraction:
    """Evaluate ``s`` exactly at the rational point ``q0``."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise ZeroDivisionError("q0 must be nonzero")
    s = as_scalar(s)
    d = _peval(s.den, q0)
    if d == 0:
        raise ZeroDivisionError(f"denominator of {s} vanishes at q={q0}")
    return _peval(s.num, q0) / d


# --- q-combinatorics (balanced conventions) ------------------------------

@lru_cache(maxsize=None)
def q_int(n: int) -> QScalar:
    """(n)_q = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_int(-n)
    return QScalar.laurent({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QScalar:
    out = ONE
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, r: int) -> QScalar:
    if r < 0 or r > n:
        return ZERO
    return q_factorial(n) / (q_factorial(r) * q_factorial(n - r))


def q_binomial_recursive(n: int, r: int) -> QScalar:
    """Gaussian recursion [n,r] = q^r [n-1,r] + q^(r-n) [n-1,r-1]; used as an oracle."""
    if r < 0 or r > n:
        return ZERO
    if r == 0 or r == n:
        return ONE
    return qpow(r) * q_binomial_recursive(n - 1, r) + qpow(r - n) * q_binomial_recursive(n - 1, r - 1)


def q_scalar_at(base: int, k: int) -> QScalar:
    """q_i^k with q_i = q^base."""
    return qpow(base * k)


# --- textual form ---------------------------------------------------------

def _format_poly(p: Poly) -> str:
    if not p[1]:
        return "0"
    parts = []
    for i in range(len(p[1]) - 1, -1, -1):
        c = p[1][i]
        if c == 0:
            continue
        k = p[0] + i
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(s: QScalar) -> str:
    n = _format_poly(s.num)
    if s.den == ONE_POLY:
        return n
    d = _format_poly(s.den)
    n = f"({n})" if len(s.num[1]) > 1 or " " in n else n
    d = f"({d})" if " " in d else d
    return f"{n}/{d}"


_TERM = re.compile(r"^(\d+)?(?:\*?q(?:\^(-?\d+))?)?$")


def _parse_poly(text: str) -> Poly:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    tokens = []
    s = text.replace(" ", "")
    i = 0
    sign = 1
    cur = ""
    while i < len(s):
        ch = s[i]
        if ch in "+-" and cur and not cur.endswith("^"):
            tokens.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and not cur:
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
        i += 1
    if cur:
        tokens.append((sign, cur))
    coeffs: dict[int, int] = {}
    for sgn, tok in tokens:
        m = _TERM.match(tok)
        if not m or tok == "":
            raise ValueError(f"bad scalar term {tok!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if "q" in tok:
            k = int(m.group(2)) if m.group(2) is not None else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sgn * c
    if not coeffs:
        return ZERO_POLY
    low = min(coeffs)
    return _trim(low, [coeffs.get(k, 0) for k in range(low, max(coeffs) + 1)])


def _split_top(text: str) -> list[str]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return [text[:i], text[i + 1:]]
    return [text]


def parse_scalar(text: str) -> QScalar:
    """Inverse of :func:`format_scalar`."""
    parts = _split_top(text.strip())
    num = _parse_poly(parts[0])
    den = _parse_poly(parts[1]) if len(parts) == 2 else ONE_POLY
    return QScalar(num, den)
