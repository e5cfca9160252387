"""Scalar backends: exact rationals, the golden field Q(phi), and binary64.

All computations in the package are written against ordinary Python
operators, so ``Fraction``, :class:`Golden` and ``float`` values can be used
interchangeably.  :func:`coerce_vector` promotes a mixed list to a single
backend.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import ParseError

SQRT5_FLOAT = math.sqrt(5)
PHI_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0


class Golden:
    """Exact element ``a + b*phi`` of Q(sqrt 5), with ``phi**2 = phi + 1``.

    Coefficients are kept as ``int`` whenever possible, which keeps orbit
    computations of golden rotations cheap.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _norm(a)
        self.b = _norm(b)

    @classmethod
    def phi(cls):
        return cls(0, 1)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Golden(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Golden(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        bb = self.b * o.b
        return Golden(self.a * o.a + bb, self.a * o.b + self.b * o.a + bb)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self):
        norm = self.a * self.a + self.a * self.b - self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("Golden division by zero")
        return Golden(Fraction(self.a + self.b) / norm, Fraction(-self.b) / norm)

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # ordering -------------------------------------------------------------
    def sign(self):
        # 2(a + b phi) = u + v sqrt5
        u = 2 * self.a + self.b
        v = self.b
        if u >= 0 and v >= 0:
            return 0 if (u == 0 and v == 0) else 1
        if u <= 0 and v <= 0:
            return -1
        s = u * u - 5 * v * v
        if u > 0:
            return 1 if s > 0 else -1
        return -1 if s > 0 else 1

    def _cmp(self, other):
        o = _lift(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        if c is None:
            return float(self) == other
        return c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return float(self) < other if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return float(self) <= other if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return float(self) > other if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return float(self) >= other if c is None else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self):
        # value = (u + b sqrt5) / 2; when u and b have opposite signs divide
        # the exact norm by the conjugate to avoid cancellation
        a, b = self.a, self.b
        if (a >= 0) == (b >= 0):
            return float(a) + float(b) * PHI_FLOAT
        u = 2 * a + b
        if (u >= 0) == (b >= 0):
            return (float(u) + float(b) * SQRT5_FLOAT) / 2
        norm = u * u - 5 * b * b
        return float(norm) / (2 * (float(u) - float(b) * SQRT5_FLOAT))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"Golden({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        coef = "phi" if mag == 1 else f"{mag}*phi"
        if self.a == 0:
            return coef if self.b > 0 else "-" + coef
        return f"{self.a}{'+' if self.b > 0 else '-'}{coef}"


def _norm(x):
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _lift(x):
    if isinstance(x, Golden):
        return x
    if isinstance(x, Rational):
        return Golden(x, 0)
    return None


def is_exact(x):
    return isinstance(x, (Rational, Golden))


def to_exact(x):
    """Promote ints to ``Fraction``; leave other exact scalars alone."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def coerce_vector(values):
    """Return ``values`` as a tuple over a single backend.

    Any float makes the whole vector float.  Otherwise any :class:`Golden`
    makes it golden; else everything becomes ``Fraction``.
    """
    values = list(values)
    if any(not is_exact(v) for v in values):
        return tuple(float(v) for v in values)
    if any(isinstance(v, Golden) for v in values):
        return tuple(v if isinstance(v, Golden) else Golden(v, 0) for v in values)
    return tuple(Fraction(v) for v in values)


def vector_kind(values):
    """'float', 'golden' or 'rational' for an already coerced vector."""
    if not values:
        return "rational"
    v = values[0]
    if isinstance(v, float):
        return "float"
    if isinstance(v, Golden):
        return "golden"
    return "rational"


_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_GOLD = re.compile(r"^([+-]?\d+(?:/\d+)?)?([+-]?\d*(?:/\d+)?)\*?phi$")


def parse_scalar(token):
    """Parse ``3``, ``-2/7``, ``0.25``, ``phi``, ``2*phi``, ``1+phi``."""
    tok = token.strip().replace(" ", "")
    if not tok:
        raise ParseError("empty scalar")
    if _RAT.match(tok):
        return Fraction(tok)
    if tok.endswith("phi"):
        return _parse_golden(tok)
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"cannot parse scalar {token!r}") from None


def _parse_golden(tok):
    body = tok[: -len("phi")].rstrip("*")
    if body in ("", "+"):
        return Golden(0, 1)
    if body == "-":
        return Golden(0, -1)
    # split "a+b" or "a-b" or "b" at the last sign that is not leading
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-":
            a, b = body[:k], body[k:]
            if b in ("+", "-"):
                b += "1"
            try:
                return Golden(Fraction(a), Fraction(b))
            except ValueError:
                break
    try:
        return Golden(0, Fraction(body))
    except ValueError:
        raise ParseError(f"cannot parse golden scalar {tok!r}") from None


def parse_vector(text):
    """Parse a comma separated vector of scalars (see :func:`parse_scalar`)."""
    if text is None:
        raise ParseError("missing vector")
    parts = [p for p in str(text).split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ParseError(f"malformed vector {text!r}")
    return coerce_vector(parse_scalar(p) for p in parts)


def format_scalar(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)
