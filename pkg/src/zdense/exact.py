"""Exact scalars: rationals, Q(sqrt2), and one quadratic step above Q(sqrt2).

Rationals are plain :class:`fractions.Fraction`. All order comparisons use the
real embedding with sqrt2 > 0 and every tower radical positive.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import FieldError

Rational = Fraction

FIELD_Q = "Q"
FIELD_SQRT2 = "Q(sqrt2)"
FIELD_TOWER = "tower"
_FIELD_RANK = {FIELD_Q: 0, FIELD_SQRT2: 1, FIELD_TOWER: 2}


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise FieldError(f"not a rational: {x!r}")


class QSqrt2:
    """Element a + b*sqrt2 of Q(sqrt2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _q(a))
        object.__setattr__(self, "b", _q(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt2):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt2(other, 0)
        return None

    def __repr__(self):
        return f"QSqrt2({str(self.a)!r}, {str(self.b)!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt2"

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2(self.a * other, self.b * other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def conj(self) -> "QSqrt2":
        """Galois conjugate sqrt2 -> -sqrt2."""
        return QSqrt2(self.a, -self.b)

    def inverse(self) -> "QSqrt2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QSqrt2(self.a / other, self.b / other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = QSqrt2(1)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return sign(self - o)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0


SQRT2 = QSqrt2(0, 1)


class Tower:
    """Element u + v*sqrt(d) with u, v, d in Q(sqrt2) and d > 0 not a square."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u, v, d):
        if any(isinstance(z, Tower) for z in (u, v, d)):
            raise FieldError("only one quadratic step over Q(sqrt2) is supported")
        u, v, d = (_sqrt2(z) for z in (u, v, d))
        if sign(d) <= 0:
            raise FieldError(f"tower radicand must be positive, got {d}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Tower is immutable")

    def _coerce(self, other):
        if isinstance(other, Tower):
            if other.d != self.d:
                raise FieldError(f"radicand mismatch: {self.d} vs {other.d}")
            return other
        if isinstance(other, (int, Fraction, QSqrt2)):
            return Tower(other, 0, self.d)
        return None

    def __repr__(self):
        return f"Tower({self.u!r}, {self.v!r}, d={self.d!r})"

    def __str__(self):
        return f"({self.u}) + ({self.v})*sqrt({self.d})"

    def __eq__(self, other):
        if isinstance(other, Tower) and other.d != self.d:
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v, self.d))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Tower(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Tower(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Tower(-self.u, -self.v, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Tower(
            self.u * o.u + self.v * o.v * self.d,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "Tower":
        """Conjugate sqrt(d) -> -sqrt(d) over Q(sqrt2)."""
        return Tower(self.u, -self.v, self.d)

    def norm(self) -> QSqrt2:
        return self.u * self.u - self.v * self.v * self.d

    def inverse(self) -> "Tower":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in tower field")
        return Tower(self.u / n, -self.v / n, self.d)

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
        base = self if k >= 0 else self.inverse()
        result = Tower(1, 0, self.d)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __float__(self):
        return float(self.u) + float(self.v) * math.sqrt(float(self.d))

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return sign(self - o)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0


def _sqrt2(x) -> QSqrt2:
    if isinstance(x, QSqrt2):
        return x
    return QSqrt2(_q(x), 0)


def _combine_signs(su: int, sv: int, mag: int) -> int:
    # sign of u + v*r with r > 0, given sign(u), sign(v), sign(u^2 - v^2 r^2)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    if mag > 0:
        return su
    if mag < 0:
        return sv
    return 0


def sign(x) -> int:
    """Exact sign under the embedding sqrt2 > 0, sqrt(d) > 0."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if isinstance(x, QSqrt2):
        su = (x.a > 0) - (x.a < 0)
        sv = (x.b > 0) - (x.b < 0)
        mag = x.a * x.a - 2 * x.b * x.b
        return _combine_signs(su, sv, (mag > 0) - (mag < 0))
    if isinstance(x, Tower):
        su, sv = sign(x.u), sign(x.v)
        if sv != 0 and su != 0 and su != sv:
            return _combine_signs(su, sv, sign(x.u * x.u - x.v * x.v * x.d))
        return _combine_signs(su, sv, 0)
    raise FieldError(f"sign of unsupported scalar {x!r}")


def rational_sqrt(x: Fraction):
    """Exact square root of a non-negative rational, or None."""
    x = _q(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def rational_root(x: Fraction, n: int):
    """Exact real n-th root of a rational (odd n allows negatives), or None."""
    x = _q(x)
    if x < 0:
        if n % 2 == 0:
            return None
        r = rational_root(-x, n)
        return None if r is None else -r

    def iroot(m):
        if m < 2:
            return m
        r = int(round(m ** (1.0 / n))) if m.bit_length() < 1000 else _int_nth_root(m, n)
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**n == m:
                return c
        c = _int_nth_root(m, n)
        return c if c**n == m else None

    p, q = iroot(x.numerator), iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _int_nth_root(m: int, n: int) -> int:
    lo, hi = 0, 1 << (m.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo


def sqrt2_sqrt(d):
    """Exact square root of d in Q(sqrt2), or None if d is not a square there."""
    d = _sqrt2(d)
    if d.b == 0:
        r = rational_sqrt(d.a)
        if r is not None:
            return QSqrt2(r)
        r = rational_sqrt(d.a / 2)
        if r is not None:
            return QSqrt2(0, r)
        return None
    # (p + q sqrt2)^2 = p^2 + 2q^2 + 2pq sqrt2
    root_norm = rational_sqrt(d.norm())
    if root_norm is None:
        return None
    for p2 in ((d.a + root_norm) / 2, (d.a - root_norm) / 2):
        p = rational_sqrt(p2)
        if p:
            cand = QSqrt2(p, d.b / (2 * p))
            if cand * cand == d:
                return cand if sign(cand) >= 0 else -cand
    return None


def sqrt(d):
    """Positive square root of d > 0: in Q(sqrt2) when possible, else a Tower."""
    d = _sqrt2(d)
    s = sign(d)
    if s < 0:
        raise FieldError(f"square root of negative element {d}")
    r = sqrt2_sqrt(d)
    if r is not None:
        return r
    return Tower(0, 1, d)


def conj(x):
    """Galois conjugation sqrt2 -> -sqrt2 on Q or Q(sqrt2)."""
    if isinstance(x, QSqrt2):
        return x.conj()
    if isinstance(x, (int, Fraction)):
        return x
    raise FieldError("Galois conjugation is defined on Q(sqrt2) only")


def is_rational(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, QSqrt2):
        return x.b == 0
    if isinstance(x, Tower):
        return x.v == 0 and x.u.b == 0
    return False


def is_integer(x) -> bool:
    return is_rational(x) and to_rational(x).denominator == 1


def to_rational(x) -> Fraction:
    if isinstance(x, Tower):
        if x.v != 0:
            raise FieldError(f"{x} is not rational")
        x = x.u
    if isinstance(x, QSqrt2):
        if x.b != 0:
            raise FieldError(f"{x} is not rational")
        return x.a
    return _q(x)


def canonical(x):
    """Smallest representation: Fraction when rational, QSqrt2 when possible."""
    if isinstance(x, Tower):
        if x.v == 0:
            return canonical(x.u)
        return x
    if isinstance(x, QSqrt2):
        return x.a if x.b == 0 else x
    return _q(x)


def field_of(x) -> str:
    if isinstance(x, Tower):
        return FIELD_TOWER if x.v != 0 else field_of(x.u)
    if isinstance(x, QSqrt2):
        return FIELD_SQRT2 if x.b != 0 else FIELD_Q
    return FIELD_Q


def join_fields(*fields: str) -> str:
    return max(fields, key=_FIELD_RANK.__getitem__, default=FIELD_Q)


# JSON scalar encodings


def encode_scalar(x, field: str):
    if field == FIELD_Q:
        return str(to_rational(x))
    if field == FIELD_SQRT2:
        x = _sqrt2(canonical(x)) if not isinstance(x, Tower) else _sqrt2(to_rational(x))
        return {"a": str(x.a), "b": str(x.b)}
    if field == FIELD_TOWER:
        if not isinstance(x, Tower):
            raise FieldError("tower encoding needs a Tower element")
        return {
            "u": encode_scalar(x.u, FIELD_SQRT2),
            "v": encode_scalar(x.v, FIELD_SQRT2),
            "d": encode_scalar(x.d, FIELD_SQRT2),
        }
    raise FieldError(f"unknown field tag {field!r}")


def decode_scalar(obj, field: str):
    if field == FIELD_Q:
        if not isinstance(obj, str):
            raise FieldError(f"rational must be a string, got {obj!r}")
        return Fraction(obj)
    if field == FIELD_SQRT2:
        if not isinstance(obj, dict) or set(obj) != {"a", "b"}:
            raise FieldError(f"Q(sqrt2) scalar must be {{'a','b'}}, got {obj!r}")
        return QSqrt2(decode_scalar(obj["a"], FIELD_Q), decode_scalar(obj["b"], FIELD_Q))
    if field == FIELD_TOWER:
        return Tower(
            decode_scalar(obj["u"], FIELD_SQRT2),
            decode_scalar(obj["v"], FIELD_SQRT2),
            decode_scalar(obj["d"], FIELD_SQRT2),
        )
    raise FieldError(f"unknown field tag {field!r}")
