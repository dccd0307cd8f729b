"""Exact rationals and finite sums of square roots.

Values of the form ``sum(q_i * sqrt(n_i))`` with rational ``q_i`` and
nonnegative integer ``n_i`` are kept in a canonical form: every radicand is
squarefree and appears once.  Square roots of distinct squarefree integers
are linearly independent over the rationals, so an expression in canonical
form is zero exactly when it has no terms.  Signs of nonzero expressions are
decided by dyadic interval evaluation with integer square roots, with an
exact squaring fallback for small expressions.
"""

from __future__ import annotations

import contextvars
import enum
import math
from contextlib import contextmanager
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Sign",
    "PrecisionExhausted",
    "RadicalExpr",
    "radical_sign",
    "radical_floor",
    "precision_cap",
    "get_precision_cap",
    "squarefree_split",
]

START_BITS = 64
DEFAULT_CAP_BITS = 4096

_cap_bits = contextvars.ContextVar("k3bn_precision_cap", default=DEFAULT_CAP_BITS)


class PrecisionExhausted(ArithmeticError):
    """Interval refinement hit the precision cap without separating from zero."""


class Sign(enum.IntEnum):
    Negative = -1
    Zero = 0
    Positive = 1

    def __neg__(self):
        return Sign(-int(self))


def get_precision_cap() -> int:
    return _cap_bits.get()


@contextmanager
def precision_cap(bits: int):
    """Temporarily change the fractional-bit cap used by sign decisions."""
    if bits < START_BITS:
        raise ValueError(f"precision cap must be at least {START_BITS} bits")
    token = _cap_bits.set(bits)
    try:
        yield
    finally:
        _cap_bits.reset(token)


@lru_cache(maxsize=65536)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(a, b)`` with ``n == a*a*b`` and ``b`` squarefree.

    Trial division runs up to the cube root of ``n``; whatever is left has
    at most two prime factors, so a perfect-square test finishes the job.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n < 4:
        return 1, n
    outside, inside = 1, 1
    m = n
    p = 2
    while p * p * p <= n and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            outside *= p ** (e // 2)
            if e % 2:
                inside *= p
        p += 1 if p == 2 else 2
    root = math.isqrt(m)
    if root * root == m:
        outside *= root
    else:
        inside *= m
    return outside, inside


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"expected an exact rational, got {type(q).__name__}")


class RadicalExpr:
    """An exact real number ``sum(coeff * sqrt(radicand))``.

    Instances are immutable.  ``terms`` is a tuple of ``(coeff, radicand)``
    pairs sorted by radicand, with nonzero coefficients and distinct
    squarefree radicands; radicand 1 carries the rational part.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc: dict[int, Fraction] = {}
        for coeff, radicand in terms:
            q = _as_fraction(coeff)
            if not isinstance(radicand, int):
                raise TypeError("radicands must be integers")
            if q == 0 or radicand == 0:
                continue
            a, b = squarefree_split(radicand)
            acc[b] = acc.get(b, Fraction(0)) + q * a
        self._terms = tuple(sorted((b, q) for b, q in acc.items() if q != 0))

    @classmethod
    def _raw(cls, items):
        obj = cls.__new__(cls)
        obj._terms = tuple(items)
        return obj

    # constructors

    @classmethod
    def rational(cls, q) -> "RadicalExpr":
        return cls([(q, 1)])

    @classmethod
    def sqrt(cls, value) -> "RadicalExpr":
        """Square root of a nonnegative integer or rational."""
        q = _as_fraction(value)
        if q < 0:
            raise ValueError("cannot take the square root of a negative number")
        # sqrt(p/d) = sqrt(p*d)/d
        return cls([(Fraction(1, q.denominator), q.numerator * q.denominator)])

    @classmethod
    def coerce(cls, x) -> "RadicalExpr":
        if isinstance(x, RadicalExpr):
            return x
        return cls.rational(x)

    # inspection

    @property
    def terms(self) -> tuple[tuple[Fraction, int], ...]:
        return tuple((q, b) for b, q in self._terms)

    @property
    def radicands(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(b == 1 for b, _ in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("expression is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def coefficient(self, radicand: int) -> Fraction:
        for b, q in self._terms:
            if b == radicand:
                return q
        return Fraction(0)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, (RadicalExpr, int, Fraction)):
            return NotImplemented
        o = RadicalExpr.coerce(other)
        return RadicalExpr([(q, b) for b, q in self._terms + o._terms])

    __radd__ = __add__

    def __neg__(self):
        return RadicalExpr._raw((b, -q) for b, q in self._terms)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (RadicalExpr, int, Fraction)):
            return NotImplemented
        return self + (-RadicalExpr.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return RadicalExpr.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RadicalExpr([(q * other, b) for b, q in self._terms])
        if not isinstance(other, RadicalExpr):
            return NotImplemented
        out = []
        for b1, q1 in self._terms:
            for b2, q2 in other._terms:
                g = math.gcd(b1, b2)
                out.append((q1 * q2 * g, (b1 // g) * (b2 // g)))
        return RadicalExpr(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        if isinstance(other, RadicalExpr):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return RadicalExpr.coerce(other) * self.reciprocal()

    def reciprocal(self) -> "RadicalExpr":
        """Inverse of ``p + q*sqrt(D)``; wider expressions are rejected."""
        irr = [(b, q) for b, q in self._terms if b != 1]
        if not self._terms:
            raise ZeroDivisionError("division by zero")
        if not irr:
            return RadicalExpr.rational(1 / self._terms[0][1])
        if len(irr) > 1:
            raise ValueError("reciprocal supports at most one irrational radicand")
        p = self.coefficient(1)
        d, q = irr[0]
        norm = p * p - q * q * d
        return RadicalExpr([(p / norm, 1), (-q / norm, d)])

    def conjugate(self) -> "RadicalExpr":
        """Flip the sign of every irrational term."""
        return RadicalExpr._raw((b, q if b == 1 else -q) for b, q in self._terms)

    # comparisons decide exactly and may raise PrecisionExhausted

    def sign(self) -> Sign:
        return radical_sign(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RadicalExpr.rational(other)
        if not isinstance(other, RadicalExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __lt__(self, other):
        return radical_sign(self - other) is Sign.Negative

    def __le__(self, other):
        return radical_sign(self - other) is not Sign.Positive

    def __gt__(self, other):
        return radical_sign(self - other) is Sign.Positive

    def __ge__(self, other):
        return radical_sign(self - other) is not Sign.Negative

    def __float__(self):
        return float(self.to_decimal(20))

    def __bool__(self):
        return bool(self._terms)

    # display

    def to_decimal(self, digits: int = 30) -> Decimal:
        """Decimal approximation rounded to ``digits`` significant digits."""
        with localcontext() as ctx:
            ctx.prec = digits + 15
            total = Decimal(0)
            for b, q in self._terms:
                term = Decimal(q.numerator) / Decimal(q.denominator)
                if b != 1:
                    term *= Decimal(b).sqrt()
                total += term
            ctx.prec = digits
            return +total

    def __repr__(self):
        return f"RadicalExpr({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for b, q in self._terms:
            mag = abs(q)
            if b == 1:
                body = str(mag)
            else:
                root = f"sqrt({b})"
                if mag == 1:
                    body = root
                elif mag.denominator == 1:
                    body = f"{mag.numerator}*{root}"
                elif mag.numerator == 1:
                    body = f"{root}/{mag.denominator}"
                else:
                    body = f"{mag.numerator}*{root}/{mag.denominator}"
            parts.append(("-" if q < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out


def _interval(expr: RadicalExpr, bits: int) -> tuple[int, int]:
    """Integers ``lo, hi`` with ``lo <= value * 2**bits <= hi``."""
    lo = hi = 0
    for b, q in expr._terms:
        a, d = q.numerator, q.denominator
        if b == 1:
            num = a << bits
            lo += num // d
            hi += -((-num) // d)
            continue
        # floor(|a| * sqrt(b) * 2**bits)
        root = math.isqrt(a * a * b << (2 * bits))
        exact = root * root == a * a * b << (2 * bits)
        if a > 0:
            t_lo = root // d
            t_hi = -((-(root if exact else root + 1)) // d)
        else:
            top = root if exact else root + 1
            t_lo = -((top + d - 1) // d)
            t_hi = -(root // d)
        lo += t_lo
        hi += t_hi
    return lo, hi


def _exact_sign(expr: RadicalExpr) -> Sign:
    """Sign by moving terms across and squaring; no floating point at all."""
    terms = expr._terms
    if not terms:
        return Sign.Zero
    if len(terms) == 1:
        return Sign.Positive if terms[0][1] > 0 else Sign.Negative
    half = len(terms) // 2
    left = RadicalExpr._raw(terms[:half])
    right = RadicalExpr._raw(terms[half:])
    sl = _exact_sign(left)
    sr = _exact_sign(right)
    if sl == sr or sr is Sign.Zero:
        return sl
    if sl is Sign.Zero:
        return sr
    # opposite signs: the larger magnitude wins
    diff = _exact_sign(left * left - right * right)
    return sl if diff is Sign.Positive else sr if diff is Sign.Negative else Sign.Zero


def radical_sign(e: RadicalExpr, cap_bits: int | None = None) -> Sign:
    """Exact sign of ``e``.

    One shared radicand decides by its coefficient.  Otherwise the value is
    enclosed in dyadic intervals from 64 fractional bits, doubling up to the
    cap.  Past the cap, expressions with at most four radicands fall back to
    exact squaring; anything larger raises :class:`PrecisionExhausted`.
    """
    terms = e._terms
    if not terms:
        return Sign.Zero
    if len(terms) == 1:
        return Sign.Positive if terms[0][1] > 0 else Sign.Negative
    cap = get_precision_cap() if cap_bits is None else cap_bits
    bits = START_BITS
    while True:
        lo, hi = _interval(e, bits)
        if lo > 0:
            return Sign.Positive
        if hi < 0:
            return Sign.Negative
        if bits >= cap:
            break
        bits = min(2 * bits, cap)
    if len(terms) <= 4:
        return _exact_sign(e)
    raise PrecisionExhausted(f"could not separate {e} from zero at {cap} bits")


def radical_floor(e: RadicalExpr, cap_bits: int | None = None) -> int:
    """Exact floor of ``e``, settled by sign tests against integers."""
    if e.is_rational():
        return math.floor(e.rational_value())
    cap = get_precision_cap() if cap_bits is None else cap_bits
    bits = START_BITS
    while True:
        lo, hi = _interval(e, bits)
        f_lo, f_hi = lo >> bits, hi >> bits
        if f_lo == f_hi:
            return f_lo
        if f_hi == f_lo + 1:
            s = radical_sign(e - f_hi, cap)
            return f_hi if s is not Sign.Negative else f_lo
        if bits >= cap:
            raise PrecisionExhausted(f"floor of {e} undecided at {cap} bits")
        bits = min(2 * bits, cap)
