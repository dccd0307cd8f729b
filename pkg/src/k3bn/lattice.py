"""Rank-three algebraic Mukai lattice of a Picard-rank-one K3 surface.

Vectors are integer triples ``(r, c, s)``: rank, degree coefficient along the
polarisation, and Euler characteristic minus rank.  The module also carries
the small number-theory toolkit used by the searches (gcd helpers, Jacobi
symbol, primality, divisor listing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional


class UsageError(ValueError):
    """An operation was called outside its documented domain."""


class DegenerateInput(ValueError):
    """A requested quantity is undefined for the given input."""


@dataclass(frozen=True)
class SurfaceContext:
    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or self.g < 2:
            raise UsageError(f"genus must be an integer >= 2, got {self.g!r}")

    @property
    def h2(self) -> int:
        return 2 * self.g - 2

    def curve_genus(self, m: int) -> int:
        """Arithmetic genus of a curve in the linear system of m times the polarisation."""
        return m * m * (self.g - 1) + 1


class MukaiVector(NamedTuple):
    r: int
    c: int
    s: int

    def __add__(self, other):
        return MukaiVector(self.r + other[0], self.c + other[1], self.s + other[2])

    def __sub__(self, other):
        return MukaiVector(self.r - other[0], self.c - other[1], self.s - other[2])

    def __neg__(self):
        return MukaiVector(-self.r, -self.c, -self.s)

    def scale(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, k * self.c, k * self.s)

    def __str__(self):
        return f"({self.r},{self.c},{self.s})"


def mukai_pairing(ctx: SurfaceContext, u, w) -> int:
    return 2 * u[1] * w[1] * (ctx.g - 1) - u[0] * w[2] - u[2] * w[0]


def mukai_square(ctx: SurfaceContext, v) -> int:
    return mukai_pairing(ctx, v, v)


def twist(ctx: SurfaceContext, v, k: int) -> MukaiVector:
    """Tensor by the k-th power of the polarisation."""
    r, c, s = v
    return MukaiVector(r, c + k * r, s + (ctx.g - 1) * k * (2 * c + k * r))


def gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(a, b), c)


def is_primitive(v) -> bool:
    return gcd3(*v) == 1


@dataclass(frozen=True)
class DerivedVectors:
    """Vectors and scalars attached to ``(v, m)``.

    Fields that cannot be formed are ``None`` and listed in ``missing`` with
    the reason; :meth:`require` turns a missing field into an exception.
    """

    vm: MukaiVector
    vc: MukaiVector
    vk: MukaiVector
    chi: int
    sigma_v: Optional[tuple] = None
    gamma: Optional[Fraction] = None
    missing: dict = field(default_factory=dict)

    def require(self, name: str):
        if name in self.missing:
            raise DegenerateInput(f"{name}: {self.missing[name]}")
        return getattr(self, name)


def derived_vectors(ctx: SurfaceContext, m: int, v) -> DerivedVectors:
    from .geometry import PlanePoint

    if m < 1:
        raise UsageError("multiplicity m must be positive")
    v = MukaiVector(*v)
    r, c, s = v
    vm = twist(ctx, v, -m)
    missing = {}
    sigma_v = None
    if s == 0:
        missing["sigma_v"] = "s = 0"
    elif m * r == c:
        missing["sigma_v"] = "m*r = c"
    else:
        sigma_v = PlanePoint(Fraction(r * c, (m * r - c) * s), Fraction(0))
    gamma = None
    if c == 0:
        missing["gamma"] = "c = 0"
    else:
        gamma = Fraction(m * r, c) - 1
    return DerivedVectors(
        vm=vm,
        vc=v - vm,
        vk=MukaiVector(s, -c, r),
        chi=m * (ctx.g - 1) * (2 * c - m * r),
        sigma_v=sigma_v,
        gamma=gamma,
        missing=missing,
    )


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n, by quadratic reciprocity."""
    if n < 1 or n % 2 == 0:
        raise UsageError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 1_000_000:
        return True
    d, e = n - 1, 0
    while d % 2 == 0:
        d //= 2
        e += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(e - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise UsageError("can only factor positive integers")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))
