"""Prime-field arithmetic: Legendre symbols, inverses, cubic irreducibility.

Everything here works on plain Python integers; `FpElem` is a thin wrapper
for callers that want the residue and the modulus carried together.  All
primes in this package are small (< 10^4), so primality is decided by
deterministic trial division and no probabilistic machinery is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ArgumentError, DegenerateCubicError


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n, ascending (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for d in range(2, int(n**0.5) + 1):
        if sieve[d]:
            sieve[d * d :: d] = bytearray(len(sieve[d * d :: d]))
    return [i for i, flag in enumerate(sieve) if flag]


def require_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ArgumentError(f"modulus must be an odd prime, got {p}")


def inverse(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p via the extended Euclidean algorithm."""
    require_odd_prime(p)
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


@lru_cache(maxsize=64)
def inverse_table(p: int) -> tuple[int, ...]:
    """inverses[a] = a^(-1) mod p for 1 <= a < p (entry 0 is unused)."""
    require_odd_prime(p)
    inv = [0] * p
    inv[1] = 1
    for a in range(2, p):
        inv[a] = (p - p // a) * inv[p % a] % p
    return tuple(inv)


def legendre(s: int, p: int) -> int:
    """Legendre symbol (s/p) in {-1, 0, +1}, by Euler's criterion.

    s may be any integer, in particular -1 and 2; s = 0 mod p gives 0.
    """
    require_odd_prime(p)
    s %= p
    if s == 0:
        return 0
    e = pow(s, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def legendre_via_reciprocity(s: int, p: int) -> int:
    """Legendre symbol computed through quadratic reciprocity.

    Independent of `legendre` (no modular exponentiation): folds out the
    sign at -1, the factor at 2, and flips via the reciprocity law until
    the top argument reaches 0 or 1.  Used as the cross-check path.
    """
    require_odd_prime(p)
    s %= p
    bottom = p
    acc = 1
    while True:
        s %= bottom
        if s == 0:
            return 0 if bottom > 1 else acc
        while s % 2 == 0:
            s //= 2
            if bottom % 8 in (3, 5):
                acc = -acc
        if s == 1:
            return acc
        if s % 4 == 3 and bottom % 4 == 3:
            acc = -acc
        s, bottom = bottom, s


@dataclass(frozen=True)
class FpElem:
    """A residue in the prime field F_p (p an odd prime)."""

    value: int
    p: int

    def __post_init__(self):
        require_odd_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def inv(self) -> "FpElem":
        return FpElem(inverse(self.value, self.p), self.p)

    def __add__(self, other):
        return FpElem(self.value + self._val(other), self.p)

    def __sub__(self, other):
        return FpElem(self.value - self._val(other), self.p)

    def __mul__(self, other):
        return FpElem(self.value * self._val(other), self.p)

    def _val(self, other) -> int:
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ArgumentError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        return int(other)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Cubic:
    """Integer cubic c3*x^3 + c2*x^2 + c1*x + c0 with c3 != 0."""

    c3: int
    c2: int
    c1: int
    c0: int

    def __post_init__(self):
        if self.c3 == 0:
            raise ArgumentError("leading coefficient of a cubic must be nonzero")

    def eval_mod(self, x: int, p: int) -> int:
        return (((self.c3 * x + self.c2) * x + self.c1) * x + self.c0) % p

    def __str__(self) -> str:
        terms = []
        for c, mono in ((self.c3, "x^3"), (self.c2, "x^2"), (self.c1, "x"), (self.c0, "")):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            coeff = "" if (mag == 1 and mono) else str(mag)
            terms.append(f"{sign}{coeff}{mono}")
        return "".join(terms) or "0"


def cubic_irreducible(h: Cubic, p: int) -> bool:
    """True iff h mod p has no root in F_p.

    For degree 3, rootlessness is equivalent to irreducibility.  Accepts
    p = 2 as well: the criterion is root search, no quadratic symbols.
    """
    if not is_prime(p):
        raise ArgumentError(f"p must be prime, got {p}")
    if h.c3 % p == 0:
        raise DegenerateCubicError(
            f"leading coefficient of {h} vanishes mod {p}; choose another prime"
        )
    return all(h.eval_mod(x, p) != 0 for x in range(p))
