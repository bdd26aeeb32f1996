"""The level-6 modular elliptic surface as a pencil of plane cubics.

The surface is the hypersurface  s*(x+y)*(y+z)*(z+x) + t*x*y*z = 0  in
P^1 x P^2, fibred over the base coordinate (s:t).  We work in the affine
chart s = 1 and write t = oo for (s:t) = (0:1), whose fibre is the
triangle x*y*z = 0.  Resolving the three surface singularities on that
fibre turns it into a hexagon of lines; no other fibre is touched.

Singular fibres and their singular points:

    t = oo   I6   six rational nodes (hexagon vertices)
    t = 0    I3   three rational nodes (triangle of lines)
    t = 1    I2   two nodes conjugate over Q(sqrt(-3)); the fibre splits
                  as (x+y+z)*(xy+yz+zx)
    t = -8   I1   one rational node at (1:1:1)

In characteristic 3 we have -8 = 1, the I2 and I1 fibres merge, and the
fibre at t = 1 degenerates to type III (line tangent to the conic at
(1:1:1)).  Characteristic 2 is rejected everywhere: it is a prime of bad
reduction for every fibre product built downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError, UnsupportedCharacteristicError
from .ffarith import inverse_table, legendre, require_odd_prime

# Largest modulus the counting layer accepts; keeps every intermediate
# (p^3 times a fibre count) far away from any practical resource limit.
P_MAX = 10**4


class _Infinity:
    """The point (s:t) = (0:1) of the base line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"


INF = _Infinity()

#: The base points carrying singular fibres, in characteristic 0.
CUSPS = (0, 1, INF, -8)


@dataclass(frozen=True)
class FibreClass:
    """Kodaira type of a fibre plus rationality of its singular points."""

    kodaira: str  # "smooth", "I1", "I2", "I3", "I6" or "III"
    singular_points: int
    rationality: str  # "all-rational", "conjugate-pair" or "none"
    disc: int | None = None  # field of definition of a conjugate pair

    @property
    def is_singular(self) -> bool:
        return self.singular_points > 0

    def fixed_singular_points(self, p: int) -> int:
        """Number of singular points rational over F_p."""
        if self.rationality == "conjugate-pair":
            return self.singular_points if legendre(self.disc, p) == 1 else 0
        return self.singular_points


SMOOTH = FibreClass("smooth", 0, "none")
_I1 = FibreClass("I1", 1, "all-rational")
_I2 = FibreClass("I2", 2, "conjugate-pair", disc=-3)
_I3 = FibreClass("I3", 3, "all-rational")
_I6 = FibreClass("I6", 6, "all-rational")
_III = FibreClass("III", 1, "all-rational")

_GENERIC_CLASSES = {0: _I3, 1: _I2, INF: _I6, -8: _I1}


def cusp_fibre_class(c) -> FibreClass:
    """Characteristic-0 classification of the fibre over a cusp."""
    if c not in _GENERIC_CLASSES:
        raise ArgumentError(f"{c!r} is not a cusp; expected one of {CUSPS}")
    return _GENERIC_CLASSES[c]


def _check_characteristic(p: int) -> None:
    if p == 2:
        raise UnsupportedCharacteristicError("characteristic 2 is not modelled")
    require_odd_prime(p)
    if p > P_MAX:
        raise ArgumentError(f"p={p} exceeds the supported bound {P_MAX}")


def classify_fibre(t, p: int) -> FibreClass:
    """Kodaira class of the fibre over t in F_p u {oo}.

    For p = 3 only the cusps {0, 1, oo} may be queried: the fibre at 1 is
    the merged type III, and non-cusp parameters have no class assigned
    (they are handled by plain counting).
    """
    _check_characteristic(p)
    if t is INF:
        return _I6
    t %= p
    if p == 3:
        if t == 0:
            return _I3
        if t == 1:
            return _III
        raise ArgumentError(f"t={t} is not a supported cusp in characteristic 3")
    if t == 0:
        return _I3
    if t == 1:
        return _I2
    if t == (-8) % p:
        return _I1
    return SMOOTH


# Fibre-count cache, one vector per prime: entry t (0 <= t < p) is the
# point count of the plane cubic with parameter t; computed in a single
# O(p^2) sweep that assigns each point of P^2(F_p) to the fibres through it.
_COUNT_CACHE: dict[int, tuple[int, ...]] = {}


def plane_count_vector(p: int) -> tuple[int, ...]:
    """Point counts of all plane fibres with finite t, as a length-p tuple.

    Enumerates the canonical representatives (1:y:z), (0:1:z), (0:0:1) of
    P^2(F_p) once.  A representative with x = 1 lies on the fibre t iff
    M + t*B = 0 where M = (1+y)(y+z)(z+1) and B = y*z, so for B != 0 it
    belongs to exactly one fibre, t = -M/B, and for B = 0 it belongs to
    every finite fibre iff M = 0.  The x = 0 representatives contribute
    the three points (0:1:0), (0:1:-1), (0:0:1) to every finite fibre.
    """
    cached = _COUNT_CACHE.get(p)
    if cached is not None:
        return cached
    _check_characteristic(p)
    inv = inverse_table(p)
    hist = [0] * p
    on_all = 0
    for y in range(p):
        a1 = 1 + y
        for z in range(p):
            m = a1 * (y + z) * (z + 1) % p
            b = y * z % p
            if b:
                hist[-m * inv[b] % p] += 1
            elif m == 0:
                on_all += 1
    base = on_all + 3
    vec = tuple(h + base for h in hist)
    _COUNT_CACHE[p] = vec
    return vec


def seed_count_cache(entries: dict[int, tuple[int, ...]]) -> None:
    """Install precomputed fibre-count vectors (used by the parallel driver)."""
    _COUNT_CACHE.update(entries)


def count_plane_fibre(t, p: int) -> int:
    """Points of the plane cubic over t in P^2(F_p distinct), exact."""
    _check_characteristic(p)
    if t is INF:
        return 3 * p  # triangle x*y*z = 0
    return plane_count_vector(p)[t % p]


def count_plane_fibre_direct(t, p: int) -> int:
    """Same count by a straight per-fibre scan of the representatives.

    Slower reference path kept deliberately separate from the cached
    vector; the test suite checks the two agree.
    """
    _check_characteristic(p)
    if t is INF:
        n = sum(1 for y in range(p) for z in range(p) if y * z % p == 0)
        return n + p + 1  # (0:1:z) all on x*y*z = 0, plus (0:0:1)
    t %= p
    n = 0
    for y in range(p):
        a1 = 1 + y
        for z in range(p):
            if (a1 * (y + z) * (z + 1) + t * y * z) % p == 0:
                n += 1
    # (0:1:z) lies on the fibre iff z(1+z) = 0; (0:0:1) always does.
    return n + 3


def count_resolved_fibre(t, p: int) -> int:
    """Fibre count on the resolved surface.

    Identical to the plane count except over t = oo, where the three
    blown-up surface points each contribute an extra exceptional line:
    the hexagonal I6 fibre has 6p points.
    """
    n = count_plane_fibre(t, p)
    if t is INF:
        n += 3 * p
    return n


def expected_resolved_count(t, p: int) -> int:
    """Closed form for the resolved count of a cusp fibre.

    I6 -> 6p; I3 -> 3p; I2 -> 2p or 2p+2 as -3 is or is not a square mod
    p; I1 -> p or p+2 by the same symbol (the node is rational but its
    tangent directions generate Q(sqrt(-3))); III (p = 3 only) -> 2p+1.
    """
    _check_characteristic(p)
    fc = classify_fibre(t, p)
    chi = legendre(-3, p) if p != 3 else 0
    if fc.kodaira == "I6":
        return 6 * p
    if fc.kodaira == "I3":
        return 3 * p
    if fc.kodaira == "I2":
        return 2 * p if chi == 1 else 2 * p + 2
    if fc.kodaira == "I1":
        return p if chi == 1 else p + 2
    if fc.kodaira == "III":
        return 2 * p + 1
    raise ArgumentError(f"t={t!r} is not a cusp mod {p}")
