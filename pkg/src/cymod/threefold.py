"""Twisted self fibre products of the level-6 surface and their traces.

A twist is a fractional-linear automorphism of the base line permuting
the cusps {0, 1, oo}.  The fibre product pairs the fibre over k with the
fibre over sigma^{-1}(k); its small resolution is a rigid Calabi-Yau
threefold whose middle-cohomology Frobenius trace is recovered from a
point count over F_p:

    trace(p) = 1 + p*(1+p)*h11 + p^3 - N(p)

with h11 = e/2 = (number of threefold nodes).  The node census, the point
count N(p) and the trace extraction all live here.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    ArgumentError,
    BadPrimeError,
    DegenerateReductionError,
    UnsupportedCharacteristicError,
)
from .ffarith import inverse, legendre, primes_upto
from . import surface
from .surface import (
    INF,
    FibreClass,
    classify_fibre,
    count_resolved_fibre,
    cusp_fibre_class,
    plane_count_vector,
)


@dataclass(frozen=True)
class TwistAut:
    """Base-line automorphism t -> (a*t + b) / (c*t + d) with integer matrix."""

    name: str
    matrix: tuple[int, int, int, int]  # (a, b, c, d)

    def __post_init__(self):
        a, b, c, d = self.matrix
        if a * d - b * c == 0:
            raise ArgumentError(f"degenerate twist matrix {self.matrix}")

    @property
    def det(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    def inverse(self) -> "TwistAut":
        """Inverse twist via the integer adjugate (no per-prime inversion)."""
        a, b, c, d = self.matrix
        return TwistAut(f"{self.name}^-1", (d, -b, -c, a))

    def apply(self, t, p: int):
        """Evaluate over F_p u {oo} with the usual conventions at oo."""
        a, b, c, d = self.matrix
        if self.det % p == 0:
            raise DegenerateReductionError(
                f"twist {self.name} degenerates mod {p} (p | det)"
            )
        if t is INF:
            if c % p == 0:
                return INF
            return a * inverse(c, p) % p
        num = (a * t + b) % p
        den = (c * t + d) % p
        if den == 0:
            return INF
        return num * inverse(den, p) % p

    def apply_exact(self, t):
        """Evaluate over Q u {oo} (characteristic-0 geometry)."""
        a, b, c, d = self.matrix
        if t is INF:
            return INF if c == 0 else Fraction(a, c)
        num = a * Fraction(t) + b
        den = c * Fraction(t) + d
        if den == 0:
            return INF
        return num / den


TWISTS: dict[str, TwistAut] = {
    "identity": TwistAut("identity", (1, 0, 0, 1)),
    "pi1": TwistAut("pi1", (-1, 1, 0, 1)),  # t -> 1 - t
    "pi2": TwistAut("pi2", (0, 1, 1, 0)),  # t -> 1/t
    "pi3": TwistAut("pi3", (1, 0, 1, -1)),  # t -> t/(t-1)
    "pi4": TwistAut("pi4", (0, 1, -1, 1)),  # t -> 1/(1-t)
    "pi5": TwistAut("pi5", (1, -1, 1, 0)),  # t -> (t-1)/t
}


def get_twist(name: str) -> TwistAut:
    try:
        return TWISTS[name]
    except KeyError:
        raise ArgumentError(
            f"unknown twist {name!r}; expected one of {sorted(TWISTS)}"
        ) from None


def twist_apply(aut: TwistAut, t, p: int):
    """Functional form of TwistAut.apply."""
    return aut.apply(t, p)


def bad_primes(aut: TwistAut) -> frozenset[int]:
    """Primes of bad reduction of the resolved fibre product.

    2 (resp. 3) is bad iff the twist fixes the cusp 0 (resp. 1), making
    the fibre there a product of two additive degenerations.  A prime
    p >= 5 is bad iff -8 and its twist image collide mod p, which happens
    exactly when p divides the cross-multiplied integer
    (a*(-8) + b) + 8*(c*(-8) + d); the identity has that integer equal to
    0 (the collision is already part of the generic geometry).
    """
    a, b, c, d = aut.matrix
    bad = set()
    if aut.apply_exact(0) == 0:
        bad.add(2)
    if aut.apply_exact(1) == 1:
        bad.add(3)
    cross = (a * (-8) + b) + 8 * (c * (-8) + d)
    if cross != 0:
        for p in primes_upto(abs(cross)):
            if p >= 5 and cross % p == 0:
                bad.add(p)
    return frozenset(bad)


def double_cusps(aut: TwistAut) -> list:
    """Base points where both factors of the fibre product are singular.

    Computed, not hardcoded: c qualifies iff the fibres over c and over
    sigma^{-1}(c) are both singular in characteristic 0.  The five twists
    yield {0, 1, oo}; the identity adds -8.
    """
    inv = aut.inverse()
    out = []
    for c in surface.CUSPS:
        pre = inv.apply_exact(c)
        if pre in surface.CUSPS and cusp_fibre_class(pre).is_singular:
            out.append(c)
    return out


@dataclass(frozen=True)
class CuspNodes:
    """One double cusp of the fibre product."""

    cusp: object  # 0, 1, oo or -8
    pair: tuple[str, str]  # Kodaira types of the two factors
    nodes: int  # product of the factors' singular-point counts


@dataclass(frozen=True)
class NodeCensus:
    """Node bookkeeping for one twist: e = 2 * nodes, h11 = e / 2."""

    twist: str
    cusps: tuple[CuspNodes, ...]
    total_nodes: int
    euler: int
    h11: int


def node_census(aut: TwistAut) -> NodeCensus:
    """Count the ordinary double points of the (unresolved) fibre product."""
    inv = aut.inverse()
    records = []
    for c in double_cusps(aut):
        f1 = cusp_fibre_class(c)
        f2 = cusp_fibre_class(inv.apply_exact(c))
        records.append(
            CuspNodes(c, (f1.kodaira, f2.kodaira), f1.singular_points * f2.singular_points)
        )
    total = sum(r.nodes for r in records)
    return NodeCensus(aut.name, tuple(records), total, 2 * total, total)


def _check_good(aut: TwistAut, p: int) -> frozenset[int]:
    if p == 2:
        raise UnsupportedCharacteristicError("characteristic 2 is not modelled")
    bad = bad_primes(aut)
    if p in bad:
        raise BadPrimeError(p, bad)
    return bad


def _reduce_cusp(c, p: int):
    return c if c is INF else c % p


def _fibre_pair(aut: TwistAut, c, p: int):
    """Classes and resolved counts of the two factor fibres over cusp c mod p."""
    inv = aut.inverse()
    cp = _reduce_cusp(c, p)
    c2 = inv.apply(cp, p)
    f1, f2 = classify_fibre(cp, p), classify_fibre(c2, p)
    n1, n2 = count_resolved_fibre(cp, p), count_resolved_fibre(c2, p)
    return cp, c2, f1, f2, n1, n2


def cusp_breakdown(aut: TwistAut, p: int) -> list[dict]:
    """Per-double-cusp contributions to the threefold count at p.

    Each threefold node whose coordinate pair is fixed by Frobenius is
    replaced by a full rational line in the small resolution, adding p
    points on top of the product of the resolved fibre counts.  A factor
    with conjugate singular points contributes fixed pairs only when -3
    is a square mod p; in characteristic 3 the type-III factor always
    contributes its single rational point.
    """
    _check_good(aut, p)
    rows = []
    for c in double_cusps(aut):
        cp, c2, f1, f2, n1, n2 = _fibre_pair(aut, c, p)
        fixed = f1.fixed_singular_points(p) * f2.fixed_singular_points(p)
        rows.append(
            {
                "cusp": cp,
                "partner": c2,
                "pair": (f1.kodaira, f2.kodaira),
                "fibre_counts": (n1, n2),
                "fixed_node_pairs": fixed,
                "contribution": n1 * n2 + fixed * p,
            }
        )
    return rows


def cusp_contribution(aut: TwistAut, p: int) -> int:
    """Total count over the double cusps, exceptional lines included."""
    return sum(row["contribution"] for row in cusp_breakdown(aut, p))


def closed_form_cusp_contribution(aut: TwistAut, p: int) -> int:
    """Cusp contribution by the per-twist closed formulas (p >= 5).

    Independent cross-check of `cusp_contribution`: these formulas come
    from multiplying out the cusp table once and for all.
    """
    _check_good(aut, p)
    if p == 3:
        raise ArgumentError("closed forms are stated for p >= 5 only")
    pp = p * p + p
    residue = legendre(-3, p)
    if aut.name == "pi1":
        return 48 * pp
    if aut.name == "pi2":
        return 40 * pp + (0 if residue == 1 else 4 * (p + 1))
    if aut.name == "pi3":
        return 33 * pp
    if aut.name in ("pi4", "pi5"):
        return 36 * pp
    if aut.name == "identity":
        return 50 * pp + (0 if residue == 1 else 8 * (p + 1))
    raise ArgumentError(f"no closed form for twist {aut.name!r}")


def generic_sum(aut: TwistAut, p: int) -> int:
    """Sum of fibre-count products over the base points with no nodes."""
    _check_good(aut, p)
    inv = aut.inverse()
    excluded = {_reduce_cusp(c, p) for c in double_cusps(aut)} - {INF}
    counts = plane_count_vector(p)
    total = 0
    for k in range(p):
        if k in excluded:
            continue
        j = inv.apply(k, p)
        total += counts[k] * counts[j]
    return total


def total_count(aut: TwistAut, p: int) -> int:
    """#(resolved fibre product)(F_p), counted fibrewise."""
    return cusp_contribution(aut, p) + generic_sum(aut, p)


def lefschetz_trace(aut: TwistAut, p: int) -> int:
    """Frobenius trace on middle cohomology, via the fixed point formula."""
    h11 = node_census(aut).h11
    return 1 + p * (1 + p) * h11 + p**3 - total_count(aut, p)


def weil_bound(p: int) -> int:
    """floor(2 * p^(3/2)), the sharp bound for a weight-4 eigenvalue."""
    return math.isqrt(4 * p**3)


@dataclass(frozen=True)
class TraceRecord:
    """One row of a trace table; xi is attached by the livne module."""

    twist: str
    p: int
    count: int
    trace: int
    xi: tuple[int, ...] | None = None

    def with_xi(self, xi: tuple[int, ...]) -> "TraceRecord":
        return replace(self, xi=xi)


# The reference tables in circulation transpose the p = 3 point counts of
# pi3 and pi4/pi5 (both transposed values still yield trace -8, which is
# the correct coefficient at 3 for levels 10 and 73).  Reported so that
# consumers can flag the mismatch instead of silently agreeing.
REPORTED_P3_COUNTS = {"pi3": 468, "pi4": 432, "pi5": 432}


def p3_count_note(aut: TwistAut, computed: int) -> dict | None:
    """Discrepancy flag when the computed p=3 count differs from the reference."""
    reported = REPORTED_P3_COUNTS.get(aut.name)
    if reported is None or reported == computed:
        return None
    return {
        "p": 3,
        "computed_count": computed,
        "reference_count": reported,
        "note": "computed count differs from the commonly cited table value; "
        "the trace is unaffected",
    }


def good_primes(aut: TwistAut, p_max: int, include_char3: bool = False) -> list[int]:
    """Odd primes <= p_max outside the bad set; 3 only on request."""
    bad = bad_primes(aut)
    lo = 3 if include_char3 else 4
    return [p for p in primes_upto(p_max) if p >= lo and p not in bad]


def prefill_plane_counts(primes: list[int], threads: int = 1) -> None:
    """Populate the fibre-count cache, optionally with a process pool.

    Each prime's count vector is independent, so the work partitions
    perfectly; results are installed into the in-process cache in prime
    order, making the outcome identical for every worker count.
    """
    missing = [p for p in primes if p not in surface._COUNT_CACHE]
    if not missing:
        return
    if threads > 1 and len(missing) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            vectors = list(pool.map(plane_count_vector, missing, chunksize=4))
        surface.seed_count_cache(dict(zip(missing, vectors)))
    else:
        for p in missing:
            plane_count_vector(p)


def trace_table(
    aut: TwistAut,
    p_max: int,
    include_char3: bool = False,
    threads: int = 1,
) -> list[TraceRecord]:
    """Trace records for every good odd prime 3 < p <= p_max (3 on request)."""
    primes = good_primes(aut, p_max, include_char3)
    prefill_plane_counts(primes, threads)
    records = []
    for p in primes:
        n = total_count(aut, p)
        records.append(TraceRecord(aut.name, p, n, lefschetz_trace(aut, p)))
    return records
