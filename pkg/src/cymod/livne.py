"""Finite verification scheme for 2-adic Galois representation equality.

Two 2-dimensional 2-adic representations, both unramified outside a set
S of primes containing 2, with even traces and determinant equal to the
cube of the cyclotomic character, are isomorphic (semi-simplified) as
soon as their Frobenius traces agree on a set T of primes whose classes
exhaust Gal(Q[S]/Q), where Q[S] is generated by sqrt(-1) and sqrt(s) for
s in S.  Classes are identified by the sign vector of Legendre symbols
at (-1, then S ascending), so the whole criterion reduces to integer
bookkeeping: pick T covering all 2^(#S+1) sign vectors, compare traces,
and certify the parity condition through cubic-field obstructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArgumentError, InsufficientLimitError
from .ffarith import Cubic, cubic_irreducible, legendre, primes_upto
from .fixtures import OBSTRUCTION_CUBICS, NewformFixture
from .threefold import (
    TwistAut,
    bad_primes,
    good_primes,
    lefschetz_trace,
    prefill_plane_counts,
    total_count,
    TraceRecord,
)


def ramification_set(aut: TwistAut) -> tuple[int, ...]:
    """S = {2} union the twist's primes of bad reduction, ascending."""
    return tuple(sorted({2} | set(bad_primes(aut))))


def xi_vector(p: int, S) -> tuple[int, ...]:
    """Sign vector of Frob_p in Gal(Q[S]/Q), coordinates (-1, S ascending).

    Each bit is (1 - (s/p)) / 2, i.e. 0 when s is a square mod p.
    """
    S = tuple(sorted(S))
    if p == 2 or p in S:
        raise ArgumentError(f"p={p} is ramified in Q[S] for S={S}")
    bits = []
    for s in (-1,) + S:
        chi = legendre(s, p)
        if chi == 0:
            raise ArgumentError(f"p={p} divides {s}; Frobenius undefined")
        bits.append((1 - chi) // 2)
    return tuple(bits)


def sign_vector_count(S) -> int:
    return 2 ** (len(tuple(S)) + 1)


def is_covering(T, S) -> bool:
    """True iff the xi vectors of T hit all of (Z/2)^(#S+1)."""
    T = set(T)
    S = tuple(sorted(S))
    if T & set(S):
        raise ArgumentError(f"T={sorted(T)} meets S={S}")
    return len({xi_vector(p, S) for p in T}) == sign_vector_count(S)


def _greedy_cover(S, candidates) -> tuple[dict, bool]:
    """First candidate prime realizing each sign vector, scanning ascending."""
    S = tuple(sorted(S))
    wanted = sign_vector_count(S)
    witnesses: dict[tuple[int, ...], int] = {}
    for p in candidates:
        v = xi_vector(p, S)
        if v not in witnesses:
            witnesses[v] = p
            if len(witnesses) == wanted:
                break
    return witnesses, len(witnesses) == wanted


def find_covering(S, p_limit: int, exclude=(), candidates=None) -> list[int]:
    """Smallest-witness covering set of primes for Gal(Q[S]/Q).

    Scans primes ascending (skipping 2, S and `exclude`), keeping the
    first prime that realizes each unseen sign vector.  `candidates`
    restricts the scan to a given pool instead of all primes <= p_limit.
    """
    S = tuple(sorted(S))
    skip = set(S) | set(exclude) | {2}
    pool = sorted(candidates) if candidates is not None else primes_upto(p_limit)
    pool = [p for p in pool if p <= p_limit and p not in skip]
    witnesses, covered = _greedy_cover(S, pool)
    if not covered:
        raise InsufficientLimitError(
            f"primes up to {p_limit} realize only {len(witnesses)} of "
            f"{sign_vector_count(S)} sign vectors for S={S}"
        )
    return sorted(witnesses.values())


def attach_sign_vectors(records: list[TraceRecord], S) -> list[TraceRecord]:
    """Fill the xi slot of trace records (p in S is left unset)."""
    S = tuple(sorted(S))
    return [
        r if r.p in S else r.with_xi(xi_vector(r.p, S))
        for r in records
    ]


# The reference table for S = {2, 3, 7} prints the sign vector of p = 103
# as (1,0,1,1); in fact (7/103) = +1 (Euler criterion, reciprocity and
# brute-force square search agree), so xi(103) = (1,0,1,0) and duplicates
# the class of 31.  The printed sixteen primes therefore witness only 15
# of the 16 Frobenius classes; the first true witness of (1,0,1,1) is 79.
REFERENCE_XI_ERRATA: dict[tuple[int, ...], dict[int, tuple[int, ...]]] = {
    (2, 3, 7): {103: (1, 0, 1, 1)},
}


def xi_erratum_note(S, p: int) -> dict | None:
    """Discrepancy flag when the computed xi differs from the cited table."""
    S = tuple(sorted(S))
    cited = REFERENCE_XI_ERRATA.get(S, {}).get(p)
    if cited is None:
        return None
    computed = xi_vector(p, S)
    if computed == cited:
        return None
    return {
        "p": p,
        "computed_xi": list(computed),
        "reference_xi": list(cited),
        "note": "computed sign vector differs from the commonly cited table value",
    }


@dataclass(frozen=True)
class ObstructionCertificate:
    """Witness that one cubic cannot produce an odd-trace extension.

    If the mod-2 reduction of the newform's representation were trivial
    on an order-3 element, the kernel field would be the splitting field
    of some cubic h unramified outside S; a prime p with h irreducible
    mod p forces a_p odd, so exhibiting an even a_p at such a p rules the
    cubic out.  An empty cubic list is certified by `non-existence`.
    """

    level: int
    cubic: Cubic | None
    witness: int | None
    ap: int | None
    status: str  # "non-existence", "verified" or "no-witness"

    def validate(self) -> bool:
        if self.status == "non-existence":
            return self.cubic is None
        if self.status != "verified":
            return False
        return (
            self.ap % 2 == 0
            and cubic_irreducible(self.cubic, self.witness)
        )

    def to_document(self) -> dict:
        return {
            "level": self.level,
            "cubic": None if self.cubic is None else str(self.cubic),
            "witness": self.witness,
            "ap": self.ap,
            "status": self.status,
        }


def parity_certificate(
    level: int,
    cubics,
    fixture: NewformFixture,
    prime_pool=None,
) -> list[ObstructionCertificate]:
    """One obstruction certificate per cubic (or the non-existence one).

    For each cubic, the witness is the smallest pool prime at which the
    cubic is irreducible and the fixture holds an even coefficient.  A
    cubic with no eligible witness is reported as `no-witness` rather
    than failing the run.
    """
    cubics = tuple(cubics)
    if not cubics:
        return [ObstructionCertificate(level, None, None, None, "non-existence")]
    if prime_pool is None:
        prime_pool = [p for p in fixture.primes() if p != 2 and level % p != 0]
    out = []
    for h in cubics:
        found = None
        for p in sorted(prime_pool):
            if h.c3 % p == 0 or not fixture.has(p):
                continue
            ap = fixture.ap(p)
            if ap % 2 == 0 and cubic_irreducible(h, p):
                found = ObstructionCertificate(level, h, p, ap, "verified")
                break
        out.append(found or ObstructionCertificate(level, h, None, None, "no-witness"))
    return out


@dataclass(frozen=True)
class TraceComparison:
    p: int
    trace: int
    ap: int
    match: bool


@dataclass(frozen=True)
class ParitySummary:
    limit: int
    all_even: bool
    odd_primes: tuple[int, ...]


@dataclass(frozen=True)
class VerificationReport:
    """Everything the modularity verdict for one twist rests on."""

    twist: str
    level: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    covering_ok: bool
    char3_in_T: bool
    comparisons: tuple[TraceComparison, ...]
    parity: ParitySummary
    certificates: tuple[ObstructionCertificate, ...]
    certificate_status: str
    verdict: str  # "modular", "mismatch" or "inconclusive"
    first_mismatch: int | None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_document(self) -> dict:
        return {
            "twist": self.twist,
            "level": self.level,
            "S": list(self.S),
            "T": list(self.T),
            "covering_ok": self.covering_ok,
            "char3_in_T": self.char3_in_T,
            "comparisons": [
                {"p": c.p, "trace": c.trace, "ap": c.ap, "match": c.match}
                for c in self.comparisons
            ],
            "parity": {
                "limit": self.parity.limit,
                "all_even": self.parity.all_even,
                "odd_primes": list(self.parity.odd_primes),
            },
            "certificates": [c.to_document() for c in self.certificates],
            "certificate_status": self.certificate_status,
            "verdict": self.verdict,
            "first_mismatch": self.first_mismatch,
            "notes": list(self.notes),
        }


def verify_modularity(
    aut: TwistAut,
    fixture: NewformFixture,
    p_limit: int = 200,
    char3: object = "auto",
    cubics=None,
    parity_limit: int = 200,
    threads: int = 1,
) -> VerificationReport:
    """Run the full finite verification of one twist against one fixture.

    Traces are compared at every fixture-backed good prime <= p_limit.
    The covering set T is drawn from those same primes, avoiding 3 when
    possible: with char3="auto" (default) the prime 3 enters T only if no
    3-free fixture-backed cover exists, and the report says so; char3 =
    True admits 3 freely, char3 = False bans it from both T and the
    comparisons (the verdict may then be inconclusive).
    """
    notes: list[str] = []
    S = ramification_set(aut)
    level = fixture.level
    level_primes = {p for p in primes_upto(level) if level % p == 0}
    if not level_primes <= set(S):
        notes.append(
            f"level {level} ramifies at {sorted(level_primes - set(S))}, "
            f"outside S={list(S)}; the representations cannot be isomorphic"
        )

    pool = [p for p in fixture.primes() if p <= p_limit and p not in S and p != 2]
    if char3 is False:
        pool = [p for p in pool if p != 3]

    # Covering set: prefer a 3-free cover, fall back to 3 under "auto".
    no3 = [p for p in pool if p != 3]
    witnesses, covered = _greedy_cover(S, no3)
    char3_in_T = False
    if char3 is True or (not covered and char3 == "auto" and 3 in pool):
        w3, c3 = _greedy_cover(S, pool)
        if c3 and not covered:
            witnesses, covered = w3, c3
            char3_in_T = 3 in w3.values()
        elif char3 is True and c3:
            witnesses, covered = w3, c3
            char3_in_T = 3 in w3.values()
    T = tuple(sorted(witnesses.values()))
    if not covered:
        notes.append(
            f"fixture primes cover only {len(witnesses)} of "
            f"{sign_vector_count(S)} Frobenius classes"
        )
    if char3_in_T:
        notes.append(
            "the covering set needs p=3; that trace uses the "
            "characteristic-3 fibre rules"
        )

    sweep = good_primes(aut, parity_limit, include_char3=False)
    sweep = [p for p in sweep if p >= 5]
    prefill_plane_counts(sorted(set(pool) | set(sweep)), threads)

    comparisons = tuple(
        TraceComparison(p, t, a, t == a)
        for p in pool
        for t, a in [(lefschetz_trace(aut, p), fixture.ap(p))]
    )
    if 3 in pool and fixture.has(3):
        notes.append("the comparison at p=3 uses the characteristic-3 fibre rules")

    odd = tuple(
        p
        for p in sweep
        if total_count(aut, p) % 2 or lefschetz_trace(aut, p) % 2
    )
    parity = ParitySummary(parity_limit, not odd, odd)

    if cubics is None:
        cubics = OBSTRUCTION_CUBICS.get(level)
    if cubics is None:
        certificates: tuple[ObstructionCertificate, ...] = ()
        certificate_status = "external-cubics-required"
        notes.append("parity of the fixture side is conditional on external cubic data")
    else:
        certificates = tuple(parity_certificate(level, cubics, fixture))
        certificate_status = (
            "complete"
            if all(c.status != "no-witness" for c in certificates)
            else "incomplete"
        )

    mismatches = [c.p for c in comparisons if not c.match]
    if mismatches:
        verdict = "mismatch"
        first = min(mismatches)
    elif not comparisons:
        verdict, first = "inconclusive", None
        notes.append("no fixture-backed good primes to compare")
    elif not covered or not parity.all_even or certificate_status == "incomplete":
        verdict, first = "inconclusive", None
    else:
        verdict, first = "modular", None

    return VerificationReport(
        twist=aut.name,
        level=level,
        S=S,
        T=T,
        covering_ok=covered,
        char3_in_T=char3_in_T,
        comparisons=comparisons,
        parity=parity,
        certificates=certificates,
        certificate_status=certificate_status,
        verdict=verdict,
        first_mismatch=first,
        notes=tuple(notes),
    )
