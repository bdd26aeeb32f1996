"""Embedded newform coefficient fixtures for levels 6, 10, 17, 21, 73.

Levels 10, 17, 21 and 73 carry published coefficient data: the opening
terms of each newform's q-expansion plus the prime-indexed values the
trace tables were verified against.  Only level 6 is derived inside this
package (from the eta product); recomputing the other levels from first
principles would need modular symbols, which is out of scope, so their
entries are labelled by provenance instead of being passed off as
independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArgumentError, IncompleteFixtureError
from .ffarith import Cubic, is_prime
from .qseries import level6_form

#: provenance labels carried by every fixture entry
EXPANSION = "expansion-prefix"
TABLE = "trace-table"
ETA = "eta-product"

FIXTURE_LEVELS = (6, 10, 17, 21, 73)

#: expected newform level for each twist of the fibre product
TWIST_LEVELS = {
    "identity": 6,
    "pi1": 17,
    "pi2": 21,
    "pi3": 10,
    "pi4": 73,
    "pi5": 73,
}

_EXPANSIONS: dict[int, dict[int, int]] = {
    10: {1: 1, 2: 2, 3: -8, 4: 4, 5: 5, 6: -16, 7: -4},
    17: {1: 1, 2: -3, 3: -8, 4: 1, 5: 6},
    21: {1: 1, 2: -3, 3: -3, 4: 1, 5: -18},
    73: {1: 1, 2: 3, 3: -8, 4: 1, 5: 6, 6: -24, 7: -34, 13: -34},
}

_TABLES: dict[int, dict[int, int]] = {
    10: {3: -8, 7: -4, 11: 12, 13: -58, 17: 66, 29: -90, 31: 152, 41: -438},
    17: {3: -8, 5: 6, 7: -28, 13: -58, 19: 116, 41: -342, 47: 288, 89: -774},
    21: {
        5: -18,
        11: -36,
        13: -34,
        17: 42,
        19: -124,
        23: 0,
        29: 102,
        31: -160,
        37: 398,
        43: -268,
        47: 240,
        59: -132,
        73: -502,
        103: 56,
        137: -2358,
        193: 4034,
    },
    73: {3: -8, 5: 6, 7: -34, 11: 6, 17: 90, 23: 60, 37: -286, 41: 150},
}

# Cubic polynomials whose splitting fields exhaust the C3/S3 extensions
# of Q unramified outside {2} u {level primes}.  An empty tuple records
# that no such extension exists; None means the list is external data
# (for levels 21 and 73 only the counts, 34 and 3, are published).
OBSTRUCTION_CUBICS: dict[int, tuple[Cubic, ...] | None] = {
    6: (),
    17: (),
    10: (Cubic(1, -1, 2, 2),),
    21: None,
    73: None,
}


@dataclass(frozen=True)
class NewformFixture:
    """Coefficients of one weight-4 newform, each with a provenance label."""

    level: int
    entries: dict[int, tuple[int, str]] = field(default_factory=dict)

    def __post_init__(self):
        a1 = self.entries.get(1)
        if a1 is None or a1[0] != 1:
            raise ArgumentError(f"level-{self.level} fixture is not normalized")

    def has(self, n: int) -> bool:
        return n in self.entries

    def ap(self, p: int) -> int:
        if p not in self.entries:
            raise IncompleteFixtureError(self.level, [p])
        return self.entries[p][0]

    def provenance(self, n: int) -> str:
        return self.entries[n][1]

    def primes(self) -> list[int]:
        return sorted(n for n in self.entries if is_prime(n))

    def to_document(self) -> dict:
        return {
            "level": self.level,
            "entries": [
                {"n": n, "an": a, "provenance": tag}
                for n, (a, tag) in sorted(self.entries.items())
            ],
        }


def _merge(level: int, expansion: dict[int, int], table: dict[int, int]) -> dict:
    entries = {n: (a, EXPANSION) for n, a in expansion.items()}
    for p, a in table.items():
        if p in entries and entries[p][0] != a:
            raise ArgumentError(
                f"level {level}: expansion and table disagree at {p}"
            )
        entries.setdefault(p, (a, TABLE))
    return entries


def fixture(level: int, eta_terms: int = 200) -> NewformFixture:
    """The embedded fixture for one of the supported levels.

    Level 6 is expanded from the eta product on the fly, to `eta_terms`
    coefficients; the other levels return the published data.
    """
    if level == 6:
        form = level6_form(eta_terms)
        entries = {n: (form.coefficient(n), ETA) for n in range(1, eta_terms + 1)}
        return NewformFixture(6, entries)
    if level not in FIXTURE_LEVELS:
        raise ArgumentError(
            f"unsupported level {level}; expected one of {FIXTURE_LEVELS}"
        )
    return NewformFixture(level, _merge(level, _EXPANSIONS[level], _TABLES[level]))


def fixture_document(level: int, eta_terms: int = 200) -> dict:
    """Exportable structured document for a fixture."""
    return fixture(level, eta_terms).to_document()


def fixture_from_document(doc: dict) -> NewformFixture:
    """Rebuild a fixture from its structured document."""
    entries = {
        int(e["n"]): (int(e["an"]), str(e["provenance"])) for e in doc["entries"]
    }
    return NewformFixture(int(doc["level"]), entries)
