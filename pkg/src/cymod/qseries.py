"""Exact integer q-expansions and the weight-4 level-6 eta product.

The eta product (eta(tau) eta(2 tau) eta(3 tau) eta(6 tau))^2 is the
unique normalized cusp form of weight 4 and level 6.  Expanded here from
scratch via the pentagonal number theorem, it provides the oracle that
the self-fibre-product point counts are checked against: two pipelines
with no shared data.
"""

from __future__ import annotations

from .errors import ArgumentError
from .ffarith import is_prime

N_MAX_CAP = 10**5

#: eta(m*tau) factors of the level-6 form, each squared.
LEVEL6_ETA_SCALES = (1, 2, 3, 6)


class QSeries:
    """Truncated power series in q with exact integer coefficients.

    Arithmetic truncates consistently at the stated precision n_max; the
    coefficient accessor refuses indices beyond it rather than padding.
    """

    __slots__ = ("coeffs", "n_max")

    def __init__(self, coeffs, n_max: int):
        if n_max < 0:
            raise ArgumentError("n_max must be non-negative")
        if n_max > N_MAX_CAP:
            raise ArgumentError(f"n_max={n_max} exceeds the cap {N_MAX_CAP}")
        coeffs = list(coeffs)[: n_max + 1]
        coeffs.extend([0] * (n_max + 1 - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.n_max = n_max

    @classmethod
    def one(cls, n_max: int) -> "QSeries":
        return cls([1], n_max)

    def coefficient(self, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise ArgumentError(f"coefficient q^{n} outside stated precision {self.n_max}")
        return self.coeffs[n]

    def nonzero_items(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def _common_precision(self, other: "QSeries") -> int:
        if self.n_max != other.n_max:
            raise ArgumentError(
                f"mixed precisions {self.n_max} and {other.n_max}"
            )
        return self.n_max

    def __add__(self, other: "QSeries") -> "QSeries":
        n = self._common_precision(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = self._common_precision(other)
        return QSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __mul__(self, other: "QSeries") -> "QSeries":
        """Truncated product; iterates the sparser factor for speed."""
        n = self._common_precision(other)
        lhs, rhs = self, other
        if len(lhs.nonzero_items()) > len(rhs.nonzero_items()):
            lhs, rhs = rhs, lhs
        out = [0] * (n + 1)
        rc = rhs.coeffs
        for i, ci in lhs.nonzero_items():
            for j in range(n + 1 - i):
                cj = rc[j]
                if cj:
                    out[i + j] += ci * cj
        return QSeries(out, n)

    def shifted(self, k: int) -> "QSeries":
        """Multiply by q^k, keeping the precision."""
        if k < 0:
            raise ArgumentError("negative shifts are not supported")
        return QSeries([0] * k + list(self.coeffs), self.n_max)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QSeries)
            and self.n_max == other.n_max
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.n_max))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.n_max >= 8 else ""
        return f"QSeries([{head}{tail}], n_max={self.n_max})"


def pentagonal_indices(n_max: int) -> list[tuple[int, int]]:
    """(index, sign) pairs of Euler's pentagonal expansion up to n_max."""
    out = [(0, 1)]
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n_max:
            break
        sign = -1 if k % 2 else 1
        out.append((g1, sign))
        g2 = k * (3 * k + 1) // 2
        if g2 <= n_max:
            out.append((g2, sign))
        k += 1
    return out


def eta_block(m: int, n_max: int) -> QSeries:
    """Expansion of prod_{n>=1} (1 - q^(m*n)) to precision n_max.

    This is the eta factor at scale m without its fractional q-power;
    by the pentagonal number theorem all coefficients are -1, 0 or +1.
    """
    if m < 1:
        raise ArgumentError("scale m must be a positive integer")
    if n_max < 1:
        raise ArgumentError("n_max must be at least 1")
    coeffs = [0] * (n_max + 1)
    for g, sign in pentagonal_indices(n_max // m):
        coeffs[m * g] = sign
    return QSeries(coeffs, n_max)


def level6_form(n_max: int) -> QSeries:
    """q-expansion of the weight-4 level-6 newform, exactly.

    The squared eta factors at scales 1, 2, 3, 6 carry a combined
    prefactor q^(2*(1+2+3+6)/24) = q^1, which must be an integer power
    for the expansion to live in Z[[q]].
    """
    if n_max < 2:
        raise ArgumentError("n_max must be at least 2")
    numerator = 2 * sum(LEVEL6_ETA_SCALES)
    if numerator % 24 != 0:
        raise ArgumentError("eta-product prefactor is not an integral power of q")
    shift = numerator // 24
    acc = QSeries.one(n_max)
    for m in LEVEL6_ETA_SCALES:
        block = eta_block(m, n_max)
        acc = acc * block
        acc = acc * block
    return acc.shifted(shift)


def euler_factor(p: int, ap: int) -> tuple[int, int, int]:
    """Coefficients (1, -a_p, p^3) of the reciprocal good Euler polynomial.

    In T = p^(-s) the good Euler factor of the degree-2 L-series is
    1/(1 - a_p T + p^3 T^2): the determinant of Frobenius is the cube of
    the cyclotomic character.
    """
    if not is_prime(p):
        raise ArgumentError(f"p must be prime, got {p}")
    return (1, -ap, p**3)
