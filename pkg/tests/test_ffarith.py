"""Tests for the prime-field arithmetic layer."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cymod.errors import ArgumentError, DegenerateCubicError
from cymod.ffarith import (
    Cubic,
    FpElem,
    cubic_irreducible,
    inverse,
    inverse_table,
    is_prime,
    legendre,
    legendre_via_reciprocity,
    primes_upto,
)

ODD_PRIMES = [p for p in primes_upto(200) if p > 2]


def squares_mod(p):
    """Independent oracle: the set of nonzero squares mod p."""
    return {x * x % p for x in range(1, p)}


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
    ]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)
    assert not is_prime(9973 * 9973)
    assert is_prime(9973)


def test_primes_upto_matches_is_prime():
    assert primes_upto(500) == [n for n in range(2, 501) if is_prime(n)]
    assert primes_upto(1) == []


def test_legendre_examples():
    assert legendre(-1, 5) == 1  # 2^2 = 4 = -1 mod 5
    assert legendre(2, 3) == -1  # squares mod 3 are {0, 1}
    assert legendre(17, 5) == -1  # 17 = 2 mod 5, and 2 is not in {1, 4}
    assert legendre(0, 7) == 0
    assert legendre(14, 7) == 0


def test_legendre_against_square_sets():
    for p in ODD_PRIMES:
        sq = squares_mod(p)
        for s in range(p):
            expected = 0 if s == 0 else (1 if s in sq else -1)
            assert legendre(s, p) == expected


def test_legendre_paths_agree():
    # Euler's criterion and the reciprocity chain must agree everywhere.
    for p in ODD_PRIMES:
        for s in range(-100, 101):
            assert legendre(s, p) == legendre_via_reciprocity(s, p), (s, p)


def test_legendre_rejects_bad_modulus():
    with pytest.raises(ArgumentError):
        legendre(3, 9)
    with pytest.raises(ArgumentError):
        legendre(3, 2)
    with pytest.raises(ArgumentError):
        legendre(3, 1)


@given(
    st.integers(min_value=-(10**6), max_value=10**6),
    st.integers(min_value=-(10**6), max_value=10**6),
    st.sampled_from(ODD_PRIMES),
)
def test_legendre_multiplicative(a, b, p):
    if a % p == 0 or b % p == 0:
        return
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_inverse_examples():
    assert inverse(2, 5) == 3
    assert inverse(1, 97) == 1
    assert inverse(8, 17) == 15  # 8 * 15 = 120 = 7 * 17 + 1


def test_inverse_involution_exhaustive():
    for p in primes_upto(50):
        if p == 2:
            continue
        for a in range(1, p):
            b = inverse(a, p)
            assert a * b % p == 1
            assert inverse(b, p) == a


def test_inverse_table_matches():
    for p in (3, 5, 17, 101):
        table = inverse_table(p)
        assert all(table[a] == inverse(a, p) for a in range(1, p))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        inverse(0, 7)
    with pytest.raises(ZeroDivisionError):
        inverse(21, 7)


def test_fpelem_basics():
    a = FpElem(8, 17)
    assert int(a.inv()) == 15
    assert int(a * a.inv()) == 1
    assert int(FpElem(20, 17)) == 3
    with pytest.raises(ArgumentError):
        FpElem(1, 15)
    with pytest.raises(ArgumentError):
        FpElem(1, 5) + FpElem(1, 7)


def test_cubic_examples():
    assert cubic_irreducible(Cubic(1, -1, 2, 2), 3)  # x^3 - x^2 + 2x + 2
    assert not cubic_irreducible(Cubic(1, 0, 0, -1), 7)  # root x = 1
    assert cubic_irreducible(Cubic(1, 0, -1, -1), 2)  # both values are 1


def test_cubic_degenerate_lead():
    with pytest.raises(DegenerateCubicError):
        cubic_irreducible(Cubic(3, 0, 0, 1), 3)
    with pytest.raises(ArgumentError):
        Cubic(0, 1, 1, 1)


def test_cubic_against_root_search():
    rng = random.Random(20240617)
    primes = [p for p in primes_upto(50)]
    cubics = [
        Cubic(rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        for _ in range(200)
    ]
    for h in cubics:
        for p in primes:
            if h.c3 % p == 0:
                continue
            has_root = any(
                (h.c3 * x**3 + h.c2 * x**2 + h.c1 * x + h.c0) % p == 0
                for x in range(p)
            )
            assert cubic_irreducible(h, p) == (not has_root), (h, p)


def test_cubic_str():
    assert str(Cubic(1, -1, 2, 2)) == "x^3-x^2+2x+2"
    assert str(Cubic(1, 0, 0, -1)) == "x^3-1"
