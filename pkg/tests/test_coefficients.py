from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilcert.coefficients import (
    LocalizedRational,
    Modulus,
    Residue,
    divide_exact_by_p,
    is_prime,
    reduce_mod,
    vp,
)

PRIMES = [2, 3, 5]


def _valuation_oracle(n: int, p: int) -> int:
    # largest k with p^k | n, found by direct divisibility probes
    n = abs(n)
    k = 0
    while n % p**(k + 1) == 0:
        k += 1
    return k


def test_is_prime_small():
    assert [q for q in range(2, 30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(-7)


def test_vp_examples():
    assert vp(12, 2) == 2
    assert vp(1, 5) == 0
    assert vp(250, 5) == 3
    assert vp(250, 5) == _valuation_oracle(250, 5)
    assert vp(-8, 2) == 3


def test_vp_zero_rejected():
    with pytest.raises(ValueError, match="zero"):
        vp(0, 2)
    with pytest.raises(ValueError, match="zero"):
        vp(LocalizedRational(0), 3)


def test_vp_rational():
    assert vp(LocalizedRational(4, 3), 2) == 2
    assert vp(LocalizedRational(1, 3), 3) == -1
    assert vp(LocalizedRational(9, 5), 3) == 2


@given(
    st.integers(min_value=-(10**9), max_value=10**9).filter(lambda n: n != 0),
    st.integers(min_value=-(10**9), max_value=10**9).filter(lambda n: n != 0),
    st.sampled_from(PRIMES),
)
def test_vp_multiplicative(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)
    assert vp(a, p) == _valuation_oracle(a, p)


def test_rational_normalization():
    q = LocalizedRational(4, -6)
    assert q.numerator == -2
    assert q.denominator == 3
    assert LocalizedRational(0, 7).denominator == 1
    assert LocalizedRational(10, 5) == 2
    with pytest.raises(ZeroDivisionError):
        LocalizedRational(1, 0)


def test_rational_arithmetic():
    a = LocalizedRational(1, 2)
    b = LocalizedRational(1, 3)
    assert a + b == LocalizedRational(5, 6)
    assert a - b == LocalizedRational(1, 6)
    assert a * b == LocalizedRational(1, 6)
    assert a**3 == LocalizedRational(1, 8)
    assert 1 + a == LocalizedRational(3, 2)
    assert 1 - a == a
    assert 2 * a == 1
    assert str(a) == "1/2"
    assert str(LocalizedRational(-7)) == "-7"
    assert not LocalizedRational(0)
    assert bool(a)


@given(
    st.integers(min_value=-99, max_value=99),
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=-99, max_value=99),
    st.integers(min_value=1, max_value=30),
)
def test_rational_field_laws(an, ad, bn, bd):
    a = LocalizedRational(an, ad)
    b = LocalizedRational(bn, bd)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * b == a * b + b * b
    assert a + (-a) == 0
    # normalization invariants survive arithmetic
    c = a * b + a
    from math import gcd

    assert c.denominator > 0
    assert gcd(c.numerator, c.denominator) == 1 or c.numerator == 0


def test_divide_exact_examples():
    assert divide_exact_by_p(6, 3) == 2
    assert divide_exact_by_p(0, 5) == 0
    assert divide_exact_by_p(LocalizedRational(4, 3), 2) == LocalizedRational(2, 3)


def test_divide_exact_failure():
    with pytest.raises(ValueError, match="not divisible by p"):
        divide_exact_by_p(7, 2)
    with pytest.raises(ValueError, match="not divisible by p"):
        divide_exact_by_p(LocalizedRational(3, 5), 2)
    with pytest.raises(ValueError, match="coprime"):
        divide_exact_by_p(LocalizedRational(2, 4), 2)


@given(
    st.integers(min_value=-999, max_value=999),
    st.integers(min_value=1, max_value=99),
    st.sampled_from(PRIMES),
)
def test_divide_exact_multiplies_back(num, den, p):
    if den % p == 0:
        den += 1 if den % p else 0
        while den % p == 0:
            den += 1
    q = LocalizedRational(num * p, den)
    assert divide_exact_by_p(q, p) * p == q


def test_reduce_mod_examples():
    assert reduce_mod(5, 2, 2).value == 1
    assert reduce_mod(0, 3, 2).value == 0
    r = reduce_mod(LocalizedRational(1, 3), 2, 3)
    assert r.value == 3
    assert (3 * 3) % 8 == 1  # inverse check for the frozen value above
    assert reduce_mod(-1, 5, 1).value == 4


def test_reduce_mod_rejects_bad_denominator():
    with pytest.raises(ValueError, match="invertible"):
        reduce_mod(LocalizedRational(1, 2), 2, 3)


@given(
    st.integers(min_value=-500, max_value=500),
    st.integers(min_value=-500, max_value=500),
    st.sampled_from(PRIMES),
    st.integers(min_value=1, max_value=4),
)
def test_reduce_mod_is_ring_hom(a, b, p, m):
    ra, rb = reduce_mod(a, p, m), reduce_mod(b, p, m)
    assert reduce_mod(a + b, p, m) == ra + rb
    assert reduce_mod(a * b, p, m) == ra * rb
    assert reduce_mod(-a, p, m) == -ra


@given(
    st.integers(min_value=-99, max_value=99),
    st.integers(min_value=1, max_value=99),
    st.sampled_from(PRIMES),
    st.integers(min_value=1, max_value=4),
)
def test_reduce_mod_respects_fractions(num, den, p, m):
    while den % p == 0:
        den += 1
    q = LocalizedRational(num, den)
    r = reduce_mod(q, p, m)
    # multiplying back by the denominator recovers the numerator's class
    assert r * den == reduce_mod(num, p, m)


def test_residue_arithmetic():
    mod = Modulus(2, 3)
    a = Residue(5, mod)
    b = Residue(6, mod)
    assert (a + b).value == 3
    assert (a * b).value == 6
    assert (a - b).value == 7
    assert (-a).value == 3
    assert (a**2).value == 1
    assert a + 3 == 0
    assert str(b) == "6"
    with pytest.raises(ValueError, match="mixed moduli"):
        a + Residue(1, Modulus(2, 2))


def test_modulus_validation():
    with pytest.raises(ValueError, match="not prime"):
        Modulus(4, 1)
    with pytest.raises(ValueError, match="at least 1"):
        Modulus(2, 0)
    assert Modulus(3, 2).value == 9
    assert Modulus(3, 2) == Modulus(3, 2)
    assert Modulus(3, 2) != Modulus(3, 3)
