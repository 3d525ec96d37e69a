"""Exact coefficient arithmetic for the base rings used by the package.

Three coefficient domains appear throughout: the integers, the integers
localized at a prime p (fractions whose denominator is coprime to p), and
the finite rings Z/p^m.  Everything here is exact big-integer arithmetic;
no floats are involved anywhere.
"""

from __future__ import annotations

import math


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale moduli."""
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


def vp(n, p: int) -> int:
    """p-adic valuation: the exponent of p in n.

    Accepts integers and LocalizedRational values.  The valuation of zero
    is undefined and raises ValueError.
    """
    if isinstance(n, LocalizedRational):
        if n.numerator == 0:
            raise ValueError("valuation of zero is undefined")
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    n = abs(int(n))
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class LocalizedRational:
    """A fraction a/b kept in lowest terms with b > 0.

    Used for computations in Z and in the localization of Z at a prime p.
    The value itself does not know p; operations that need p-locality
    (exact division by p, reduction mod p^m) check the denominator at the
    point of use.  Zero is always stored as 0/1.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: int, denominator: int = 1):
        numerator = int(numerator)
        denominator = int(denominator)
        if denominator == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        if numerator == 0:
            denominator = 1
        else:
            g = math.gcd(numerator, denominator)
            numerator //= g
            denominator //= g
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("LocalizedRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, LocalizedRational):
            return other
        if isinstance(other, int):
            return LocalizedRational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalizedRational(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return LocalizedRational(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalizedRational(
            self.numerator * other.numerator,
            self.denominator * other.denominator,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        return LocalizedRational(self.numerator**exponent, self.denominator**exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __bool__(self):
        return self.numerator != 0

    def is_integer(self) -> bool:
        return self.denominator == 1

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self):
        return f"LocalizedRational({self.numerator}, {self.denominator})"


class Modulus:
    """Descriptor of the ring Z/p^m for a prime p and precision m >= 1."""

    __slots__ = ("p", "m", "value")

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("precision must be at least 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "value", p**m)

    def __setattr__(self, name, value):
        raise AttributeError("Modulus is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Modulus) and self.p == other.p and self.m == other.m
        )

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"Modulus({self.p}, {self.m})"


class Residue:
    """An element of Z/p^m, stored as the representative in [0, p^m)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: Modulus):
        object.__setattr__(self, "value", int(value) % modulus.value)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli in residue arithmetic")
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        return Residue(pow(self.value, exponent, self.modulus.value), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Residue({self.value}, mod {self.modulus.p}^{self.modulus.m})"


def divide_exact_by_p(q, p: int) -> LocalizedRational:
    """Divide q by p, requiring the quotient to stay p-integral.

    q may be an integer or a LocalizedRational whose denominator is coprime
    to p.  Raises ValueError("not divisible by p") when p does not divide
    the numerator of a nonzero q.
    """
    if isinstance(q, int):
        q = LocalizedRational(q)
    if q.denominator % p == 0:
        raise ValueError("denominator is not coprime to p")
    if q.numerator == 0:
        return q
    if q.numerator % p != 0:
        raise ValueError("not divisible by p")
    return LocalizedRational(q.numerator // p, q.denominator)


def reduce_mod(q, p: int, m: int) -> Residue:
    """Reduce an integer or p-integral fraction into Z/p^m.

    Fractions are mapped by inverting the denominator mod p^m; this needs
    the denominator coprime to p and raises ValueError otherwise.
    """
    modulus = Modulus(p, m)
    if isinstance(q, int):
        return Residue(q, modulus)
    if isinstance(q, LocalizedRational):
        if q.denominator % p == 0:
            raise ValueError("denominator is not invertible mod p")
        inv = pow(q.denominator, -1, modulus.value)
        return Residue(q.numerator * inv, modulus)
    raise TypeError(f"cannot reduce {type(q).__name__} mod p^m")
