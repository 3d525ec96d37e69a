"""Sparse bivariate polynomials over the package's exact coefficient rings.

A polynomial is a dict from exponent pairs (i, j) to nonzero coefficients,
tagged with the ring the coefficients live in: either RATIONALS (integers
and p-integral fractions, as LocalizedRational values) or a Modulus(p, m)
(residues in Z/p^m).  Variables are positional; they are only named at the
text boundary, rendered as x, y by default or s, t for the iterate family.

The text format is bit-exact and round-trips through parse():
terms in graded-lexicographic order (first variable dominant, descending),
each printed as c*x^i*y^j with unit coefficients and zero exponents
omitted, e.g. "x^4 - 4*x^2*y + 2*y^2".
"""

from __future__ import annotations

import re

from .coefficients import LocalizedRational, Modulus, Residue, reduce_mod


class _RationalRing:
    """Sentinel ring tag for coefficients in Z or Z localized at a prime."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "RATIONALS"


RATIONALS = _RationalRing()


def coerce_coefficient(ring, value):
    """Map an int / LocalizedRational / Residue into the given ring."""
    if ring is RATIONALS:
        if isinstance(value, LocalizedRational):
            return value
        if isinstance(value, int):
            return LocalizedRational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into RATIONALS")
    if isinstance(ring, Modulus):
        if isinstance(value, Residue):
            if value.modulus != ring:
                raise ValueError("mixed moduli in coefficient coercion")
            return value
        if isinstance(value, int):
            return Residue(value, ring)
        if isinstance(value, LocalizedRational):
            return reduce_mod(value, ring.p, ring.m)
        raise TypeError(f"cannot coerce {type(value).__name__} into Z/p^m")
    raise TypeError(f"unknown coefficient ring {ring!r}")


def _term_sort_key(exponents):
    i, j = exponents
    return (i + j, i)


class Polynomial:
    """Immutable sparse polynomial in two variables."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        """Build from a mapping {(i, j): coefficient}; zeros are dropped."""
        clean = {}
        for key, value in (terms or {}).items():
            i, j = key
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            c = coerce_coefficient(ring, value)
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {(0, 0): 1})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {(0, 0): c})

    @classmethod
    def monomial(cls, ring, i, j, c=1):
        return cls(ring, {(i, j): c})

    @classmethod
    def generators(cls, ring):
        """The pair of variable polynomials (first, second)."""
        return cls.monomial(ring, 1, 0), cls.monomial(ring, 0, 1)

    # ---- structure ----

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def degree_first(self) -> int:
        """Degree in the first variable; -1 for zero."""
        if not self.terms:
            return -1
        return max(i for i, _ in self.terms)

    def degree_second(self) -> int:
        if not self.terms:
            return -1
        return max(j for _, j in self.terms)

    def coefficient(self, i, j):
        """Coefficient of the (i, j) monomial, as a ring zero if absent."""
        c = self.terms.get((i, j))
        if c is None:
            return coerce_coefficient(self.ring, 0)
        return c

    def sorted_terms(self):
        """Terms in descending graded-lex order, first variable dominant."""
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]), reverse=True)

    def _check_ring(self, other):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("mixed coefficient rings")

    # ---- arithmetic ----

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        self._check_ring(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        result = Polynomial.__new__(Polynomial)
        object.__setattr__(result, "ring", self.ring)
        object.__setattr__(result, "terms", out)
        return result

    __radd__ = __add__

    def __neg__(self):
        result = Polynomial.__new__(Polynomial)
        object.__setattr__(result, "ring", self.ring)
        object.__setattr__(result, "terms", {k: -c for k, c in self.terms.items()})
        return result

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_ring(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                c = c1 * c2
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        result = Polynomial.__new__(Polynomial)
        object.__setattr__(result, "ring", self.ring)
        object.__setattr__(result, "terms", out)
        return result

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        """Multiply every coefficient by the scalar c."""
        c = coerce_coefficient(self.ring, c)
        return Polynomial(self.ring, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = Polynomial.one(self.ring)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, LocalizedRational, Residue)):
                try:
                    other = Polynomial.constant(self.ring, other)
                except (TypeError, ValueError):
                    return NotImplemented
            else:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # ---- ring maps ----

    def substitute(self, first: "Polynomial", second: "Polynomial") -> "Polynomial":
        """Evaluate self at (first, second); both must share self's ring.

        Powers of the images are built once, ascending, so repeated
        exponents across terms are not recomputed.
        """
        self._check_ring(first)
        self._check_ring(second)
        pow_first = _power_table(first, {i for i, _ in self.terms})
        pow_second = _power_table(second, {j for _, j in self.terms})
        result = Polynomial.zero(self.ring)
        for (i, j), c in sorted(self.terms.items()):
            result = result + (pow_first[i] * pow_second[j]).scale(c)
        return result

    def reduce_mod(self, p: int, m: int) -> "Polynomial":
        """Reduce every coefficient into Z/p^m, dropping vanishing terms."""
        if self.ring is not RATIONALS:
            raise ValueError("reduce_mod expects rational or integer coefficients")
        modulus = Modulus(p, m)
        return Polynomial(modulus, {k: reduce_mod(c, p, m) for k, c in self.terms.items()})

    def lift(self) -> "Polynomial":
        """Lift Z/p^m coefficients to integers via representatives in [0, p^m)."""
        if not isinstance(self.ring, Modulus):
            raise ValueError("lift expects residue coefficients")
        return Polynomial(RATIONALS, {k: c.value for k, c in self.terms.items()})

    def frobenius_decompose(self, p: int) -> dict:
        """Split f along p-th power blocks of the monomial basis.

        Returns the full p-by-p grid {(k, l): component} where
        f = sum over k, l of x^k y^l * component(x^p, y^p); each component
        is returned in the original two variables (to be read through the
        p-th power map).  The decomposition is exact and unique.
        """
        if p < 2:
            raise ValueError("p must be at least 2")
        grid = {(k, l): {} for k in range(p) for l in range(p)}
        for (i, j), c in self.terms.items():
            grid[(i % p, j % p)][(i // p, j // p)] = c
        return {key: Polynomial(self.ring, terms) for key, terms in grid.items()}

    # ---- text format ----

    def to_text(self, names=("x", "y")) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (i, j), c in self.sorted_terms():
            text = str(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            factors = []
            if text != "1" or (i == 0 and j == 0):
                factors.append(text)
            if i > 0:
                factors.append(names[0] if i == 1 else f"{names[0]}^{i}")
            if j > 0:
                factors.append(names[1] if j == 1 else f"{names[1]}^{j}")
            term = "*".join(factors)
            if not chunks:
                chunks.append(f"-{term}" if negative else term)
            else:
                chunks.append(f"- {term}" if negative else f"+ {term}")
        return " ".join(chunks)

    @classmethod
    def parse(cls, text: str, ring, names=("x", "y")) -> "Polynomial":
        """Inverse of to_text; accepts any term order and spacing."""
        compact = text.replace(" ", "")
        if not compact:
            raise ValueError("empty polynomial text")
        if compact == "0":
            return cls.zero(ring)
        terms = {}
        for chunk in re.findall(r"[+-]?[^+-]+", compact):
            sign = 1
            if chunk[0] in "+-":
                sign = -1 if chunk[0] == "-" else 1
                chunk = chunk[1:]
            if not chunk:
                raise ValueError(f"cannot parse polynomial text {text!r}")
            i = j = 0
            coefficient = None
            for factor in chunk.split("*"):
                match = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
                if match:
                    num = int(match.group(1))
                    den = int(match.group(2)) if match.group(2) else 1
                    value = LocalizedRational(num, den) if den != 1 else num
                    coefficient = value if coefficient is None else _coeff_mul(coefficient, value)
                    continue
                match = re.fullmatch(r"([A-Za-z]+)(?:\^(\d+))?", factor)
                if match and match.group(1) in names:
                    k = int(match.group(2)) if match.group(2) else 1
                    if match.group(1) == names[0]:
                        i += k
                    else:
                        j += k
                    continue
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            value = 1 if coefficient is None else coefficient
            value = _coeff_mul(sign, value)
            existing = terms.get((i, j))
            terms[(i, j)] = value if existing is None else _coeff_add(existing, value)
        return cls(ring, terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.ring!r}, {self.to_text()!r})"


def _coeff_mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    a = a if isinstance(a, LocalizedRational) else LocalizedRational(a)
    b = b if isinstance(b, LocalizedRational) else LocalizedRational(b)
    return a * b


def _coeff_add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    a = a if isinstance(a, LocalizedRational) else LocalizedRational(a)
    b = b if isinstance(b, LocalizedRational) else LocalizedRational(b)
    return a + b


def _power_table(base: Polynomial, exponents) -> dict:
    """Powers base**e for every e in exponents, via one ascending sweep."""
    table = {0: Polynomial.one(base.ring)}
    if not exponents:
        return table
    top = max(exponents)
    current = table[0]
    for e in range(1, top + 1):
        current = current * base
        if e in exponents or e == top:
            table[e] = current
    return table


def frobenius_recompose(components: dict, p: int, ring) -> Polynomial:
    """Reassemble f from its p-th power block decomposition."""
    total = Polynomial.zero(ring)
    for (k, l), g in components.items():
        stretched = Polynomial(
            ring, {(p * i + k, p * j + l): c for (i, j), c in g.terms.items()}
        )
        total = total + stretched
    return total
