"""The theta operator, the Adams operation psi, and the iterate family.

Everything is relative to one prime p, carried by a ThetaContext.  On the
polynomial ring in x, y (coefficients p-integral) the Adams operation is
the ring map psi(x) = x^p - p*y, psi(y) = y^p.  It lifts the Frobenius:
psi(f) is congruent to f^p mod p, so theta(f) = (f^p - psi(f)) / p is an
exact polynomial.  theta and psi satisfy the usual divided-power-style
identities, which check_theta_axioms verifies on concrete inputs.

The context also builds the iterate family: integer polynomials, written
in variables s, t, expressing the n-fold Adams iterate of the first
generator.  The family is defined by the recursion

    iterate_polynomial(0) = s
    iterate_polynomial(n) = previous(s, t)^p - p * previous(t, 0)

and satisfies psi_iterate(x, n) = iterate_polynomial(n) evaluated at
(x, y).  Each member is monic of degree p^n in s and weighted homogeneous
for the grading wt(s) = 1, wt(t) = p, which is asserted whenever a new
member is cached.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .coefficients import LocalizedRational, divide_exact_by_p, is_prime, vp
from .polynomials import RATIONALS, Polynomial


@dataclass
class AxiomReport:
    """Outcome of check_theta_axioms: one verdict per identity.

    Failing identities are recorded with both sides rendered, so a report
    can be printed without recomputing anything.
    """

    identities: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, lhs: Polynomial, rhs: Polynomial) -> None:
        ok = lhs == rhs
        self.identities[name] = ok
        if not ok:
            self.failures.append((name, lhs.to_text(), rhs.to_text()))

    @property
    def all_hold(self) -> bool:
        return all(self.identities.values())

    def __bool__(self):
        return self.all_hold


class ThetaContext:
    """Operator context for one prime p, with a cache for the iterates."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self._iterates: dict[int, Polynomial] = {0: Polynomial.monomial(RATIONALS, 1, 0)}

    # ---- operators ----

    def _psi_images(self, ring):
        first = Polynomial(ring, {(self.p, 0): 1, (0, 1): -self.p})
        second = Polynomial.monomial(ring, 0, self.p)
        return first, second

    def psi(self, f: Polynomial) -> Polynomial:
        """Adams operation: substitute x -> x^p - p*y, y -> y^p."""
        first, second = self._psi_images(f.ring)
        return f.substitute(first, second)

    def psi_iterate(self, f: Polynomial, k: int) -> Polynomial:
        """k-fold application of psi; k = 0 returns f unchanged."""
        if k < 0:
            raise ValueError("iterate count must be nonnegative")
        for _ in range(k):
            f = self.psi(f)
        return f

    def theta(self, f: Polynomial) -> Polynomial:
        """The exact quotient (f^p - psi(f)) / p.

        Defined for p-integral coefficients; the division is termwise and
        exact because psi lifts the Frobenius.
        """
        if f.ring is not RATIONALS:
            raise ValueError("theta expects rational or integer coefficients")
        numerator = f**self.p - self.psi(f)
        terms = {}
        for key, c in numerator.terms.items():
            try:
                terms[key] = divide_exact_by_p(c, self.p)
            except ValueError as exc:
                if "not divisible" in str(exc):
                    raise ValueError("Frobenius congruence violated") from exc
                raise
        return Polynomial(RATIONALS, terms)

    def check_frobenius_congruence(self, f: Polynomial) -> bool:
        """True iff f^p - psi(f) has every coefficient divisible by p."""
        difference = f**self.p - self.psi(f)
        return all(vp(c, self.p) >= 1 for c in difference.terms.values())

    # ---- axiom checks ----

    def scaled_binomial(self, j: int) -> int:
        """The integer binom(p, j) / p for 0 < j < p, exactness asserted."""
        if not 0 < j < self.p:
            raise ValueError("index out of range")
        value = math.comb(self.p, j)
        quotient, remainder = divmod(value, self.p)
        if remainder:
            raise AssertionError("binomial not divisible by p")
        if quotient * j != math.comb(self.p - 1, j - 1):
            raise AssertionError("binomial quotient mismatch")
        return quotient

    def check_theta_axioms(self, f: Polynomial, g: Polynomial) -> AxiomReport:
        """Verify the six defining identities on the concrete pair (f, g)."""
        p = self.p
        report = AxiomReport()
        one = Polynomial.one(RATIONALS)
        zero = Polynomial.zero(RATIONALS)
        report.record("theta_one", self.theta(one), zero)
        cross = zero
        for j in range(1, p):
            cross = cross + (f**j * g ** (p - j)).scale(self.scaled_binomial(j))
        report.record("theta_sum", self.theta(f + g), self.theta(f) + self.theta(g) + cross)
        report.record(
            "theta_product",
            self.theta(f * g),
            self.theta(f) * self.psi(g) + f**p * self.theta(g),
        )
        report.record("theta_psi_commute", self.theta(self.psi(f)), self.psi(self.theta(f)))
        report.record("psi_additive", self.psi(f + g), self.psi(f) + self.psi(g))
        report.record("psi_multiplicative", self.psi(f * g), self.psi(f) * self.psi(g))
        return report

    def check_theta_of_p_multiple(self, b: Polynomial) -> bool:
        """theta(p*b) = p^(p-1) * b^p - psi(b), a consequence of the axioms."""
        p = self.p
        lhs = self.theta(b.scale(p))
        rhs = (b**p).scale(p ** (p - 1)) - self.psi(b)
        return lhs == rhs

    # ---- the iterate family ----

    def iterate_polynomial(self, n: int) -> Polynomial:
        """Integer polynomial in (s, t) for the n-th Adams iterate.

        Cached; each freshly computed member is spot-checked against the
        structural invariants (monic of degree p^n in s, weighted
        homogeneous of weight p^n under wt(s) = 1, wt(t) = p).
        """
        if n < 0:
            raise ValueError("iterate index must be nonnegative")
        p = self.p
        top = max(self._iterates)
        while top < n:
            previous = self._iterates[top]
            tail = previous.substitute(
                Polynomial.monomial(RATIONALS, 0, 1), Polynomial.zero(RATIONALS)
            )
            current = previous**p - tail.scale(p)
            top += 1
            self._spot_check(current, top)
            self._iterates[top] = current
        return self._iterates[n]

    def _spot_check(self, candidate: Polynomial, n: int) -> None:
        weight = self.p**n
        if candidate.coefficient(weight, 0) != 1:
            raise AssertionError("iterate polynomial lost its monic leading term")
        for i, j in candidate.terms:
            if i + self.p * j != weight:
                raise AssertionError("iterate polynomial lost weighted homogeneity")

    def check_iterate_substitution(self, n: int) -> bool:
        """Recursion transport: member n equals member n-1 at (s^p - p*t, t^p)."""
        if n < 1:
            raise ValueError("needs n >= 1")
        first = Polynomial(RATIONALS, {(self.p, 0): 1, (0, 1): -self.p})
        second = Polynomial.monomial(RATIONALS, 0, self.p)
        return self.iterate_polynomial(n) == self.iterate_polynomial(n - 1).substitute(
            first, second
        )

    def check_iterate_power_congruence(self, n: int) -> bool:
        """Member n agrees with member n-1 at (s^p, t^p) modulo p^n."""
        if n < 1:
            raise ValueError("needs n >= 1")
        stretched = self.iterate_polynomial(n - 1).substitute(
            Polynomial.monomial(RATIONALS, self.p, 0),
            Polynomial.monomial(RATIONALS, 0, self.p),
        )
        difference = self.iterate_polynomial(n) - stretched
        return all(vp(c, self.p) >= n for c in difference.terms.values())

    def check_iterate_diagonal(self, e: int) -> bool:
        """Two facts used by theta-stability of the quotient construction:
        member e at (t, 0) collapses to t^(p^e), and theta of member e read
        in (x, y) is exactly y^(p^e).
        """
        if e < 0:
            raise ValueError("needs e >= 0")
        fe = self.iterate_polynomial(e)
        collapsed = fe.substitute(
            Polynomial.monomial(RATIONALS, 0, 1), Polynomial.zero(RATIONALS)
        )
        if collapsed != Polynomial.monomial(RATIONALS, 0, self.p**e):
            return False
        return self.theta(fe) == Polynomial.monomial(RATIONALS, 0, self.p**e)


def nilpotence_bound(n: int) -> int:
    """Smallest verified exponent bound for n-torsion: any element a with
    n * a = 0 in a ring carrying these operators satisfies a^E = 0 for
    E = max over maximal prime powers p^e dividing n of p^e + p^(e-1).

    For n = 1 or -1 the only torsion element is 0, so the bound is 1.
    n = 0 imposes no torsion at all and is rejected.
    """
    if n == 0:
        raise ValueError("0-torsion imposes no bound")
    n = abs(n)
    if n == 1:
        return 1
    best = 0
    remaining = n
    d = 2
    while d * d <= remaining:
        if remaining % d == 0:
            e = 0
            while remaining % d == 0:
                remaining //= d
                e += 1
            best = max(best, d**e + d ** (e - 1))
        d += 1 if d == 2 else 2
    if remaining > 1:
        best = max(best, remaining + 1)
    return best


def random_polynomial(
    rng: random.Random,
    p: int,
    max_degree: int = 4,
    max_terms: int = 6,
    allow_fractions: bool = True,
) -> Polynomial:
    """Seeded sampler for the randomized checks.

    Numerators are drawn from [-9, 9]; denominators are 1 or one small
    prime q coprime to p, so every sample is p-integral.
    """
    q = next(c for c in (3, 5, 7) if c != p)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        numerator = rng.randint(-9, 9)
        denominator = rng.choice([1, q]) if allow_fractions else 1
        existing = terms.get((i, j), LocalizedRational(0))
        terms[(i, j)] = existing + LocalizedRational(numerator, denominator)
    return Polynomial(RATIONALS, terms)
