"""Ideal membership mod p^m for the torsion quotient family.

For a prime p and depth e >= 1 the ideal of interest is generated by

    g_n = p^(e-n) * (n-th iterate polynomial, read in x, y),  0 <= n <= e,
    g_(e+1) = y^(p^e).

The quotient by g_e and g_(e+1) alone is a free module over Z/p^m with
basis the monomials x^i y^j, 0 <= i, j < p^e: g_e is monic in x of degree
p^e, its other terms stay inside the block (weighted homogeneity keeps
their y-degree at most p^(e-1)), so the two leading monomials x^(p^e) and
y^(p^e) are monic and coprime and the rewriting

    x^(p^e) -> x^(p^e) - g_e        (terms of smaller x-degree)
    y^(p^e) * anything -> 0

is confluent: reduce_to_span is a well defined linear map onto the span.
Membership in the full ideal then becomes a linear question: f lies in
the ideal mod p^m iff reduce_to_span(f) lies in the row module T spanned
by the reductions of all multiples x^a y^b g_n.  Finitely many multiples
suffice: a reduction with a >= p^e rewrites into reductions of strictly
smaller a (x^(p^e) acts as the rewrite tail modulo the monic generator),
and y^b g_n reduces to zero once b reaches p^e, so the grid
0 <= a, b < p^e spans T.  The build enumerates that grid, Howellizes it
once, and queries reduce against the canonical basis.

Certificates ride along: the rewrite records cofactor fragments, each
closure atom carries a small cofactor bundle, and a positive membership
answer combines them through the Howell transform into one cofactor per
generator, verifiable by independent expansion (see certificates.py).

Span vectors index the monomial x^i y^j at position j * p^e + i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificates import Certificate, standard_generators
from .coefficients import Modulus
from .howell import howell_complete, howell_spanning_subset
from .polynomials import RATIONALS, Polynomial
from .theta import ThetaContext


@dataclass(frozen=True)
class IdealSpec:
    """The generator family for one (p, e)."""

    p: int
    e: int
    generators: tuple

    @classmethod
    def build(cls, p: int, e: int) -> "IdealSpec":
        members = standard_generators(p, e)
        top = members[e]
        if top.coefficient(p**e, 0) != 1 or top.degree_first() != p**e:
            raise AssertionError("top generator must be monic of degree p^e in x")
        if members[e + 1] != Polynomial.monomial(RATIONALS, 0, p**e):
            raise AssertionError("last generator must be y^(p^e)")
        return cls(p=p, e=e, generators=members)


class RewriteSystem:
    """The linear normal-form map onto the monomial span, mod p^m.

    Rewriting order is fixed for determinism: terms killed by the y-rule
    first, then among terms with x-degree >= p^e the highest x-degree
    (leftmost in the term order on ties).  Each x-step strictly lowers
    the x-degree, so the loop terminates; confluence makes the order
    irrelevant to the result, which the tests exercise separately.
    """

    def __init__(self, p: int, e: int, m: int):
        if e < 1:
            raise ValueError("depth e must be at least 1")
        self.modulus = Modulus(p, m)
        self.p, self.e, self.m = p, e, m
        self.block = p**e
        self.span_size = p ** (2 * e)
        top = ThetaContext(p).iterate_polynomial(e)
        tail = (Polynomial.monomial(RATIONALS, self.block, 0) - top).reduce_mod(p, m)
        self.tail = {key: c.value for key, c in tail.terms.items()}
        if any(i >= self.block or j >= self.block for i, j in self.tail):
            raise AssertionError("rewrite tail escapes the span block")

    def _reduce_terms(self, work: dict):
        """Core loop on a plain {(i, j): int} dict; mutates and returns
        (span vector, fragments) with fragments[g] a cofactor term dict."""
        n = self.modulus.value
        block = self.block
        fragments: dict = {}

        def credit(generator: int, key, value):
            bucket = fragments.setdefault(generator, {})
            total = (bucket.get(key, 0) + value) % n
            if total:
                bucket[key] = total
            else:
                bucket.pop(key, None)

        while True:
            for key in [key for key in work if key[1] >= block]:
                value = work.pop(key)
                credit(self.e + 1, (key[0], key[1] - block), value)
            heavy = [key for key in work if key[0] >= block]
            if not heavy:
                break
            i, j = max(heavy)
            value = work.pop((i, j))
            credit(self.e, (i - block, j), value)
            for (ti, tj), tc in self.tail.items():
                key = (i - block + ti, j + tj)
                total = (work.get(key, 0) + value * tc) % n
                if total:
                    work[key] = total
                else:
                    work.pop(key, None)
        vector = np.zeros(self.span_size, dtype=np.int64)
        for (i, j), value in work.items():
            vector[j * block + i] = value
        return vector, {g: dict(d) for g, d in fragments.items() if d}

    def reduce(self, f: Polynomial):
        """Normal form of a polynomial: (span vector, cofactor fragments).

        The fragments account exactly for what was removed:
        f = sum over g of fragment_g * generator_g + span part, mod p^m.
        """
        if f.ring is RATIONALS:
            f = f.reduce_mod(self.p, self.m)
        elif f.ring != self.modulus:
            raise ValueError("polynomial modulus does not match the rewrite system")
        return self._reduce_terms({key: c.value for key, c in f.terms.items()})

    def monomial_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.block and 0 <= j < self.block):
            raise ValueError("monomial outside the span block")
        return j * self.block + i

    def vector_to_polynomial(self, vector: np.ndarray) -> Polynomial:
        block = self.block
        terms = {
            (index % block, index // block): int(value)
            for index, value in enumerate(vector)
            if value
        }
        return Polynomial(self.modulus, terms)


@dataclass(frozen=True, eq=False)
class ResidueWitness:
    """The canonical nonzero remainder proving a non-membership."""

    vector: np.ndarray
    polynomial: Polynomial

    def to_text(self) -> str:
        return self.polynomial.to_text()


@dataclass(frozen=True, eq=False)
class MembershipResult:
    member: bool
    certificate: Certificate | None = None
    witness: ResidueWitness | None = None


@dataclass(eq=False)
class _Atom:
    """One closure element: the reduction of x^a y^b * g_n.

    bundle maps generator index to a cofactor term dict whose expansion
    equals the atom's span vector mod p^m (the monomial cofactor on g_n
    minus whatever the reduction credited to other generators).
    """

    key: tuple
    vector: np.ndarray
    bundle: dict


class MembershipModule:
    """Queryable description of T = reductions of the ideal, mod p^m."""

    def __init__(self, ideal, rewrite, basis, transform, atoms):
        self.ideal = ideal
        self.rewrite = rewrite
        self.modulus = rewrite.modulus
        self.basis = basis
        self.transform = transform
        self.atoms = atoms
        self.theta_context = ThetaContext(ideal.p)

    @property
    def p(self) -> int:
        return self.ideal.p

    @property
    def e(self) -> int:
        return self.ideal.e

    @property
    def m(self) -> int:
        return self.modulus.m

    # ---- queries ----

    def reduce_to_span(self, f: Polynomial):
        return self.rewrite.reduce(f)

    def is_member(self, f: Polynomial) -> MembershipResult:
        """Decide f in ideal mod p^m; attach a certificate or a witness."""
        vector, fragments = self.rewrite.reduce(f)
        return self._finish(vector, fragments, self._as_target(f))

    def power_membership(self, base: Polynomial, exponent: int) -> MembershipResult:
        """Membership of base**exponent, by repeated multiply-then-reduce.

        The unreduced power is never materialized: after each
        multiplication the product is reduced back onto the span, and the
        cofactor fragments are transported alongside.
        """
        if exponent < 1:
            raise ValueError("exponent must be positive")
        base_mod = base.reduce_mod(self.p, self.m) if base.ring is RATIONALS else base
        n = self.modulus.value
        vector, fragments = self.rewrite.reduce(base_mod)
        for _ in range(exponent - 1):
            carried = {}
            for g, terms in fragments.items():
                product = base_mod * Polynomial(self.modulus, terms)
                carried[g] = {key: c.value for key, c in product.terms.items()}
            partial = base_mod * self.rewrite.vector_to_polynomial(vector)
            vector, fresh = self.rewrite.reduce(partial)
            for g, terms in fresh.items():
                bucket = carried.setdefault(g, {})
                for key, value in terms.items():
                    total = (bucket.get(key, 0) + value) % n
                    if total:
                        bucket[key] = total
                    else:
                        bucket.pop(key, None)
            fragments = {g: d for g, d in carried.items() if d}
        target = self._as_target(base) ** exponent
        return self._finish(vector, fragments, target)

    def _as_target(self, f: Polynomial) -> Polynomial:
        return f if f.ring is RATIONALS else f.lift()

    def _finish(self, vector, fragments, target) -> MembershipResult:
        residue, coefficients = self.basis.reduce(vector)
        if residue.any():
            witness = ResidueWitness(
                vector=residue, polynomial=self.rewrite.vector_to_polynomial(residue)
            )
            return MembershipResult(member=False, witness=witness)
        n = self.modulus.value
        combined = {g: dict(terms) for g, terms in fragments.items()}
        atom_weights = (coefficients @ self.transform) % n
        for atom, weight in zip(self.atoms, atom_weights):
            if not weight:
                continue
            weight = int(weight)
            for g, terms in atom.bundle.items():
                bucket = combined.setdefault(g, {})
                for key, value in terms.items():
                    total = (bucket.get(key, 0) + weight * value) % n
                    if total:
                        bucket[key] = total
                    else:
                        bucket.pop(key, None)
        cofactors = tuple(
            (g, Polynomial(RATIONALS, terms))
            for g, terms in sorted(combined.items())
            if terms
        )
        certificate = Certificate(
            p=self.p, e=self.e, m=self.m, target=target, cofactors=cofactors
        )
        return MembershipResult(member=True, certificate=certificate)

    # ---- verification operations ----

    def check_theta_stability(self) -> bool:
        """The ideal is carried into itself by theta and psi, mod p^m.

        Checks membership of theta(g) and psi(g) for every generator, and
        pins the exact identities behind them: psi(g_n) is p^(e-n) times
        the next iterate for n <= e, theta(g_e) = y^(p^e), theta of the
        last generator vanishes, and theta(g_n) for n < e expands as
        p^((e-n)p-1) * (iterate_n)^p - p^(e-n-1) * iterate_(n+1).
        """
        ctx = self.theta_context
        p, e = self.p, self.e
        iterates = [ctx.iterate_polynomial(k) for k in range(e + 2)]
        ok = True
        for index, g in enumerate(self.ideal.generators):
            theta_g = ctx.theta(g)
            psi_g = ctx.psi(g)
            ok = ok and self.is_member(theta_g).member
            ok = ok and self.is_member(psi_g).member
            if index < e:
                expected = (iterates[index] ** p).scale(p ** ((e - index) * p - 1))
                expected = expected - iterates[index + 1].scale(p ** (e - index - 1))
                ok = ok and theta_g == expected
                ok = ok and psi_g == iterates[index + 1].scale(p ** (e - index))
            elif index == e:
                ok = ok and theta_g == Polynomial.monomial(RATIONALS, 0, p**e)
                ok = ok and psi_g == iterates[e + 1]
            else:
                ok = ok and theta_g.is_zero()
        return ok

    def verify_iterate_torsion(self, k: int) -> bool:
        """p^(e-k) times the k-th Adams iterate of x lies in the ideal."""
        if not 0 <= k <= self.e:
            raise ValueError("k out of range")
        x, _ = Polynomial.generators(RATIONALS)
        target = self.theta_context.psi_iterate(x, k).scale(self.p ** (self.e - k))
        return self.is_member(target).member

    def verify_iterate_power_identity(self, k: int) -> bool:
        """x^(p^e + p^(e-1)) agrees mod the ideal with the k-th Adams
        iterate of the matching smaller power of x."""
        if not 0 <= k <= self.e - 1:
            raise ValueError("k out of range")
        p, e = self.p, self.e
        x, _ = Polynomial.generators(RATIONALS)
        small = p ** (e - k) + p ** (e - k - 1)
        difference = x ** (p**e + p ** (e - 1)) - self.theta_context.psi_iterate(x, k) ** small
        return self.is_member(difference).member

    def verify_nilpotence(self) -> MembershipResult:
        """x^(p^e + p^(e-1)) lies in the ideal mod p^m, with certificate."""
        x, _ = Polynomial.generators(RATIONALS)
        return self.power_membership(x, self.p**self.e + self.p ** (self.e - 1))

    def verify_sharpness(self) -> MembershipResult:
        """One exponent below the bound stays outside, at precision e+1.

        Only meaningful at m = e+1 (the precision where the quotient
        attains the bound); rejects other precisions loudly.
        """
        if self.m != self.e + 1:
            raise ValueError("sharpness is stated at precision m = e + 1")
        x, _ = Polynomial.generators(RATIONALS)
        return self.power_membership(x, self.p**self.e + self.p ** (self.e - 1) - 1)

    def verify_torsion_powers(self, ks=None) -> bool:
        """Each p^(e-k) * x is p^k-torsion mod the ideal, so its
        (p^k + p^(k-1))-th power must be a member, at every precision."""
        if ks is None:
            ks = range(1, self.e + 1)
        x, _ = Polynomial.generators(RATIONALS)
        ok = True
        for k in ks:
            exponent = self.p**k + self.p ** (k - 1)
            scalar = (self.p ** (self.e - k)) ** exponent
            target = (x**exponent).scale(scalar)
            ok = ok and self.is_member(target).member
        return ok


def build_membership_module(
    p: int, e: int, m: int, span_limit: int | None = None
) -> MembershipModule:
    """Compute T and its Howell basis for (p, e) at precision m.

    span_limit bounds the monomial span p^(2e); exceeding it raises
    ValueError so callers can turn resource overruns into skip verdicts.

    Two elimination passes: the first Howellizes the whole monomial grid
    of generator multiples and identifies a spanning subset of at most
    one atom per basis row; the second, over that small subset only,
    carries the transform that certificates combine cofactors through.
    Both passes must agree on the canonical basis.
    """
    rewrite = RewriteSystem(p, e, m)
    if span_limit is not None and rewrite.span_size > span_limit:
        raise ValueError(f"span size {rewrite.span_size} exceeds the limit {span_limit}")
    modulus = rewrite.modulus
    n = modulus.value
    if rewrite.span_size * n * n >= 2**63:
        raise ValueError("precision too large for int64 transform arithmetic")
    ideal = IdealSpec.build(p, e)
    generators_mod = [
        {key: c.value for key, c in g.reduce_mod(p, m).terms.items()}
        for g in ideal.generators
    ]

    def make_atom(key):
        gen_index, a, b = key
        shifted = {
            (i + a, j + b): value for (i, j), value in generators_mod[gen_index].items()
        }
        vector, fragments = rewrite._reduce_terms(shifted)
        bundle = {gen_index: {(a, b): 1}}
        for g, terms in fragments.items():
            bucket = bundle.setdefault(g, {})
            for term_key, value in terms.items():
                total = (bucket.get(term_key, 0) - value) % n
                if total:
                    bucket[term_key] = total
                else:
                    bucket.pop(term_key, None)
        return _Atom(key=key, vector=vector, bundle={g: d for g, d in bundle.items() if d})

    # multiples of the last generator reduce to zero outright (every term
    # has y-degree >= p^e), so the grid runs over the iterate generators
    block = rewrite.block
    atoms = []
    for gen_index in range(e + 1):
        for b in range(block):
            for a in range(block):
                atom = make_atom((gen_index, a, b))
                if atom.vector.any():
                    atoms.append(atom)

    if not atoms:
        empty = np.zeros((0, rewrite.span_size), dtype=np.int64)
        final_basis, transform = howell_complete(empty, modulus)
        return MembershipModule(ideal, rewrite, final_basis, transform, [])
    pool = np.vstack([atom.vector for atom in atoms])
    grid_basis, spanning = howell_spanning_subset(pool, modulus)
    kept = [atoms[index] for index in spanning]
    final_basis, transform = howell_complete(
        np.vstack([atom.vector for atom in kept]), modulus
    )
    if not final_basis.same_span_as(grid_basis):
        raise AssertionError("spanning subset changed the module")
    return MembershipModule(ideal, rewrite, final_basis, transform, kept)


def brute_force_membership_oracle(p: int, e: int, m: int, f: Polynomial) -> bool:
    """Decide membership by enumerating T outright.  Desk-scale guard:
    refuses unless p^(2e) <= 16 and p^m <= 16.

    This is a deliberately independent second route: the reduction loop
    and the closure are rewritten here against the definition (breadth
    first closure of the seed reductions under addition, scalars, and the
    two monomial shifts), sharing none of the Howell machinery.
    """
    if p ** (2 * e) > 16 or p**m > 16:
        raise ValueError("oracle guard: instance too large to enumerate")
    n = p**m
    block = p**e
    top = ThetaContext(p).iterate_polynomial(e)
    tail = {
        key: c.value
        for key, c in (Polynomial.monomial(RATIONALS, block, 0) - top)
        .reduce_mod(p, m)
        .terms.items()
    }

    def oracle_reduce(terms: dict) -> tuple:
        terms = {key: value % n for key, value in terms.items() if value % n}
        while True:
            terms = {key: value for key, value in terms.items() if key[1] < block}
            heavy = sorted(key for key in terms if key[0] >= block)
            if not heavy:
                break
            i, j = heavy[-1]
            value = terms.pop((i, j))
            for (ti, tj), tc in tail.items():
                key = (i - block + ti, j + tj)
                total = (terms.get(key, 0) + value * tc) % n
                if total:
                    terms[key] = total
                else:
                    terms.pop(key, None)
        vector = [0] * block**2
        for (i, j), value in terms.items():
            vector[j * block + i] = value
        return tuple(vector)

    def shift(vector: tuple, di: int, dj: int) -> tuple:
        terms = {}
        for index, value in enumerate(vector):
            if value:
                terms[(index % block + di, index // block + dj)] = value
        return oracle_reduce(terms)

    seeds = []
    for g in standard_generators(p, e):
        reduced = oracle_reduce(
            {key: c.value for key, c in g.reduce_mod(p, m).terms.items()}
        )
        if any(reduced):
            seeds.append(reduced)

    zero = tuple([0] * block**2)
    elements = {zero}
    worklist = list(seeds)
    while worklist:
        candidate = worklist.pop()
        if candidate in elements:
            continue
        additions = set()
        for existing in elements:
            for scalar in range(1, n):
                additions.add(
                    tuple((a + scalar * b) % n for a, b in zip(existing, candidate))
                )
        elements |= additions
        worklist.append(shift(candidate, 1, 0))
        worklist.append(shift(candidate, 0, 1))

    query = f.reduce_mod(p, m) if f.ring is RATIONALS else f
    reduced = oracle_reduce({key: c.value for key, c in query.terms.items()})
    return reduced in elements
