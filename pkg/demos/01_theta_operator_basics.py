"""A tour of the theta operator on the rational polynomial ring.

The whole package rests on one identity: for the Adams operation psi
(substituting x -> x^p - p*y, y -> y^p), every polynomial f satisfies
f^p = psi(f) mod p, so the quotient theta(f) = (f^p - psi(f)) / p is
again a polynomial.  This script shows the operator in action and checks
the algebraic laws it obeys.
"""

from nilcert import Polynomial, RATIONALS, ThetaContext, nilpotence_bound

x, y = Polynomial.generators(RATIONALS)
ctx = ThetaContext(2)

print("== the operators at p = 2 ==")
for f in (x, y, x**2 - y.scale(2), x * y + y):
    print(f"f = {f.to_text()}")
    print(f"  psi(f)   = {ctx.psi(f).to_text()}")
    print(f"  theta(f) = {ctx.theta(f).to_text()}")

print()
print("== theta on constants ==")
# theta(p) = p^(p-1) - 1 is the first sign that theta sees arithmetic:
# it is not additive on constants the way a derivation would be
for p in (2, 3, 5):
    c = ThetaContext(p).theta(Polynomial.constant(RATIONALS, p))
    print(f"p = {p}: theta(p) = {c.to_text()} (expected {p ** (p - 1) - 1})")

print()
print("== the six operator axioms, spot-checked ==")
report = ctx.check_theta_axioms(x**2 + y, x - y.scale(3))
for name, holds in report.identities.items():
    print(f"  {name:22s} {'ok' if holds else 'BROKEN'}")

print()
print("== the exponent bound for torsion ==")
# an n-torsion element is nilpotent with exponent bounded by the largest
# p^e + p^(e-1) over the prime powers p^e dividing n exactly
for n in (2, 12, 700, 1024):
    print(f"  n = {n:5d}: bound {nilpotence_bound(n)}")
