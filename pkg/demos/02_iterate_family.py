"""The iterate polynomial family and its recursion laws.

Starting from the plain variable s, each member is built from the last by

    iterate(n) = iterate(n-1)(s, t)^p - p * iterate(n-1)(t, 0)

and the family turns out to transport the Adams operation: applying psi
to iterate(n) read in (x, y) gives exactly iterate(n+1).  Two recursion
laws fall out and both are checked here, along with the diagonal
collapse that powers the membership engine.
"""

from nilcert import Polynomial, RATIONALS, ThetaContext

for p in (2, 3):
    ctx = ThetaContext(p)
    print(f"== the family at p = {p} ==")
    for n in range(4):
        member = ctx.iterate_polynomial(n)
        print(f"  iterate {n}: {member.to_text(names=('s', 't'))}")
    print()

ctx = ThetaContext(2)

print("== psi transports the family ==")
x, y = Polynomial.generators(RATIONALS)
for n in range(5):
    lhs = ctx.psi(ctx.iterate_polynomial(n))
    rhs = ctx.iterate_polynomial(n + 1)
    print(f"  psi(iterate {n}) == iterate {n + 1}: {lhs == rhs}")

print()
print("== the two recursion laws ==")
# iterate(n)(s, t) = iterate(n-1)(s^p - p t, t^p), exactly; and modulo
# p^n the substitution simplifies to plain p-th powers of the variables
for n in range(1, 8):
    sub = ctx.check_iterate_substitution(n)
    cong = ctx.check_iterate_power_congruence(n)
    print(f"  n = {n}: substitution {sub}, power congruence mod 2^{n} {cong}")

print()
print("== diagonal collapse ==")
# iterate(e) at (t, 0) collapses to t^(2^e), and theta of iterate(e) read
# in (x, y) is exactly y^(2^e): the first makes the torsion generators
# collapse correctly, the second is the key stability input for the
# quotient construction
for e in range(5):
    print(f"  e = {e}: {ctx.check_iterate_diagonal(e)}")
