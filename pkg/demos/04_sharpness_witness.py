"""The bound is sharp: one exponent lower survives, with a witness.

At the critical precision m = e + 1 the power x^(p^e + p^(e-1) - 1) is
NOT in the ideal.  A negative membership answer carries the canonical
nonzero remainder, and on desk-sized instances an exhaustive enumeration
oracle confirms the verdict along a completely separate code path.
"""

from nilcert import (
    Polynomial,
    RATIONALS,
    brute_force_membership_oracle,
    build_membership_module,
)

x, y = Polynomial.generators(RATIONALS)

print("== sharpness across small instances ==")
for p, e in ((2, 1), (3, 1), (2, 2), (3, 2)):
    module = build_membership_module(p, e, e + 1)
    below = p**e + p ** (e - 1) - 1
    result = module.verify_sharpness()
    print(
        f"  (p, e) = ({p}, {e}): x^{below} member: {result.member}; "
        f"witness remainder {result.witness.to_text()}"
    )

print()
print("== precision matters ==")
# 2y is not reachable mod 8 even though 4y is: one extra power of p
# separates cosets that the critical precision cannot distinguish
module = build_membership_module(2, 1, 3)
for f in (y.scale(2), y.scale(4)):
    print(f"  {f.to_text()} member mod 8: {module.is_member(f).member}")

print()
print("== the enumeration oracle agrees ==")
# the oracle rebuilds the reduction and the module by brute force and
# shares none of the linear algebra
for f in (x**2, x**3, y.scale(2), x * y.scale(2)):
    engine = build_membership_module(2, 1, 2).is_member(f).member
    oracle = brute_force_membership_oracle(2, 1, 2, f)
    marker = "agree" if engine == oracle else "DISAGREE"
    print(f"  {f.to_text():8s} engine {engine!s:5s} oracle {oracle!s:5s} -> {marker}")
