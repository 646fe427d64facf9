"""Skew monoid rings: the product rule, the group action, and orbit sums.

The running example is the rank-2 shift algebra k(x1,x2) * Z^2 with the
symmetric group S_2 permuting the variables.  Elements are finite sums
sum_mu f_mu * mu; the product applies the left key's shift to the right
coefficient:  (a mu)(b nu) = a * mu(b) * (mu nu).

Run:  python demos/02_skew_rings_and_orbit_sums.py
"""

from skewmon import (
    MonoidElement,
    SkewElement,
    build_shift_algebra,
    commutator,
    decompose_orbits,
    g_action,
    is_invariant,
    kpart,
    orbit_sum,
)

ctx = build_shift_algebra(2, 2, group_generators=[(1, 0)])
x1 = ctx.table.var("x1")
x2 = ctx.table.var("x2")

print("== the defining product rule ==")
eps1 = SkewElement.generator(ctx, (1, 0))
x1e = SkewElement.scalar(ctx, x1)
print("eps1 * x1          =", (eps1 * x1e).to_text(), "   (eps1 shifts x1 by -1)")
print("[eps1, x1]         =", commutator(eps1, x1e).to_text())

print()
print("== the group acts on coefficients and conjugates keys ==")
u = SkewElement.generator(ctx, (1, 0), x1)
swap = list(ctx.group)[1]
print("x1*eps1            =", u.to_text())
print("swapped            =", g_action(swap, u).to_text())

print()
print("== orbit sums build G-invariant elements from coset data ==")
mu = MonoidElement(ctx, (1, 0))
os = orbit_sum(x1, mu)
print("[x1 eps1]          =", os.to_text())
print("is_invariant       =", is_invariant(os))

print()
print("== invariants decompose along key orbits ==")
both = os + orbit_sum(x1 * x2 + ctx.table.poly("1"), MonoidElement(ctx, (0, 0)))
print("element            =", both.to_text())
for rep, comp in decompose_orbits(both):
    print(f"  orbit of {rep.vector}: {comp.to_text()}")
print("identity component =", kpart(both).num.terms)
