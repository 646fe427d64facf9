"""Ring-theoretic probes: divided differences, membership conditions,
standard polynomial identities, Ore witnesses, and growth profiles.

Run:  python demos/05_identities_witnesses_growth.py
"""

from skewmon import (
    MonoidElement,
    Polynomial,
    RatFunc,
    SkewElement,
    build_shift_algebra,
    demazure_elements,
    fit_loglog_slope,
    growth_profile,
    hecke_membership_check,
    monoid_growth,
    ore_witness,
    standard_identity,
    symmetric_group_context,
)

print("== divided-difference elements over finite-group keys ==")
th = demazure_elements(3)
print("theta1 =", th[0].to_text())
print("theta1^2 = 0:", (th[0] * th[0]).is_zero())
print("braid relation:", th[0] * th[1] * th[0] == th[1] * th[0] * th[1])

print()
print("== residue/pole membership conditions ==")
report = hecke_membership_check(th[0])
print(f"theta1 degenerate conditions: {'PASS' if report.passed else 'FAIL'} "
      f"({len(report.checks)} checks)")
ctx_w = symmetric_group_context(2)
alpha = Polynomial.variable(2, 0) - Polynomial.variable(2, 1)
broken = SkewElement(ctx_w, {(1, 0): RatFunc(Polynomial.const(2, 1), alpha)})
report = hecke_membership_check(broken)
print("one-sided pole fails:", [c.name for c in report.failures()])

print()
print("== standard identities: a degree-2 non-PI witness ==")
ctx = build_shift_algebra(1, 1)
eps = SkewElement.generator(ctx, (1,))
xe = SkewElement.scalar(ctx, ctx.table.var("x1"))
print("s_2(eps, x) =", standard_identity(2, [eps, xe]).to_text(), " (nonzero)")
print("s_3(a, a, b) = 0:", standard_identity(3, [eps, eps, xe]).is_zero())

print()
print("== Ore witnesses: clearing an inverted invariant to the right ==")
x = ctx.table.var("x1")
u_prime, r = ore_witness(x, eps)
print(f"for s = x, u = eps:  r = {r.num.terms}, u' = {u_prime.to_text()}")
lhs = eps * SkewElement.scalar(ctx, r)
rhs = SkewElement.scalar(ctx, x) * u_prime
print("u*r == s*u':", lhs == rhs)

print()
print("== growth: span dimensions of powers of a frame ==")
frame = [SkewElement.one(ctx), xe, eps]
profile = growth_profile(frame, 16)
print("d(k) for k=1..16:", profile.dims)
print(f"fitted log-log slope on the tail window: {float(profile.slope):.3f} "
      f"(quadratic growth)")

print()
print("== monoid growth: word-metric balls in Z^2 ==")
sizes = monoid_growth([(1, 0), (-1, 0), (0, 1), (0, -1)], 12)
print("|B_k| for k=1..12:", sizes)
print(f"fitted slope: {float(fit_loglog_slope(sizes)):.3f}")
