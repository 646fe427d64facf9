"""Generalized Weyl algebras embedded into skew group rings, and their centers.

A GWA over a commutative base D is generated by raising/lowering symbols
X_i^+/X_i^- twisted by commuting automorphisms sigma_i, with
X_i^- X_i^+ = a_i and X_i^+ X_i^- = sigma_i(a_i).  The embedding sends
X_i^+ -> 1 * sigma_i and X_i^- -> a_i * sigma_i^{-1}, and every defining
relation becomes a symbolic identity that the package checks exactly.

Run:  python demos/03_generalized_weyl_algebras.py
"""

from skewmon import (
    AlgebraSpec,
    GWASpec,
    Polynomial,
    QQ,
    ShiftAut,
    VariableTable,
    center_candidates,
    gwa_embed,
    poly_to_text,
    verify_gwa,
    witten_woronowicz_spec,
)

print("== the Weyl-like rank-1 GWA: D = k[h], sigma(h) = h-1, a = h ==")
t = VariableTable(["h"])
weyl = GWASpec(t, (ShiftAut(t, [QQ(-1)]),), (Polynomial.variable(1, 0),))
alg = gwa_embed(weyl)
xp, xm = alg.generator("X1+"), alg.generator("X1-")
print("X+ X- - X- X+      =", (xp * xm - xm * xp).to_text(), "  (canonical commutator)")
report = verify_gwa(weyl)
print(f"relation suite     = {'PASS' if report.passed else 'FAIL'} "
      f"({len(report.checks)} relations)")

print()
print("== a q-deformed rank-1 example with a symbolic scaling parameter ==")
ww = witten_woronowicz_spec()
print("sigma(H) = s^4 H, sigma(Z) = s^2 Z, a = Z + alpha H + beta")
report = verify_gwa(ww)
print(f"relation suite     = {'PASS' if report.passed else 'FAIL'} "
      f"({len(report.checks)} relations)")

print()
print("== center search: invariant polynomials of bounded degree ==")
algww = gwa_embed(ww)
basis = center_candidates(algww, 4)
names = algww.context.table.names
print("degree <= 4 basis  =", [poly_to_text(b.num, names) for b in basis])
print("(s is a free parameter, so no power of H or Z is fixed: constants only)")

print()
print("== contrast: the rank-2 shift algebra on 3 variables keeps x3 central ==")
from skewmon import build_shift_algebra

ctx = build_shift_algebra(3, 2)
basis = center_candidates(AlgebraSpec(ctx, {}, []), 2)
print("degree <= 2 basis  =", [poly_to_text(b.num, ctx.table.names) for b in basis])
