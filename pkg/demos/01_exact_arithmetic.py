"""Tour of the exact arithmetic core: sparse polynomials over the rationals,
canonically normalized rational functions, gcd, substitution, and residues.

Run:  python demos/01_exact_arithmetic.py
"""

from skewmon import (
    Polynomial,
    RatFunc,
    poly_gcd,
    poly_to_text,
    residue_along,
    substitute,
)

NAMES = ("x", "y")
x = Polynomial.variable(2, 0)
y = Polynomial.variable(2, 1)
one = Polynomial.const(2, 1)


def show(label, value):
    if isinstance(value, Polynomial):
        value = poly_to_text(value, NAMES)
    elif isinstance(value, RatFunc):
        value = f"({poly_to_text(value.num, NAMES)}) / ({poly_to_text(value.den, NAMES)})"
    print(f"{label:<38} {value}")


print("== polynomials are sparse maps exponent-vector -> exact rational ==")
p = (x + y) * (x - y)
show("(x+y)(x-y)", p)
show("total degree of x^2*y + y", (x**2 * y + y).total_degree())

print()
print("== gcd is exact (content/primitive recursion, no heuristics) ==")
common = x + y * y + one
show("gcd((x+y^2+1)(x-y), (x+y^2+1)(x+3))",
     poly_gcd(common * (x - y), common * (x + one.scale(3))))

print()
print("== rational functions normalize to coprime, monic-denominator form ==")
r = RatFunc(x.scale(2) + one.scale(2), x.scale(2))
show("(2x+2)/(2x)", r)
show("1/x + (x-1)/x", RatFunc(x).invert() + RatFunc(x - one, x))

print()
print("== substitution is exact and refuses to divide by zero ==")
show("x^2 under x -> x-1", substitute(RatFunc(x * x), {0: RatFunc(x - one)}))
try:
    substitute(RatFunc(one, x - y), {0: RatFunc(y)})
except Exception as exc:
    print(f"substituting x -> y into 1/(x-y):      {type(exc).__name__}")

print()
print("== first-order residues along hyperplanes ==")
show("Res_{x=y} of 1/(x-y)", residue_along(RatFunc(one, x - y), x - y, 0))
show("Res_{x=y} of x+y (no pole)", residue_along(RatFunc(x + y), x - y, 0))
r = RatFunc(x * y + y, (x - y - one.scale(2)) * (x + y))
show("Res_{x-y=2} of (xy+y)/((x-y-2)(x+y))", residue_along(r, x - y, 2))
