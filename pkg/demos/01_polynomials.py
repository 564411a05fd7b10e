"""
Exact polynomial arithmetic
===========================

Every computation in confalg runs over the rationals, with polynomials in
the translation symbol d, the bracket variables x, y, z, and any declared
parameters.  This walkthrough shows the kernel operations the rest of the
package is built on.
"""

from fractions import Fraction

from confalg import Poly, Registry, monic_div_rem, parse_poly

# A registry fixes the variable universe.  d, x, y, z are prebuilt;
# parameters are declared on demand.
reg = Registry()
a = reg.param("a")

# Polynomials print in a canonical order, so equal values always render
# identically.
p = parse_poly(reg, "(d + 2*x) * (d + a)")
print("product:", p)

q = parse_poly(reg, "d^2 + d*a + 2*d*x + 2*x*a")
print("same value parsed differently:", q)
print("equal:", p == q)

# Coefficient extraction with respect to one variable.
for k in range(p.degree(reg.x) + 1):
    print(f"coefficient of x^{k}:", p.coeff_of(reg.x, k))

# Substitution is exact.  The shift x -> -x - d implements the variable
# change used by the skew-symmetry axiom.
shift = -Poly.from_var(reg, reg.x) - Poly.from_var(reg, reg.d)
print("shifted:", p.substitute(reg.x, shift))
print("shifting twice restores p:", p.substitute(reg.x, shift).substitute(reg.x, shift) == p)

# Division by a monic polynomial in d leaves a remainder of smaller
# d-degree.  This is the workhorse behind every submodule test.
divisor = parse_poly(reg, "d + a")
quotient, remainder = monic_div_rem(p, divisor, reg.d)
print("quotient:", quotient)
print("remainder:", remainder)
print("identity holds:", quotient * divisor + remainder == p)

# Rational scalars mix freely with polynomials.
print("scaled:", p * Fraction(1, 2))
