"""
Defining an algebra and verifying its axioms
============================================

A Lie conformal algebra is given by a bracket table: for each pair of
generators, a polynomial combination of generators.  The workbench checks
skew symmetry and the Jacobi identity symbolically, with parameters left
free, and reports the exact residual of any failure.
"""

from confalg import instantiate, parse_algebra

# The built-in presets cover the standard examples.  The two-parameter
# algebra w has generators L (a Virasoro element) and W (a primary of
# conformal weight a with a shift b).
alg = instantiate("w")
print("algebra", alg.name, "with parameters", [v.name for v in alg.params])
for pair in alg.upper_pairs():
    print(f"  [{pair[0]},{pair[1]}] =", alg.entry(*pair).render())

# Both axioms hold identically in a and b.
print("skew symmetry:", "pass" if alg.check_skew().passed else "fail")
print("jacobi identity:", "pass" if alg.check_jacobi().passed else "fail")

# Algebras can also be read from the text format used by the CLI.  Only
# the upper triangle of the table is required; the rest is filled in by
# skew symmetry.
text = """
algebra heis
gen A
gen B
[A,A] = 0
[A,B] = 1/2 B
[B,B] = 0
"""
heis = parse_algebra(text)
print("parsed", heis.name, "| axioms pass:",
      heis.check_skew().passed and heis.check_jacobi().passed)

# A wrong coefficient is caught immediately, and the residual shows how
# the axiom fails.
broken = parse_algebra("algebra broken\ngen L offset=1\n[L,L] = (d + 3*x) L\n")
report = broken.check_skew()
print("broken table passes skew:", report.passed)
for entry in report.failures():
    print("  residual at", entry.key, "is", entry.residual)
