"""
Classifying rank-one modules
============================

A rank-one conformal module is determined by one action polynomial per
generator.  The classifier solves the module identity for a generic
ansatz of bounded degree and returns every solution family, written with
the Virasoro action in the normal form d + alpha*x + beta.
"""

from fractions import Fraction

from confalg import gamma_carrier, instantiate, rank1_classify, vir_completeness

# Over the Virasoro algebra the answer is the classical one: the zero
# action and the single two-parameter family.
vir = instantiate("vir")
for fam in rank1_classify(vir, 4):
    print("vir family:", fam.render())

# A completeness search with a fully generic bidegree ansatz confirms
# nothing else exists at low degree.
print("generic search:", [str(p) for p in vir_completeness(2)])

# For the two-parameter algebra w the picture depends on the point (a,b).
# At (1,0) the second generator may act by a free constant gamma; at every
# other sampled point it must act by zero.
for point in [(1, 0), (2, 0), (1, 1), (Fraction(1, 2), 0)]:
    alg = instantiate("w", {"a": point[0], "b": point[1]})
    carrier = gamma_carrier(alg)
    families = rank1_classify(alg, 4)
    print(f"w at {point}: carrier {carrier.name if carrier else 'none'}")
    for fam in families:
        print("   ", fam.render())

# The central extension removes the carrier for every value of c.
tsvc = instantiate("tsvc", {"c": 1})
print("tsvc carrier:", gamma_carrier(tsvc))
for fam in rank1_classify(tsvc, 4):
    print("tsvc family:", fam.render())
