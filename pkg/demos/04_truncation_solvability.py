"""
Finite truncations and solvability
==================================

Quotienting the nonnegative part of the coefficient algebra by everything
of filtration degree at least N leaves a finite-dimensional Lie algebra.
These quotients are solvable for the presets, and their derived series can
be computed exactly at any depth.
"""

from confalg import FiniteLie, instantiate, truncated_quotient

# Parameters must be bound before truncating, since the structure
# constants become rational numbers.
alg = instantiate("w", {"a": 2, "b": 1})

for depth in range(1, 5):
    finite = truncated_quotient(alg, depth)
    solvable, length = finite.is_solvable()
    print(f"depth {depth}: dim {finite.dim}, derived series {finite.derived_series()},"
          f" solvable length {length}")

# The smallest quotient in full detail.
finite = truncated_quotient(alg, 2)
print("basis:", ", ".join(finite.symbol(i) for i in range(finite.dim)))


def scaled(c, symbol):
    return symbol if c == 1 else f"-{symbol}" if c == -1 else f"{c}*{symbol}"


for (i, j), terms in finite.nonzero_brackets():
    value = " + ".join(scaled(c, finite.symbol(k)) for k, c in terms)
    print(f"  [{finite.symbol(i)}, {finite.symbol(j)}] = {value}")

# FiniteLie also stands on its own for hand-built structure constants.
# sl2 is not solvable, and the check says so.
sl2 = FiniteLie([("e", 0), ("f", 0), ("h", 0)],
                {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}})
print("sl2 jacobi violations:", sl2.check_jacobi())
print("sl2 derived series:", sl2.derived_series())
print("sl2 solvable:", sl2.is_solvable())

# Quotients serialize to JSON for use outside Python.
data = truncated_quotient(instantiate("vir"), 2).to_json()
print("vir depth-2 quotient as JSON:", data)
