"""
Split decomposition of H(2, 4)
==============================

The cells V~_ij are computed twice: from the filtration by intersections and
orthogonal complements, and from Kronecker products of the K_r pieces.
"""

from hamming_commutator.hamming import build_hamming
from hamming_commutator.split_decomposition import (
    split_checks,
    v_eta,
    vij_tilde,
    vij_tilde_tensor,
)

ctx = build_hamming(2, 4)

print("dim V~_ij (rows i, columns j):")
for i in range(ctx.D + 1):
    print("  ", [vij_tilde(ctx, i, j).dim for j in range(ctx.D + 1)])

# both constructions give the same subspaces
same = all(vij_tilde(ctx, i, j).space == vij_tilde_tensor(ctx, i, j)
           for i in range(3) for j in range(3))
print("filtration route == tensor route:", same)

# V_eta gathers the cells on the antidiagonal i + j = eta + D
print("dim V_eta:", [v_eta(ctx, e).dim for e in range(ctx.D + 1)])

checks = split_checks(ctx)
print(f"{sum(checks.values())}/{len(checks)} split checks pass")
