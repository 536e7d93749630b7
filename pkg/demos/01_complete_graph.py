"""
The complete graph K_r
======================

Build K_5 with exact rationals, check the subconstituent identities and look
at the commutator ``A^{-1} A*^{-1} A A*``.
"""

from fractions import Fraction

from hamming_commutator.complete_graph import build_kr, kr_primary_rep, verify_kr
from hamming_commutator.exact_linalg import RMatrix, kernel

kr = build_kr(5)
print("A =\n", kr.A)
print("A* diagonal:", [str(x) for x in kr.Astar.diagonal()])

# every identity is a named flag; the algebra T has dimension 5
report = verify_kr(kr)
print(f"{sum(report.flags.values())}/{len(report.flags)} identities hold, dim T = {report.dim_T}")

# on the primary module (basis x-hat, 1) A and A* are 2 x 2
B, Bs = kr_primary_rep(kr)
print("A on e0 V:\n", B)
print("A* on e0 V:\n", Bs)

# the commutator scales x-hat by 1-r, the ones vector by 1/(1-r), and fixes e1 V
C = kr.commutator
for lam in (Fraction(-4), Fraction(-1, 4), Fraction(1)):
    print(f"eigenvalue {lam}: multiplicity {kernel(C - lam * RMatrix.identity(5)).dim}")
