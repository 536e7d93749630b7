"""
Spectrum of the commutator on H(3, 3)
=====================================

C = A_D^{-1} A_D*^{-1} A_D A_D* is diagonalizable with eigenvalues (1-r)^s.
Eigenspaces are kernels at those values, and F_s projects onto each.
"""

from hamming_commutator.cli import format_eigentable
from hamming_commutator.commutator import spectrum
from hamming_commutator.hamming import build_hamming

ctx = build_hamming(3, 3)
sp = spectrum(ctx)

for s, lam, predicted, computed in sp.eigentable():
    print(f"s={s:+d}  eigenvalue {str(lam):>6}  predicted {predicted:2d}  kernel {computed:2d}")

print("trace C =", sp.C.trace())
for name, ok in sp.checks.items():
    print(f"  {'ok  ' if ok else 'FAIL'} {name}")

# the closed form needs no matrices at all
print(format_eigentable(10, 5))
