"""
Irreducible T-modules of H(3, 3)
================================

Generate cyclic modules from tensor seeds, split them into irreducibles and
check how C acts on each one: on a module of diameter d, F_s W is a line
exactly for |s| <= d with d - s even.
"""

from hamming_commutator.commutator import spectrum
from hamming_commutator.hamming import build_hamming
from hamming_commutator.tmodule import primary_module, seed_survey

ctx = build_hamming(3, 3)
sp = spectrum(ctx)

prim = primary_module(ctx)
print("primary module: dim", prim.dim, "profile", prim.profile.key)

survey = seed_survey(ctx, sp)
print(f"{survey.n_seeds} seeds -> {len(survey.modules)} irreducible modules")
print("(endpoint, dual endpoint, diameter): count")
for key, count in survey.patterns().items():
    print("  ", key, count)

seen = set()
for cert in survey.certificates:
    key = cert.module.profile.key
    if key in seen:
        continue
    seen.add(key)
    nonzero = [s for s, d in cert.dims.items() if d]
    print(f"diameter {key[2]}: F_s W nonzero at s = {nonzero}")

print("coverage of V_eta:", survey.coverage)
print("all checks:", all(survey.checks.values()))
