"""
Linearizing a vector field
==========================

A non-resonant field is conjugated to its linear part by a change of
variables built from the mould ``S`` and the comould of the field. We
compare the result with a plain order-by-order solution.
"""

# %%
# A prepared field
# ----------------
# The linear part is diagonal with eigenvalues 2 and 5. The nonlinear
# part is split into homogeneous pieces indexed by degree vectors.
from fractions import Fraction

from moulcalc import localobj as L
from moulcalc.poly import Poly

x, y = Poly.variable(2, 0), Poly.variable(2, 1)
X = L.decompose(2, (2, 5), [x * 2 + x * x + y * y * Fraction(1, 3), y * 5 + x * y * 2 - y * y])
print("letters:", sorted(X.parts))

# %%
# Resonances
# ----------
# A word is resonant when its total weight vanishes. This spectrum has
# none at short length, so linearization can proceed.
print("resonant words up to length 3:", L.resonance_scan(X, 3))

# %%
# Normalizer and oracle
# ---------------------
nf = L.linearize(X, 5)
oracle = L.oracle_normalize(X, 5)
print("first component of the normalizer:", nf.normalizer[0])
print("conjugated field:", nf.conjugated)
print("agrees with the oracle:", nf.normalizer == oracle.normalizer)

# %%
# A resonant field keeps its resonant terms
# -----------------------------------------
# With eigenvalues 1 and -1 the monomial x^2 y in the first direction is
# resonant. The prenormal form built from ``Tram`` keeps exactly such
# terms, and matches a sequence of Lie-transform steps.
R = L.decompose(2, (1, -1), [x + x * x * y + y * y, -y + x * x])
tram = L.prenormal_tram(R, 4)
print("prenormal form:", tram)
print("non-resonant terms left:", L.nonresonant_monomials(R, tram))
print("agrees with Lie steps:", tram == L.lie_prenormalize(R, 4))

# %%
# Diffeomorphisms
# ---------------
# A diffeomorphism f(x) = 3x + x^2 acts on jets by substitution. Its
# homogeneous operator pieces reproduce that action, and the normalizer
# built from ``Ne`` agrees with the direct solution.
f = [Poly(1, {(1,): 3, (2,): 1})]
D = L.diffeo_parts(f, 6)
print("substitution reproduced:", L.substitution_check(D, 6) is None)
print("normalizer:", L.diffeo_linearize(D, 4).normalizer[0])
