"""
Arborification
==============

A composite operator B_w splits into pieces indexed by forests whose
nodes carry the letters of w. This demo expands a short word, checks the
identity on jets and shows that contracting with ``Na`` gives the same
operator either way.
"""

# %%
# Forests over a word
# -------------------
# ``proj`` counts how many ways the word arises as a linear extension of
# the forest order. Children sit at earlier positions.
import random
from fractions import Fraction

from moulcalc import arbor as A
from moulcalc import catalog as C
from moulcalc import localobj as L

n1, n2, n3 = (1, 0), (0, 1), (2, -1)
for forest, k in sorted(A.arb_expansion((n1, n2, n3), {}), key=lambda p: str(p[0])):
    print(k, forest)

# %%
# The identity on jets
# --------------------
# With random homogeneous derivations attached to the letters, B_w minus
# its forest expansion is the zero operator on jets of order 4.
rng = random.Random(0)
parts = {n: L.random_derivation(n, rng) for n in (n1, n2, n3)}
residual = A.check_arb_identity((n1, n2, n3), parts, 4)
print("residual images:", A.nonzero_images(residual, 2, 4))

# %%
# Contraction invariance
# ----------------------
# Summing Na over words or its arborified values over forests gives the
# same operator, checked up to length 3.
X = L.random_field(2, (Fraction(7, 3), Fraction(-11, 5)), random.Random(2), degrees=(2,), density=0.5)
Na = C.make("Na", X.alphabet())
print("invariance residual:", A.nonzero_images(A.contraction_invariance(Na, X, 4, 3), 2, 4))
