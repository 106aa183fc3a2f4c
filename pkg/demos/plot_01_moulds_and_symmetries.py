"""
Moulds and their symmetries
===========================

A mould is a family of numbers indexed by words. This demo builds a few
named moulds, multiplies and composes them, and checks the shuffle-type
symmetries that make them useful.
"""

# %%
# Named moulds over a concrete alphabet
# -------------------------------------
# Letters here are integers that weigh themselves. ``S`` has one pole per
# partial sum of the word, so the letters are chosen to keep those away
# from zero.

from moulcalc import catalog as C
from moulcalc import mould as Mo
from moulcalc import symmetry as S
from moulcalc import words as W
from moulcalc.mould import Alphabet

al = Alphabet((2, 3, 7))
Sm = C.make("S", al)
print("S(2,3) =", Sm((2, 3)))
print("Exp(1,2,3) =", C.make("Exp")((1, 2, 3)))

# %%
# Product and inverse
# -------------------
# The product concatenates words. A symetral mould is inverted by the
# signed retrograde, which we compare against the recursive inverse.
inv = Mo.mul_inverse(Sm)
signed_ret = Mo.Mould(lambda w: (-1) ** len(w) * Sm(W.retrograde(w)))
print("inverse agrees with signed retrograde:",
      Mo.first_difference(inv, signed_ret, W.words_up_to(al.letters, 4)) is None)

# %%
# Checking a symmetry
# -------------------
# Symmetries of rule-based moulds are checked at random sample letters.
# ``S`` is symetral but not alternal; the report carries a counterexample.
for kind in ("symetral", "alternal"):
    report = S.generic_check(kind, lambda a: C.make("S", a), 3, samples=2)
    print(kind, report.holds, report.counterexample)

# %%
# Composition
# -----------
# Composing with Exp turns a contracting-shuffle symmetry into a plain
# shuffle symmetry. Exp is composed through its part without the empty
# word.
exp_part = lambda a: Mo.reduced(C.make("Exp", a))
report = S.generic_check("alternal", lambda a: Mo.compose(C.make("J", a), exp_part(a)), 4, samples=2)
print("J o Exp alternal:", report.holds)
