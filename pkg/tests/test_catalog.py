from fractions import Fraction

import pytest

from moulcalc import catalog as C
from moulcalc import mould as Mo
from moulcalc import symmetry as S
from moulcalc import words as W
from moulcalc.errors import PoleAtWord, UnknownMould
from moulcalc.mould import Alphabet

F = Fraction


def test_named_values():
    al = Alphabet((2, 3))
    assert C.make("Na", al)((2, 3)) == F(1, 10)
    assert C.make("S", al)((2, 3)) == F(1, 10)
    assert C.make("S", al)((2,)) == F(-1, 2)
    assert C.make("Exp")((1, 2, 3)) == F(1, 6)
    assert C.make("J")((1, 1, 1)) == F(1, 3)
    assert C.make("T", al)((5,)) == 0
    assert C.make("T", al)((2, 3)) == 1
    assert C.make("one")(()) == 1 and C.make("one")((1,)) == 0
    assert C.make("I")((1,)) == 1 and C.make("I")((1, 2)) == 0


def test_exponential_family_values():
    al = Alphabet((1, 2), multipliers=[F(3)])
    assert C.make("Ne_inv", al)((2,)) == F(1, 8)
    assert C.make("Ne_inv", al)((1, 2)) == F(1, 26 * 8)
    # Se^(w) = e^{||w||} / prod (e^{-partial sums} - 1)
    assert C.make("Se", al)((1,)) == 3 / (F(1, 3) - 1)


def test_sam_and_tram_values():
    al = Alphabet((0, 1, -1, 2))
    sam = C.make("Sam", al)
    assert sam((0,)) == 1 and sam((2,)) == 0
    tram = C.make("Tram", al)
    assert tram((0, 0)) == 0
    assert tram((1, -1)) == 1
    assert tram((1, -1, 0)) == F(-1, 2)


def test_poles_and_unknown_names():
    al = Alphabet((1, -1))
    with pytest.raises(PoleAtWord):
        C.make("Na", al)((1, -1))
    with pytest.raises(PoleAtWord):
        C.make("T", al)((1, 1))
    with pytest.raises(PoleAtWord):
        C.make("Ne_inv", Alphabet((1, -1), multipliers=[F(2)]))((1, -1))
    with pytest.raises(UnknownMould):
        C.make("Bogus")


def test_na_is_signed_s():
    al = Alphabet((2, 3, 7))
    Na, Sm = C.make("Na", al), C.make("S", al)
    for w in W.words_up_to(al.letters, 4):
        assert Na(w) == (-1) ** len(w) * Sm(w)


@pytest.mark.parametrize("name", ["T", "J", "S", "Se", "Na", "Ne", "Ne_inv", "Sam", "Tram", "Exp", "I"])
def test_declared_symmetry(name):
    kind = C.DECLARED_SYMMETRY[name]
    report = S.generic_check(kind, lambda a: C.make(name, a), 4, samples=3)
    assert report.holds, report.to_json()


def test_sig_is_symetril():
    report = S.generic_check(
        "symetril", lambda a: C.make("Sig", a, nvars=len(a.letters), degree=5), 3, samples=2,
        letter_kind="var",
    )
    assert report.holds, report.to_json()


def test_generating_series_of_symetral_is_symetral():
    report = S.generic_check(
        "symetral", lambda a: C.generating_series(C.make("S", Alphabet()), len(a.letters), 4), 3,
        samples=1, letter_kind="var",
    )
    assert report.holds


def test_ne_matches_its_closed_form():
    al = Alphabet((1, 2, 5), multipliers=[F(5, 2)])
    built, closed = C.make("Ne", al), C.ne_closed_form(al)
    assert Mo.first_difference(built, closed, W.words_up_to(al.letters, 4)) is None


def test_sam_equation_matches_closed_form():
    al = Alphabet((0, 3, -3, 5, F(7, 2)))
    eq, closed = C.make("Sam", al), C.make("Sam", al, method="closed")
    assert Mo.first_difference(eq, closed, W.words_up_to(al.letters, 4)) is None


def test_tram_is_fixed_by_sam_and_vanishes_off_resonance():
    al = Alphabet((0, 1, -1, 2))
    tram, sam = C.make("Tram", al), C.make("Sam", al)
    words = W.words_up_to(al.letters, 4)
    assert Mo.first_difference(tram, Mo.compose(tram, sam), words) is None
    assert all(tram(w) == 0 for w in words if sum(w) != 0)
