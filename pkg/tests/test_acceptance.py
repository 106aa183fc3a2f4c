"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run with pytest (the lines are collected in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

import functools
import itertools
import os
import random
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import _acceptance_log as log  # noqa: E402
import _builders as B  # noqa: E402
from moulcalc import arbor as A  # noqa: E402
from moulcalc import catalog as C  # noqa: E402
from moulcalc import localobj as L  # noqa: E402
from moulcalc import mould as Mo  # noqa: E402
from moulcalc import symmetry as S  # noqa: E402
from moulcalc import words as W  # noqa: E402
from moulcalc.mould import Alphabet  # noqa: E402
from moulcalc.poly import Poly  # noqa: E402

F = Fraction


def criterion(number, title, budget=None):
    """Time the check, enforce its budget and record one PASS/FAIL line."""

    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            passed = False
            note = ""
            try:
                fn()
                elapsed = time.perf_counter() - start
                if budget is not None and elapsed > budget:
                    note = "over the %gs budget" % budget
                    raise AssertionError("criterion %d took %.2fs, budget %gs" % (number, elapsed, budget))
                passed = True
            except AssertionError as exc:
                note = note or str(exc).splitlines()[0][:100]
                raise
            finally:
                text = log.line(number, title, passed, time.perf_counter() - start, note)
                log.RESULTS[number] = text
                print(text)

        run.criterion = number
        return run

    return wrap


# --- 1 -----------------------------------------------------------------------


@criterion(1, "symmetries of T, J, S, Se, Na, Ne at length <= 4, 8 samples", budget=10)
def test_symmetry_suite():
    for name in ("T", "J", "S", "Se", "Na", "Ne"):
        kind = C.DECLARED_SYMMETRY[name]
        report = S.generic_check(kind, lambda al, name=name: C.make(name, al), 4, samples=8, seed=1)
        assert report.holds, "%s is not %s: %r" % (name, kind, report.to_json())
        assert report.samples == 8


# --- 2 -----------------------------------------------------------------------


def _weighted_pairs(max_weight, max_len):
    ws = [w for w in S.integer_words(max_weight, max_len) if w]
    return [(u, v) for u in ws for v in ws if len(u) + len(v) <= max_len and sum(u) + sum(v) <= max_weight]


@criterion(2, "coproduct equivalences in both directions, tensor length <= 3", budget=5)
def test_coproduct_oracle():
    letters = (W.Symbol("a", 1), W.Symbol("b", 2))
    a, b = letters
    pairs = _weighted_pairs(4, 3)
    seen = set()
    for seed in range(3):
        cases = [
            ("alternal", B.random_alternal(seed, letters), lambda M: S.primitive_residual(M, 3, letters)),
            ("alternal", B.perturbed(B.random_alternal(seed, letters), (a, b)),
             lambda M: S.primitive_residual(M, 3, letters)),
            ("symetral", B.random_symetral(seed, letters), lambda M: S.grouplike_residual(M, 3, letters)),
            ("symetral", B.perturbed(B.random_symetral(seed, letters), (b, a, a)),
             lambda M: S.grouplike_residual(M, 3, letters)),
        ]
        for kind, M, residual in cases:
            holds = S.check(kind, M, 3, letters).holds
            assert holds == (residual(M) == {}), (kind, seed)
            seen.add((kind, holds))
        for kind, build, coproduct in (
            ("alternel", B.random_alternel, lambda M: S.primitive_residual(M, 3, max_weight=4)),
            ("symetrel", B.random_symetrel, lambda M: S.grouplike_residual(M, 3, max_weight=4)),
        ):
            for M in (build(seed, 4), B.perturbed(build(seed, 4), (1, 2))):
                holds = S.check(kind, M, 3, pairs=pairs).holds
                assert holds == (coproduct(M) == {}), (kind, seed)
                seen.add((kind, holds))
    # both directions were exercised: every symmetry was seen holding and failing
    assert len(seen) == 8, seen


# --- 3 -----------------------------------------------------------------------


@criterion(3, "algebra laws on words of length <= 4", budget=10)
def test_algebra_laws():
    words = W.words_up_to((1, 2), 4)
    eq = lambda M, N: Mo.first_difference(M, N, words) is None
    for seed in range(3):
        M, N, P = (Mo.random_mould(10 * seed + k) for k in range(3))
        assert eq(Mo.mul(Mo.mul(M, N), P), Mo.mul(M, Mo.mul(N, P)))
        U = Mo.random_mould(10 * seed + 3, empty=F(seed + 2, 3))
        Ui = Mo.mul_inverse(U)
        assert eq(Mo.mul(U, Ui), Mo.one()) and eq(Mo.mul(Ui, U), Mo.one())
        Aa = Mo.random_mould(10 * seed + 4, empty=0)
        lhs = Mo.compose(Mo.add(M, N), Aa)
        assert eq(lhs, Mo.add(Mo.compose(M, Aa), Mo.compose(N, Aa)))
        assert eq(Mo.compose(Mo.mul(M, N), Aa), Mo.mul(Mo.compose(M, Aa), Mo.compose(N, Aa)))
        assert eq(Mo.compose(Mo.compose(M, Aa), N if N(()) == 0 else Mo.reduced(N)),
                  Mo.compose(M, Mo.compose(Aa, Mo.reduced(N))))
        assert eq(Mo.compose(Mo.ident(), Aa), Aa) and eq(Mo.compose(Aa, Mo.ident()), Aa)
        Z = Mo.random_mould(10 * seed + 5, empty=0)
        assert eq(Mo.log(Mo.exp(Z)), Z)
        G = Mo.random_mould(10 * seed + 6, empty=1)
        assert eq(Mo.exp(Mo.log(G)), G)


# --- 4 -----------------------------------------------------------------------


@criterion(4, "symetral inverse equals the signed retrograde for S and Na, length <= 5")
def test_symetral_inverse_formula():
    al = Alphabet((2, 3, 7))
    words = W.words_up_to(al.letters, 5)
    for name in ("S", "Na"):
        M = C.make(name, al)
        formula = Mo.Mould(lambda w, M=M: (-1) ** len(w) * M(W.retrograde(w)))
        assert Mo.first_difference(Mo.mul_inverse(M), formula, words) is None, name


# --- 5 -----------------------------------------------------------------------


def _generic_spectrum_alphabet():
    return Alphabet(((1, 0), (0, 1)), spectrum=(F(7, 3), F(-11, 5)))


def ne_inv_equation_difference():
    al = Alphabet((1, 2), multipliers=[F(3)])
    Ni = C.make("Ne_inv", al)
    rhs = Mo.mul(Mo.add(Mo.one(), Mo.ident()), Ni)
    return Mo.first_difference(Mo.exp_nabla(Ni), rhs, W.words_up_to(al.letters, 4))


def na_equation_lhs():
    Na = C.make("Na", _generic_spectrum_alphabet())
    return Mo.mul(Mo.nabla(Mo.mul_inverse(Na)), Na)


@pytest.mark.xfail(strict=True, reason="as printed, the Na equation holds with -I in place of I")
@criterion(5, "Na nabla-equation (length <= 5) and Ne_inv e^nabla-equation (length <= 4)")
def test_mould_equations():
    assert ne_inv_equation_difference() is None
    words = W.words_up_to(_generic_spectrum_alphabet().letters, 5)
    diff = Mo.first_difference(na_equation_lhs(), Mo.ident(), words)
    assert diff is None, "nabla(Na^-1) x Na differs from I at %r" % (diff,)


def test_ne_inv_equation_holds():
    assert ne_inv_equation_difference() is None


def test_na_equation_holds_with_minus_i():
    words = W.words_up_to(_generic_spectrum_alphabet().letters, 5)
    assert Mo.first_difference(na_equation_lhs(), Mo.scale(-1, Mo.ident()), words) is None


def test_s_satisfies_the_plus_i_equation():
    S_ = C.make("S", _generic_spectrum_alphabet())
    lhs = Mo.mul(Mo.nabla(Mo.mul_inverse(S_)), S_)
    words = W.words_up_to(_generic_spectrum_alphabet().letters, 5)
    assert Mo.first_difference(lhs, Mo.ident(), words) is None


# --- 6 -----------------------------------------------------------------------


@criterion(6, "Se o Exp symetral and J o Exp alternal at length <= 4")
def test_duality():
    exp_part = lambda al: Mo.reduced(C.make("Exp", al))
    report = S.generic_check("symetral", lambda al: Mo.compose(C.make("Se", al), exp_part(al)), 4, samples=2)
    assert report.holds, report.to_json()
    report = S.generic_check("alternal", lambda al: Mo.compose(C.make("J", al), exp_part(al)), 4, samples=2)
    assert report.holds, report.to_json()


# --- 7 -----------------------------------------------------------------------


def _nonresonant_spectrum(rng, N):
    while True:
        lam = tuple(F(rng.randint(-15, 15) or 1, rng.randint(1, 6)) for _ in range(2))
        if lam[0] == lam[1]:
            continue
        if all(m[0] * lam[0] + m[1] * lam[1] != lam[i]
               for i in range(2) for m in itertools.product(range(N + 1), repeat=2) if 2 <= sum(m) <= N):
            return lam


@criterion(7, "mould linearization equals the oracle on 5 random fields up to degree 5", budget=60)
def test_linearization_oracle():
    rng = random.Random(2024)
    N = 5
    for _ in range(5):
        X = L.random_field(2, _nonresonant_spectrum(rng, N), rng, degrees=(2, 3))
        nf, orc = L.linearize(X, N), L.oracle_normalize(X, N)
        assert nf.normalizer == orc.normalizer, X.spectrum
        assert nf.conjugated == orc.conjugated == [Poly.variable(2, i, N) * X.spectrum[i] for i in range(2)]


# --- 8 -----------------------------------------------------------------------


@criterion(8, "Sam closed form, Tram fixed point, resonant-only prenormal form")
def test_prenormal_form():
    for letters in [(0, 3, -3, 5, F(7, 2)), (0, 1, -1, 2), (F(1, 2), F(-1, 2), 0, -1)]:
        al = Alphabet(letters)
        words = W.words_up_to(al.letters, 4)
        sam = C.make("Sam", al)
        assert Mo.first_difference(sam, C.make("Sam", al, method="closed"), words) is None, letters
        tram = C.make("Tram", al)
        assert Mo.first_difference(tram, Mo.compose(tram, sam), words) is None, letters
    X = L.random_field(2, (1, -1), random.Random(5))
    tram = L.prenormal_tram(X, 4)
    assert L.nonresonant_monomials(X, tram) == []
    assert any(sum(m) >= 2 for c in tram for m in c.terms)
    assert tram == L.lie_prenormalize(X, 4)


# --- 9 -----------------------------------------------------------------------


@criterion(9, "diffeo B_k reproduce phi o f to degree 6; linearization matches the oracle to degree 4")
def test_diffeo_pipeline():
    f = [Poly(1, {(1,): 3, (2,): 1})]
    D = L.diffeo_parts(f, 6)
    assert L.substitution_check(D, 6) is None
    op = D.operator()
    for k in range(1, 7):
        phi = Poly(1, {(k,): 1}, 6)
        assert op(phi) == phi.substitute([f[0].truncated(6)], 6), k
    at_one = L.diffeo_parts([Poly(1, {(1,): 1, (2,): 1})], 6)
    assert at_one.parts[(1,)].coeffs == {(1,): Poly(1, {(2,): 1})}
    for q in (F(3), F(5, 2), F(-2)):
        g = [Poly(1, {(1,): q, (2,): 1, (3,): F(-1, 3)})]
        nf = L.diffeo_linearize(L.diffeo_parts(g, 4), 4)
        assert nf.normalizer == L.diffeo_oracle(g, 4), q
        assert nf.conjugated == [Poly(1, {(1,): q}, 4)]


# --- 10 ----------------------------------------------------------------------


@criterion(10, "arborification identity for |w| <= 3 and contraction invariance with Na at N=4")
def test_arborification():
    N = 4
    X = L.random_field(2, (F(7, 3), F(-11, 5)), random.Random(11), degrees=(2,))
    for w in W.words_up_to(X.letters(), 3, 1):
        assert A.nonzero_images(A.check_arb_identity(w, X.parts, N), 2, N) == {}, w
    Na = C.make("Na", X.alphabet())
    assert A.nonzero_images(A.contraction_invariance(Na, X, N, 3), 2, N) == {}


CRITERIA = [test_symmetry_suite, test_coproduct_oracle, test_algebra_laws, test_symetral_inverse_formula,
            test_mould_equations, test_duality, test_linearization_oracle, test_prenormal_form,
            test_diffeo_pipeline, test_arborification]


if __name__ == "__main__":
    failed = 0
    for check in CRITERIA:
        try:
            check()
        except AssertionError:
            failed += 1
    print("%d of %d criteria passed" % (len(CRITERIA) - failed, len(CRITERIA)))
