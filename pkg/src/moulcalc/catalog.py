"""Named moulds: closed forms and equation-built constructions.

Every constructor takes an :class:`~moulcalc.mould.Alphabet` that supplies
letter weights ``omega`` (and, for the exponential families, the
multipliers standing for ``e^omega``). Closed forms raise
:class:`~moulcalc.errors.PoleAtWord` where their denominators vanish.

Conventions worth knowing:

* ``S`` carries the sign ``(-1)^r`` and ``Na`` does not, so
  ``Na^w = (-1)^|w| S^w``.
* ``Ne`` is built as the multiplicative inverse of ``Ne_inv``;
  :func:`ne_closed_form` is the matching closed form, kept for
  cross-checking.
* ``Sam`` is built from its mould equation (source of truth);
  :func:`sam_closed_form` is the case-by-case formula.
* ``Tram`` on a word of length r is the r-fold composite of ``Sam``.
"""

from fractions import Fraction
from math import factorial

from . import mould as Mo
from . import words as W
from .errors import PoleAtWord, UnknownMould
from .mould import ONE, ZERO, Alphabet, Mould
from .poly import Poly

NAMES = ("one", "I", "Exp", "T", "J", "S", "Se", "Sig", "Na", "Ne_inv", "Ne", "Sam", "Tram")

DECLARED_SYMMETRY = {
    "T": "alternal",
    "J": "alternel",
    "S": "symetral",
    "Se": "symetrel",
    "Na": "symetral",
    "Ne": "symetrel",
    "Ne_inv": "symetrel",
    "Sig": "symetril",
    "Sam": "alternal",
    "Tram": "alternal",
    "Exp": "symetral",
    "I": "alternal",
}


def _weights(alphabet, word):
    return [alphabet.weight(x) for x in word]


def _prefix_sums(values):
    out, total = [], ZERO
    for v in values:
        total += v
        out.append(total)
    return out


def exp_mould(alphabet=None):
    return Mould(lambda w: Fraction(1, factorial(len(w))), alphabet=alphabet, name="Exp")


def t_mould(alphabet):
    def rule(w):
        if len(w) < 2:
            return ZERO
        om = _weights(alphabet, w)
        out = ONE
        for a, b in zip(om, om[1:]):
            if a == b:
                raise PoleAtWord(w, "equal adjacent weights")
            out /= b - a
        return out

    return Mould(rule, alphabet=alphabet, name="T")


def j_mould(alphabet=None):
    return Mould(lambda w: Fraction((-1) ** (len(w) + 1), len(w)) if w else ZERO,
                 alphabet=alphabet, name="J")


def _inverse_partial_products(alphabet, w):
    out = ONE
    for s in _prefix_sums(_weights(alphabet, w)):
        if not s:
            raise PoleAtWord(w, "vanishing partial sum")
        out /= s
    return out


def s_mould(alphabet):
    return Mould(lambda w: (-1) ** len(w) * _inverse_partial_products(alphabet, w),
                 alphabet=alphabet, name="S")


def na_mould(alphabet):
    return Mould(lambda w: _inverse_partial_products(alphabet, w), alphabet=alphabet, name="Na")


def _exp_prefixes(alphabet, w):
    out, total = [], ONE
    for x in w:
        total *= alphabet.exp_weight(x)
        out.append(total)
    return out


def se_mould(alphabet):
    """Se^w = e^{||w||} / prod_i (e^{-(w_1+...+w_i)} - 1)."""

    def rule(w):
        if not w:
            return ONE
        prefixes = _exp_prefixes(alphabet, w)
        out = prefixes[-1]
        for e in prefixes:
            if e == 1:
                raise PoleAtWord(w, "e^(partial sum) = 1")
            out /= 1 / e - 1
        return out

    return Mould(rule, alphabet=alphabet, name="Se")


def ne_inv_mould(alphabet):
    """Ne_inv^w = 1 / prod_i (e^{w_i+...+w_r} - 1), products over suffixes."""

    def rule(w):
        out = ONE
        suffix = ONE
        for x in reversed(w):
            suffix *= alphabet.exp_weight(x)
            if suffix == 1:
                raise PoleAtWord(w, "resonant suffix")
            out /= suffix - 1
        return out

    return Mould(rule, alphabet=alphabet, name="Ne_inv")


def ne_closed_form(alphabet):
    """Closed form of the inverse of Ne_inv: e^{-||w||} / prod_i (e^{-(w_1+...+w_i)} - 1)."""

    def rule(w):
        if not w:
            return ONE
        prefixes = _exp_prefixes(alphabet, w)
        out = 1 / prefixes[-1]
        for e in prefixes:
            if e == 1:
                raise PoleAtWord(w, "resonant prefix")
            out /= 1 / e - 1
        return out

    return Mould(rule, alphabet=alphabet, name="Ne_closed")


def ne_mould(alphabet):
    inv = Mo.mul_inverse(ne_inv_mould(alphabet))
    inv.name = "Ne"
    return inv


def generating_series(M, nvars, degree=6, name=None):
    """Generating mould on variable letters v_k.

    ``G^(v_a1, ..., v_ar) = sum_{s_i >= 1} M^(s_1, ..., s_r) v_a1^(s_1 - 1) ... v_ar^(s_r - 1)``,
    keeping monomials of total degree below ``degree``. Values are
    :class:`~moulcalc.poly.Poly` in ``nvars`` variables.
    """
    cap = degree - 1

    def rule(w):
        r = len(w)
        out = {}
        for extra in _bounded_vectors(r, cap):
            s = tuple(e + 1 for e in extra)
            c = M(s)
            if not c:
                continue
            exps = [0] * nvars
            for var, e in zip(w, extra):
                exps[var.index] += e
            key = tuple(exps)
            out[key] = out.get(key, ZERO) + c
        return Poly(nvars, out, cap)

    return Mould(rule, alphabet=Alphabet(tuple(W.Var(i) for i in range(nvars))),
                 name=name or "Gen(%s)" % (M.name or "?"), poly_degree=cap)


def _bounded_vectors(r, total):
    # non-negative integer vectors of length r with sum <= total
    if r == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _bounded_vectors(r - 1, total - first):
            yield (first,) + rest


def sig_mould(q, nvars, degree=6):
    """Generating series of Se over integer letters s with e^s = q^s."""
    se = se_mould(Alphabet(multipliers=(q,)))
    return generating_series(se, nvars, degree, name="Sig")


def _sam_step_mould(alphabet):
    # single-letter mould 1/omega off resonance, used by the Sam equation
    def rule(w):
        if len(w) != 1:
            return ZERO
        om = alphabet.weight(w[0])
        return 1 / om if om else ZERO

    return Mould(rule, alphabet=alphabet, name="K")


def sam_mould(alphabet):
    """Sam = exp K x nabla exp(-K) + exp K x I x exp(-K), K^(w) = 1/w off zero."""
    K = _sam_step_mould(alphabet)
    eK = Mo.exp(K)
    emK = Mo.exp(Mo.scale(-1, K))
    sam = Mo.add(Mo.mul(eK, Mo.nabla(emK)), Mo.mul(Mo.mul(eK, Mo.ident()), emK))
    sam.name = "Sam"
    return sam


def sam_closed_form(alphabet):
    def rule(w):
        r = len(w)
        if r == 0:
            return ZERO
        om = _weights(alphabet, w)
        zeros = [i for i, x in enumerate(om) if x == 0]
        if r == 1:
            return ONE if zeros else ZERO
        if len(zeros) > 1:
            return ZERO
        if len(zeros) == 1:
            i = zeros[0] + 1
            den = Fraction(factorial(i - 1) * factorial(r - i))
            for j, x in enumerate(om):
                if j != zeros[0]:
                    den *= x
            return Fraction((-1) ** (r - i)) / den
        total = ZERO
        for k in range(1, r + 1):
            tail = sum(om[k:], ZERO)
            num = om[k - 1] * (r - k) - tail
            total += (-1) ** (r - k) * num / (factorial(k - 1) * factorial(r - k + 1))
        prod = ONE
        for x in om:
            prod *= x
        return total / prod

    return Mould(rule, alphabet=alphabet, name="Sam_closed")


def composite_powers(M, n):
    """[M, M o M, ..., M o ... o M] (n entries)."""
    out = [M]
    while len(out) < n:
        out.append(Mo.compose(out[-1], M))
    return out


def tram_mould(alphabet, sam=None):
    """Tram^w = (Sam o ... o Sam)^w with l(w) factors."""
    sam = sam or sam_mould(alphabet)
    powers = [sam]

    def rule(w):
        if not w:
            return ZERO
        while len(powers) < len(w):
            powers.append(Mo.compose(powers[-1], sam))
        return powers[len(w) - 1](w)

    return Mould(rule, alphabet=alphabet, name="Tram")


def make(name, alphabet=None, bound=None, **options):
    """Build the named mould over ``alphabet``.

    ``Sig`` takes ``q`` (multiplier), ``nvars`` and ``degree`` options;
    ``Sam`` takes ``method="equation"`` (default) or ``"closed"``.
    """
    alphabet = alphabet if alphabet is not None else Alphabet()
    if name == "one":
        M = Mo.one()
    elif name == "I":
        M = Mo.ident()
    elif name == "Exp":
        M = exp_mould(alphabet)
    elif name == "T":
        M = t_mould(alphabet)
    elif name == "J":
        M = j_mould(alphabet)
    elif name == "S":
        M = s_mould(alphabet)
    elif name == "Se":
        M = se_mould(alphabet)
    elif name == "Sig":
        q = options.get("q")
        if q is None:
            q = alphabet.multipliers[0]
        M = sig_mould(Fraction(q), options.get("nvars", 3), options.get("degree", 6))
    elif name == "Na":
        M = na_mould(alphabet)
    elif name == "Ne_inv":
        M = ne_inv_mould(alphabet)
    elif name == "Ne":
        M = ne_mould(alphabet)
    elif name == "Sam":
        method = options.get("method", "equation")
        M = sam_mould(alphabet) if method == "equation" else sam_closed_form(alphabet)
    elif name == "Tram":
        M = tram_mould(alphabet)
    else:
        raise UnknownMould("unknown mould %r; known: %s" % (name, ", ".join(NAMES)))
    if name != "Sig":
        M.alphabet = alphabet if M.alphabet.is_generic() else M.alphabet
    M.bound = bound
    return M
