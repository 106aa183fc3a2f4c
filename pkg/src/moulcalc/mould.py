"""The mould algebra.

A :class:`Mould` is a scalar function on words. It is either a lazy rule
(memoised per word) or a table in which absent words read as zero. The
length bound ``bound`` says up to which length the mould is known;
``None`` means every length.

Products follow the left-first convention
``(M x N)^w = sum_{uv = w} M^u N^v`` and composition is

    (M o N)^w = sum over w = w^1 ... w^s (blocks non-empty) of
                M^(||w^1||, ..., ||w^s||) N^(w^1) ... N^(w^s).

Letter weights (the frequencies omega) and their exponentials live on an
:class:`Alphabet`. Exponentials are never transcendental: ``e^{n.lambda}``
is represented by the Laurent monomial ``q^n`` evaluated at rational
multipliers ``q``.
"""

import json
import random
from fractions import Fraction
from math import factorial

from . import words as W
from .errors import (
    AlphabetMismatch,
    BoundExceeded,
    CompositionUndefined,
    MouldError,
    NonNilpotent,
    NotAdditive,
    NotCompInvertible,
    NotInvertible,
    NotMorphism,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class Alphabet:
    """Letters together with the data that gives them a frequency.

    ``spectrum`` (lambda) makes a degree vector ``n`` weigh ``n . lambda``;
    ``multipliers`` (q) gives ``e^{weight}`` as ``prod q_i^{n_i}``. Number
    letters weigh themselves and, with a single multiplier ``q``, have
    ``e^{s} = q^s`` for integer ``s``.
    """

    def __init__(self, letters=(), spectrum=None, multipliers=None):
        self.letters = tuple(letters)
        self.spectrum = None if spectrum is None else tuple(Fraction(x) for x in spectrum)
        self.multipliers = None if multipliers is None else tuple(Fraction(x) for x in multipliers)

    def _key(self):
        return (self.letters, self.spectrum, self.multipliers)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Alphabet(letters=%r, spectrum=%r, multipliers=%r)" % self._key()

    def is_generic(self):
        return not self.letters and self.spectrum is None and self.multipliers is None

    def merge(self, other):
        if other is None or other.is_generic() or other == self:
            return self
        if self.is_generic():
            return other
        if self.spectrum == other.spectrum and self.multipliers == other.multipliers:
            letters = tuple(dict.fromkeys(self.letters + other.letters))
            return Alphabet(letters, self.spectrum, self.multipliers)
        raise AlphabetMismatch("%r and %r" % (self, other))

    def weight(self, letter):
        if isinstance(letter, tuple):
            if self.spectrum is None:
                raise MouldError("degree-vector letter %r needs a spectrum" % (letter,))
            if len(letter) != len(self.spectrum):
                raise MouldError("letter %r does not match spectrum dimension" % (letter,))
            return sum((n * l for n, l in zip(letter, self.spectrum)), ZERO)
        if isinstance(letter, W.Symbol):
            return Fraction(letter.weight)
        if W.is_number(letter):
            return Fraction(letter)
        raise MouldError("letter %r has no weight" % (letter,))

    def exp_weight(self, letter):
        if self.multipliers is None:
            raise MouldError("exponential weights need multipliers")
        if isinstance(letter, tuple):
            if len(letter) != len(self.multipliers):
                raise MouldError("letter %r does not match multiplier dimension" % (letter,))
            out = ONE
            for n, q in zip(letter, self.multipliers):
                out *= q ** n
            return out
        if W.is_number(letter) and Fraction(letter).denominator == 1 and len(self.multipliers) == 1:
            return self.multipliers[0] ** int(letter)
        raise MouldError("letter %r has no exponential weight" % (letter,))

    def word_weight(self, word):
        return sum((self.weight(x) for x in word), ZERO)

    def word_exp_weight(self, word):
        out = ONE
        for x in word:
            out *= self.exp_weight(x)
        return out

    def to_json(self):
        return {
            "letters": [W.format_letter(x) for x in self.letters],
            "multipliers": None if self.multipliers is None else [str(q) for q in self.multipliers],
            "spectrum": None if self.spectrum is None else [str(l) for l in self.spectrum],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            [W.parse_letter(t) for t in data.get("letters", [])],
            data.get("spectrum"),
            data.get("multipliers"),
        )


GENERIC = Alphabet()


def _min_bound(*bounds):
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


class Mould:
    """A scalar-valued function on words, lazily evaluated and memoised."""

    def __init__(self, rule=None, *, table=None, bound=None, alphabet=None, name=None,
                 poly_degree=None):
        if rule is None and table is None:
            table = {}
        self.rule = rule
        self.table = None if table is None else {tuple(k): v for k, v in table.items()}
        self.bound = bound
        self.alphabet = alphabet if alphabet is not None else GENERIC
        self.name = name
        # for polynomial-valued moulds: values are exact through this total degree
        self.poly_degree = poly_degree
        self._cache = {}

    def __call__(self, word):
        word = tuple(word)
        if self.bound is not None and len(word) > self.bound:
            raise BoundExceeded("%s known up to length %d, asked %r" % (self.name or "mould", self.bound, word))
        if self.table is not None and (self.rule is None or word in self.table):
            return self.table.get(word, ZERO)
        try:
            return self._cache[word]
        except KeyError:
            pass
        value = self.rule(word)
        self._cache[word] = value
        return value

    def __repr__(self):
        kind = "table" if self.rule is None else "rule"
        return "Mould(%s, %s, bound=%r)" % (self.name or "?", kind, self.bound)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, Mould):
            return mul(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def tabulate(self, letters, max_len):
        """Freeze the mould into a table over all words of length <= max_len."""
        table = {}
        for w in W.words_up_to(letters, max_len):
            v = self(w)
            if v:
                table[w] = v
        alphabet = Alphabet(letters, self.alphabet.spectrum, self.alphabet.multipliers)
        return Mould(table=table, bound=max_len, alphabet=alphabet, name=self.name)


def _binary(M, N):
    return M.alphabet.merge(N.alphabet), _min_bound(M.bound, N.bound)


def constant(c, name=None):
    """The mould c on the empty word and zero elsewhere."""
    c = Fraction(c)
    return Mould(lambda w: c if not w else ZERO, name=name or "%s*1" % c)


def one():
    return Mould(lambda w: ONE if not w else ZERO, name="1")


def ident():
    return Mould(lambda w: ONE if len(w) == 1 else ZERO, name="I")


def zero():
    return Mould(lambda w: ZERO, name="0")


def add(M, N):
    alphabet, bound = _binary(M, N)
    return Mould(lambda w: M(w) + N(w), alphabet=alphabet, bound=bound,
                 poly_degree=_min_bound(M.poly_degree, N.poly_degree))


def scale(c, M):
    return Mould(lambda w: c * M(w), alphabet=M.alphabet, bound=M.bound, poly_degree=M.poly_degree)


def mul(M, N):
    """Concatenation product, left factor on the prefix."""
    alphabet, bound = _binary(M, N)

    def rule(w):
        total = ZERO
        for i in range(len(w) + 1):
            a = M(w[:i])
            if a:
                total = total + a * N(w[i:])
        return total

    return Mould(rule, alphabet=alphabet, bound=bound,
                 poly_degree=_min_bound(M.poly_degree, N.poly_degree))


def commutator(M, N):
    return add(mul(M, N), scale(-1, mul(N, M)))


def power(M, n):
    out = one()
    for _ in range(n):
        out = mul(out, M)
    return out


def mul_inverse(M):
    """Two-sided inverse for the product, by recursion on length."""
    m0 = M(())
    if not m0:
        raise NotInvertible("M^() = 0")
    inv0 = 1 / m0

    def rule(w):
        if not w:
            return inv0
        total = ZERO
        for i in range(1, len(w) + 1):
            a = M(w[:i])
            if a:
                total = total + a * inv(w[i:])
        return -inv0 * total

    inv = Mould(rule, alphabet=M.alphabet, bound=M.bound, name="inv(%s)" % (M.name or "?"))
    return inv


def _require_vanishing(N, error, what):
    if N(()):
        raise error("%s requires N^() = 0" % what)


def reduced(M):
    """M with its value on the empty word set to zero."""
    return Mould(lambda w: M(w) if w else ZERO, alphabet=M.alphabet, bound=M.bound,
                 name="%s+" % (M.name or "?"), poly_degree=M.poly_degree)


def compose(M, N):
    """Composition M o N; N must vanish on the empty word.

    Only the values of N on non-empty blocks enter, so a mould such as
    Exp (with Exp^() = 1) is composed through :func:`reduced`.
    """
    _require_vanishing(N, CompositionUndefined, "composition")
    alphabet, bound = _binary(M, N)

    def rule(w):
        if not w:
            return M(())
        total = ZERO
        for blocks in W.compositions(w):
            prod_n = ONE
            for b in blocks:
                prod_n = prod_n * N(b)
                if not prod_n:
                    break
            if prod_n:
                total = total + M(tuple(W.norm(b) for b in blocks)) * prod_n
        return total

    return Mould(rule, alphabet=alphabet, bound=bound,
                 name="(%s o %s)" % (M.name or "?", N.name or "?"))


def comp_inverse(M):
    """Inverse for composition, by recursion on length."""
    if M(()):
        raise NotCompInvertible("M^() must vanish")

    def rule(w):
        if not w:
            return ZERO
        total = ONE if len(w) == 1 else ZERO
        for blocks in W.compositions(w):
            if len(blocks) < 2:
                continue
            prod_n = ONE
            for b in blocks:
                prod_n = prod_n * inv(b)
                if not prod_n:
                    break
            if prod_n:
                total = total - M(tuple(W.norm(b) for b in blocks)) * prod_n
        lead = M((W.norm(w),))
        if not lead:
            raise NotCompInvertible("M vanishes on the letter %r" % (W.norm(w),))
        return total / lead

    inv = Mould(rule, alphabet=M.alphabet, bound=M.bound, name="cinv(%s)" % (M.name or "?"))
    return inv


def _series(M, coeff, at_empty, name):
    # sum_k coeff(k) M^{x k}, valid when M^() = 0
    def rule(w):
        if not w:
            return at_empty
        total = ZERO
        for blocks in W.compositions(w):
            c = coeff(len(blocks))
            if not c:
                continue
            prod_m = c
            for b in blocks:
                prod_m = prod_m * M(b)
                if not prod_m:
                    break
            total = total + prod_m
        return total

    return Mould(rule, alphabet=M.alphabet, bound=M.bound, name=name,
                 poly_degree=M.poly_degree)


def exp(M):
    if M(()):
        raise NonNilpotent("exp needs M^() = 0")
    return _series(M, lambda k: Fraction(1, factorial(k)), ONE, "exp(%s)" % (M.name or "?"))


def log(M):
    """Logarithm of a mould with M^() = 1, i.e. log(1 + (M - 1))."""
    if M(()) != 1:
        raise NonNilpotent("log needs M^() = 1")
    N = Mould(lambda w: M(w) if w else ZERO, alphabet=M.alphabet, bound=M.bound)
    return _series(N, lambda k: Fraction((-1) ** (k + 1), k), ZERO, "log(%s)" % (M.name or "?"))


class WeightMap:
    """A word function lambda meant to be additive: lambda_uv = lambda_u + lambda_v."""

    def __init__(self, fn, name="lambda"):
        self.fn = fn
        self.name = name

    def __call__(self, word):
        return self.fn(tuple(word))

    @classmethod
    def from_letters(cls, letter_weight, name="lambda"):
        return cls(lambda w: sum((letter_weight(x) for x in w), ZERO), name)

    def check(self, letters, max_len=3):
        if self(()) != 0:
            raise NotAdditive("%s is nonzero on the empty word" % self.name)
        ws = W.words_up_to(letters, max_len)
        for u in ws:
            for v in ws:
                if len(u) + len(v) <= max_len and self(u + v) != self(u) + self(v):
                    raise NotAdditive("%s fails on %r, %r" % (self.name, u, v))


LANG = WeightMap(lambda w: Fraction(len(w)), "lang")


def nabla_map(alphabet):
    return WeightMap.from_letters(alphabet.weight, "nabla")


def derive(lam, M, check_len=3):
    """The derivation D_lambda: (D M)^w = lambda_w M^w."""
    if M.alphabet.letters:
        lam.check(M.alphabet.letters, min(check_len, M.bound or check_len))
    elif lam(()) != 0:
        raise NotAdditive("%s is nonzero on the empty word" % lam.name)
    return Mould(lambda w: lam(w) * M(w), alphabet=M.alphabet, bound=M.bound,
                 poly_degree=M.poly_degree)


def lang(M):
    return derive(LANG, M)


def nabla(M):
    """(nabla M)^w = ||w|| M^w with the alphabet weights."""
    return derive(nabla_map(M.alphabet), M)


def dar(Dar, M):
    """The derivation (dar M)^w = sum_{w = a b c, b != ()} M^(a ||b|| c) Dar^b."""
    if Dar(()):
        raise MouldError("dar needs Dar^() = 0")
    alphabet, bound = _binary(M, Dar)

    def rule(w):
        total = ZERO
        r = len(w)
        for i in range(r):
            for j in range(i + 1, r + 1):
                d = Dar(w[i:j])
                if d:
                    total = total + M(w[:i] + (W.norm(w[i:j]),) + w[j:]) * d
        return total

    return Mould(rule, alphabet=alphabet, bound=bound)


class Morphism:
    """A word function f with f(uv) = f(u) f(v) and f(()) = 1."""

    def __init__(self, fn, name="f"):
        self.fn = fn
        self.name = name

    def __call__(self, word):
        return self.fn(tuple(word))

    @classmethod
    def from_letters(cls, letter_factor, name="f"):
        def fn(w):
            out = ONE
            for x in w:
                out = out * letter_factor(x)
            return out

        return cls(fn, name)

    def check(self, letters, max_len=3):
        if self(()) != 1:
            raise NotMorphism("%s is not 1 on the empty word" % self.name)
        ws = W.words_up_to(letters, max_len)
        for u in ws:
            for v in ws:
                if len(u) + len(v) <= max_len and self(u + v) != self(u) * self(v):
                    raise NotMorphism("%s fails on %r, %r" % (self.name, u, v))


def automorphism(f, M, check_len=3):
    """(A_f M)^w = f(w) M^w for a multiplicative f."""
    if M.alphabet.letters:
        f.check(M.alphabet.letters, min(check_len, M.bound or check_len))
    elif f(()) != 1:
        raise NotMorphism("%s is not 1 on the empty word" % f.name)
    return Mould(lambda w: f(w) * M(w), alphabet=M.alphabet, bound=M.bound,
                 poly_degree=M.poly_degree)


def exp_nabla(M, sign=1):
    """e^{sign nabla}: multiply M^w by e^{sign ||w||}, a q-monomial."""
    alphabet = M.alphabet
    f = Morphism.from_letters(lambda x: alphabet.exp_weight(x) ** sign, "e^nabla")
    return Mould(lambda w: f(w) * M(w), alphabet=alphabet, bound=M.bound)


def retrograde(M):
    return Mould(lambda w: M(W.retrograde(w)), alphabet=M.alphabet, bound=M.bound,
                 name="ret(%s)" % (M.name or "?"))


def first_difference(M, N, words):
    """First word on which M and N disagree, or None."""
    for w in words:
        if M(w) != N(w):
            return w
    return None


def equal_on(M, N, words):
    return first_difference(M, N, words) is None


def random_mould(seed, *, empty=None, bound=None, alphabet=None, box=20, name=None):
    """A mould whose value on each word is a reproducible random rational.

    Every word gets its own generator seeded from ``(seed, word)``, so the
    mould is defined on arbitrary letters and behaves like an infinite
    random table. ``empty`` fixes the value on the empty word.
    """

    def rule(w):
        if not w and empty is not None:
            return Fraction(empty)
        rng = random.Random("%s|%s" % (seed, W.format_word(w)))
        return Fraction(rng.randint(-box, box), rng.randint(1, box))

    return Mould(rule, bound=bound, alphabet=alphabet, name=name or "rand%s" % seed)


def to_json(M, letters=None, max_len=None):
    """Serialise a mould as {"alphabet", "L", "entries"} with "p/q" values."""
    if letters is None:
        letters = M.alphabet.letters
    if max_len is None:
        max_len = M.bound
    if max_len is None:
        raise MouldError("a length bound is needed to export a mould")
    entries = []
    for w in W.words_up_to(letters, max_len):
        v = M(w)
        if v:
            entries.append({"value": str(v), "word": W.format_word(w)})
    alphabet = Alphabet(letters, M.alphabet.spectrum, M.alphabet.multipliers)
    return {"L": max_len, "alphabet": alphabet.to_json(), "entries": entries}


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    alphabet = Alphabet.from_json(data.get("alphabet", {}))
    table = {W.parse_word(e["word"]): Fraction(e["value"]) for e in data["entries"]}
    return Mould(table=table, bound=data["L"], alphabet=alphabet)


__all__ = [
    "Alphabet", "GENERIC", "Mould", "WeightMap", "Morphism", "LANG",
    "constant", "one", "ident", "zero", "add", "scale", "mul", "commutator", "power",
    "mul_inverse", "reduced", "compose", "comp_inverse", "exp", "log", "derive", "lang", "nabla",
    "nabla_map", "dar", "automorphism", "exp_nabla", "retrograde", "first_difference",
    "equal_on", "random_mould", "to_json", "from_json",
]
