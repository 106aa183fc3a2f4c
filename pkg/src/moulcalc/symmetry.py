"""Brute-force symmetry checkers and truncated coproduct oracles.

A symmetry is checked on explicit pairs of non-empty words ``(u, v)``:

==========  ===================  ===========================
kind        shuffle used         required value of the sum
==========  ===================  ===========================
alternal    shuffle              0
symetral    shuffle              M^u M^v   (and M^() = 1)
alternel    contracting shuffle  0
symetrel    contracting shuffle  M^u M^v   (and M^() = 1)
alternil    star shuffle         0
symetril    star shuffle         M^u M^v   (and M^() = 1)
==========  ===================  ===========================

In the star shuffle a contracted pair becomes a slot ``x*y`` evaluated by
``M^(..x*y..) = (M^(..x..) - M^(..y..)) / (x - y)``, expanding slots left
to right. For polynomial values over variable letters ``v_a``, the
division is exact polynomial division by ``v_a - v_b``.

Rule-based moulds over generic letters are checked by
:func:`generic_check`, which evaluates at random sample points.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import words as W
from .errors import MouldError, PoleAtWord, SampleCollision
from .mould import ONE, ZERO, Alphabet
from .poly import Poly
from .sampling import RETRIES, TRIALS, generic_alphabet, random_multiplier, random_scalar, rng_for

KINDS = ("alternal", "symetral", "alternel", "symetrel", "alternil", "symetril")


@dataclass
class SymmetryReport:
    kind: str
    max_len: int
    holds: bool
    pairs_checked: int = 0
    samples: int = 1
    counterexample: tuple = None
    residual: object = None
    sample_points: list = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def to_json(self):
        cx = None
        if self.counterexample is not None:
            cx = [W.format_word(w) for w in self.counterexample]
        res = self.residual
        if isinstance(res, Poly):
            res = res.to_json()
        elif res is not None:
            res = str(res)
        return {
            "counterexample": cx,
            "holds": self.holds,
            "kind": self.kind,
            "max_len": self.max_len,
            "pairs_checked": self.pairs_checked,
            "residual": res,
            "sample_points": self.sample_points,
            "samples": self.samples,
        }


def _divide(value, x, y):
    if isinstance(x, W.Var) and isinstance(y, W.Var):
        if x == y:
            raise SampleCollision("star slot %r*%r joins a variable to itself" % (x, y))
        if isinstance(value, Poly):
            return value.divide_difference(x.index, y.index)
        if value:
            raise MouldError("non-polynomial value over variable letters")
        return value
    d = Fraction(x) - Fraction(y)
    if not d:
        raise SampleCollision("star slot %r*%r with equal letters" % (x, y))
    return value / d


def star_value(M, word, order=None):
    """Evaluate M on a word that may contain :class:`~moulcalc.words.Star` slots.

    ``order`` lists slot positions in the order they are expanded; by
    default slots are expanded left to right.
    """
    word = tuple(word)
    slots = [i for i, x in enumerate(word) if isinstance(x, W.Star)]
    if not slots:
        return M(word)
    if order is None:
        i, rest = slots[0], None
    else:
        i, rest = order[0], order[1:]
    s = word[i]
    a = star_value(M, word[:i] + (s.left,) + word[i + 1:], rest)
    b = star_value(M, word[:i] + (s.right,) + word[i + 1:], rest)
    return _divide(a - b, s.left, s.right)


_SHUFFLE = {
    "alternal": W.shuffle,
    "symetral": W.shuffle,
    "alternel": W.contracting_shuffle,
    "symetrel": W.contracting_shuffle,
    "alternil": W.star_shuffle,
    "symetril": W.star_shuffle,
}


def residual(kind, M, u, v):
    """Shuffle-type sum minus its required value for one pair of words."""
    stars = kind in ("alternil", "symetril")
    total = ZERO
    for w, mult in _SHUFFLE[kind](u, v).items():
        value = star_value(M, w) if stars else M(w)
        if value:
            total = total + mult * value
    if kind.startswith("sym"):
        total = total - M(u) * M(v)
    return total


def _pairs_over(letters, max_len):
    for total in range(2, max_len + 1):
        for n in range(1, total):
            for u in product(letters, repeat=n):
                for v in product(letters, repeat=total - n):
                    yield u, v


def check(kind, M, max_len, letters=None, pairs=None):
    """Check a symmetry on all word pairs over ``letters`` (or the given pairs)."""
    if kind not in KINDS:
        raise MouldError("unknown symmetry %r" % kind)
    if pairs is None:
        if letters is None:
            letters = M.alphabet.letters
        pairs = _pairs_over(tuple(letters), max_len)
    count = 0
    if kind.startswith("sym") and M(()) != 1:
        return SymmetryReport(kind, max_len, False, 0, 1, ((), ()), M(()) - ONE)
    for u, v in pairs:
        count += 1
        r = residual(kind, M, u, v)
        if r:
            return SymmetryReport(kind, max_len, False, count, 1, (u, v), r)
    return SymmetryReport(kind, max_len, True, count)


def check_alternal(M, max_len, letters=None, pairs=None):
    return check("alternal", M, max_len, letters, pairs)


def check_symetral(M, max_len, letters=None, pairs=None):
    return check("symetral", M, max_len, letters, pairs)


def check_alternel(M, max_len, letters=None, pairs=None):
    return check("alternel", M, max_len, letters, pairs)


def check_symetrel(M, max_len, letters=None, pairs=None):
    return check("symetrel", M, max_len, letters, pairs)


def check_alternil(M, max_len, letters=None, pairs=None):
    return check("alternil", M, max_len, letters, pairs)


def check_symetril(M, max_len, letters=None, pairs=None):
    return check("symetril", M, max_len, letters, pairs)


def canonical_pairs(letters, max_len):
    """Pairs (letters[:n], letters[n:n+m]) with n, m >= 1 and n + m <= max_len."""
    for total in range(2, max_len + 1):
        for n in range(1, total):
            yield tuple(letters[:n]), tuple(letters[n:total])


def sample_alphabet(rng, size, letter_kind="basis", box=None):
    """Random alphabet for one trial of a generic identity.

    ``basis``: unit vectors with random spectrum and multipliers;
    ``scalar``: distinct random rational letters weighing themselves;
    ``var``: variable letters v_0.. with a random multiplier.
    """
    kw = {} if box is None else {"box": box}
    if letter_kind == "basis":
        return generic_alphabet(size, rng, **kw)
    if letter_kind == "scalar":
        letters = []
        while len(letters) < size:
            x = random_scalar(rng, **kw)
            if x not in letters:
                letters.append(x)
        return Alphabet(letters)
    if letter_kind == "var":
        return Alphabet([W.Var(i) for i in range(size)], multipliers=[random_multiplier(rng, **kw)])
    raise MouldError("unknown letter kind %r" % letter_kind)


def generic_check(kind, build, max_len, samples=TRIALS, seed=0, letter_kind=None, box=None):
    """Check a symmetry of a rule mould over generic letters.

    ``build(alphabet)`` returns the mould for one random alphabet. Each
    trial checks every canonical pair of distinct letters; a trial that
    hits a pole or a sample collision is redrawn, at most ``RETRIES``
    times in total.
    """
    if letter_kind is None:
        letter_kind = "scalar" if kind in ("alternil", "symetril") else "basis"
    rng = rng_for(seed)
    retries = 0
    done = 0
    points = []
    pairs_checked = 0
    while done < samples:
        alphabet = sample_alphabet(rng, max_len, letter_kind, box)
        M = build(alphabet)
        try:
            report = check(kind, M, max_len, pairs=canonical_pairs(alphabet.letters, max_len))
        except (PoleAtWord, SampleCollision):
            retries += 1
            if retries > RETRIES:
                raise
            continue
        points.append(alphabet.to_json())
        pairs_checked += report.pairs_checked
        done += 1
        if not report.holds:
            report.samples = done
            report.sample_points = points
            report.pairs_checked = pairs_checked
            return report
    return SymmetryReport(kind, max_len, True, pairs_checked, samples, sample_points=points)


# --- truncated coproducts -------------------------------------------------


def _tensor_mul(A, B):
    out = {}
    for (u1, v1), a in A.items():
        for (u2, v2), b in B.items():
            key = (u1 + u2, v1 + v2)
            out[key] = out.get(key, 0) + a * b
    return out


def _prune(T):
    return {k: v for k, v in T.items() if v}


def delta_of_word(word):
    """Delta(w) for Delta(x) = x (x) 1 + 1 (x) x, extended multiplicatively."""
    out = {((), ()): ONE}
    for x in word:
        out = _tensor_mul(out, {((x,), ()): ONE, ((), (x,)): ONE})
    return out


def delta_star_of_word(word):
    """Delta_*(w) for Delta_*(y_r) = sum_{i+j=r} y_i (x) y_j with y_0 = empty word."""
    out = {((), ()): ONE}
    for r in word:
        if not (isinstance(r, int) and r > 0):
            raise MouldError("Delta_* needs positive integer letters, got %r" % (r,))
        gen = {}
        for i in range(r + 1):
            u = (i,) if i else ()
            v = (r - i,) if r - i else ()
            gen[(u, v)] = ONE
        out = _tensor_mul(out, gen)
    return out


def distinct_letter_words(letters, max_len):
    """Words without repeated letters; Delta maps them to pairs of such words."""
    return [w for w in W.words_up_to(tuple(letters), max_len) if len(set(w)) == len(w)]


def integer_words(max_weight, max_len):
    """Words over positive integers with total weight <= max_weight and length <= max_len."""
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            room = max_weight - sum(w)
            for r in range(1, room + 1):
                nxt.append(w + (r,))
        out.extend(nxt)
        frontier = nxt
    return out


def _series_words(letters, max_len, max_weight, words=None):
    if words is not None:
        return [w for w in words if len(w) <= max_len]
    if max_weight is not None:
        return integer_words(max_weight, max_len)
    return W.words_up_to(tuple(letters), max_len)


def coproduct_delta(M, max_len, letters=None, words=None):
    """Delta applied to sum_w M^w w, truncated at total length max_len.

    ``words`` restricts the series to a set of words closed under taking
    sub-words (for instance the words without repeated letters).
    """
    letters = M.alphabet.letters if letters is None else letters
    out = {}
    for w in _series_words(letters, max_len, None, words):
        c = M(w)
        if c:
            for k, v in delta_of_word(w).items():
                out[k] = out.get(k, 0) + c * v
    return _prune(out)


def coproduct_delta_star(M, max_len, max_weight):
    """Delta_* applied to sum_w M^w w over positive integer letters.

    The series is taken over words of weight <= max_weight; the tensor is
    truncated at total length max_len.
    """
    out = {}
    for w in integer_words(max_weight, max_len):
        c = M(w)
        if c:
            for (u, v), x in delta_star_of_word(w).items():
                if len(u) + len(v) <= max_len:
                    out[(u, v)] = out.get((u, v), 0) + c * x
    return _prune(out)


def _delta(M, max_len, letters, max_weight, words=None):
    if max_weight is not None:
        return coproduct_delta_star(M, max_len, max_weight)
    return coproduct_delta(M, max_len, letters, words)


def primitive_residual(M, max_len, letters=None, max_weight=None, words=None):
    """Delta(P) - P (x) 1 - 1 (x) P, truncated; ``max_weight`` selects Delta_*."""
    letters = M.alphabet.letters if letters is None else letters
    out = dict(_delta(M, max_len, letters, max_weight, words))
    for w in _series_words(letters, max_len, max_weight, words):
        c = M(w)
        if c:
            out[(w, ())] = out.get((w, ()), 0) - c
            out[((), w)] = out.get(((), w), 0) - c
    return _prune(out)


def grouplike_residual(M, max_len, letters=None, max_weight=None, words=None):
    """Delta(P) - P (x) P, truncated; ``max_weight`` selects Delta_*."""
    letters = M.alphabet.letters if letters is None else letters
    out = dict(_delta(M, max_len, letters, max_weight, words))
    ws = _series_words(letters, max_len, max_weight, words)
    values = [(w, M(w)) for w in ws]
    for u, a in values:
        if not a:
            continue
        for v, b in values:
            if not b or len(u) + len(v) > max_len:
                continue
            if max_weight is not None and sum(u) + sum(v) > max_weight:
                continue
            out[(u, v)] = out.get((u, v), 0) - a * b
    return _prune(out)


def tensor_to_json(T):
    return [
        {"left": W.format_word(u), "right": W.format_word(v), "value": str(c)}
        for (u, v), c in sorted(T.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), repr(kv[0])))
    ]
