"""Letters, words and the shuffle combinatorics.

A word is a plain tuple of letters. Three kinds of letters are used:

* integer tuples ``(n_1, ..., n_nu)``, degree vectors added componentwise;
* numbers (``int`` or ``Fraction``), frequencies added as numbers;
* :class:`Symbol`, an opaque name with a weight and no addition rule.

Two auxiliary letter types serve the generating-series machinery:
:class:`Var` is a formal variable ``v_k`` and :class:`Star` is the
contracted slot ``x*y`` produced by the il-type shuffle.

Shuffles are returned as ``collections.Counter`` objects mapping each
resulting word to its multiplicity, in a fixed enumeration order.
"""

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import EmptyWord, NoSemigroup


@dataclass(frozen=True)
class Symbol:
    """Abstract letter: a name carrying a scalar weight."""

    name: str
    weight: Fraction = Fraction(0)

    def __repr__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    """Formal variable ``v_index`` of a generating series."""

    index: int

    def __repr__(self):
        return "v%d" % self.index


@dataclass(frozen=True)
class Star:
    """Contracted slot ``left*right`` of the il-type shuffle."""

    left: object
    right: object

    def __repr__(self):
        return "%r*%r" % (self.left, self.right)


def is_number(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def add_letters(a, b):
    """Semigroup sum of two letters."""
    if isinstance(a, tuple) and isinstance(b, tuple):
        if len(a) != len(b):
            raise NoSemigroup("degree vectors of different lengths: %r, %r" % (a, b))
        return tuple(x + y for x, y in zip(a, b))
    if is_number(a) and is_number(b):
        return a + b
    raise NoSemigroup("letters %r and %r cannot be added" % (a, b))


def norm(word):
    """Sum of all letters of a non-empty word."""
    if not word:
        raise EmptyWord("the norm of the empty word is undefined")
    total = word[0]
    for letter in word[1:]:
        total = add_letters(total, letter)
    return total


def retrograde(word):
    return tuple(reversed(word))


def words_up_to(letters, max_len, min_len=0):
    """All words over ``letters`` with length between the two bounds."""
    out = []
    for r in range(min_len, max_len + 1):
        out.extend(product(letters, repeat=r))
    return out


def compositions(word):
    """Yield every factorization of ``word`` into non-empty consecutive blocks."""
    r = len(word)
    if r == 0:
        yield ()
        return
    for mask in range(1 << (r - 1)):
        blocks = []
        start = 0
        for i in range(1, r):
            if mask >> (i - 1) & 1:
                blocks.append(word[start:i])
                start = i
        blocks.append(word[start:])
        yield tuple(blocks)


@lru_cache(maxsize=None)
def _patterns(n, m, contract):
    # 0: next letter of the first word, 1: of the second, 2: both, contracted
    if n == 0:
        return ((1,) * m,)
    if m == 0:
        return ((0,) * n,)
    out = [(0,) + p for p in _patterns(n - 1, m, contract)]
    out += [(1,) + p for p in _patterns(n, m - 1, contract)]
    if contract:
        out += [(2,) + p for p in _patterns(n - 1, m - 1, contract)]
    return tuple(out)


def _merge(w1, w2, contract, join):
    out = Counter()
    for pattern in _patterns(len(w1), len(w2), contract):
        i = j = 0
        word = []
        for code in pattern:
            if code == 0:
                word.append(w1[i])
                i += 1
            elif code == 1:
                word.append(w2[j])
                j += 1
            else:
                word.append(join(w1[i], w2[j]))
                i += 1
                j += 1
        out[tuple(word)] += 1
    return out


def shuffle(w1, w2):
    """Multiset of interleavings of ``w1`` and ``w2``.

    >>> shuffle(("a", "b"), ("c",))
    Counter({('a', 'b', 'c'): 1, ('a', 'c', 'b'): 1, ('c', 'a', 'b'): 1})
    """
    return _merge(tuple(w1), tuple(w2), False, None)


def contracting_shuffle(w1, w2):
    """Shuffles plus all variants with adjacent cross pairs replaced by their sum."""
    return _merge(tuple(w1), tuple(w2), True, add_letters)


def star_shuffle(w1, w2):
    """Contracting shuffle where a contracted pair becomes a :class:`Star` slot."""
    return _merge(tuple(w1), tuple(w2), True, Star)


def unshuffle(word):
    """All pairs ``(u, v)`` obtained by sending each letter left or right.

    One pair per 0/1 vector of length ``len(word)``; repeated pairs are
    kept, so the result counts how often ``word`` occurs in ``sh(u, v)``.
    """
    word = tuple(word)
    out = []
    for signs in product((0, 1), repeat=len(word)):
        u = tuple(x for x, s in zip(word, signs) if s == 0)
        v = tuple(x for x, s in zip(word, signs) if s == 1)
        out.append((u, v))
    return out


_NUMBER = re.compile(r"^[+-]?\d+(/\d+)?$")
_DASHES = str.maketrans({"‑": "-", "−": "-", "‐": "-", "–": "-"})


def parse_letter(token):
    token = token.strip().translate(_DASHES)
    if token.startswith("["):
        if not token.endswith("]"):
            raise ValueError("unbalanced bracket in letter %r" % token)
        inner = token[1:-1].strip()
        return tuple(int(t) for t in inner.split(",")) if inner else ()
    if _NUMBER.match(token):
        value = Fraction(token)
        return int(value) if value.denominator == 1 else value
    m = re.match(r"^v(\d+)$", token)
    if m:
        return Var(int(m.group(1)))
    if not re.match(r"^[A-Za-z_]\w*$", token):
        raise ValueError("cannot parse letter %r" % token)
    return Symbol(token)


def parse_word(text):
    """Parse ``"[1,0],[-1,2]"`` or ``"1,2,3"`` into a word."""
    text = text.strip()
    if not text or text in ("()", "{}", "empty"):
        return ()
    tokens, depth, current = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            tokens.append("".join(current))
            current = []
        else:
            current.append(ch)
    tokens.append("".join(current))
    return tuple(parse_letter(t) for t in tokens)


def format_letter(letter):
    if isinstance(letter, tuple):
        return "[" + ",".join(str(x) for x in letter) + "]"
    return str(letter) if is_number(letter) else repr(letter)


def format_word(word):
    return ",".join(format_letter(x) for x in word)
