"""Arborescent sequences, arborified comoulds and the arborification identity.

An :class:`ArbWord` is a sequence of letters with a forest order on its
indices: every index has at most one successor, the node just above it.
Roots are the greatest elements of their trees. Nodes below a root act
on that root's coefficients, so in a word ``w`` compatible with a forest
every node sits before its successor (the outer operators come first,
matching ``B_w = B_w1 o ... o B_wr``).

``B_a`` is built by the recursion

* a tree with root ``n0`` and subforest ``a1``:
  ``B_a = sum_i B_a1(B_n0(x_i)) d_i``;
* a forest of trees ``T_1, ..., T_d``:
  ``B_a = 1/(d_1! ... d_s!) sum_{i_1..i_d} prod_j B_Tj(x_ij) d_i1 ... d_id``,

where ``d_k`` counts identical trees (detected by canonical forms).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from . import words as W
from .errors import CapExceeded, MouldError, UnknownLetter
from .localobj import Operator, apply, contract, coordinate, monomial_exponents
from .poly import Poly

CAP = 6


@dataclass(frozen=True)
class ArbWord:
    """Letters plus ``successor[i]`` (index of the node above i, or None)."""

    letters: tuple
    successor: tuple

    def __post_init__(self):
        if len(self.letters) != len(self.successor):
            raise MouldError("letters and successor map differ in length")
        for i in range(len(self.letters)):
            seen, j = set(), i
            while j is not None:
                if j in seen:
                    raise MouldError("successor relation has a cycle")
                seen.add(j)
                j = self.successor[j]
                if j is not None and not 0 <= j < len(self.letters):
                    raise MouldError("successor index out of range")

    def __len__(self):
        return len(self.letters)

    def below(self, i, j):
        """True when i < j in the forest order."""
        k = self.successor[i]
        while k is not None:
            if k == j:
                return True
            k = self.successor[k]
        return False

    def roots(self):
        return [i for i, s in enumerate(self.successor) if s is None]

    def children(self, i):
        return [k for k, s in enumerate(self.successor) if s == i]

    def descendants(self, i):
        out, stack = [], self.children(i)
        while stack:
            k = stack.pop()
            out.append(k)
            stack.extend(self.children(k))
        return sorted(out)

    def restrict(self, indices):
        """Sub-forest on ``indices``; successors outside become None."""
        indices = sorted(indices)
        pos = {k: n for n, k in enumerate(indices)}
        return ArbWord(tuple(self.letters[k] for k in indices),
                       tuple(pos.get(self.successor[k]) for k in indices))

    def trees(self):
        """(root letter, subforest below the root) for each component."""
        return [(self.letters[r], self.restrict(self.descendants(r))) for r in self.roots()]

    def components(self):
        return [self.restrict([r] + self.descendants(r)) for r in self.roots()]

    def canonical(self):
        def node(i):
            kids = sorted(node(k) for k in self.children(i))
            return "%s[%s]" % (W.format_letter(self.letters[i]), ",".join(kids))

        return "+".join(sorted(node(r) for r in self.roots()))

    def symmetry(self):
        """Product of d! over groups of identical sibling subtrees (and roots)."""
        def node_key(i):
            return "%s[%s]" % (W.format_letter(self.letters[i]),
                               ",".join(sorted(node_key(k) for k in self.children(i))))

        total = 1
        for group in [self.roots()] + [self.children(i) for i in range(len(self))]:
            for mult in Counter(node_key(k) for k in group).values():
                total *= factorial(mult)
        return total

    def __str__(self):
        def node(i):
            kids = [node(k) for k in self.children(i)]
            label = W.format_letter(self.letters[i])
            if not kids:
                return label
            inner = " + ".join(kids)
            return "(%s)<%s" % (inner, label) if len(kids) > 1 else "%s<%s" % (inner, label)

        return " (+) ".join(node(r) for r in self.roots()) or "()"


def forests_of(r, cap=CAP):
    """All forest orders on r labeled nodes, as successor tuples.

    There are (r+1)^(r-1) of them.
    """
    if r > cap:
        raise CapExceeded("forest enumeration capped at %d nodes" % cap)
    out = []
    for succ in product(*[[None] + [j for j in range(r) if j != i] for i in range(r)]):
        if _acyclic(succ):
            out.append(succ)
    return out


def _acyclic(succ):
    for i in range(len(succ)):
        j, steps = succ[i], 0
        while j is not None:
            steps += 1
            if steps > len(succ):
                return False
            j = succ[j]
    return True


def proj(a, w):
    """Number of bijections sigma with matching letters and i < j => sigma(i) < sigma(j)."""
    w = tuple(w)
    if len(a) != len(w):
        return 0
    count = 0
    pairs = [(i, a.successor[i]) for i in range(len(a)) if a.successor[i] is not None]
    for sigma in permutations(range(len(w))):
        if all(w[sigma[i]] == a.letters[i] for i in range(len(a))) and all(
            sigma[i] < sigma[j] for i, j in pairs
        ):
            count += 1
    return count


def arb_classes(w):
    """Representatives of the forest classes occurring in the expansion of B_w.

    These are the forests on the positions of ``w`` in which every node
    precedes its successor, taken up to isomorphism of decorated forests.
    """
    w = tuple(w)
    r = len(w)
    if r > CAP:
        raise CapExceeded("forest enumeration capped at %d nodes" % CAP)
    seen = {}
    for succ in product(*[[None] + list(range(i + 1, r)) for i in range(r)]):
        a = ArbWord(w, succ)
        seen.setdefault(a.canonical(), a)
    return [seen[k] for k in sorted(seen)]


def arb_classes_up_to(letters, max_len):
    seen = {}
    for w in W.words_up_to(letters, max_len, 1):
        for a in arb_classes(w):
            seen.setdefault(a.canonical(), a)
    return [seen[k] for k in sorted(seen)]


def _tree_coefficients(root, below, parts, nu, cap):
    try:
        part = parts[root]
    except KeyError:
        raise UnknownLetter("no homogeneous part for letter %r" % (root,)) from None
    op = arb_comould(below, parts)
    return [op(apply(part, coordinate(nu, i, cap))) for i in range(nu)]


def arb_comould(a, parts):
    """The arborified operator B_a, acting on jets."""
    nu = next(iter(parts.values())).nu if parts else 1

    def fn(jet):
        if len(a) == 0:
            return jet
        trees = a.trees()
        coeffs = [_tree_coefficients(root, below, parts, nu, jet.cap) for root, below in trees]
        factor = Fraction(1)
        for mult in Counter(a.restrict([r] + a.descendants(r)).canonical() for r in a.roots()).values():
            factor /= factorial(mult)
        out = Poly(jet.nvars, None, jet.cap)
        for idx in product(range(nu), repeat=len(trees)):
            coef = Poly.constant(jet.nvars, factor, jet.cap)
            for c, i in zip(coeffs, idx):
                coef = coef * c[i]
                if not coef:
                    break
            if not coef:
                continue
            d = jet
            for i in idx:
                d = d.derivative(i)
            out = out + coef * d
        return out

    return Operator(fn, "B<%s>" % a)


def arborify_mould(M, a):
    """M^a = sum_w proj(a, w) M^w over the distinct orderings of a's letters."""
    total = Fraction(0)
    for w in sorted(set(permutations(a.letters)), key=W.format_word):
        k = proj(a, w)
        if k:
            total += k * M(w)
    return total


def arb_expansion(w, parts):
    """Pairs (a, proj(a, w)) with B_w = sum proj(a, w) B_a."""
    return [(a, proj(a, w)) for a in arb_classes(w)]


def check_arb_identity(w, parts, N):
    """Residual operator B_w - sum_a proj(a, w) B_a on jets truncated at N."""
    from .localobj import comould

    lhs = comould(tuple(w), parts)
    terms = [(arb_comould(a, parts), k) for a, k in arb_expansion(w, parts)]

    def fn(jet):
        jet = jet.truncated(N)
        out = lhs(jet)
        for op, k in terms:
            out = out - op(jet) * k
        return out

    return Operator(fn, "residual")


def nonzero_images(op, nu, N):
    """Monomials x^m (degree <= N) with op(x^m) != 0, mapped to the image."""
    out = {}
    for m in monomial_exponents(nu, N):
        image = op(Poly.monomial(m, 1, N))
        if image:
            out[m] = image
    return out


def arborified_contraction(M, obj, N, max_len):
    """sum_a M^a B_a over forest classes of length <= max_len."""
    classes = arb_classes_up_to(obj.letters(), max_len)
    terms = []
    for a in classes:
        c = arborify_mould(M, a)
        if c:
            terms.append((arb_comould(a, obj.parts), c))

    def fn(jet):
        jet = jet.truncated(N)
        out = jet * M(())
        for op, c in terms:
            out = out + op(jet) * c
        return out

    return Operator(fn, "arborified")


def contraction_invariance(M, obj, N, max_len):
    """Residual of sum_w M^w B_w - sum_a M^a B_a, words and forests of length <= max_len."""
    words = W.words_up_to(obj.letters(), max_len)
    lhs = contract(M, obj, N, words=words)
    rhs = arborified_contraction(M, obj, N, max_len)
    return Operator(lambda j: lhs(j) - rhs(j), "residual")


def leibniz_residual(a, parts, phi, psi):
    """B_a(phi psi) - sum over splittings a = a1 (+) a2 of B_a1(phi) B_a2(psi).

    Identical components are split as a multiset, so each splitting is
    counted once.
    """
    comps = a.components()
    groups = {}
    for c in comps:
        groups.setdefault(c.canonical(), []).append(c)
    keys = sorted(groups)
    lhs = arb_comould(a, parts)(phi * psi)
    rhs = Poly(phi.nvars, None, lhs.cap)
    for counts in product(*[range(len(groups[k]) + 1) for k in keys]):
        left, right = [], []
        for k, n in zip(keys, counts):
            left.extend(groups[k][:n])
            right.extend(groups[k][n:])
        rhs = rhs + arb_comould(_join(left), parts)(phi) * arb_comould(_join(right), parts)(psi)
    return lhs - rhs


def _join(forests):
    letters, succ = [], []
    for f in forests:
        off = len(letters)
        letters.extend(f.letters)
        succ.extend(None if s is None else s + off for s in f.successor)
    return ArbWord(tuple(letters), tuple(succ))
