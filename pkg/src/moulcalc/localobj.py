"""Jets, homogeneous operators, prepared fields and diffeomorphisms.

A jet is a :class:`~moulcalc.poly.Poly` whose ``cap`` is the truncation
degree N. Operators are linear maps on jets (:class:`Operator`); two
operators are compared by applying both to every monomial of degree at
most N.

Comould ordering. Words act left to right, ``B_(n1, ..., nr) =
B_n1 o B_n2 o ... o B_nr``, so the last letter acts first. With the
left-first mould product this makes contraction a homomorphism:
``contract(M x N) = contract(M) o contract(N)``. Under this pairing

* ``Theta = contract(Na)`` satisfies ``Theta X = X_lin Theta`` and the
  normalizer is ``h_i = Theta(x_i)``;
* for a diffeomorphism ``F = F_lin (1 + sum B_n)`` the substitution by the
  normalizer ``h`` (``f o h = h o f_lin``) is
  ``contract(e^nabla ret(Ne_inv))``, with inverse
  ``contract(e^nabla ret(Ne))``.

The ``*_oracle`` functions solve the same problems order by order with
plain polynomial arithmetic and share nothing with the mould path.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import catalog as C
from . import mould as Mo
from . import words as W
from .errors import PoleAtWord, InadmissibleDegree, MouldError, NotLocal, NotPrepared, Resonant, UnknownLetter
from .mould import ZERO, Alphabet
from .poly import Poly


# --- jets -----------------------------------------------------------------


def coordinate(nu, i, N):
    return Poly.variable(nu, i, N)


def monomial_exponents(nu, N, min_degree=0):
    out = []
    for d in range(min_degree, N + 1):
        out.extend(_exponents_of_degree(nu, d))
    return out


def _exponents_of_degree(nu, d):
    if nu == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exponents_of_degree(nu - 1, d - first):
            out.append((first,) + rest)
    return out


def is_admissible(n):
    """Entries >= 0 except at most one -1, and total degree >= 1."""
    negatives = [x for x in n if x < 0]
    return sum(n) >= 1 and all(x == -1 for x in negatives) and len(negatives) <= 1


# --- operators --------------------------------------------------------------


class Operator:
    """A linear map on jets, combined with ``@`` (composition), ``+``, ``-``."""

    def __init__(self, fn, name=None):
        self.fn = fn
        self.name = name

    def __call__(self, jet):
        return self.fn(jet)

    def __matmul__(self, other):
        return Operator(lambda j: self(other(j)))

    def __add__(self, other):
        return Operator(lambda j: self(j) + other(j))

    def __sub__(self, other):
        return Operator(lambda j: self(j) - other(j))

    def __rmul__(self, c):
        return Operator(lambda j: self(j) * c)

    @staticmethod
    def identity():
        return Operator(lambda j: j, "id")


def operator_difference(A, B, nu, N):
    """First monomial exponent on which A and B differ (up to degree N), or None."""
    for m in monomial_exponents(nu, N):
        x = Poly.monomial(m, 1, N)
        if A(x) != B(x):
            return m
    return None


def same_operator(A, B, nu, N):
    return operator_difference(A, B, nu, N) is None


class HomOp:
    """Homogeneous operator ``sum_delta b_delta(x) d^delta``.

    ``coeffs`` maps a derivative multi-index delta to a polynomial
    coefficient. Every monomial ``x^m d^delta`` must have the same degree
    vector ``m - delta``.
    """

    def __init__(self, nu, coeffs):
        self.nu = nu
        self.coeffs = {tuple(d): c for d, c in coeffs.items() if c}
        self.degree = self._degree()

    @classmethod
    def derivation(cls, components):
        nu = len(components)
        coeffs = {}
        for i, a in enumerate(components):
            delta = tuple(1 if j == i else 0 for j in range(nu))
            coeffs[delta] = a
        return cls(nu, coeffs)

    def _degree(self):
        degree = None
        for delta, b in self.coeffs.items():
            for m in b.terms:
                n = tuple(x - y for x, y in zip(m, delta))
                if degree is None:
                    degree = n
                elif n != degree:
                    raise MouldError("operator is not homogeneous: %r and %r" % (degree, n))
        return degree

    def is_derivation(self):
        return all(sum(d) == 1 for d in self.coeffs)

    def component(self, i):
        """Coefficient of d/dx_i (derivations)."""
        delta = tuple(1 if j == i else 0 for j in range(self.nu))
        return self.coeffs.get(delta, Poly(self.nu))

    def __call__(self, jet):
        return apply(self, jet)

    def __repr__(self):
        parts = []
        for delta, b in sorted(self.coeffs.items()):
            d = "".join("d%d^%d" % (i, k) if k > 1 else "d%d" % i for i, k in enumerate(delta) if k)
            parts.append("(%r)%s" % (b, d))
        return " + ".join(parts) or "0"


def apply(op, jet):
    """Apply a homogeneous operator to a jet; the result keeps the jet's cap."""
    out = Poly(jet.nvars, None, jet.cap)
    for delta, b in op.coeffs.items():
        d = jet
        for i, k in enumerate(delta):
            for _ in range(k):
                d = d.derivative(i)
            if not d:
                break
        if d:
            out = out + b * d
    return out


# --- prepared objects -------------------------------------------------------


@dataclass
class PreparedField:
    """X = sum lambda_i x_i d_i + sum_n D_n with D_n homogeneous derivations."""

    nu: int
    spectrum: tuple
    parts: dict = field(default_factory=dict)

    def letters(self):
        return tuple(sorted(self.parts))

    def alphabet(self):
        return Alphabet(self.letters(), spectrum=self.spectrum)

    def weight(self, n):
        return sum((a * b for a, b in zip(n, self.spectrum)), ZERO)

    def x_lin(self):
        lam = self.spectrum

        def fn(jet):
            out = Poly(jet.nvars, None, jet.cap)
            for i in range(self.nu):
                out = out + coordinate(self.nu, i, None) * jet.derivative(i) * lam[i]
            return out

        return Operator(fn, "X_lin")

    def operator(self):
        lin = self.x_lin()
        parts = list(self.parts.values())
        return Operator(lambda j: sum((apply(p, j) for p in parts), lin(j)), "X")

    def components(self, N):
        X = self.operator()
        return [X(coordinate(self.nu, i, N)) for i in range(self.nu)]


@dataclass
class PreparedDiffeo:
    """Substitution operator F = F_lin (1 + sum_n B_n), F_lin phi = phi(q_1 x_1, ...)."""

    nu: int
    multipliers: tuple
    parts: dict = field(default_factory=dict)
    source: list = None

    def letters(self):
        return tuple(sorted(self.parts))

    def alphabet(self):
        return Alphabet(self.letters(), multipliers=self.multipliers)

    def f_lin(self):
        q = self.multipliers

        def fn(jet):
            terms = {}
            for m, c in jet.terms.items():
                s = c
                for qi, e in zip(q, m):
                    s *= qi ** e
                terms[m] = s
            return Poly(jet.nvars, terms, jet.cap)

        return Operator(fn, "F_lin")

    def operator(self):
        lin = self.f_lin()
        parts = list(self.parts.values())
        return Operator(lambda j: lin(sum((apply(p, j) for p in parts), j)), "F")


def decompose(nu, spectrum, components):
    """Split a polynomial vector field into its prepared form."""
    spectrum = tuple(Fraction(x) for x in spectrum)
    if len(spectrum) != nu or len(components) != nu:
        raise NotPrepared("need %d components and eigenvalues" % nu)
    parts = {}
    for i, comp in enumerate(components):
        for m, c in comp.terms.items():
            deg = sum(m)
            if deg == 1:
                expected = spectrum[i] if m[i] == 1 else ZERO
                if c != expected:
                    raise NotPrepared("linear part is not diag(lambda) at component %d, monomial %r" % (i, m))
                continue
            n = tuple(m[j] - (1 if j == i else 0) for j in range(nu))
            if not is_admissible(n):
                raise InadmissibleDegree("term %s x^%r d%d has degree %r" % (c, m, i, n))
            parts.setdefault(n, [Poly(nu) for _ in range(nu)])
            parts[n][i] = parts[n][i] + Poly.monomial(m, c)
        lin = comp.coefficient(tuple(1 if j == i else 0 for j in range(nu)))
        if lin != spectrum[i]:
            raise NotPrepared("linear part of component %d is %s, expected %s" % (i, lin, spectrum[i]))
    return PreparedField(nu, spectrum, {n: HomOp.derivation(a) for n, a in parts.items()})


def field_from_json(data):
    nu = int(data["nu"])
    spectrum = [Fraction(x) for x in data["lambda"]]
    comps = [Poly.variable(nu, i) * spectrum[i] for i in range(nu)]
    for t in data.get("terms", []):
        comps[int(t["direction"])] = comps[int(t["direction"])] + Poly.monomial(t["exponents"], Fraction(t["coef"]))
    return decompose(nu, spectrum, comps)


def diffeo_from_json(data, N):
    nu = int(data["nu"])
    q = [Fraction(x) for x in data["multipliers"]]
    comps = [Poly.variable(nu, i) * q[i] for i in range(nu)]
    for t in data.get("terms", []):
        comps[int(t["direction"])] = comps[int(t["direction"])] + Poly.monomial(t["exponents"], Fraction(t["coef"]))
    return diffeo_parts(comps, N)


def random_field(nu, spectrum, rng, degrees=(2, 3), box=5, density=1.0):
    """Random polynomial field with the given diagonal linear part."""
    comps = []
    for i in range(nu):
        terms = {tuple(1 if j == i else 0 for j in range(nu)): Fraction(spectrum[i])}
        for d in degrees:
            for m in _exponents_of_degree(nu, d):
                if rng.random() <= density:
                    terms[m] = Fraction(rng.randint(-box, box), rng.randint(1, box))
        comps.append(Poly(nu, terms))
    return decompose(nu, spectrum, comps)


def random_derivation(n, rng, box=5):
    """Random homogeneous derivation of degree n: terms c x^(n + e_i) d_i."""
    nu = len(n)
    comps = []
    for i in range(nu):
        m = tuple(n[j] + (1 if j == i else 0) for j in range(nu))
        if min(m) < 0:
            comps.append(Poly(nu))
        else:
            c = Fraction(rng.randint(-box, box) or 1, rng.randint(1, box))
            comps.append(Poly.monomial(m, c))
    return HomOp.derivation(comps)


# --- comoulds and contraction ----------------------------------------------


def _part(parts, letter):
    try:
        return parts[letter]
    except KeyError:
        raise UnknownLetter("no homogeneous part for letter %r" % (letter,)) from None


def comould(word, parts, reverse=False):
    """B_w = B_w1 o ... o B_wr (last letter acts first).

    ``reverse=True`` gives the opposite product B_wr o ... o B_w1.
    """
    ops = [_part(parts, x) for x in word]
    if reverse:
        ops = ops[::-1]

    def fn(jet):
        for op in reversed(ops):
            jet = apply(op, jet)
        return jet

    return Operator(fn, "B" + W.format_word(word))


def words_by_degree(letters, max_degree):
    """Words over degree-vector letters with total degree sum <= max_degree."""
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            used = sum(sum(x) for x in w)
            for a in letters:
                if used + sum(a) <= max_degree:
                    nxt.append(w + (a,))
        out.extend(nxt)
        frontier = nxt
    return out


def contract(M, obj, N, words=None):
    """The operator sum_w M^w B_w on jets truncated at degree N.

    The sum runs over words of total degree <= N (or over ``words``).
    """
    parts = obj.parts
    letters = obj.letters()

    def fn(jet):
        jet = jet.truncated(N)
        out = jet * M(())
        if words is not None:
            for w in words:
                if w:
                    c = M(w)
                    if c:
                        out = out + comould(w, parts)(jet) * c
            return out
        # build B_w jet by prepending letters to already-computed suffixes
        layer = [((), jet, 0)]
        while layer:
            nxt = []
            for suffix, value, used in layer:
                for a in letters:
                    deg = used + sum(a)
                    if deg > N:
                        continue
                    image = apply(parts[a], value)
                    if not image:
                        continue
                    w = (a,) + suffix
                    try:
                        c = M(w)
                    except PoleAtWord as exc:
                        raise Resonant(w, "mould pole on a contributing word") from exc
                    if c:
                        out = out + image * c
                    nxt.append((w, image, deg))
            layer = nxt
        return out

    return Operator(fn, "contract(%s)" % (M.name or "?"))


def resonance_scan(X, max_len):
    """Words of length <= max_len whose total frequency vanishes."""
    alphabet = X.alphabet() if isinstance(X, PreparedField) else None
    out = []
    for w in W.words_up_to(X.letters(), max_len, 1):
        if isinstance(X, PreparedField):
            if alphabet.word_weight(w) == 0:
                out.append(w)
        else:
            if X.alphabet().word_exp_weight(w) == 1:
                out.append(w)
    return out


@dataclass
class NormalForm:
    normalizer: list
    conjugated: list
    N: int
    mould: object = None

    def to_json(self):
        return {
            "conjugated": [p.to_json() for p in self.conjugated],
            "degree": self.N,
            "normalizer": [p.to_json() for p in self.normalizer],
        }


def invert_jet(g, N):
    """Compositional inverse of a jet map g = id + O(|x|^2), to degree N."""
    nu = len(g)
    rest = [g[i] - coordinate(nu, i, None) for i in range(nu)]
    h = [coordinate(nu, i, N) for i in range(nu)]
    for _ in range(N):
        h = [coordinate(nu, i, N) - rest[i].substitute(h, N) for i in range(nu)]
    return h


def substitution(h, N):
    """The operator phi -> phi o h on jets truncated at N."""
    return Operator(lambda jet: jet.truncated(N).substitute(h, N), "subst")


def linearizing_operator(X, N):
    """Theta^-1 = contract(ret S) = contract(Na)^-1, substitution by h^-1.

    Contracting Na itself puts its poles on prefixes, which act last; for
    special spectra such terms cancel only in the total. The retrograde
    of S has its poles on suffixes, which act first, where a vanishing
    frequency is a genuine resonance.
    """
    M = Mo.retrograde(C.make("S", X.alphabet()))
    return contract(M, X, N), M


def linearize(X, N):
    """Normalizer jets h and conjugated field (Dh)^-1 X(h), degree <= N.

    Theta phi = phi o h satisfies Theta X = X_lin Theta. A vanishing
    frequency on a contributing word raises :class:`Resonant`.
    """
    theta_inv, M = linearizing_operator(X, N)
    h_inv = [theta_inv(coordinate(X.nu, i, N)) for i in range(X.nu)]
    h = invert_jet(h_inv, N)
    theta = substitution(h, N)
    Xop = X.operator()
    conj = [theta(Xop(theta_inv(coordinate(X.nu, i, N)))) for i in range(X.nu)]
    return NormalForm(h, conj, N, M)


def oracle_normalize(X, N, mode="linearize"):
    """Order-by-order solution of X(h) = Dh (X_lin + G).

    In ``linearize`` mode G is zero and a resonance raises; in ``dulac``
    mode resonant monomials go into G and h has no resonant terms.
    """
    nu, lam = X.nu, X.spectrum
    nonlinear = []
    for i in range(nu):
        comp = Poly(nu)
        for part in X.parts.values():
            comp = comp + part.component(i)
        nonlinear.append(comp)
    h = [coordinate(nu, i, N) for i in range(nu)]
    G = [Poly(nu, None, N) for _ in range(nu)]
    for k in range(2, N + 1):
        composed = [c.substitute(h, N) for c in nonlinear]
        jac = [[h[i].derivative(j) - (1 if i == j else 0) for j in range(nu)] for i in range(nu)]
        for i in range(nu):
            rhs = composed[i]
            for j in range(nu):
                rhs = rhs - jac[i][j] * G[j]
            for m, c in rhs.homogeneous_part(k).terms.items():
                mu = sum((a * b for a, b in zip(m, lam)), ZERO) - lam[i]
                if mu:
                    h[i] = h[i] + Poly.monomial(m, c / mu, N)
                elif mode == "linearize":
                    raise Resonant((m, i), "monomial x^%r in component %d" % (m, i))
                else:
                    G[i] = G[i] + Poly.monomial(m, c, N)
    conj = [coordinate(nu, i, N) * lam[i] + G[i] for i in range(nu)]
    return NormalForm(h, conj, N)


def prenormal_tram(X, N, tram=None):
    """Components of X_tram = X_lin + sum_w Tram^w D_w up to degree N."""
    tram = tram or C.make("Tram", X.alphabet())
    op = contract(tram, X, N)
    return [coordinate(X.nu, i, N) * X.spectrum[i] + op(coordinate(X.nu, i, N)) for i in range(X.nu)]


def _exp_derivation(theta, N):
    def fn(jet):
        out, term, k = jet, jet, 0
        while term:
            k += 1
            term = theta(term) * Fraction(1, k)
            out = out + term
            if k > N:
                break
        return out

    return Operator(fn)


def lie_prenormalize(X, N, steps=None):
    """Prenormal form by repeated Lie-transform steps, without moulds.

    Each step conjugates by exp(Theta), Theta = sum over non-resonant
    homogeneous parts D_n of D_n / omega(n).
    """
    nu = X.nu
    comps = X.components(N)
    steps = N if steps is None else steps
    for _ in range(steps):
        Y = decompose(nu, X.spectrum, comps)
        gens = {n: p for n, p in Y.parts.items() if Y.weight(n)}
        if not gens:
            break
        weights = {n: Y.weight(n) for n in gens}

        def theta_fn(jet, gens=gens, weights=weights):
            out = Poly(jet.nvars, None, jet.cap)
            for n, p in gens.items():
                out = out + apply(p, jet) / weights[n]
            return out

        theta = Operator(theta_fn)
        e_plus = _exp_derivation(theta, N)
        e_minus = _exp_derivation(Operator(lambda j, t=theta: -t(j)), N)
        Yop = Y.operator()
        comps = [e_plus(Yop(e_minus(coordinate(nu, i, N)))) for i in range(nu)]
    return comps


def nonresonant_monomials(X, comps):
    """Monomials x^m d_i in the given components with m.lambda - lambda_i != 0."""
    out = []
    for i, comp in enumerate(comps):
        for m in comp.terms:
            if sum(m) >= 2 and sum((a * b for a, b in zip(m, X.spectrum)), ZERO) != X.spectrum[i]:
                out.append((i, m))
    return out


# --- diffeomorphisms --------------------------------------------------------


def diffeo_parts(components, N):
    """Prepared form of the substitution by f = (f_1, ..., f_nu).

    With f_i = q_i x_i + r_i(x) and g_i(x) = r_i(x_1/q_1, ..., x_nu/q_nu),
    phi o f = F_lin(sum_delta g^delta / delta! d^delta phi); the terms are
    grouped by degree vector into B_n, keeping total degree <= N.
    """
    nu = len(components)
    q = []
    for i, comp in enumerate(components):
        if comp.coefficient((0,) * nu):
            raise NotLocal("f_%d(0) != 0" % i)
        for m, c in comp.terms.items():
            if sum(m) == 1 and m[i] != 1 and c:
                raise NotPrepared("linear part of f is not diagonal")
        qi = comp.coefficient(tuple(1 if j == i else 0 for j in range(nu)))
        if not qi:
            raise NotLocal("multiplier q_%d vanishes" % i)
        q.append(qi)
    scaled = [Poly.variable(nu, j) / q[j] for j in range(nu)]
    g = []
    for i, comp in enumerate(components):
        rest = Poly(nu, {m: c for m, c in comp.terms.items() if sum(m) >= 2})
        g.append(rest.substitute(scaled, N + N))
    grouped = {}
    for delta in monomial_exponents(nu, N, 1):
        coef = Poly.constant(nu, 1, 2 * N)
        for gi, k in zip(g, delta):
            if k:
                coef = coef * gi ** k
        denom = 1
        for k in delta:
            denom *= factorial(k)
        for m, c in coef.terms.items():
            n = tuple(a - b for a, b in zip(m, delta))
            if sum(n) > N:
                continue
            grouped.setdefault(n, {}).setdefault(delta, {})[m] = c / denom
    parts = {}
    for n, by_delta in grouped.items():
        parts[n] = HomOp(nu, {d: Poly(nu, t) for d, t in by_delta.items()})
    return PreparedDiffeo(nu, tuple(q), parts, list(components))


def diffeo_normalizer_moulds(F):
    alphabet = F.alphabet()
    M = Mo.exp_nabla(Mo.retrograde(C.make("Ne_inv", alphabet)))
    Minv = Mo.exp_nabla(Mo.retrograde(C.make("Ne", alphabet)))
    return M, Minv


def diffeo_linearize(F, N):
    """Normalizer h with f o h = h o f_lin, and the conjugated substitution.

    H phi = phi o h equals contract(e^nabla ret(Ne_inv)); it is computed
    through its inverse contract(e^nabla ret(Ne)), whose poles fall on
    words that act first. ``conjugated`` holds H F H^-1 applied to the
    coordinates, which must equal q_i x_i.
    """
    M, Minv = diffeo_normalizer_moulds(F)
    Hinv = contract(Minv, F, N)
    h_inv = [Hinv(coordinate(F.nu, i, N)) for i in range(F.nu)]
    h = invert_jet(h_inv, N)
    H = substitution(h, N)
    Fop = F.operator()
    conj = [H(Fop(Hinv(coordinate(F.nu, i, N)))) for i in range(F.nu)]
    return NormalForm(h, conj, N, M)


def diffeo_oracle(components, N):
    """Solve h(q y) = f(h(y)) order by order for h = id + O(|y|^2)."""
    nu = len(components)
    q = [comp.coefficient(tuple(1 if j == i else 0 for j in range(nu))) for i, comp in enumerate(components)]
    rest = [Poly(nu, {m: c for m, c in comp.terms.items() if sum(m) >= 2}) for comp in components]
    h = [coordinate(nu, i, N) for i in range(nu)]
    for k in range(2, N + 1):
        composed = [r.substitute(h, N) for r in rest]
        for i in range(nu):
            for m, c in composed[i].homogeneous_part(k).terms.items():
                qm = Fraction(1)
                for qj, e in zip(q, m):
                    qm *= qj ** e
                if qm == q[i]:
                    raise Resonant((m, i), "q^m = q_%d" % i)
                h[i] = h[i] + Poly.monomial(m, c / (qm - q[i]), N)
    return h


def substitution_check(F, N):
    """First monomial phi with F(phi) != phi o f (up to degree N), or None."""
    f = [c.truncated(N) for c in F.source]
    Fop = F.operator()
    for m in monomial_exponents(F.nu, N):
        phi = Poly.monomial(m, 1, N)
        if Fop(phi) != phi.substitute(f, N):
            return m
    return None
