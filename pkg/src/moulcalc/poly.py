"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` stores a dict from exponent tuples to ``Fraction``. An
optional ``cap`` drops every monomial of total degree above it, which
turns the class into a truncated jet. Operations between a capped and
an uncapped polynomial keep the smaller cap.
"""

from fractions import Fraction

from .errors import MouldError


def _mincap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Poly:
    __slots__ = ("nvars", "terms", "cap")

    def __init__(self, nvars, terms=None, cap=None):
        self.nvars = nvars
        self.cap = cap
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c and (cap is None or sum(exps) <= cap):
                    clean[tuple(exps)] = Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, nvars, c, cap=None):
        return cls(nvars, {(0,) * nvars: c}, cap)

    @classmethod
    def variable(cls, nvars, i, cap=None):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1}, cap)

    @classmethod
    def monomial(cls, exps, coef=1, cap=None):
        return cls(len(exps), {tuple(exps): coef}, cap)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise MouldError("polynomials in %d and %d variables" % (self.nvars, other.nvars))
            return other
        return Poly.constant(self.nvars, Fraction(other))

    def copy(self, cap=None):
        return Poly(self.nvars, self.terms, self.cap if cap is None else cap)

    def truncated(self, degree):
        return Poly(self.nvars, self.terms, _mincap(self.cap, degree))

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return Poly(self.nvars, terms, _mincap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {k: -c for k, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.nvars, {k: v * c for k, v in self.terms.items()}, self.cap)
        other = self._lift(other)
        cap = _mincap(self.cap, other.cap)
        terms = {}
        for k1, c1 in self.terms.items():
            d1 = sum(k1)
            for k2, c2 in other.terms.items():
                if cap is not None and d1 + sum(k2) > cap:
                    continue
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, 0) + c1 * c2
        return Poly(self.nvars, terms, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, n):
        result = Poly.constant(self.nvars, 1, self.cap)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.constant(self.nvars, other).terms
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self):
        return max((sum(k) for k in self.terms), default=-1)

    def homogeneous_part(self, d):
        return Poly(self.nvars, {k: c for k, c in self.terms.items() if sum(k) == d}, self.cap)

    def derivative(self, i):
        terms = {}
        for k, c in self.terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                terms[tuple(kk)] = c * k[i]
        return Poly(self.nvars, terms, self.cap)

    def substitute(self, values, cap=None):
        """Compose: replace variable ``i`` by the polynomial ``values[i]``."""
        if len(values) != self.nvars:
            raise MouldError("expected %d substitutions" % self.nvars)
        nv = values[0].nvars
        for v in values:
            cap = _mincap(cap, v.cap)
        values = [v.copy(cap) if cap is not None else v for v in values]
        powers = [{0: Poly.constant(nv, 1, cap)} for _ in values]

        def power(i, e):
            table = powers[i]
            if e not in table:
                table[e] = power(i, e - 1) * values[i]
            return table[e]

        out = Poly(nv, None, cap)
        for k, c in self.terms.items():
            term = Poly.constant(nv, c, cap)
            for i, e in enumerate(k):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def divide_difference(self, a, b):
        """Exact quotient by ``v_a - v_b``; raises if the division is not exact."""
        rest = dict(self.terms)
        quotient = {}
        while True:
            lead = [k for k in rest if k[a] > 0]
            if not lead:
                break
            k = max(lead, key=lambda e: e[a])
            c = rest.pop(k)
            q = list(k)
            q[a] -= 1
            q = tuple(q)
            quotient[q] = quotient.get(q, 0) + c
            # subtract c*q*(v_a - v_b); the v_a part cancels the popped term
            shifted = list(q)
            shifted[b] += 1
            shifted = tuple(shifted)
            rest[shifted] = rest.get(shifted, 0) + c
            if not rest[shifted]:
                del rest[shifted]
        if any(rest.values()):
            raise MouldError("polynomial is not divisible by v%d - v%d" % (a, b))
        cap = None if self.cap is None else self.cap - 1
        return Poly(self.nvars, quotient, cap)

    def __call__(self, *point):
        total = Fraction(0)
        for k, c in self.terms.items():
            t = c
            for x, e in zip(point, k):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def to_json(self):
        return [{"coef": str(c), "exponents": list(k)} for k, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.sorted_terms():
            mono = "*".join(
                ("x%d" % i) if e == 1 else ("x%d^%d" % (i, e)) for i, e in enumerate(k) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts)
