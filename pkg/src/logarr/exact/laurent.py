"""Univariate Laurent polynomials over Q, plus small integer-polynomial helpers.

Hilbert-series numerators live here: a numerator can have negative exponents
(modules generated in negative degrees under the grading conventions used by
the logarithmic modules), so a plain coefficient list does not suffice.

Integer polynomials (Poincare polynomials and Chern truncations) are passed
around as plain ``list[int]`` coefficient arrays, lowest degree first.
"""

from fractions import Fraction


class LaurentPoly:
    """Immutable Laurent polynomial: dict of int exponent -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def t_power(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs, offset=0):
        return cls({offset + i: c for i, c in enumerate(coeffs)})

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def __getitem__(self, e):
        return self.terms.get(e, Fraction(0))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            w = out.get(e, Fraction(0)) + c
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                w = out.get(e, Fraction(0)) + c1 * c2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def invert_variable(self):
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def evaluate(self, x):
        x = Fraction(x)
        return sum((c * x ** e for e, c in self.terms.items()), Fraction(0))

    def divexact_one_minus_t(self):
        """Exact quotient by (1 - t); raises ValueError if not divisible."""
        if not self.terms:
            return LaurentPoly()
        lo, hi = min(self.terms), max(self.terms)
        # p(t) = (1 - t) q(t) with q supported on [lo, hi-1]:
        # p_lo = q_lo, p_e = q_e - q_{e-1}
        q = {}
        acc = Fraction(0)
        for e in range(lo, hi + 1):
            acc += self.terms.get(e, Fraction(0))
            if acc:
                q[e] = acc
        if acc:
            raise ValueError("not divisible by (1 - t)")
        q.pop(hi, None)
        return LaurentPoly(q)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" if e else str(c)
                          for e, c in sorted(self.terms.items()))


# -- integer polynomial helpers (dense lists, lowest degree first) ----------

def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_add(p, q):
    out = [0] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += b
    return poly_trim(out)


def poly_divexact(p, q):
    """Exact polynomial division over Q returning integer-or-Fraction coeffs;
    raises ValueError on a nonzero remainder."""
    p = [Fraction(a) for a in p]
    q = [Fraction(a) for a in q]
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    p = poly_trim(p)
    if not p:
        return []
    if len(p) < len(q):
        raise ValueError("non-exact polynomial division")
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    rem = list(p)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(q) - 1] / q[-1]
        out[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    if any(rem):
        raise ValueError("non-exact polynomial division")
    simple = []
    for c in out:
        simple.append(int(c) if c.denominator == 1 else c)
    return poly_trim(simple)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc
