"""Exact multivariate polynomials over Q.

A polynomial in ``nvars`` variables is a dict mapping exponent tuples to
nonzero ``Fraction`` coefficients; the zero polynomial is the empty dict.
Terms are kept canonical (no zero coefficients) after every operation, and
printed in graded lexicographic order so reprs are deterministic.

The two operations the rest of the library leans on:

* ``reduce_mod_linear`` -- canonical representative modulo a linear form,
  obtained by substituting the pivot variable (the largest index with a
  nonzero coefficient).  For a homogeneous p this vanishes exactly when the
  linear form divides p, which is how all the logarithmic divisibility
  conditions are checked.
* ``divexact_linear`` -- exact division by a linear form (raises if the
  division leaves a remainder).
"""

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int):
    """All exponent tuples of total degree ``degree`` in ``nvars`` variables,
    in a fixed deterministic (lexicographic descending) order."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


def monomial_count(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


def _grlex_key(exp):
    return (sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Immutable multivariate polynomial over Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(n, terms)

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp), {tuple(exp): Fraction(c)})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Degree of the zero polynomial is -1 by convention here."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d):
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            w = out.get(e, Fraction(0)) + c
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = out.get(e, Fraction(0)) + c1 * c2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_var(self, i, power=1):
        """Multiply by x_i^power (exponent shift, cheaper than __mul__)."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i] += power
            out[tuple(e2)] = c
        return MultiPoly(self.nvars, out)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(self.nvars, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- reduction and division --------------------------------------------

    def reduce_mod_linear(self, alpha):
        """Canonical representative modulo the ideal <sum alpha_i x_i>.

        The pivot variable is the largest index with nonzero coefficient; it
        is replaced by the negated rescaled rest of the form.  Zero iff the
        linear form divides self, provided self is homogeneous.
        """
        alpha = [Fraction(a) for a in alpha]
        if len(alpha) != self.nvars:
            raise ValueError("linear form length mismatch")
        k = max((i for i, a in enumerate(alpha) if a), default=-1)
        if k < 0:
            raise ValueError("zero linear form")
        sub = MultiPoly(self.nvars,
                        {tuple((1 if j == i else 0) for j in range(self.nvars)): -alpha[i] / alpha[k]
                         for i in range(self.nvars) if i != k and alpha[i]})
        powers = {0: MultiPoly.constant(self.nvars, 1)}
        out = MultiPoly.zero(self.nvars)
        for e, c in self.terms.items():
            ek = e[k]
            if ek not in powers:
                p = max(powers)
                while p < ek:
                    powers[p + 1] = powers[p] * sub
                    p += 1
            base = list(e)
            base[k] = 0
            out = out + powers[ek].mul_var_monomial(tuple(base), c)
        return out

    def mul_var_monomial(self, exp, c):
        """self * c * x^exp."""
        out = {}
        for e, cc in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exp))] = cc * c
        return MultiPoly(self.nvars, out)

    def divexact_linear(self, alpha):
        """Exact quotient self / (sum alpha_i x_i); raises ValueError if the
        division is not exact."""
        alpha = [Fraction(a) for a in alpha]
        k = max((i for i, a in enumerate(alpha) if a), default=-1)
        if k < 0:
            raise ValueError("zero linear form")
        ak = alpha[k]
        rest = MultiPoly(self.nvars,
                         {tuple((1 if j == i else 0) for j in range(self.nvars)): alpha[i]
                          for i in range(self.nvars) if i != k and alpha[i]})
        # long division in x_k: peel highest x_k-degree terms
        rem = self
        quot = MultiPoly.zero(self.nvars)
        while not rem.is_zero():
            dk = max(e[k] for e in rem.terms)
            if dk == 0:
                raise ValueError("not divisible by linear form")
            lead = {e: c for e, c in rem.terms.items() if e[k] == dk}
            step = MultiPoly(self.nvars,
                             {tuple(v - (1 if i == k else 0) for i, v in enumerate(e)): c / ak
                              for e, c in lead.items()})
            quot = quot + step
            rem = rem - step.mul_var(k) * ak - step * rest
        return quot

    def divexact(self, other):
        """Exact division by a product of linear forms is all we need; for a
        general homogeneous divisor fall back to iterated linear division via
        ``divexact_linear`` at the call site.  Here: divide by another
        MultiPoly that is a single linear form."""
        if other.total_degree() != 1:
            raise ValueError("divexact only supports linear divisors")
        coeffs = [Fraction(0)] * self.nvars
        for e, c in other.terms.items():
            if sum(e) != 1:
                raise ValueError("divisor is not a linear form")
            coeffs[e.index(1)] = c
        return self.divexact_linear(coeffs)

    # -- presentation --------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                            for i, k in enumerate(e) if k)
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)
