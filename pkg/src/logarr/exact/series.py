"""Truncated bivariate power series in u and t over Q.

Elements are truncated at t^(order+1): everything of t-degree > order is
discarded immediately after every ring operation.  Each retained t-power
carries a polynomial in u with Fraction coefficients (dense, low to high,
trailing zeros stripped), so the type models Q[u][t]/(t^(order+1)).

Inversion requires the (u^0, t^0) constant term to be a nonzero scalar and
the t^0 coefficient to be that scalar alone; with a nonconstant u-polynomial
in t-degree 0 the inverse would leave Q[u], which this type cannot represent.
"""

from fractions import Fraction

_Z = Fraction(0)


def _utrim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _uadd(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else _Z) + (b[i] if i < len(b) else _Z)
                   for i in range(n)])


def _uneg(a):
    return tuple(-x for x in a)


def _umul(a, b):
    if not a or not b:
        return ()
    out = [_Z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _utrim(out)


def _uscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


class TruncatedSeries:
    """Immutable element of Q[u][t] / (t^(order+1))."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        cs = [_utrim(tuple(Fraction(x) for x in c)) for c in coeffs]
        cs = cs[: order + 1]
        while len(cs) < order + 1:
            cs.append(())
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls(order)

    @classmethod
    def one(cls, order):
        return cls(order, [(Fraction(1),)])

    @classmethod
    def constant(cls, order, c):
        return cls(order, [(Fraction(c),)])

    @classmethod
    def u_poly(cls, order, upoly):
        """Series equal to the given u-polynomial (t-degree 0)."""
        return cls(order, [tuple(Fraction(x) for x in upoly)])

    @classmethod
    def from_t_coeffs(cls, order, tcoeffs):
        """Series sum_k tcoeffs[k] t^k with scalar coefficients."""
        return cls(order, [(Fraction(c),) for c in tcoeffs])

    # -- queries ---------------------------------------------------------------

    def t_coefficient(self, k):
        """u-polynomial at t^k, as a tuple of Fractions."""
        return self.coeffs[k]

    def coefficient(self, k, j):
        """Coefficient of u^j t^k."""
        c = self.coeffs[k]
        return c[j] if j < len(c) else _Z

    def u_degree(self, k):
        """u-degree of the t^k coefficient (-1 for zero)."""
        return len(self.coeffs[k]) - 1

    def is_zero(self):
        return all(not c for c in self.coeffs)

    # -- ring operations --------------------------------------------------------

    def _require_same_order(self, other):
        if self.order != other.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other):
        self._require_same_order(other)
        return TruncatedSeries(self.order,
                               [_uadd(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries(self.order, [_uneg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return TruncatedSeries(self.order, [_uscale(a, c) for a in self.coeffs])
        self._require_same_order(other)
        out = [() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = _uadd(out[i + j], _umul(a, b))
        return TruncatedSeries(self.order, out)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; the t^0 coefficient must be a nonzero scalar."""
        c0 = self.coeffs[0]
        if len(c0) != 1 or not c0[0]:
            raise ValueError("inverse requires a nonzero scalar constant term")
        inv0 = 1 / c0[0]
        out = [(inv0,)]
        for k in range(1, self.order + 1):
            acc = ()
            for i in range(1, k + 1):
                a = self.coeffs[i]
                if a:
                    acc = _uadd(acc, _umul(a, out[k - i]))
            out.append(_uscale(_uneg(acc), inv0))
        return TruncatedSeries(self.order, out)

    def truncate(self, order):
        """Ring homomorphism to a lower truncation order."""
        if order > self.order:
            raise ValueError("cannot raise truncation order")
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def substitute_u(self, value):
        """Evaluate u at a scalar; returns scalar t-coefficients as a list."""
        v = Fraction(value)
        out = []
        for c in self.coeffs:
            acc = _Z
            for x in reversed(c):
                acc = acc * v + x
            out.append(acc)
        return out

    def scale_t(self, c):
        """Substitute t -> c*t for a scalar c."""
        c = Fraction(c)
        out = []
        p = Fraction(1)
        for k in range(self.order + 1):
            out.append(_uscale(self.coeffs[k], p))
            p *= c
        return TruncatedSeries(self.order, out)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.order == other.order and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if c:
                up = " + ".join(f"{x}*u^{j}" if j > 1 else (f"{x}*u" if j == 1 else str(x))
                                for j, x in enumerate(c) if x)
                bits.append(f"({up})*t^{k}" if k else f"({up})")
        return " + ".join(bits) if bits else "0"
