"""Exact dense/sparse linear algebra over the rationals.

Matrices are small-to-medium (a few thousand columns at most) but must be
handled exactly: every rank and kernel here feeds a Hilbert series or a
freeness certificate, so a single wrong pivot poisons everything downstream.

Two representations are used:

* ``RationalMatrix`` -- a plain dense matrix of ``Fraction`` entries, the
  public face of the module.
* sparse integer rows -- ``dict[col, int]`` with a common implicit row
  scaling.  Row operations over Z with gcd normalization keep entries small
  in practice and avoid Fraction canonicalization costs in the hot path
  (constraint matrices for graded pieces are ~95% zeros).

Rank is invariant under row scaling, so clearing denominators first is
exact, not an approximation.
"""

from fractions import Fraction
from functools import reduce
from math import gcd


class RationalMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    def transpose(self):
        return RationalMatrix(list(zip(*self.entries))) if self.entries else RationalMatrix([])

    def mul_vector(self, v):
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def _int_rows(entries):
    """Clear denominators row by row; returns sparse dict rows over Z."""
    out = []
    for row in entries:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        d = {}
        for j, x in enumerate(row):
            v = int(x * den) if isinstance(x, Fraction) else x * den
            if v:
                d[j] = v
        out.append(d)
    return out


def _normalize(row):
    g = reduce(gcd, row.values(), 0)
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def sparse_rank(rows):
    """Rank over Q of sparse integer rows (dicts col -> nonzero int).

    Forward elimination only; pivot rows are gcd-normalized after every
    update so entries stay near the size of the input data.
    """
    pivots = {}
    rank = 0
    for raw in rows:
        row = dict(raw)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _normalize(row)
                rank += 1
                break
            a, b = piv[c], row[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {j: ma * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - mb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _normalize(new) if new else new
    return rank


def sparse_rref(rows):
    """Reduced row echelon form of sparse integer rows, over Q.

    Returns (pivcols, rref_rows) where rref_rows[i] is a dict col -> Fraction
    with a 1 at pivcols[i] and zeros at every other pivot column.
    """
    pivots = {}
    for raw in rows:
        row = dict(raw)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _normalize(row)
                break
            a, b = piv[c], row[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {j: ma * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - mb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _normalize(new) if new else new
    pivcols = sorted(pivots)
    # back-substitute: clear pivot columns above, switch to Fractions
    frows = {}
    for c in reversed(pivcols):
        row = {j: Fraction(v) for j, v in pivots[c].items()}
        lead = row[c]
        row = {j: v / lead for j, v in row.items()}
        for c2 in pivcols:
            if c2 > c and c2 in row:
                m = row.pop(c2)
                for j, v in frows[c2].items():
                    if j != c2:
                        w = row.get(j, Fraction(0)) - m * v
                        if w:
                            row[j] = w
                        else:
                            row.pop(j, None)
        frows[c] = row
    return pivcols, [frows[c] for c in pivcols]


def sparse_kernel(rows, ncols):
    """Basis of the right kernel {v : M v = 0}, as dense Fraction tuples."""
    pivcols, rref = sparse_rref(rows)
    pivset = set(pivcols)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, row in zip(pivcols, rref):
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def rank(M: RationalMatrix) -> int:
    return sparse_rank(_int_rows(M.entries))


def rank_and_kernel(M: RationalMatrix):
    """(rank, kernel basis).  rank + len(kernel) == cols, and M v = 0 exactly
    for every returned v."""
    rows = _int_rows(M.entries)
    ker = sparse_kernel(rows, M.cols)
    return M.cols - len(ker), ker


def kernel_from_sparse(rows, ncols):
    """Convenience: kernel basis directly from sparse integer rows."""
    return sparse_kernel(rows, ncols)


class RrefSpan:
    """Incrementally built row space over Q, for span/membership queries.

    Used for minimal-generator extraction: vectors are added one at a time
    and ``add`` tells whether a vector enlarged the span.  Arithmetic runs on
    gcd-normalized integer rows (rational input is cleared per vector), which
    keeps membership tests fast.
    """

    def __init__(self):
        self.pivots = {}  # col -> normalized integer row

    @staticmethod
    def _clear(vec):
        den = 1
        for v in vec.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        row = {}
        for j, v in vec.items():
            w = int(v * den) if isinstance(v, Fraction) else v * den
            if w:
                row[j] = w
        return row

    def _reduce(self, row):
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            a, b = piv[c], row[c]
            g = gcd(a, b)
            ma, mb = a // g, b // g
            new = {j: ma * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - mb * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _normalize(new) if new else new
        return row

    def contains(self, vec):
        return not self._reduce(self._clear(vec))

    def add(self, vec):
        """Add vec to the span; returns True if it was new."""
        rem = self._reduce(self._clear(vec))
        if not rem:
            return False
        self.pivots[min(rem)] = _normalize(rem)
        return True

    @property
    def dim(self):
        return len(self.pivots)
